//! Brute-force evaluation of Carlitz zeta values and double zeta values in
//! `k_∞ = F_q((1/θ))`, by summing `1/a^s` over monic `a ∈ A` of bounded degree.
//!
//! Nothing here shares code with the criterion beyond the base arithmetic.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::algebra::field::FieldSpec;
use crate::algebra::laurent::LaurentSeries;
use crate::algebra::poly::{Poly, Var};
use crate::algebra::rational::RationalFunction;
use crate::criterion::ShuffleTuple;
use crate::{Error, Result};

/// Largest number of monic polynomials enumerated in a single stratum.
pub const ENUMERATION_BUDGET: u64 = 1_000_000;

/// Enumeration depth `D` and the exponent `B` below which reported series are exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionPlan {
    pub max_degree: usize,
    pub guaranteed_valuation: i64,
}

impl PrecisionPlan {
    /// The plan for weight-one series with no coefficient slack: `B = D + 1`.
    pub fn new(max_degree: usize) -> Self {
        PrecisionPlan { max_degree, guaranteed_valuation: max_degree as i64 + 1 }
    }

    /// `B = (D + 1) − slack`, where `slack` is the largest excess of numerator
    /// degree over denominator degree among the tuple's coefficients.
    pub fn for_tuple(max_degree: usize, c: &ShuffleTuple) -> Result<Self> {
        let slack = c.entries().filter_map(RationalFunction::degree).max().unwrap_or(0).max(0);
        let b = max_degree as i64 + 1 - slack;
        if b <= 0 {
            return Err(Error::Precision(format!(
                "coefficients of degree {slack} leave no guaranteed precision at D = {max_degree}"
            )));
        }
        Ok(PrecisionPlan { max_degree, guaranteed_valuation: b })
    }

    /// The deepest `D` with at most a few thousand polynomials in the top stratum
    /// (7 for `q = 3`).
    pub fn default_max_degree(field: &FieldSpec) -> usize {
        let q = field.q() as u64;
        let mut d = 1;
        while q.pow(d as u32 + 1) <= 3000 {
            d += 1;
        }
        d
    }
}

fn check_budget(field: &FieldSpec, d: usize) -> Result<u64> {
    let q = field.q() as u64;
    match q.checked_pow(d as u32) {
        Some(count) if count <= ENUMERATION_BUDGET => Ok(count),
        _ => Err(Error::Budget(format!("{q}^{d} monic polynomials exceed the enumeration budget"))),
    }
}

/// The monic polynomials of degree `d` in `θ`, in a fixed order.
fn monic_of_degree(field: &FieldSpec, d: usize) -> Result<impl Iterator<Item = Poly> + '_> {
    let count = check_budget(field, d)?;
    let q = field.q() as u64;
    Ok((0..count).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push((idx % q) as u32);
            idx /= q;
        }
        coeffs.push(1);
        Poly::from_coeffs(field, Var::Theta, coeffs)
    }))
}

/// `1/a^s` for monic `a`, exact below exponent `order`.
fn inverse_power(a: &Poly, s: usize, order: i64) -> LaurentSeries {
    let field = a.field();
    let v = (s * a.degree().expect("monic")) as i64;
    if order <= v {
        return LaurentSeries::zero(field, order);
    }
    let power = LaurentSeries::from_poly(&a.pow(s as u64), order - 2 * v);
    power.inv().expect("monic power is a unit").truncate(order)
}

/// `S_d(s) = Σ_{a monic, deg a = d} 1/a^s` as an exact rational function.
pub fn power_sum(d: usize, s: usize, field: &FieldSpec) -> Result<RationalFunction> {
    if s == 0 {
        return Err(Error::InvalidArgument("power sums need s ≥ 1".into()));
    }
    let mut terms: Vec<RationalFunction> = monic_of_degree(field, d)?
        .map(|a| RationalFunction::new(Poly::one(field, Var::Theta), a.pow(s as u64)))
        .collect::<Result<_>>()?;
    while terms.len() > 1 {
        let mut next = Vec::with_capacity(terms.len().div_ceil(2));
        let mut it = terms.chunks(2);
        for pair in &mut it {
            next.push(if pair.len() == 2 { pair[0].add(&pair[1]) } else { pair[0].clone() });
        }
        terms = next;
    }
    Ok(terms.pop().unwrap_or_else(|| RationalFunction::zero(field)))
}

/// `S_d(s)` expanded in `1/θ`, exact below exponent `order`.
pub fn power_sum_series(d: usize, s: usize, order: i64, field: &FieldSpec) -> Result<LaurentSeries> {
    if s == 0 {
        return Err(Error::InvalidArgument("power sums need s ≥ 1".into()));
    }
    let mut acc = LaurentSeries::zero(field, order);
    for a in monic_of_degree(field, d)? {
        acc = acc.add(&inverse_power(&a, s, order));
    }
    Ok(acc)
}

fn strata(s: usize, max_degree: usize, order: i64, field: &FieldSpec) -> Result<Vec<LaurentSeries>> {
    (0..=max_degree).map(|d| power_sum_series(d, s, order, field)).collect()
}

fn zeta_from_strata(strata: &[LaurentSeries], s: usize) -> LaurentSeries {
    let order = (s * strata.len()) as i64;
    let field = strata[0].field();
    strata.iter().fold(LaurentSeries::zero(field, order), |acc, x| acc.add(x)).truncate(order)
}

fn double_from_strata(first: &[LaurentSeries], second: &[LaurentSeries], s1: usize) -> LaurentSeries {
    let order = (s1 * first.len()) as i64;
    let field = first[0].field();
    let mut tail = LaurentSeries::zero(field, order);
    let mut acc = LaurentSeries::zero(field, order);
    for d1 in 1..first.len() {
        tail = tail.add(&second[d1 - 1]);
        acc = acc.add(&first[d1].mul(&tail));
    }
    acc.truncate(order)
}

/// `ζ_A(s)` summed over monic `a` with `deg a ≤ D`; exact below `s(D+1)`.
pub fn zeta_value(s: usize, plan: &PrecisionPlan, field: &FieldSpec) -> Result<LaurentSeries> {
    if s == 0 {
        return Err(Error::InvalidArgument("zeta values need s ≥ 1".into()));
    }
    let order = (s * (plan.max_degree + 1)) as i64;
    Ok(zeta_from_strata(&strata(s, plan.max_degree, order, field)?, s))
}

/// `ζ_A(s_1, s_2) = Σ_{D ≥ d_1 > d_2 ≥ 0} S_{d_1}(s_1) S_{d_2}(s_2)`; exact below `s_1(D+1)`.
pub fn double_zeta(s1: usize, s2: usize, plan: &PrecisionPlan, field: &FieldSpec) -> Result<LaurentSeries> {
    if s1 == 0 || s2 == 0 {
        return Err(Error::InvalidArgument("zeta values need positive weights".into()));
    }
    let order = (s1 * (plan.max_degree + 1)) as i64;
    let first = strata(s1, plan.max_degree, order, field)?;
    let second = strata(s2, plan.max_degree, order, field)?;
    Ok(double_from_strata(&first, &second, s1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumericVerdict {
    VanishesToGuarantee,
    /// Exponent of the first nonzero coefficient of the residual.
    NonzeroAt(i64),
}

#[derive(Clone, Debug)]
pub struct NumericCheck {
    /// `LHS − RHS`, truncated at the guarantee.
    pub residual: LaurentSeries,
    pub guarantee: i64,
    pub verdict: NumericVerdict,
}

struct Evaluator<'a> {
    field: &'a FieldSpec,
    max_degree: usize,
    order: i64,
    strata: BTreeMap<usize, Vec<LaurentSeries>>,
}

impl<'a> Evaluator<'a> {
    fn strata(&mut self, s: usize) -> Result<&[LaurentSeries]> {
        if !self.strata.contains_key(&s) {
            let computed = strata(s, self.max_degree, self.order, self.field)?;
            self.strata.insert(s, computed);
        }
        Ok(&self.strata[&s])
    }

    fn zeta(&mut self, s: usize) -> Result<LaurentSeries> {
        Ok(zeta_from_strata(self.strata(s)?, s))
    }

    fn double(&mut self, s1: usize, s2: usize) -> Result<LaurentSeries> {
        self.strata(s1)?;
        self.strata(s2)?;
        Ok(double_from_strata(&self.strata[&s1], &self.strata[&s2], s1))
    }
}

fn residual<'a>(
    c: &ShuffleTuple,
    plan: &PrecisionPlan,
    field: &'a FieldSpec,
) -> Result<(LaurentSeries, Evaluator<'a>)> {
    field.check_same(c.field())?;
    let (r, s, n) = (c.r(), c.s(), c.n());
    let mut ev = Evaluator {
        field,
        max_degree: plan.max_degree,
        order: (n * (plan.max_degree + 1)) as i64,
        strata: BTreeMap::new(),
    };
    let coeff_order = ev.order + plan.max_degree as i64 + 1;
    let expand = |x: &RationalFunction| LaurentSeries::from_rational(x, coeff_order);

    let mut total = ev.zeta(r)?.mul(&ev.zeta(s)?).sub(&ev.double(r, s)?).sub(&ev.double(s, r)?);
    total = total.sub(&expand(c.b0()).mul(&ev.zeta(n)?));
    for i in 1..n {
        let a = c.a_i(i);
        if !a.is_zero() {
            total = total.sub(&expand(a).mul(&ev.double(i, n - i)?));
        }
    }
    Ok((total, ev))
}

/// Evaluates `ζ(r)ζ(s) − ζ(r,s) − ζ(s,r) − b_0ζ(n) − Σ a_i ζ(i, n−i)` to the
/// guaranteed precision of `plan`, tightened for the tuple's coefficients.
pub fn check_sr_numeric(c: &ShuffleTuple, plan: &PrecisionPlan, field: &FieldSpec) -> Result<NumericCheck> {
    let tuple_plan = PrecisionPlan::for_tuple(plan.max_degree, c)?;
    let guarantee = tuple_plan.guaranteed_valuation.min(plan.guaranteed_valuation);
    if guarantee <= 0 {
        return Err(Error::Precision("no guaranteed precision".into()));
    }
    let (total, _) = residual(c, plan, field)?;
    if total.exact_order() < guarantee {
        return Err(Error::Precision(format!(
            "residual exact below {} only, short of {guarantee}",
            total.exact_order()
        )));
    }
    let residual = total.truncate(guarantee);
    let verdict = match residual.valuation() {
        None => NumericVerdict::VanishesToGuarantee,
        Some(e) => NumericVerdict::NonzeroAt(e),
    };
    Ok(NumericCheck { residual, guarantee, verdict })
}

/// `b_0 + residual/ζ(n)`: the value of `b_0` the numerics point to. A
/// diagnostic only, exact below the returned series' watermark.
pub fn b0_estimate(c: &ShuffleTuple, plan: &PrecisionPlan, field: &FieldSpec) -> Result<LaurentSeries> {
    let tuple_plan = PrecisionPlan::for_tuple(plan.max_degree, c)?;
    let (total, mut ev) = residual(c, plan, field)?;
    let total = total.truncate(tuple_plan.guaranteed_valuation);
    let zn = ev.zeta(c.n())?;
    let b0 = LaurentSeries::from_rational(c.b0(), total.exact_order());
    Ok(b0.add(&total.mul(&zn.inv()?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criterion::chen_tuple;

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    #[test]
    fn s0_is_one() {
        let f = f3();
        for s in 1..5 {
            assert_eq!(power_sum(0, s, &f).unwrap(), RationalFunction::one(&f));
        }
    }

    #[test]
    fn s1_at_q3() {
        let f = f3();
        let expected = RationalFunction::new(
            Poly::from_ints(&f, Var::Theta, &[2]),
            Poly::from_ints(&f, Var::Theta, &[0, 2, 0, 1]),
        )
        .unwrap();
        assert_eq!(power_sum(1, 1, &f).unwrap(), expected);
        let direct = (0..3).fold(RationalFunction::zero(&f), |acc, c| {
            let a = Poly::from_ints(&f, Var::Theta, &[c, 1]);
            acc.add(&RationalFunction::new(Poly::one(&f, Var::Theta), a.pow(2)).unwrap())
        });
        assert_eq!(power_sum(1, 2, &f).unwrap(), direct);
    }

    #[test]
    fn series_matches_rational() {
        let f = f3();
        for d in 0..3 {
            for s in 1..4 {
                let exact = power_sum(d, s, &f).unwrap();
                let series = power_sum_series(d, s, 30, &f).unwrap();
                assert_eq!(series, LaurentSeries::from_rational(&exact, 30));
                if let Some(v) = series.valuation() {
                    assert!(v >= (s * d) as i64);
                }
            }
        }
    }

    #[test]
    fn zeta_leading_terms() {
        let f = f3();
        let plan = PrecisionPlan::new(4);
        for s in 1..4 {
            let z = zeta_value(s, &plan, &f).unwrap();
            assert_eq!(z.valuation(), Some(0));
            assert_eq!(z.coeff(0), 1);
            assert_eq!(z.exact_order(), (s * 5) as i64);
            let rest = z.sub(&LaurentSeries::from_coeffs(&f, 0, vec![1], z.exact_order()));
            assert!(rest.valuation().is_none_or(|v| v >= s as i64));
        }
        let d = double_zeta(1, 2, &plan, &f).unwrap();
        let s1 = power_sum_series(1, 1, 5, &f).unwrap();
        assert_eq!(d.valuation(), s1.valuation());
        assert_eq!(d.coeff(1), s1.coeff(1));
    }

    #[test]
    fn precision_monotone() {
        let f = f3();
        let lo = double_zeta(1, 2, &PrecisionPlan::new(5), &f).unwrap();
        let hi = double_zeta(1, 2, &PrecisionPlan::new(6), &f).unwrap();
        assert_eq!(lo.exact_order(), 6);
        assert!(lo.agrees_with(&hi));
    }

    #[test]
    fn chen_relation_vanishes() {
        let f = f3();
        let c = chen_tuple(1, 2, &f).unwrap();
        let check = check_sr_numeric(&c, &PrecisionPlan::new(6), &f).unwrap();
        assert_eq!(check.verdict, NumericVerdict::VanishesToGuarantee);
        assert_eq!(check.guarantee, 7);
    }

    #[test]
    fn wrong_b0_is_detected() {
        let f = f3();
        let one = RationalFunction::one(&f);
        let c = ShuffleTuple::from_entries(1, 2, vec![one.clone(), one, RationalFunction::zero(&f)]).unwrap();
        let check = check_sr_numeric(&c, &PrecisionPlan::new(6), &f).unwrap();
        assert!(matches!(check.verdict, NumericVerdict::NonzeroAt(e) if e < 7));
    }

    #[test]
    fn plan_slack_and_budget() {
        let f = f3();
        let big = RationalFunction::from_poly(Poly::monomial(&f, Var::Theta, 1, 9));
        let z = RationalFunction::zero(&f);
        let c = ShuffleTuple::from_entries(1, 2, vec![z.clone(), big, z]).unwrap();
        assert!(PrecisionPlan::for_tuple(6, &c).is_err());
        assert_eq!(PrecisionPlan::for_tuple(12, &c).unwrap().guaranteed_valuation, 4);
        assert!(power_sum_series(13, 1, 5, &f).is_err());
        assert_eq!(PrecisionPlan::default_max_degree(&f), 7);
    }
}
