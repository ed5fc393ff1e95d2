//! Shuffle tuples, their integral normalization, and the torsion decision.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::bipoly::BiPoly;
use crate::algebra::field::FieldSpec;
use crate::algebra::lucas::lucas_binom;
use crate::algebra::poly::{lcm_monic, Poly, Var};
use crate::algebra::rational::RationalFunction;
use crate::reduction::{reduce_to_epoint, rho_a, EPoint, ExtRow, ModuleVector};
use crate::special::{annihilator, carlitz_gamma, ATContext};
use crate::{Error, Result};

/// A candidate relation `ζ(r)ζ(s) − ζ(r,s) − ζ(s,r) = b_0 ζ(n) + Σ a_i ζ(i, n−i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleTuple {
    r: usize,
    s: usize,
    b0: RationalFunction,
    a: Vec<RationalFunction>,
}

/// A tuple in the difference form `ζ(r,s) + ζ(s,r) = b̃_0 ζ(n) + Σ ã_i ζ(i, n−i)`
/// shifted by Chen's relation. Same shape as [`ShuffleTuple`].
pub type DrTuple = ShuffleTuple;

impl ShuffleTuple {
    pub fn new(r: usize, s: usize, b0: RationalFunction, a: Vec<RationalFunction>) -> Result<Self> {
        if r == 0 || s == 0 {
            return Err(Error::InvalidArgument("r and s must be positive".into()));
        }
        if a.len() != r + s - 1 {
            return Err(Error::ShapeMismatch(format!(
                "expected {} coefficients a_1..a_{}, got {}",
                r + s - 1,
                r + s - 1,
                a.len()
            )));
        }
        if a.iter().any(|x| x.field() != b0.field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(ShuffleTuple { r, s, b0, a })
    }

    /// `entries = [b_0, a_1, ..., a_{n−1}]`.
    pub fn from_entries(r: usize, s: usize, mut entries: Vec<RationalFunction>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::ShapeMismatch("empty tuple".into()));
        }
        let b0 = entries.remove(0);
        Self::new(r, s, b0, entries)
    }

    pub fn zero(r: usize, s: usize, field: &FieldSpec) -> Result<Self> {
        let zero = RationalFunction::zero(field);
        Self::new(r, s, zero.clone(), alloc::vec![zero; (r + s).saturating_sub(1)])
    }

    pub fn r(&self) -> usize {
        self.r
    }
    pub fn s(&self) -> usize {
        self.s
    }
    pub fn n(&self) -> usize {
        self.r + self.s
    }
    pub fn field(&self) -> &FieldSpec {
        self.b0.field()
    }
    pub fn b0(&self) -> &RationalFunction {
        &self.b0
    }
    /// `a_1, ..., a_{n−1}` (index `i−1` holds `a_i`).
    pub fn a(&self) -> &[RationalFunction] {
        &self.a
    }
    /// `a_i` for `1 ≤ i ≤ n−1`.
    pub fn a_i(&self, i: usize) -> &RationalFunction {
        &self.a[i - 1]
    }
    pub fn entries(&self) -> impl Iterator<Item = &RationalFunction> {
        core::iter::once(&self.b0).chain(self.a.iter())
    }

    /// Entrywise sum; `r` and `s` must agree.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.r, self.s) != (other.r, other.s) {
            return Err(Error::ShapeMismatch("tuples for different (r, s)".into()));
        }
        Self::new(self.r, self.s, self.b0.add(&other.b0), self.a.iter().zip(&other.a).map(|(x, y)| x.add(y)).collect())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if (self.r, self.s) != (other.r, other.s) {
            return Err(Error::ShapeMismatch("tuples for different (r, s)".into()));
        }
        Self::new(self.r, self.s, self.b0.sub(&other.b0), self.a.iter().zip(&other.a).map(|(x, y)| x.sub(y)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries().all(RationalFunction::is_zero)
    }
}

impl fmt::Display for ShuffleTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// The integral form of a tuple: `Γ_C` and the cleared numerators, moved to `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedTuple {
    pub gamma_c: Poly,
    pub beta0: Poly,
    pub gamma0: Poly,
    /// `α_1, ..., α_{n−1}`.
    pub alpha: Vec<Poly>,
}

/// Clears denominators against `Γ_C`, the monic lcm of the denominators of
/// `a_i/(Γ_i Γ_{n−i})`, `b_0/Γ_n` and `1/(Γ_r Γ_s)`.
pub fn normalize_tuple(c: &ShuffleTuple, field: &FieldSpec) -> Result<NormalizedTuple> {
    field.check_same(c.field())?;
    let n = c.n();
    let gamma = |m: usize| carlitz_gamma(m, field);
    let over = |x: &RationalFunction, d: Poly| x.div(&RationalFunction::from_poly(d));

    let b0_part = over(c.b0(), gamma(n))?;
    let g0_part = over(&RationalFunction::one(field), &gamma(c.r()) * &gamma(c.s()))?;
    let a_parts = (1..n).map(|i| over(c.a_i(i), &gamma(i) * &gamma(n - i))).collect::<Result<Vec<_>>>()?;

    let mut gamma_c = Poly::one(field, Var::Theta);
    for part in a_parts.iter().chain([&b0_part, &g0_part]) {
        gamma_c = lcm_monic(&gamma_c, part.den())?;
    }
    let clear = |x: &RationalFunction| -> Result<Poly> {
        x.mul_poly_integral(&gamma_c)
            .map(|p| p.subst_theta_to_t())
            .ok_or_else(|| Error::Integrality(format!("{x} · Γ_C is not in A")))
    };
    Ok(NormalizedTuple {
        beta0: clear(&b0_part)?,
        gamma0: clear(&g0_part)?,
        alpha: a_parts.iter().map(clear).collect::<Result<_>>()?,
        gamma_c,
    })
}

/// `w = (β_0H_{n−1} − γ_0H_{r−1}H_{s−1} − Σ α_iH_{n−i−1}H_{i−1}) x_0 + Σ α_iH_{n−i−1} x_i`
/// at `σ`-level 1, so that `v_C = Δ(σ w)`.
pub fn build_vc_element(nt: &NormalizedTuple, r: usize, s: usize, at: &ATContext) -> Result<ModuleVector> {
    let n = r + s;
    if nt.alpha.len() + 1 != n {
        return Err(Error::ShapeMismatch(format!("normalized tuple does not match n = {n}")));
    }
    at.ensure(n - 1)?;
    let h = |m: usize| at.h(m);
    let mut x0 = &h(n - 1)?.mul_t_poly(&nt.beta0) - &(h(r - 1)? * h(s - 1)?).mul_t_poly(&nt.gamma0);
    let mut coords = alloc::vec![BiPoly::zero(at.field()); n];
    for (i, alpha) in (1..n).zip(&nt.alpha) {
        if alpha.is_zero() {
            continue;
        }
        let xi = h(n - i - 1)?.mul_t_poly(alpha);
        x0 = &x0 - &(&xi * h(i - 1)?);
        coords[i] = xi;
    }
    coords[0] = x0;
    ModuleVector::new(coords, 1)
}

/// The last row of `Φ_C`, twisted once: `((β_0H_{n−1} − γ_0H_{r−1}H_{s−1})(t−θ^q)^n,
/// α_1H_{n−2}(t−θ^q)^{n−1}, ..., α_{n−1}H_0(t−θ^q))`.
pub fn ext_row(nt: &NormalizedTuple, r: usize, s: usize, at: &ATContext) -> Result<ExtRow> {
    let n = r + s;
    at.ensure(n - 1)?;
    let field = at.field();
    let step = BiPoly::t_minus_theta_power(field, field.q() as usize);
    let h = |m: usize| at.h(m);
    let mut entries = Vec::with_capacity(n);
    let head = &h(n - 1)?.mul_t_poly(&nt.beta0) - &(h(r - 1)? * h(s - 1)?).mul_t_poly(&nt.gamma0);
    entries.push(&head * &step.pow(n as u32));
    for i in 1..n {
        entries.push(&h(n - i - 1)?.mul_t_poly(&nt.alpha[i - 1]) * &step.pow((n - i) as u32));
    }
    ExtRow::new(entries)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// `(q−1) ∤ n`
    Coprime,
    /// `(q−1) | n`
    Divisible,
}

impl CaseTag {
    pub fn of(n: usize, q: u32) -> Self {
        if n.is_multiple_of(q as usize - 1) {
            CaseTag::Divisible
        } else {
            CaseTag::Coprime
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Coprime => "coprime",
            CaseTag::Divisible => "divisible",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Torsion with `(q−1) ∤ n`: the relation holds as stated.
    SrCertified,
    /// Torsion with `(q−1) | n`: the relation holds after replacing `b_0` by a
    /// unique corrected value, which is not computed.
    SrAfterB0Correction,
    /// Not torsion, so no choice of `b_0` makes the relation hold.
    NotSr,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::SrCertified => "SR certified",
            Verdict::SrAfterB0Correction => "SR-after-b0-correction certified",
            Verdict::NotSr => "not SR",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct TorsionReport {
    pub tuple: ShuffleTuple,
    pub normalized: NormalizedTuple,
    pub annihilator_used: Poly,
    pub v_c: EPoint,
    pub rho_a_v_c: EPoint,
    pub is_torsion: bool,
    pub case_tag: CaseTag,
    pub filter_violations: Vec<usize>,
}

impl TorsionReport {
    pub fn verdict(&self) -> Verdict {
        match (self.is_torsion, self.case_tag) {
            (false, _) => Verdict::NotSr,
            (true, CaseTag::Coprime) => Verdict::SrCertified,
            (true, CaseTag::Divisible) => Verdict::SrAfterB0Correction,
        }
    }
}

pub fn decide_torsion(c: &ShuffleTuple, field: &FieldSpec) -> Result<TorsionReport> {
    let at = ATContext::new(field, c.n() - 1)?;
    decide_torsion_with(c, &at)
}

/// As [`decide_torsion`], reusing a precomputed context covering `H_0..H_{n−1}`.
pub fn decide_torsion_with(c: &ShuffleTuple, at: &ATContext) -> Result<TorsionReport> {
    let field = at.field();
    let n = c.n();
    let normalized = normalize_tuple(c, field)?;
    let w = build_vc_element(&normalized, c.r(), c.s(), at)?;
    let v_c = reduce_to_epoint(&w, at)?;
    let a = annihilator(n, field);
    let rho_a_v_c = rho_a(&a, &v_c, at)?;
    Ok(TorsionReport {
        tuple: c.clone(),
        normalized,
        annihilator_used: a,
        is_torsion: rho_a_v_c.is_zero(),
        v_c,
        rho_a_v_c,
        case_tag: CaseTag::of(n, field.q()),
        filter_violations: necessary_filter(c, field),
    })
}

/// Indices `i` with `a_i ≠ 0` and `(q−1) ∤ (n−i)`. A nonempty result rules
/// the relation out.
pub fn necessary_filter(c: &ShuffleTuple, field: &FieldSpec) -> Vec<usize> {
    let q1 = field.q() as usize - 1;
    let n = c.n();
    (1..n).filter(|&i| !c.a_i(i).is_zero() && !(n - i).is_multiple_of(q1)).collect()
}

/// `a_i` of Chen's relation; zero unless `(q−1) | (n−i)`.
fn chen_coefficient(r: usize, s: usize, i: usize, field: &FieldSpec) -> u32 {
    let n = r + s;
    if !(n - i).is_multiple_of(field.q() as usize - 1) {
        return 0;
    }
    let p = field.p();
    let m = (n - i - 1) as u64;
    let term = |k: usize| {
        let c = field.from_int(lucas_binom(m, (k - 1) as u64, p) as i64);
        if (k - 1) % 2 == 1 {
            field.neg(c)
        } else {
            c
        }
    };
    field.add(term(s), term(r))
}

/// Chen's explicit relation: `b_0 = 1` and the binomial coefficients above.
pub fn chen_tuple(r: usize, s: usize, field: &FieldSpec) -> Result<ShuffleTuple> {
    if r == 0 || s == 0 {
        return Err(Error::InvalidArgument("r and s must be positive".into()));
    }
    let a = (1..r + s).map(|i| RationalFunction::constant(field, chen_coefficient(r, s, i, field))).collect();
    ShuffleTuple::new(r, s, RationalFunction::one(field), a)
}

/// Subtracts Chen's relation, turning a shuffle tuple into the corresponding
/// tuple for `ζ(r,s) + ζ(s,r)`-type relations.
pub fn to_dr_tuple(c: &ShuffleTuple, field: &FieldSpec) -> Result<DrTuple> {
    field.check_same(c.field())?;
    c.sub(&chen_tuple(c.r(), c.s(), field)?)
}

/// Human-readable one-line summary.
pub fn describe(report: &TorsionReport) -> String {
    format!(
        "(r, s) = ({}, {}), C = ({}): torsion = {}, {}",
        report.tuple.r(),
        report.tuple.s(),
        report.tuple,
        report.is_torsion,
        report.verdict()
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }
    fn th(f: &FieldSpec, c: &[i64]) -> RationalFunction {
        RationalFunction::from_poly(Poly::from_ints(f, Var::Theta, c))
    }
    fn tp(f: &FieldSpec, c: &[i64]) -> Poly {
        Poly::from_ints(f, Var::T, c)
    }

    #[test]
    fn normalize_examples() {
        let f = f3();
        let c = ShuffleTuple::from_entries(1, 2, vec![th(&f, &[2]), th(&f, &[0, 2, 0, 1]), th(&f, &[])]).unwrap();
        let nt = normalize_tuple(&c, &f).unwrap();
        assert!(nt.gamma_c.is_one());
        assert_eq!(nt.beta0, tp(&f, &[2]));
        assert_eq!(nt.gamma0, tp(&f, &[1]));
        assert_eq!(nt.alpha, vec![tp(&f, &[0, 2, 0, 1]), tp(&f, &[])]);

        let c = ShuffleTuple::from_entries(
            2,
            3,
            vec![th(&f, &[]), th(&f, &[0, 1, 0, 2]), th(&f, &[]), th(&f, &[2]), th(&f, &[])],
        )
        .unwrap();
        let nt = normalize_tuple(&c, &f).unwrap();
        assert!(nt.gamma_c.is_one());
        assert!(nt.beta0.is_zero());
        assert_eq!(nt.gamma0, tp(&f, &[1]));
        assert_eq!(nt.alpha, vec![tp(&f, &[2]), tp(&f, &[]), tp(&f, &[2]), tp(&f, &[])]);
    }

    #[test]
    fn normalize_zero_tuple() {
        let f = f3();
        let c = ShuffleTuple::zero(2, 4, &f).unwrap();
        let nt = normalize_tuple(&c, &f).unwrap();
        let g = &carlitz_gamma(2, &f) * &carlitz_gamma(4, &f);
        let one_over = RationalFunction::new(Poly::one(&f, Var::Theta), g).unwrap();
        assert_eq!(nt.gamma_c, *one_over.den());
        assert!(nt.beta0.is_zero());
        assert!(nt.alpha.iter().all(Poly::is_zero));
        assert_eq!(nt.gamma0, Poly::one(&f, Var::T));
    }

    #[test]
    fn vc_element_examples() {
        let f = f3();
        let at = ATContext::new(&f, 2).unwrap();
        let chen = chen_tuple(1, 2, &f).unwrap();
        let w = build_vc_element(&normalize_tuple(&chen, &f).unwrap(), 1, 2, &at).unwrap();
        assert!(w.is_zero());
        assert_eq!(w.sigma_shift(), 1);

        let c = ShuffleTuple::from_entries(1, 2, vec![th(&f, &[2]), th(&f, &[0, 2, 0, 1]), th(&f, &[])]).unwrap();
        let w = build_vc_element(&normalize_tuple(&c, &f).unwrap(), 1, 2, &at).unwrap();
        assert_eq!(w.coords()[0], BiPoly::from_t(&tp(&f, &[1, 1, 0, 2])));
        assert_eq!(w.coords()[1], BiPoly::from_t(&tp(&f, &[0, 2, 0, 1])));
        assert!(w.coords()[2].is_zero());
    }

    #[test]
    fn chen_examples() {
        let f = f3();
        let c = chen_tuple(1, 2, &f).unwrap();
        assert_eq!(c.to_string(), "1; 0; 0");
        let c = chen_tuple(2, 3, &f).unwrap();
        assert_eq!(c.to_string(), "1; 0; 0; 2; 0");
        for p in [2, 3, 5] {
            let f = FieldSpec::prime(p).unwrap();
            for r in 1..6 {
                for s in 1..6 {
                    assert_eq!(chen_tuple(r, s, &f).unwrap().a(), chen_tuple(s, r, &f).unwrap().a());
                }
            }
        }
    }

    #[test]
    fn dr_conversion() {
        let f = f3();
        assert!(to_dr_tuple(&chen_tuple(2, 3, &f).unwrap(), &f).unwrap().is_zero());
        let c = ShuffleTuple::from_entries(1, 2, vec![th(&f, &[2]), th(&f, &[0, 2, 0, 1]), th(&f, &[])]).unwrap();
        let d = to_dr_tuple(&c, &f).unwrap();
        assert_eq!(d.to_string(), "1; T^3+2T; 0");
    }

    #[test]
    fn filter_examples() {
        let f = f3();
        let c = ShuffleTuple::from_entries(1, 2, vec![th(&f, &[1]), th(&f, &[1]), th(&f, &[1])]).unwrap();
        assert_eq!(necessary_filter(&c, &f), vec![2]);
        assert!(necessary_filter(&ShuffleTuple::zero(1, 2, &f).unwrap(), &f).is_empty());
    }

    #[test]
    fn decide_examples() {
        let f = f3();
        let c = ShuffleTuple::from_entries(1, 2, vec![th(&f, &[2]), th(&f, &[0, 2, 0, 1]), th(&f, &[])]).unwrap();
        let rep = decide_torsion(&c, &f).unwrap();
        assert!(rep.is_torsion);
        assert_eq!(rep.verdict(), Verdict::SrCertified);

        let c = ShuffleTuple::from_entries(1, 2, vec![th(&f, &[1]), th(&f, &[1]), th(&f, &[])]).unwrap();
        let rep = decide_torsion(&c, &f).unwrap();
        assert!(!rep.is_torsion);
        assert_eq!(rep.verdict(), Verdict::NotSr);
    }

    #[test]
    fn shape_errors() {
        let f = f3();
        assert!(ShuffleTuple::new(1, 2, th(&f, &[1]), vec![th(&f, &[1])]).is_err());
        assert!(ShuffleTuple::new(0, 2, th(&f, &[1]), vec![th(&f, &[1])]).is_err());
        assert!(chen_tuple(0, 1, &f).is_err());
    }
}
