//! The bivariate ring `A[t] = F_q[θ][t]`, stored densely by `t`-degree with
//! coefficients in `A`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::field::FieldSpec;
use super::poly::{write_monomial, Poly, Var};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    field: FieldSpec,
    /// `coeffs[i]` is the coefficient of `t^i`, a polynomial in `θ`.
    coeffs: Vec<Poly>,
}

impl BiPoly {
    pub fn zero(field: &FieldSpec) -> Self {
        BiPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::from_theta(&Poly::one(field, Var::Theta))
    }

    pub fn from_coeffs(field: &FieldSpec, mut coeffs: Vec<Poly>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.var() == Var::Theta && c.field() == field));
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        BiPoly { field: field.clone(), coeffs }
    }

    /// A polynomial in `θ` viewed as constant in `t`.
    pub fn from_theta(c: &Poly) -> Self {
        assert_eq!(c.var(), Var::Theta);
        Self::from_coeffs(c.field(), vec![c.clone()])
    }

    /// A polynomial in `t` with `F_q` coefficients.
    pub fn from_t(c: &Poly) -> Self {
        assert_eq!(c.var(), Var::T);
        let f = c.field();
        Self::from_coeffs(f, c.coeffs().iter().map(|&a| Poly::constant(f, Var::Theta, a)).collect())
    }

    /// `c · t^i · θ^j`.
    pub fn monomial(field: &FieldSpec, c: u32, t_deg: usize, theta_deg: usize) -> Self {
        let mut coeffs = vec![Poly::zero(field, Var::Theta); t_deg + 1];
        coeffs[t_deg] = Poly::monomial(field, Var::Theta, c, theta_deg);
        Self::from_coeffs(field, coeffs)
    }

    pub fn t(field: &FieldSpec) -> Self {
        Self::monomial(field, 1, 1, 0)
    }

    /// `t − θ^e`.
    pub fn t_minus_theta_power(field: &FieldSpec, e: usize) -> Self {
        let minus_one = field.neg(1);
        Self::from_coeffs(field, vec![Poly::monomial(field, Var::Theta, minus_one, e), Poly::one(field, Var::Theta)])
    }

    /// `t − θ`.
    pub fn t_minus_theta(field: &FieldSpec) -> Self {
        Self::t_minus_theta_power(field, 1)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }
    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }
    pub fn coeff(&self, i: usize) -> Poly {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Poly::zero(&self.field, Var::Theta))
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn deg_t(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn deg_theta(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(Poly::degree).max()
    }

    /// `Some(c)` when the polynomial does not involve `t`.
    pub fn as_theta(&self) -> Option<Poly> {
        match self.coeffs.len() {
            0 => Some(Poly::zero(&self.field, Var::Theta)),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// `Some(c)` when the polynomial does not involve `θ`.
    pub fn as_t(&self) -> Option<Poly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            match c.degree() {
                None => out.push(0),
                Some(0) => out.push(c.coeff(0)),
                Some(_) => return None,
            }
        }
        Some(Poly::from_coeffs(&self.field, Var::T, out))
    }

    fn assert_compatible(&self, other: &BiPoly) {
        assert!(self.field == other.field, "polynomials over different fields");
    }

    /// Multiplication by a polynomial in `θ`.
    pub fn scale_theta(&self, c: &Poly) -> BiPoly {
        assert_eq!(c.var(), Var::Theta);
        BiPoly::from_coeffs(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn scale(&self, c: u32) -> BiPoly {
        BiPoly::from_coeffs(&self.field, self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    /// Multiplication by a polynomial in `t` with `F_q` coefficients.
    pub fn mul_t_poly(&self, a: &Poly) -> BiPoly {
        assert_eq!(a.var(), Var::T);
        if self.is_zero() || a.is_zero() {
            return BiPoly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![Poly::zero(f, Var::Theta); self.coeffs.len() + a.coeffs().len() - 1];
        for (j, &c) in a.coeffs().iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (i, s) in self.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &s.scale(c);
            }
        }
        BiPoly::from_coeffs(f, out)
    }

    /// Frobenius twist `f ↦ f^{(k)}`: every `θ`-coefficient `c(θ)` becomes
    /// `c(θ)^{q^k} = c(θ^{q^k})`. Elements of `F_q` are fixed by `x ↦ x^q`,
    /// so only the exponents of `θ` move; `t` is untouched.
    pub fn twist(&self, k: u32) -> BiPoly {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let factor = (self.field.q() as usize).checked_pow(k).expect("twist exponent overflows usize");
        BiPoly::from_coeffs(&self.field, self.coeffs.iter().map(|c| c.inflate(factor)).collect())
    }

    /// Division by a divisor monic in `t`; quotient and remainder stay in `A[t]`.
    pub fn divmod(&self, g: &BiPoly) -> Result<(BiPoly, BiPoly)> {
        self.assert_compatible(g);
        let dg = g.deg_t().ok_or(Error::DivisionByZero)?;
        if !g.coeffs[dg].is_one() {
            return Err(Error::NonMonicDivisor);
        }
        let f = &self.field;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dg {
            return Ok((BiPoly::zero(f), self.clone()));
        }
        let mut quot = vec![Poly::zero(f, Var::Theta); rem.len() - dg];
        for k in (dg..rem.len()).rev() {
            let c = core::mem::replace(&mut rem[k], Poly::zero(f, Var::Theta));
            if c.is_zero() {
                continue;
            }
            for (i, gc) in g.coeffs[..dg].iter().enumerate() {
                if !gc.is_zero() {
                    let idx = k - dg + i;
                    rem[idx] = &rem[idx] - &(&c * gc);
                }
            }
            quot[k - dg] = c;
        }
        rem.truncate(dg);
        Ok((BiPoly::from_coeffs(f, quot), BiPoly::from_coeffs(f, rem)))
    }

    /// Division by a monic polynomial in `t` (with `F_q` coefficients) that is
    /// required to be exact.
    pub fn div_exact_t_poly(&self, d: &Poly) -> Result<BiPoly> {
        let (q, r) = self.divmod(&BiPoly::from_t(d))?;
        if !r.is_zero() {
            return Err(Error::Integrality(alloc::format!("{d} does not divide {self}")));
        }
        Ok(q)
    }

    /// Synthetic division by `t − θ`: returns `(quot, rem)` with
    /// `self = (t − θ)·quot + rem` and `rem ∈ A`.
    pub fn div_t_minus_theta(&self) -> (BiPoly, Poly) {
        let f = &self.field;
        let Some(d) = self.deg_t() else {
            return (BiPoly::zero(f), Poly::zero(f, Var::Theta));
        };
        let mut quot = vec![Poly::zero(f, Var::Theta); d];
        let mut carry = Poly::zero(f, Var::Theta);
        for i in (0..=d).rev() {
            let v = &self.coeffs[i] + &carry.shift(1);
            if i == 0 {
                return (BiPoly::from_coeffs(f, quot), v);
            }
            quot[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// Writes `self = g·(t − θ)^k + Σ_{j<k} c_j (t − θ)^j` and returns
    /// `(g, [c_0, ..., c_{k-1}])`, all with coefficients in `A`.
    pub fn split_t_minus_theta(&self, k: usize) -> (BiPoly, Vec<Poly>) {
        let mut cur = self.clone();
        let mut digits = Vec::with_capacity(k);
        for _ in 0..k {
            let (q, r) = cur.div_t_minus_theta();
            digits.push(r);
            cur = q;
        }
        (cur, digits)
    }

    /// The coefficients `c_0..c_cap` with `self = Σ c_j (t − θ)^j`.
    pub fn expand_in_t_minus_theta(&self, cap: usize) -> Result<Vec<Poly>> {
        if let Some(d) = self.deg_t() {
            if d > cap {
                return Err(Error::DegreeExceedsCap { degree: d, cap });
            }
        }
        let (rest, digits) = self.split_t_minus_theta(cap + 1);
        debug_assert!(rest.is_zero());
        Ok(digits)
    }

    /// Inverse of [`BiPoly::expand_in_t_minus_theta`].
    pub fn from_t_minus_theta_expansion(field: &FieldSpec, digits: &[Poly]) -> BiPoly {
        let x = BiPoly::t_minus_theta(field);
        digits.iter().rev().fold(BiPoly::zero(field), |acc, c| &(&acc * &x) + &BiPoly::from_theta(c))
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut acc = BiPoly::one(&self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        self.assert_compatible(rhs);
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = long.coeffs.clone();
        for (o, s) in out.iter_mut().zip(&short.coeffs) {
            *o = &*o + s;
        }
        BiPoly::from_coeffs(&self.field, out)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl<'a> Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        self.assert_compatible(rhs);
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![Poly::zero(f, Var::Theta); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        BiPoly::from_coeffs(f, out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: &BiPoly) -> BiPoly { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            for (j, &a) in c.coeffs().iter().enumerate().rev() {
                if a == 0 {
                    continue;
                }
                if !first {
                    f.write_str("+")?;
                }
                first = false;
                write_monomial(f, &self.field, a, &[('t', i), ('T', j)])?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    fn th(ints: &[i64]) -> Poly {
        Poly::from_ints(&f3(), Var::Theta, ints)
    }

    #[test]
    fn divmod_of_power_by_itself() {
        let f = f3();
        let g = BiPoly::t_minus_theta(&f).pow(3);
        let (q, r) = g.divmod(&g).unwrap();
        assert_eq!(q, BiPoly::one(&f));
        assert!(r.is_zero());
    }

    #[test]
    fn divmod_t4_by_cube_reassembles() {
        let f = f3();
        let g = BiPoly::t_minus_theta(&f).pow(3);
        let t4 = BiPoly::monomial(&f, 1, 4, 0);
        let (q, r) = t4.divmod(&g).unwrap();
        // quotient t + 3θ = t over F_3
        assert_eq!(q, BiPoly::t(&f));
        assert!(r.deg_t() < Some(3));
        assert_eq!(&(&g * &q) + &r, t4);
        assert_eq!(r, &t4 - &(&g * &BiPoly::t(&f)));
    }

    #[test]
    fn divmod_rejects_non_monic() {
        let f = f3();
        let two_t = BiPoly::monomial(&f, 2, 1, 0);
        assert_eq!(BiPoly::one(&f).divmod(&two_t).unwrap_err(), Error::NonMonicDivisor);
        assert_eq!(BiPoly::one(&f).divmod(&BiPoly::zero(&f)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn twist_examples() {
        let f = f3();
        assert_eq!(BiPoly::t_minus_theta(&f).twist(1), BiPoly::t_minus_theta_power(&f, 3));
        let c = BiPoly::from_theta(&th(&[0, 1, 2]));
        assert_eq!(c.twist(0), c);
        assert_eq!(c.twist(1), BiPoly::from_theta(&th(&[0, 0, 0, 1, 0, 0, 2])));
    }

    #[test]
    fn expansion_examples() {
        let f = f3();
        let g = BiPoly::t_minus_theta_power(&f, 3);
        let c = g.expand_in_t_minus_theta(2).unwrap();
        // t − θ³ = (t − θ) + (θ − θ³)
        assert_eq!(c, vec![th(&[0, 1, 0, -1]), th(&[1]), th(&[])]);
        let one = BiPoly::one(&f).expand_in_t_minus_theta(2).unwrap();
        assert_eq!(one, vec![th(&[1]), th(&[]), th(&[])]);
        let sq = BiPoly::t_minus_theta(&f).pow(2).expand_in_t_minus_theta(2).unwrap();
        assert_eq!(sq, vec![th(&[]), th(&[]), th(&[1])]);
        assert_eq!(
            BiPoly::monomial(&f, 1, 3, 0).expand_in_t_minus_theta(2).unwrap_err(),
            Error::DegreeExceedsCap { degree: 3, cap: 2 }
        );
    }

    #[test]
    fn display_matches_grammar() {
        let f = f3();
        // 2t³ + 2t + 2θ³
        let h = &(&BiPoly::monomial(&f, 2, 3, 0) + &BiPoly::monomial(&f, 2, 1, 0)) + &BiPoly::monomial(&f, 2, 0, 3);
        assert_eq!(h.to_string(), "2t^3+2t+2T^3");
        assert_eq!(BiPoly::monomial(&f, 1, 2, 5).to_string(), "t^2T^5");
    }
}
