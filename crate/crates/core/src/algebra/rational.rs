//! Elements of `k = F_q(θ)` in lowest terms with a monic denominator.

use core::fmt;

use super::field::FieldSpec;
use super::poly::{Poly, Var};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if num.var() != Var::Theta || den.var() != Var::Theta {
            return Err(Error::InvalidArgument("rational functions are written in θ".into()));
        }
        num.field().check_same(den.field())?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero(num.field());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lead = den.lead();
        if lead != 1 {
            let inv = num.field().inv(lead).expect("nonzero");
            num = num.scale(inv);
            den = den.scale(inv);
        }
        RationalFunction { num, den }
    }

    pub fn zero(field: &FieldSpec) -> Self {
        RationalFunction { num: Poly::zero(field, Var::Theta), den: Poly::one(field, Var::Theta) }
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::from_poly(Poly::one(field, Var::Theta))
    }

    pub fn from_poly(num: Poly) -> Self {
        assert_eq!(num.var(), Var::Theta);
        let den = Poly::one(num.field(), Var::Theta);
        RationalFunction { num, den }
    }

    pub fn constant(field: &FieldSpec, c: u32) -> Self {
        Self::from_poly(Poly::constant(field, Var::Theta, c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }
    pub fn den(&self) -> &Poly {
        &self.den
    }
    pub fn field(&self) -> &FieldSpec {
        self.num.field()
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// `deg num − deg den`, the negative of the `1/θ`-valuation; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree().unwrap_or(0) as i64)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::canonical(&self.num + &other.num, self.den.clone());
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Self::canonical(num, &self.den * &other.den)
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::canonical(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Multiplies by a polynomial and returns the result if it lies in `A`.
    pub fn mul_poly_integral(&self, p: &Poly) -> Option<Poly> {
        (p * &self.num).div_exact(&self.den)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly| {
            let s = alloc::format!("{p}");
            if p.coeffs().iter().filter(|&&c| c != 0).count() > 1 || s.contains('(') {
                alloc::format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rational({self})")
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
    fn canonical_form() {
        // (2θ² + θ) / (2θ) = (2θ + 1)/2 = θ + 2
        let r = RationalFunction::new(th(&[0, 1, 2]), th(&[0, 2])).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.num(), &th(&[2, 1]));
        let z = RationalFunction::new(th(&[]), th(&[0, 1])).unwrap();
        assert_eq!(z, RationalFunction::zero(&f3()));
        assert_eq!(RationalFunction::new(th(&[1]), th(&[])).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn display_and_arith() {
        let r = RationalFunction::new(th(&[2, 2, 0, 1]), th(&[0, 2, 0, 1])).unwrap();
        assert_eq!(r.to_string(), "(T^3+2T+2)/(T^3+2T)");
        let back = r.mul(&RationalFunction::from_poly(th(&[0, 2, 0, 1])));
        assert_eq!(back, RationalFunction::from_poly(th(&[2, 2, 0, 1])));
        assert_eq!(r.sub(&r), RationalFunction::zero(&f3()));
        assert_eq!(r.degree(), Some(0));
    }
}
