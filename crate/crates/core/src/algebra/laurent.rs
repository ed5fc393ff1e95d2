//! Truncated Laurent series in `1/θ`, i.e. elements of `k_∞ = F_q((1/θ))`
//! known up to an explicit precision watermark.
//!
//! A series stores coefficients of `θ^{-e}` for `valuation ≤ e < exact_order`.
//! Every coefficient with exponent below `exact_order` is guaranteed; nothing
//! is claimed at or beyond it. Arithmetic propagates the watermark so that a
//! result never claims more than its operands justify.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::field::FieldSpec;
use super::poly::Poly;
use super::rational::RationalFunction;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    field: FieldSpec,
    /// Exponent of `1/θ` carried by `coeffs[0]`.
    valuation: i64,
    coeffs: Vec<u32>,
    exact_order: i64,
}

impl LaurentSeries {
    /// Zero, known below exponent `order`.
    pub fn zero(field: &FieldSpec, order: i64) -> Self {
        LaurentSeries { field: field.clone(), valuation: order, coeffs: Vec::new(), exact_order: order }
    }

    /// Coefficients of `θ^{-valuation-i}`; normalised on construction.
    pub fn from_coeffs(field: &FieldSpec, valuation: i64, coeffs: Vec<u32>, exact_order: i64) -> Self {
        let mut s = LaurentSeries { field: field.clone(), valuation, coeffs, exact_order };
        s.normalize();
        s
    }

    /// The expansion of a polynomial in `θ`, kept below exponent `order`.
    pub fn from_poly(p: &Poly, order: i64) -> Self {
        let f = p.field();
        match p.degree() {
            None => Self::zero(f, order),
            Some(d) => {
                let coeffs = p.coeffs().iter().rev().copied().collect();
                Self::from_coeffs(f, -(d as i64), coeffs, order)
            }
        }
    }

    /// The expansion of `num/den`, exact below exponent `order`.
    pub fn from_rational(r: &RationalFunction, order: i64) -> Self {
        let f = r.field();
        if r.is_zero() {
            return Self::zero(f, order);
        }
        let dn = r.num().degree().unwrap_or(0) as i64;
        let dd = r.den().degree().unwrap_or(0) as i64;
        let slack = dn.abs() + dd.abs() + 1;
        let num = Self::from_poly(r.num(), order + slack);
        let den = Self::from_poly(r.den(), order + 2 * slack);
        let out = num.mul(&den.inv().expect("nonzero denominator"));
        debug_assert!(out.exact_order >= order);
        out.truncate(order)
    }

    fn normalize(&mut self) {
        let keep = (self.exact_order - self.valuation).max(0) as usize;
        self.coeffs.truncate(keep);
        let lead = self.coeffs.iter().position(|&c| c != 0);
        match lead {
            None => {
                self.coeffs.clear();
                self.valuation = self.exact_order;
            }
            Some(k) => {
                self.coeffs.drain(..k);
                self.valuation += k as i64;
                while self.coeffs.last() == Some(&0) {
                    self.coeffs.pop();
                }
            }
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }
    pub fn exact_order(&self) -> i64 {
        self.exact_order
    }
    /// Whether the series vanishes below its watermark.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// Exponent of the first nonzero coefficient, `None` if zero to precision.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.valuation)
    }
    /// Coefficient of `θ^{-e}`; zero when outside the stored range.
    pub fn coeff(&self, e: i64) -> u32 {
        if e < self.valuation {
            return 0;
        }
        self.coeffs.get((e - self.valuation) as usize).copied().unwrap_or(0)
    }
    /// `(exponent, coefficient)` pairs of the nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(move |(i, &c)| (self.valuation + i as i64, c))
    }

    /// Forgets everything at or beyond exponent `order`.
    pub fn truncate(&self, order: i64) -> Self {
        let mut s = self.clone();
        s.exact_order = s.exact_order.min(order);
        s.normalize();
        s
    }

    /// Whether two series agree on the exponents both of them certify.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let order = self.exact_order.min(other.exact_order);
        self.truncate(order) == other.truncate(order)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.field == other.field, "series over different fields");
        let order = self.exact_order.min(other.exact_order);
        let start = self.valuation.min(other.valuation).min(order);
        let len = (order - start).max(0) as usize;
        let mut coeffs = vec![0u32; len];
        for s in [self, other] {
            for (e, c) in s.terms() {
                if e < order {
                    let i = (e - start) as usize;
                    coeffs[i] = self.field.add(coeffs[i], c);
                }
            }
        }
        Self::from_coeffs(&self.field, start, coeffs, order)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        LaurentSeries {
            field: f.clone(),
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
            exact_order: self.exact_order,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = &self.field;
        let coeffs = self.coeffs.iter().map(|&a| f.mul(a, c)).collect();
        Self::from_coeffs(f, self.valuation, coeffs, self.exact_order)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert!(self.field == other.field, "series over different fields");
        let order = (self.exact_order + other.valuation).min(other.exact_order + self.valuation);
        let start = self.valuation + other.valuation;
        if self.is_zero() || other.is_zero() || start >= order {
            return Self::zero(&self.field, order);
        }
        let len = ((order - start) as usize).min(self.coeffs.len() + other.coeffs.len() - 1);
        let f = &self.field;
        let mut coeffs = vec![0u32; len];
        for (i, &a) in self.coeffs.iter().enumerate().take(len) {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        Self::from_coeffs(f, start, coeffs, order)
    }

    /// Multiplicative inverse. Fails when the series is zero to its precision.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let known = (self.exact_order - self.valuation) as usize;
        let a0_inv = f.inv(self.coeffs[0])?;
        let mut out = vec![0u32; known];
        out[0] = a0_inv;
        for k in 1..known {
            let mut acc = 0u32;
            for i in 1..=k.min(self.coeffs.len() - 1) {
                acc = f.add(acc, f.mul(self.coeffs[i], out[k - i]));
            }
            out[k] = f.neg(f.mul(a0_inv, acc));
        }
        Ok(Self::from_coeffs(f, -self.valuation, out, self.exact_order - 2 * self.valuation))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::from_coeffs(&self.field, 0, vec![1], i64::MAX / 4);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent[")?;
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}·θ^{}", -e)?;
        }
        write!(f, " + O(θ^{})]", -self.exact_order)
    }
}
