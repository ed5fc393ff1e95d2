//! Dense univariate polynomials over `F_q` in either `θ` or `t`.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::field::FieldSpec;
use crate::{Error, Result};

/// Which indeterminate a polynomial is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// The variable of `A = F_q[θ]`, written `T` in text.
    Theta,
    /// The motivic variable `t`.
    T,
}

impl Var {
    pub fn letter(self) -> char {
        match self {
            Var::Theta => 'T',
            Var::T => 't',
        }
    }
}

/// A polynomial with coefficients in `F_q`, lowest degree first.
///
/// The zero polynomial has no coefficients and degree `None`, which orders
/// below every `Some(d)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    var: Var,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn zero(field: &FieldSpec, var: Var) -> Self {
        Poly { field: field.clone(), var, coeffs: Vec::new() }
    }

    pub fn one(field: &FieldSpec, var: Var) -> Self {
        Self::constant(field, var, 1)
    }

    pub fn constant(field: &FieldSpec, var: Var, c: u32) -> Self {
        Self::from_coeffs(field, var, vec![c])
    }

    pub fn monomial(field: &FieldSpec, var: Var, c: u32, degree: usize) -> Self {
        if c == 0 {
            return Self::zero(field, var);
        }
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = c;
        Poly { field: field.clone(), var, coeffs }
    }

    /// The polynomial `x` in the given variable.
    pub fn x(field: &FieldSpec, var: Var) -> Self {
        Self::monomial(field, var, 1, 1)
    }

    pub fn from_coeffs(field: &FieldSpec, var: Var, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|&c| c < field.q()));
        Poly { field: field.clone(), var, coeffs }
    }

    /// Integer coefficients, lowest first, reduced mod `p`.
    pub fn from_ints(field: &FieldSpec, var: Var, ints: &[i64]) -> Self {
        Self::from_coeffs(field, var, ints.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }
    pub fn var(&self) -> Var {
        self.var
    }
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }
    pub fn into_coeffs(self) -> Vec<u32> {
        self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }
    /// Leading coefficient; `0` for the zero polynomial.
    pub fn lead(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }
    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    /// The same coefficients read in another variable.
    pub fn with_var(&self, var: Var) -> Poly {
        Poly { field: self.field.clone(), var, coeffs: self.coeffs.clone() }
    }

    /// `f(θ) ↦ f(t)`.
    pub fn subst_theta_to_t(&self) -> Poly {
        self.with_var(Var::T)
    }

    fn assert_compatible(&self, other: &Poly) {
        assert!(self.field == other.field, "polynomials over different fields");
        assert_eq!(self.var, other.var, "polynomials in different variables");
    }

    pub fn scale(&self, c: u32) -> Poly {
        if c == 0 {
            return Poly::zero(&self.field, self.var);
        }
        let f = &self.field;
        Poly::from_coeffs(f, self.var, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), var: self.var, coeffs }
    }

    /// `f(x) ↦ f(x^k)`.
    pub fn inflate(&self, k: usize) -> Poly {
        assert!(k >= 1);
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let mut coeffs = vec![0; (self.coeffs.len() - 1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c;
        }
        Poly { field: self.field.clone(), var: self.var, coeffs }
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            0 | 1 => self.clone(),
            c => self.scale(self.field.inv(c).expect("nonzero lead")),
        }
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field, self.var);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn pow_mod(&self, mut e: u64, modulus: &Poly) -> Poly {
        let reduce = |p: Poly| p.divmod(modulus).expect("nonzero modulus").1;
        let mut base = reduce(self.clone());
        let mut acc = reduce(Poly::one(&self.field, self.var));
        while e > 0 {
            if e & 1 == 1 {
                acc = reduce(&acc * &base);
            }
            e >>= 1;
            if e > 0 {
                base = reduce(&base * &base);
            }
        }
        acc
    }

    /// Euclidean division `self = g·quot + rem` with `deg rem < deg g`.
    ///
    /// Any nonzero divisor is accepted: the coefficient ring is a field.
    pub fn divmod(&self, g: &Poly) -> Result<(Poly, Poly)> {
        self.assert_compatible(g);
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let lead_inv = f.inv(g.lead())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dg {
            return Ok((Poly::zero(f, self.var), self.clone()));
        }
        let mut quot = vec![0u32; rem.len() - dg];
        for k in (dg..rem.len()).rev() {
            let c = rem[k];
            if c == 0 {
                continue;
            }
            let factor = f.mul(c, lead_inv);
            quot[k - dg] = factor;
            for (i, &gc) in g.coeffs.iter().enumerate() {
                if gc != 0 {
                    let idx = k - dg + i;
                    rem[idx] = f.sub(rem[idx], f.mul(factor, gc));
                }
            }
        }
        rem.truncate(dg);
        Ok((Poly::from_coeffs(f, self.var, quot), Poly::from_coeffs(f, self.var, rem)))
    }

    /// `Some(self / g)` when `g` divides `self` exactly.
    pub fn div_exact(&self, g: &Poly) -> Option<Poly> {
        let (q, r) = self.divmod(g).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.assert_compatible(other);
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divmod(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic lcm; zero if either argument is zero.
    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field, self.var);
        }
        let g = self.gcd(other);
        let q = self.div_exact(&g).expect("gcd divides");
        (&q * other).monic()
    }
}

/// Monic gcd of two polynomials, rejecting `gcd(0, 0)`.
pub fn gcd_monic(f: &Poly, g: &Poly) -> Result<Poly> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::InvalidArgument("gcd(0, 0) is undefined".into()));
    }
    Ok(f.gcd(g))
}

/// Monic lcm of two polynomials, rejecting `lcm(0, 0)`.
pub fn lcm_monic(f: &Poly, g: &Poly) -> Result<Poly> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::InvalidArgument("lcm(0, 0) is undefined".into()));
    }
    Ok(f.lcm(g))
}

pub(crate) fn mul_slices(field: &FieldSpec, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    if field.is_prime_field() {
        let p = field.p() as u64;
        let bound = (p - 1) as u128 * (p - 1) as u128 * a.len().min(b.len()) as u128;
        if bound < u64::MAX as u128 {
            let mut acc = vec![0u64; out.len()];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    acc[i + j] += x as u64 * y as u64;
                }
            }
            for (o, a) in out.iter_mut().zip(acc) {
                *o = (a % p) as u32;
            }
        } else {
            for (i, &x) in a.iter().enumerate() {
                for (j, &y) in b.iter().enumerate() {
                    out[i + j] = ((out[i + j] as u64 + x as u64 * y as u64 % p) % p) as u32;
                }
            }
        }
    } else {
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(x, y));
            }
        }
    }
    out
}

pub(crate) fn add_slices(field: &FieldSpec, a: &[u32], b: &[u32]) -> Vec<u32> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, &s) in out.iter_mut().zip(short) {
        *o = field.add(*o, s);
    }
    out
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.assert_compatible(rhs);
        Poly::from_coeffs(&self.field, self.var, add_slices(&self.field, &self.coeffs, &rhs.coeffs))
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly { field: f.clone(), var: self.var, coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_compatible(rhs);
        Poly::from_coeffs(&self.field, self.var, mul_slices(&self.field, &self.coeffs, &rhs.coeffs))
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Text form of a field element: the integer for prime-subfield elements,
/// otherwise a parenthesised polynomial in the generator `g`.
pub(crate) fn coeff_text(field: &FieldSpec, c: u32) -> (String, bool) {
    if c < field.p() {
        return (c.to_string(), false);
    }
    let coords = field.coords(c);
    let mut s = String::new();
    let mut terms = 0;
    for (i, &d) in coords.iter().enumerate().rev() {
        if d == 0 {
            continue;
        }
        if terms > 0 {
            s.push('+');
        }
        terms += 1;
        match (i, d) {
            (0, d) => s.push_str(&d.to_string()),
            (_, 1) => {}
            (_, d) => s.push_str(&d.to_string()),
        }
        if i >= 1 {
            s.push('g');
        }
        if i >= 2 {
            s.push('^');
            s.push_str(&i.to_string());
        }
    }
    if terms > 1 {
        (alloc::format!("({s})"), true)
    } else {
        (s, true)
    }
}

/// Writes `c·x1^e1·x2^e2...` in the text grammar (no sign, `c ≠ 0`).
pub(crate) fn write_monomial(
    out: &mut impl fmt::Write,
    field: &FieldSpec,
    c: u32,
    powers: &[(char, usize)],
) -> fmt::Result {
    let nontrivial: Vec<&(char, usize)> = powers.iter().filter(|(_, e)| *e > 0).collect();
    if nontrivial.is_empty() {
        return out.write_str(&coeff_text(field, c).0);
    }
    if c != 1 {
        out.write_str(&coeff_text(field, c).0)?;
    }
    for (v, e) in nontrivial {
        out.write_char(*v)?;
        if *e > 1 {
            write!(out, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            write_monomial(f, &self.field, c, &[(self.var.letter(), d)])?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
