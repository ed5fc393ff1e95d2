//! Finite fields `F_q`, `q = p^m`.
//!
//! Elements are encoded as integers in `[0, q)`: the coordinates
//! `c_0 + c_1 g + ... + c_{m-1} g^{m-1}` over `F_p` (with `g` a root of the
//! modulus) become the base-`p` digits `c_0 + c_1 p + ...`. The prime subfield
//! therefore encodes as itself and `0`, `1` are the additive and
//! multiplicative identities. Prime fields use direct modular arithmetic;
//! extension fields multiply through discrete log tables.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::poly::{Poly, Var};
use crate::{Error, Result};

/// Largest `q` accepted for extension fields (log tables are `O(q)`).
pub const MAX_EXTENSION_ORDER: u32 = 1 << 16;
/// Largest accepted characteristic.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// Handle to a finite field. Cheap to clone; all clones share one table.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, lowest coefficient first, length `m + 1`; `None` when `m = 1`.
    modulus: Option<Vec<u32>>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec(Arc::new(Inner {
            p: p as u32,
            m: 1,
            q: p as u32,
            modulus: None,
            exp: Vec::new(),
            log: Vec::new(),
        })))
    }

    /// `F_{p^m}`. With `m > 1` and no modulus, the lexicographically first
    /// monic irreducible polynomial of degree `m` over `F_p` is used.
    pub fn new(p: u64, m: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        let base = Self::prime(p)?;
        if m == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        if m == 1 {
            return match modulus {
                None => Ok(base),
                Some(ref c) if c.len() == 2 && c[1] == 1 => Ok(base),
                Some(_) => Err(Error::ReducibleModulus),
            };
        }
        let q = (p as u128).pow(m);
        if q > MAX_EXTENSION_ORDER as u128 {
            return Err(Error::InvalidField(format!("q = {p}^{m} exceeds the supported order {MAX_EXTENSION_ORDER}")));
        }
        let modulus = match modulus {
            Some(c) => {
                let c: Vec<u32> = c.into_iter().map(|x| x % p as u32).collect();
                if c.len() != m as usize + 1 || c[m as usize] != 1 {
                    return Err(Error::ReducibleModulus);
                }
                if !is_irreducible(&base, &c) {
                    return Err(Error::ReducibleModulus);
                }
                c
            }
            None => find_irreducible(&base, m as usize),
        };
        let (exp, log) = build_log_tables(p as u32, q as u32, &modulus)?;
        Ok(FieldSpec(Arc::new(Inner { p: p as u32, m, q: q as u32, modulus: Some(modulus), exp, log })))
    }

    /// Builds `F_q` from `q` alone, deriving `p` and `m`.
    pub fn from_order(q: u64) -> Result<Self> {
        let mut p = 2u64;
        while p <= q && !q.is_multiple_of(p) {
            p += 1;
        }
        if p > q {
            return Err(Error::InvalidField(format!("{q} is not a prime power")));
        }
        let mut rest = q;
        let mut m = 0u32;
        while rest.is_multiple_of(p) {
            rest /= p;
            m += 1;
        }
        if rest != 1 {
            return Err(Error::InvalidField(format!("{q} is not a prime power")));
        }
        Self::new(p, m, None)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn m(&self) -> u32 {
        self.0.m
    }
    pub fn q(&self) -> u32 {
        self.0.q
    }
    pub fn modulus(&self) -> Option<&[u32]> {
        self.0.modulus.as_deref()
    }
    pub fn is_prime_field(&self) -> bool {
        self.0.m == 1
    }

    /// Reduces an integer into the prime subfield.
    pub fn from_int(&self, v: i64) -> u32 {
        v.rem_euclid(self.0.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if self.0.m == 1 {
            let s = a as u64 + b as u64;
            return (s % p as u64) as u32;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.0.m {
            let d = (a % p + b % p) % p;
            out += d * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let p = self.0.p;
        if self.0.m == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let mut a = a;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.0.m {
            let d = a % p;
            out += ((p - d) % p) * place;
            a /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.0.m == 1 {
            return ((a as u64 * b as u64) % self.0.p as u64) as u32;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.0.q as usize - 1;
        let i = (self.0.log[a as usize] as usize + self.0.log[b as usize] as usize) % n;
        self.0.exp[i]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if self.0.m == 1 {
            return Ok(self.pow(a, self.0.p as u64 - 2));
        }
        let n = self.0.q as usize - 1;
        let l = self.0.log[a as usize] as usize;
        Ok(self.0.exp[(n - l) % n])
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Coordinates over `F_p`, lowest first, always of length `m`.
    pub fn coords(&self, mut a: u32) -> Vec<u32> {
        let p = self.0.p;
        let mut out = Vec::with_capacity(self.0.m as usize);
        for _ in 0..self.0.m {
            out.push(a % p);
            a /= p;
        }
        out
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<u32> {
        if coords.len() != self.0.m as usize || coords.iter().any(|&c| c >= self.0.p) {
            return Err(Error::InvalidArgument("coordinates do not describe a field element".into()));
        }
        Ok(coords.iter().rev().fold(0u32, |acc, &c| acc * self.0.p + c))
    }

    /// The class of `x` modulo the defining polynomial (`p` itself when `m = 1`
    /// is meaningless; returns `None` there).
    pub fn generator(&self) -> Option<u32> {
        (self.0.m > 1).then_some(self.0.p)
    }

    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if value >= self.0.q {
            return Err(Error::InvalidArgument(format!("{value} is not below q = {}", self.0.q)));
        }
        Ok(FieldElement { field: self.clone(), value })
    }

    pub(crate) fn check_same(&self, other: &FieldSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}
impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.modulus {
            None => write!(f, "F_{}", self.0.p),
            Some(m) => write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.m, m),
        }
    }
}

fn ext_mul(p: u32, modulus: &[u32], a: &[u32], b: &[u32]) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * m - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for k in (m..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for (i, &mc) in modulus[..m].iter().enumerate() {
            let sub = c * mc as u64 % p as u64;
            prod[k - m + i] = (prod[k - m + i] + p as u64 - sub) % p as u64;
        }
    }
    prod.truncate(m);
    prod.into_iter().map(|x| x as u32).collect()
}

fn encode(p: u32, coords: &[u32]) -> u32 {
    coords.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

fn decode(p: u32, m: usize, mut v: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        out.push(v % p);
        v /= p;
    }
    out
}

fn build_log_tables(p: u32, q: u32, modulus: &[u32]) -> Result<(Vec<u32>, Vec<u32>)> {
    let m = modulus.len() - 1;
    let n = q as usize - 1;
    'candidates: for cand in 2..q {
        let g = decode(p, m, cand);
        let mut exp = vec![0u32; n];
        let mut log = vec![0u32; q as usize];
        let mut cur = decode(p, m, 1);
        for (k, slot) in exp.iter_mut().enumerate() {
            let v = encode(p, &cur);
            if k > 0 && v == 1 {
                continue 'candidates;
            }
            *slot = v;
            log[v as usize] = k as u32;
            cur = ext_mul(p, modulus, &cur, &g);
        }
        if encode(p, &cur) == 1 {
            return Ok((exp, log));
        }
    }
    Err(Error::ReducibleModulus)
}

fn is_irreducible(base: &FieldSpec, coeffs: &[u32]) -> bool {
    let f = Poly::from_coeffs(base, Var::T, coeffs.to_vec());
    let deg = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    let x = Poly::monomial(base, Var::T, 1, 1);
    let mut h = x.clone();
    for _ in 0..deg / 2 {
        h = h.pow_mod(base.p() as u64, &f);
        let g = (&h - &x).gcd(&f);
        if g.degree() != Some(0) {
            return false;
        }
    }
    true
}

fn find_irreducible(base: &FieldSpec, m: usize) -> Vec<u32> {
    let p = base.p();
    let count = (p as u64).pow(m as u32);
    for idx in 0..count {
        let mut coeffs = decode(p, m, idx as u32);
        coeffs.push(1);
        if coeffs[0] != 0 && is_irreducible(base, &coeffs) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// An element of `F_q` bundled with its field, for checked arithmetic.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldSpec,
    value: u32,
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }
    pub fn value(&self) -> u32 {
        self.value
    }
    pub fn coords(&self) -> Vec<u32> {
        self.field.coords(self.value)
    }
    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn with(&self, value: u32) -> FieldElement {
        FieldElement { field: self.field.clone(), value }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.field.check_same(&other.field)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }
    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.field.check_same(&other.field)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }
    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.field.check_same(&other.field)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }
    pub fn neg(&self) -> FieldElement {
        self.with(self.field.neg(self.value))
    }
    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.with(self.field.inv(self.value)?))
    }
    pub fn pow(&self, e: u64) -> FieldElement {
        self.with(self.field.pow(self.value, e))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} in {:?}", self.coords(), self.field)
    }
}
