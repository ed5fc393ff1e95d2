//! Reduction of elements of the Frobenius module `M'` onto its `k̄[σ]`-basis,
//! the map `Δ : M' → E'(k̄)`, and the `F_q[t]`-action on `E'` it induces.
//!
//! `M'` has `k̄[t]`-basis `x_0..x_{n−1}` with
//!
//! ```text
//! σ x_0 = (t−θ)^n x_0
//! σ x_ℓ = H_{ℓ−1}^{(−1)} (t−θ)^n x_0 + (t−θ)^{n−ℓ} x_ℓ      (1 ≤ ℓ ≤ n−1)
//! ```
//!
//! and `σ f = f^{(−1)} σ`. The `k̄[σ]`-basis is `ν = (t−θ)^j x_ℓ` for
//! `0 ≤ j ≤ n−1−ℓ`, so `d = n(n+1)/2`. For `f ∈ A[t]`, writing
//! `f = g (t−θ)^{n−ℓ} + γ` with `deg_t γ < n−ℓ` gives
//!
//! ```text
//! f x_ℓ = γ x_ℓ + σ( g^{(1)} x_ℓ − g^{(1)} H_{ℓ−1} x_0 )
//! ```
//!
//! (without the `H` term when `ℓ = 0`). `γ` expands over the basis with
//! coefficients in `A`, and `δ(σ^κ c) = c` for `c ∈ A`, so `Δ` simply sums the
//! expansion coefficients from every `σ`-level. Every quantity stays in `A[t]`;
//! no `q`-th roots are ever formed.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::bipoly::BiPoly;
use crate::algebra::field::FieldSpec;
use crate::algebra::poly::{Poly, Var};
use crate::special::ATContext;
use crate::{Error, Result};

/// Upper bound on the number of stored `F_q` coefficients of one
/// intermediate polynomial during reduction.
pub const REDUCTION_BUDGET: usize = 1 << 24;

/// `σ^κ (Σ f_ℓ x_ℓ)` with `f_ℓ ∈ A[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVector {
    coords: Vec<BiPoly>,
    sigma_shift: u32,
}

impl ModuleVector {
    pub fn new(coords: Vec<BiPoly>, sigma_shift: u32) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::ShapeMismatch("a module vector needs at least one coordinate".into()));
        }
        let field = coords[0].field().clone();
        if coords.iter().any(|c| c.field() != &field) {
            return Err(Error::FieldMismatch);
        }
        Ok(ModuleVector { coords, sigma_shift })
    }

    pub fn zero(field: &FieldSpec, n: usize) -> Self {
        ModuleVector { coords: vec![BiPoly::zero(field); n], sigma_shift: 0 }
    }

    /// `f · x_ℓ`.
    pub fn single(n: usize, l: usize, f: BiPoly) -> Self {
        let mut v = Self::zero(f.field(), n);
        v.coords[l] = f;
        v
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }
    pub fn coords(&self) -> &[BiPoly] {
        &self.coords
    }
    pub fn sigma_shift(&self) -> u32 {
        self.sigma_shift
    }
    pub fn field(&self) -> &FieldSpec {
        self.coords[0].field()
    }
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(BiPoly::is_zero)
    }

    pub fn with_sigma_shift(mut self, k: u32) -> Self {
        self.sigma_shift = k;
        self
    }

    /// Coordinatewise sum; both summands must sit at the same `σ`-level.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() || self.sigma_shift != other.sigma_shift {
            return Err(Error::ShapeMismatch("module vectors of different shape or σ-level".into()));
        }
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(ModuleVector { coords, sigma_shift: self.sigma_shift })
    }

    /// Multiplication by `a ∈ F_q[t]`. Since `a^{(1)} = a`, this commutes with `σ`.
    pub fn mul_t_poly(&self, a: &Poly) -> Self {
        ModuleVector { coords: self.coords.iter().map(|c| c.mul_t_poly(a)).collect(), sigma_shift: self.sigma_shift }
    }

    /// Multiplication by `b ∈ A[t]` (only meaningful at `σ`-level 0).
    pub fn mul_bipoly(&self, b: &BiPoly) -> Self {
        ModuleVector { coords: self.coords.iter().map(|c| c * b).collect(), sigma_shift: self.sigma_shift }
    }
}

/// A point of `E'`: one element of `A` per basis vector `ν = (t−θ)^j x_ℓ`.
///
/// Flat layout: block `ℓ` starts at `offset(ℓ) = Σ_{i<ℓ} (n−i)` and lists
/// `j = n−1−ℓ` down to `j = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EPoint {
    n: usize,
    slots: Vec<Poly>,
}

impl EPoint {
    pub fn zero(field: &FieldSpec, n: usize) -> Self {
        EPoint { n, slots: vec![Poly::zero(field, Var::Theta); n * (n + 1) / 2] }
    }

    pub fn from_slots(n: usize, slots: Vec<Poly>) -> Result<Self> {
        if slots.len() != n * (n + 1) / 2 {
            return Err(Error::ShapeMismatch(format!("expected {} slots for n = {n}", n * (n + 1) / 2)));
        }
        if slots.iter().any(|s| s.var() != Var::Theta) {
            return Err(Error::InvalidArgument("point coordinates live in A = F_q[θ]".into()));
        }
        Ok(EPoint { n, slots })
    }

    pub fn offset(n: usize, l: usize) -> usize {
        l * n - l * l.saturating_sub(1) / 2
    }

    /// Flat index of slot `(ℓ, j)`.
    pub fn index(n: usize, l: usize, j: usize) -> usize {
        assert!(l < n && j < n - l, "slot ({l}, {j}) out of range for n = {n}");
        Self::offset(n, l) + (n - 1 - l - j)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn dim(&self) -> usize {
        self.slots.len()
    }
    pub fn slots(&self) -> &[Poly] {
        &self.slots
    }
    pub fn get(&self, l: usize, j: usize) -> &Poly {
        &self.slots[Self::index(self.n, l, j)]
    }
    pub fn is_zero(&self) -> bool {
        self.slots.iter().all(Poly::is_zero)
    }

    /// `(ℓ, j, value)` in flat order.
    pub fn labelled(&self) -> impl Iterator<Item = (usize, usize, &Poly)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |l| (0..n - l).rev().map(move |j| (l, j))).map(move |(l, j)| (l, j, self.get(l, j)))
    }

    fn accumulate(&mut self, l: usize, j: usize, c: &Poly) {
        if !c.is_zero() {
            let i = Self::index(self.n, l, j);
            self.slots[i] = &self.slots[i] + c;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        EPoint { n: self.n, slots: self.slots.iter().zip(&other.slots).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        EPoint { n: self.n, slots: self.slots.iter().zip(&other.slots).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: u32) -> Self {
        EPoint { n: self.n, slots: self.slots.iter().map(|a| a.scale(c)).collect() }
    }

    /// The representative `Σ slot(ℓ, j) (t−θ)^j x_ℓ` in `M'`.
    pub fn to_module_vector(&self) -> ModuleVector {
        let field = self.slots[0].field().clone();
        let coords = (0..self.n)
            .map(|l| {
                let digits: Vec<Poly> = (0..self.n - l).map(|j| self.get(l, j).clone()).collect();
                BiPoly::from_t_minus_theta_expansion(&field, &digits)
            })
            .collect();
        ModuleVector { coords, sigma_shift: 0 }
    }
}

fn check_budget(f: &BiPoly) -> Result<()> {
    let size: usize = f.coeffs().iter().map(|c| c.coeffs().len()).sum();
    if size > REDUCTION_BUDGET {
        return Err(Error::Budget(format!("intermediate polynomial with {size} coefficients")));
    }
    Ok(())
}

/// `Δ(σ^κ Σ f_ℓ x_ℓ)`. The result does not depend on `κ`.
pub fn reduce_to_epoint(elem: &ModuleVector, at: &ATContext) -> Result<EPoint> {
    let n = elem.n();
    let field = elem.field();
    at.field().check_same(field)?;
    at.ensure(n.saturating_sub(2))?;
    let mut out = EPoint::zero(field, n);
    let mut pending_x0 = elem.coords[0].clone();

    for l in (1..n).rev() {
        let h = at.h(l - 1)?;
        let mut f = elem.coords[l].clone();
        while !f.is_zero() {
            let (g, digits) = f.split_t_minus_theta(n - l);
            for (j, c) in digits.iter().enumerate() {
                out.accumulate(l, j, c);
            }
            if g.is_zero() {
                break;
            }
            let g1 = g.twist(1);
            check_budget(&g1)?;
            pending_x0 = &pending_x0 - &(&g1 * h);
            f = g1;
        }
    }

    let mut f = pending_x0;
    while !f.is_zero() {
        let (g, digits) = f.split_t_minus_theta(n);
        for (j, c) in digits.iter().enumerate() {
            out.accumulate(0, j, c);
        }
        f = g.twist(1);
        check_budget(&f)?;
    }
    Ok(out)
}

/// `ρ_t(P) = Δ(t · Σ P_ν ν)`.
pub fn rho_t(point: &EPoint, at: &ATContext) -> Result<EPoint> {
    if point.is_zero() {
        return Ok(point.clone());
    }
    let field = point.slots[0].field().clone();
    let m = point.to_module_vector().mul_t_poly(&Poly::x(&field, Var::T));
    reduce_to_epoint(&m, at)
}

/// `ρ_a(P)` by Horner's rule in `ρ_t`.
///
/// Every intermediate value is `ρ_b(P)` for a divisor-free truncation `b` of
/// `a`, so for torsion `P` the heights stay bounded. Forming `a · m` first and
/// reducing once gives the same point but raises `θ`-degrees by a factor `q`
/// per `σ`-level of `a`'s `t`-degree.
pub fn rho_a(a: &Poly, point: &EPoint, at: &ATContext) -> Result<EPoint> {
    assert_eq!(a.var(), Var::T);
    let field = a.field();
    let mut acc = EPoint::zero(field, point.n());
    for &c in a.coeffs().iter().rev() {
        acc = rho_t(&acc, at)?;
        if c != 0 {
            acc = acc.add(&point.scale(c));
        }
    }
    Ok(acc)
}

/// The matrix of `Φ'` in `A[t]` form: the diagonal `(t−θ)^{n}, ..., (t−θ)`
/// as is, and the first-column entries `H_{i−1}^{(−1)} (t−θ)^n` (which involve
/// `q`-th roots) replaced by their twists `H_{i−1} (t−θ^q)^n`. All other
/// entries vanish.
pub fn phi_prime_twisted(n: usize, at: &ATContext) -> Result<Vec<Vec<BiPoly>>> {
    if n < 2 {
        return Err(Error::InvalidArgument("Φ' needs n ≥ 2".into()));
    }
    at.ensure(n - 2)?;
    let field = at.field();
    let base = BiPoly::t_minus_theta(field);
    let twisted_n = BiPoly::t_minus_theta_power(field, field.q() as usize).pow(n as u32);
    let mut rows = vec![vec![BiPoly::zero(field); n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = base.pow((n - i) as u32);
        if i >= 1 {
            row[0] = at.h(i - 1)? * &twisted_n;
        }
    }
    Ok(rows)
}

/// The last row `(v_0, ..., v_{n−1})` of an extension matrix `(Φ' 0; v 1)`,
/// stored twisted once so that the entries lie in `A[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtRow {
    entries: Vec<BiPoly>,
}

impl ExtRow {
    pub fn new(entries: Vec<BiPoly>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::ShapeMismatch("empty extension row".into()));
        }
        Ok(ExtRow { entries })
    }

    pub fn zero(field: &FieldSpec, n: usize) -> Self {
        ExtRow { entries: vec![BiPoly::zero(field); n] }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }
    pub fn entries(&self) -> &[BiPoly] {
        &self.entries
    }

    /// Baer sum of the two extension classes: add the rows.
    pub fn baer_sum(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::ShapeMismatch(format!("rows of length {} and {}", self.n(), other.n())));
        }
        if self.entries[0].field() != other.entries[0].field() {
            return Err(Error::FieldMismatch);
        }
        Ok(ExtRow { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() })
    }

    /// The `F_q[t]`-action on the extension class: scale the row.
    pub fn scalar_action(&self, a: &Poly) -> Self {
        ExtRow { entries: self.entries.iter().map(|e| e.mul_t_poly(a)).collect() }
    }

    /// The element `w` with `σ w = Σ v_ℓ x_ℓ`, returned at `σ`-level 1.
    ///
    /// Requires the twisted entries to be divisible by `(t−θ^q)^{n−ℓ}`, which
    /// holds for every row of the form produced by [`crate::criterion::ext_row`].
    pub fn to_module_vector(&self, at: &ATContext) -> Result<ModuleVector> {
        let n = self.n();
        at.ensure(n.saturating_sub(2))?;
        let field = at.field();
        let step = BiPoly::t_minus_theta_power(field, field.q() as usize);
        let mut coords = vec![BiPoly::zero(field); n];
        for (l, u) in self.entries.iter().enumerate() {
            let (g, r) = u.divmod(&step.pow((n - l) as u32))?;
            if !r.is_zero() {
                return Err(Error::InvalidArgument(format!("row entry {l} is not divisible by (t−θ^q)^{}", n - l)));
            }
            if l >= 1 {
                coords[0] = &coords[0] - &(&g * at.h(l - 1)?);
            } else {
                coords[0] = &coords[0] + &g;
            }
            if l >= 1 {
                coords[l] = g;
            }
        }
        Ok(ModuleVector { coords, sigma_shift: 1 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    #[test]
    fn slot_layout() {
        // n = 3: (0,2) (0,1) (0,0) (1,1) (1,0) (2,0)
        assert_eq!(EPoint::index(3, 0, 2), 0);
        assert_eq!(EPoint::index(3, 0, 0), 2);
        assert_eq!(EPoint::index(3, 1, 1), 3);
        assert_eq!(EPoint::index(3, 2, 0), 5);
        let p = EPoint::zero(&f3(), 4);
        let labels: Vec<(usize, usize)> = p.labelled().map(|(l, j, _)| (l, j)).collect();
        assert_eq!(labels.len(), 10);
        for (i, &(l, j)) in labels.iter().enumerate() {
            assert_eq!(EPoint::index(4, l, j), i);
        }
    }

    #[test]
    fn basis_vector_maps_to_unit() {
        let f = f3();
        let at = ATContext::new(&f, 4).unwrap();
        let n = 3;
        let e = reduce_to_epoint(&ModuleVector::single(n, n - 1, BiPoly::one(&f)), &at).unwrap();
        let mut expected = EPoint::zero(&f, n);
        expected.accumulate(n - 1, 0, &Poly::one(&f, Var::Theta));
        assert_eq!(e, expected);
    }

    #[test]
    fn sigma_relation_on_x0() {
        let f = f3();
        let at = ATContext::new(&f, 4).unwrap();
        let n = 3;
        let cube = BiPoly::t_minus_theta(&f).pow(3);
        let e = reduce_to_epoint(&ModuleVector::single(n, 0, cube.clone()), &at).unwrap();
        let unit = reduce_to_epoint(&ModuleVector::single(n, 0, BiPoly::one(&f)), &at).unwrap();
        assert_eq!(e, unit);
        assert_eq!(e.get(0, 0), &Poly::one(&f, Var::Theta));

        // (t−θ)^4 x_0: slot (0,1) = 1, slot (0,0) = θ − θ³.
        let e4 = reduce_to_epoint(&ModuleVector::single(n, 0, &cube * &BiPoly::t_minus_theta(&f)), &at).unwrap();
        assert_eq!(e4.get(0, 1), &Poly::one(&f, Var::Theta));
        assert_eq!(e4.get(0, 0), &Poly::from_ints(&f, Var::Theta, &[0, 1, 0, -1]));
        assert!(e4.get(0, 2).is_zero());
        assert!(e4.slots()[3..].iter().all(Poly::is_zero));
    }

    #[test]
    fn phi_prime_shape() {
        let f = f3();
        let at = ATContext::new(&f, 4).unwrap();
        let m = phi_prime_twisted(3, &at).unwrap();
        let x = BiPoly::t_minus_theta(&f);
        assert_eq!(m[0][0], x.pow(3));
        assert_eq!(m[1][1], x.pow(2));
        assert_eq!(m[2][2], x);
        assert_eq!(m[1][0], BiPoly::t_minus_theta_power(&f, 3).pow(3));
        for (i, row) in m.iter().enumerate() {
            assert!(row[i + 1..].iter().all(BiPoly::is_zero));
        }
        assert!(phi_prime_twisted(1, &at).is_err());
    }

    #[test]
    fn ext_row_group_laws() {
        let f = f3();
        let row = ExtRow::new(vec![BiPoly::t(&f), BiPoly::from_theta(&Poly::x(&f, Var::Theta))]).unwrap();
        assert_eq!(row.baer_sum(&ExtRow::zero(&f, 2)).unwrap(), row);
        assert_eq!(row.scalar_action(&Poly::one(&f, Var::T)), row);
        assert!(row.baer_sum(&ExtRow::zero(&f, 3)).is_err());
        let a = Poly::from_ints(&f, Var::T, &[1, 2]);
        let b = Poly::from_ints(&f, Var::T, &[0, 1, 1]);
        assert_eq!(row.scalar_action(&(&a * &b)), row.scalar_action(&b).scalar_action(&a));
    }
}
