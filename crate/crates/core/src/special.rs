//! Carlitz factorials, Anderson–Thakur polynomials and the annihilator
//! polynomial of the torsion criterion.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::bipoly::BiPoly;
use crate::algebra::field::FieldSpec;
use crate::algebra::poly::{Poly, Var};
use crate::{Error, Result};

fn q_pow(q: u32, i: usize) -> usize {
    (q as usize).checked_pow(i as u32).expect("q^i overflows usize")
}

/// `D_0 = 1`, `D_i = Π_{j<i} (θ^{q^i} − θ^{q^j})`.
pub fn carlitz_d(i: usize, field: &FieldSpec) -> Poly {
    let q = field.q();
    let top = Poly::monomial(field, Var::Theta, 1, q_pow(q, i));
    (0..i).fold(Poly::one(field, Var::Theta), |acc, j| {
        &acc * &(&top - &Poly::monomial(field, Var::Theta, 1, q_pow(q, j)))
    })
}

/// Base-`q` digits of `n`, lowest first.
fn digits(mut n: usize, q: usize) -> Vec<usize> {
    let mut out = Vec::new();
    while n > 0 {
        out.push(n % q);
        n /= q;
    }
    out
}

/// The Carlitz factorial `Γ_{m}`: with `m − 1 = Σ n_i q^i`, the product
/// `Π D_i^{n_i}`. Monic, and `Γ_1 = 1`.
///
/// # Panics
/// If `m == 0`.
pub fn carlitz_gamma(m: usize, field: &FieldSpec) -> Poly {
    assert!(m >= 1, "Γ_m is defined for m ≥ 1");
    digits(m - 1, field.q() as usize)
        .into_iter()
        .enumerate()
        .filter(|&(_, n)| n > 0)
        .fold(Poly::one(field, Var::Theta), |acc, (i, n)| &acc * &carlitz_d(i, field).pow(n as u64))
}

/// Precomputed `D_i`, `Γ_{n+1}|_{θ=t}` and Anderson–Thakur polynomials
/// `H_0..H_N` for one field. Built once, then shared read-only.
#[derive(Clone, Debug)]
pub struct ATContext {
    field: FieldSpec,
    max_index: usize,
    d: Vec<Poly>,
    d_t: Vec<Poly>,
    gamma_t: Vec<Poly>,
    h: Vec<BiPoly>,
}

impl ATContext {
    /// Computes `H_0..H_N` from the generating series
    /// `(1 − Σ_i G_i(θ)/D_i|_{θ=t} x^{q^i})^{-1} = Σ_n H_n/Γ_{n+1}|_{θ=t} x^n`.
    ///
    /// With `c_i = G_i(θ)/D_i|_{θ=t}` and `a_n = H_n/Γ_{n+1}|_{θ=t}`, the
    /// coefficients obey `a_0 = 1`, `a_n = Σ_{q^i ≤ n} c_i a_{n−q^i}`. Each
    /// step sums the fractions over a common denominator in `F_q[t]` and then
    /// clears `Γ_{n+1}|_{θ=t}`; the division must be exact.
    pub fn new(field: &FieldSpec, max_index: usize) -> Result<Self> {
        let q = field.q() as usize;
        let mut levels = 1;
        while q_pow(q as u32, levels) <= max_index {
            levels += 1;
        }
        let d: Vec<Poly> = (0..levels).map(|i| carlitz_d(i, field)).collect();
        let d_t: Vec<Poly> = d.iter().map(Poly::subst_theta_to_t).collect();
        let g: Vec<BiPoly> = (0..levels).map(|i| anderson_g(i, field)).collect();
        let gamma_t: Vec<Poly> = (0..=max_index).map(|n| carlitz_gamma(n + 1, field).subst_theta_to_t()).collect();

        let mut h = vec![BiPoly::one(field)];
        for n in 1..=max_index {
            let mut terms = Vec::new();
            let mut common = Poly::one(field, Var::T);
            for i in 0..levels {
                let step = q_pow(q as u32, i);
                if step > n {
                    break;
                }
                let den = &d_t[i] * &gamma_t[n - step];
                common = common.lcm(&den);
                terms.push((&g[i] * &h[n - step], den));
            }
            let mut num = BiPoly::zero(field);
            for (t_num, den) in terms {
                let cofactor = common.div_exact(&den).expect("lcm is a multiple");
                num = &num + &t_num.mul_t_poly(&cofactor);
            }
            let hn = num
                .mul_t_poly(&gamma_t[n])
                .div_exact_t_poly(&common)
                .map_err(|_| Error::Integrality(format!("Γ_{}|θ=t does not clear the denominator of a_{n}", n + 1)))?;
            let bound = n * q / (q - 1);
            if hn.deg_theta().unwrap_or(0) > bound {
                return Err(Error::Integrality(format!("deg_θ H_{n} exceeds {bound}")));
            }
            h.push(hn);
        }
        Ok(ATContext { field: field.clone(), max_index, d, d_t, gamma_t, h })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }
    pub fn max_index(&self) -> usize {
        self.max_index
    }

    /// `H_n`.
    pub fn h(&self, n: usize) -> Result<&BiPoly> {
        self.h.get(n).ok_or_else(|| Error::MissingData(format!("H_{n} not computed (max index {})", self.max_index)))
    }

    pub fn hs(&self) -> &[BiPoly] {
        &self.h
    }

    /// `D_i` for the levels used by the generating series (`q^i ≤ N`).
    pub fn d(&self) -> &[Poly] {
        &self.d
    }
    pub fn d_t(&self) -> &[Poly] {
        &self.d_t
    }
    /// `Γ_{n+1}|_{θ=t}` for `0 ≤ n ≤ N`.
    pub fn gamma_t(&self, n: usize) -> Result<&Poly> {
        self.gamma_t.get(n).ok_or_else(|| Error::MissingData(format!("Γ_{} not computed", n + 1)))
    }

    /// Checks that `H_0..H_{needed}` are available.
    pub fn ensure(&self, needed: usize) -> Result<()> {
        if needed > self.max_index {
            return Err(Error::MissingData(format!("H_{needed} requested but context stops at H_{}", self.max_index)));
        }
        Ok(())
    }
}

/// `G_0 = 1`, `G_i(θ) = Π_{j=1}^{i} (t^{q^i} − θ^{q^j})`.
pub fn anderson_g(i: usize, field: &FieldSpec) -> BiPoly {
    let q = field.q();
    let ti = BiPoly::monomial(field, 1, q_pow(q, i), 0);
    (1..=i).fold(BiPoly::one(field), |acc, j| &acc * &(&ti - &BiPoly::monomial(field, 1, 0, q_pow(q, j))))
}

/// `a = Π (t^{q^{h_i}} − t)^{p^{ℓ_i}}` over `1 ≤ i ≤ n` with `(q−1) | i`,
/// where `ℓ_i` is the `p`-adic valuation of `i` and `h_i ≥ 1` is the largest
/// integer with `(q^{h_i} − 1) | i`.
pub fn annihilator(n: usize, field: &FieldSpec) -> Poly {
    annihilator_factors(n, field).into_iter().fold(Poly::one(field, Var::T), |acc, (h, l)| {
        let q = field.q() as usize;
        let base = &Poly::monomial(field, Var::T, 1, q_pow(q as u32, h)) - &Poly::x(field, Var::T);
        &acc * &base.pow((field.p() as u64).pow(l))
    })
}

/// The pairs `(h_i, ℓ_i)` entering [`annihilator`], one per qualifying `i`.
pub fn annihilator_factors(n: usize, field: &FieldSpec) -> Vec<(usize, u32)> {
    let q = field.q() as usize;
    let p = field.p() as usize;
    (1..=n)
        .filter(|i| i % (q - 1) == 0)
        .map(|i| {
            let mut l = 0;
            let mut rest = i;
            while rest % p == 0 {
                rest /= p;
                l += 1;
            }
            (largest_h(i, q), l)
        })
        .collect()
}

fn largest_h(i: usize, q: usize) -> usize {
    let mut best = 1;
    let mut h = 1;
    while let Some(qh) = q.checked_pow(h as u32) {
        if qh - 1 > i {
            break;
        }
        if i.is_multiple_of(qh - 1) {
            best = h;
        }
        h += 1;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }
    fn th(f: &FieldSpec, ints: &[i64]) -> Poly {
        Poly::from_ints(f, Var::Theta, ints)
    }
    fn tp(f: &FieldSpec, ints: &[i64]) -> Poly {
        Poly::from_ints(f, Var::T, ints)
    }

    #[test]
    fn carlitz_d_examples() {
        let f = f3();
        assert!(carlitz_d(0, &f).is_one());
        assert_eq!(carlitz_d(1, &f), th(&f, &[0, 2, 0, 1]));
        assert_eq!(carlitz_d(2, &f).degree(), Some(18));
    }

    #[test]
    fn carlitz_d_recursion() {
        for f in [FieldSpec::prime(2).unwrap(), f3(), FieldSpec::prime(5).unwrap()] {
            let q = f.q() as usize;
            let upto = if q == 5 { 3 } else { 4 };
            for i in 1..=upto {
                let lhs = carlitz_d(i, &f);
                let factor = &Poly::monomial(&f, Var::Theta, 1, q.pow(i as u32)) - &Poly::x(&f, Var::Theta);
                let rhs = &factor * &carlitz_d(i - 1, &f).pow(q as u64);
                assert_eq!(lhs, rhs, "q={q} i={i}");
                assert_eq!(lhs.degree(), Some(i * q.pow(i as u32)));
            }
        }
    }

    #[test]
    fn carlitz_gamma_examples() {
        let f = f3();
        assert!(carlitz_gamma(1, &f).is_one());
        assert!(carlitz_gamma(3, &f).is_one());
        assert_eq!(carlitz_gamma(4, &f), th(&f, &[0, 2, 0, 1]));
        assert!(carlitz_gamma(9, &f).is_monic());
    }

    #[test]
    fn anderson_thakur_small_values() {
        let f = f3();
        let at = ATContext::new(&f, 6).unwrap();
        for n in 0..3 {
            assert_eq!(at.h(n).unwrap(), &BiPoly::one(&f));
        }
        // H_3 = 2t³ + 2t + 2θ³ over F_3
        let expected = &BiPoly::from_t(&tp(&f, &[0, 2, 0, 2])) + &BiPoly::from_theta(&th(&f, &[0, 0, 0, 2]));
        assert_eq!(at.h(3).unwrap(), &expected);
        assert!(at.h(7).is_err());
    }

    #[test]
    fn annihilator_examples() {
        let f = f3();
        assert_eq!(annihilator(3, &f), tp(&f, &[0, -1, 0, 1]));
        assert_eq!(annihilator(5, &f), tp(&f, &[0, -1, 0, 1]).pow(2));
        let f2 = FieldSpec::prime(2).unwrap();
        assert_eq!(annihilator(2, &f2), tp(&f2, &[0, 1, 1]).pow(3));
        // q = 3, i = 8: (3² − 1) | 8 so h = 2.
        assert_eq!(annihilator_factors(8, &f), vec![(1, 0), (1, 0), (1, 1), (2, 0)]);
        // No qualifying index gives the empty product.
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(annihilator(3, &f5).is_one());
    }
}
