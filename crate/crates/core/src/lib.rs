//! Exact arithmetic and a torsion criterion for shuffle relations among
//! Carlitz zeta values and double zeta values over `F_q(θ)`.
//!
//! Fix positive integers `r`, `s` and put `n = r + s`. A coefficient tuple
//! `C = (b_0, a_1, ..., a_{n-1})` with entries in `k = F_q(θ)` gives a
//! shuffle relation when
//!
//! ```text
//! ζ(r)ζ(s) − ζ(r,s) − ζ(s,r) = b_0 ζ(n) + Σ a_i ζ(i, n−i)
//! ```
//!
//! holds in `F_q((1/θ))`. The crate decides this through an extension of
//! Frobenius modules: the tuple determines an integral point `v_C` on a
//! `t`-module, and the relation holds (up to a correction of `b_0` when
//! `(q−1) | n`) exactly when `v_C` is `F_q[t]`-torsion. The torsion test
//! multiplies `v_C` by an explicit annihilator polynomial and checks for zero.
//!
//! Independently, [`oracle`] evaluates the relation numerically as a
//! truncated Laurent series by enumerating monic polynomials, so verdicts can
//! be cross-checked without sharing any code path with the criterion.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
#[macro_use]
extern crate std;

pub mod algebra;
pub mod criterion;
mod error;
pub mod oracle;
pub mod reduction;
pub mod special;

pub use algebra::bipoly::BiPoly;
pub use algebra::field::{FieldElement, FieldSpec};
pub use algebra::laurent::LaurentSeries;
pub use algebra::lucas::lucas_binom;
pub use algebra::poly::{Poly, Var};
pub use algebra::rational::RationalFunction;
pub use criterion::{
    chen_tuple, decide_torsion, decide_torsion_with, necessary_filter, normalize_tuple, to_dr_tuple, CaseTag, DrTuple,
    NormalizedTuple, ShuffleTuple, TorsionReport, Verdict,
};
pub use error::Error;
pub use oracle::{check_sr_numeric, double_zeta, power_sum, zeta_value, NumericCheck, NumericVerdict, PrecisionPlan};
pub use reduction::{EPoint, ExtRow, ModuleVector};
pub use special::{annihilator, carlitz_d, carlitz_gamma, ATContext};

pub type Result<T> = core::result::Result<T, Error>;
