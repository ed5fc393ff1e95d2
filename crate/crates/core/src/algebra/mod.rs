//! Exact arithmetic substrate: `F_q`, `F_q[x]`, `A[t] = F_q[θ][t]`,
//! `F_q(θ)`, truncated Laurent series in `1/θ`, and binomials mod `p`.

pub mod bipoly;
pub mod field;
pub mod laurent;
pub mod lucas;
pub mod poly;
pub mod rational;
