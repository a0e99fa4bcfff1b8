//! Exact combinatorics behind rank-one Eisenstein cohomology for `GL(N)`
//! with `N = n + n'` odd, `n` even and `n'` odd.
//!
//! Everything here is integer or half-integer arithmetic: cuspidal weight
//! parameters of `GL(n)` highest weights, Kostant representatives for the
//! two-block parabolic and the rho-shifted Weyl action, Hodge pairs of the
//! associated tensor motives, critical points of Rankin-Selberg L-functions
//! in both the cohomological and automorphic normalizations, and a
//! brute-force decision procedure for the combinatorial lemma that is
//! checked instance by instance against its closed-form inequality.
//!
//! No L-value is ever evaluated; periods and the sign attached to the second
//! factor stay symbolic. The payoff is that every verdict produced by this
//! crate is exact and reproducible.

pub mod half;
pub mod hodge;
pub mod lvalues;
pub mod report;
pub mod sign;
pub mod verifier;
pub mod weights;
pub mod weyl;

pub use half::HalfInt;
pub use sign::Sign;
pub use weights::{CuspidalParams, Weight, WeightError};
pub use weyl::{BlockPair, Perm};
