//! Arbitrary-precision evaluation of the classical closed-form approximations
//! to `n!` and `Γ(x+1)` (Stirling, Burnside, Gosper, Mortici, Ramanujan, the
//! Laplace series, Nemes, Windschitl, Hirschhorn–Villarino, Chen and the
//! tweaked Ramanujan formula), together with the tooling needed to measure
//! them: an exact factorial oracle, percentage errors, Ramanujan's θ and its
//! bounds, empirical convergence orders and the table renderer behind the
//! `gammaprox` command line tool.
//!
//! Every approximation is evaluated in log space, so `n = 10^6` and beyond
//! are handled without overflow.

pub mod analysis;
pub mod approx;
pub mod error;
pub mod mpcore;
pub mod report;
pub mod selftest;

pub use error::{Error, Result};
pub use mpcore::{BigNat, HpReal, PrecisionContext, Validation};
