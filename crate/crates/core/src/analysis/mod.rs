//! Percentage errors against the exact factorial, Ramanujan's θ and its
//! bounds, empirical convergence orders and the numerical re-derivation of
//! the tweak constant `A`.

mod order;
mod pct;
mod theta;

pub use order::{estimate_order, OrderFit};
pub use pct::{percentage_error, ErrorRecord};
pub use theta::{estimate_a, hv_bounds, theta_of_n, ThetaRecord};
