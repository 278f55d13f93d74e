//! Registry of closed-form approximations to `Γ(x+1)`, each evaluated in log
//! space at an arbitrary positive real `x`.

mod closed_form;
mod eval;
mod method;

pub use closed_form::correction_factor_closed_form;
pub use eval::{correction_factor, ln_approx, ln_ramanujan_theta};
pub use method::{MethodId, MethodSpec};

pub(crate) use eval::ln_approx_raw;
