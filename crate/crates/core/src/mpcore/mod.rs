//! Arbitrary-precision arithmetic contract, the exact factorial oracle and
//! logarithms of huge integers.

mod factorial;
mod hpreal;
mod precision;

pub use factorial::{
    factorial_exact, ln_big, ln_factorial_exact, ln_factorial_sum, BigNat, MAX_FACTORIAL_N,
};
pub use hpreal::HpReal;
pub use precision::{PrecisionContext, Validation};

pub(crate) use factorial::ln_factorial_bits;
pub(crate) use precision::certify;
