use std::collections::HashMap;
use std::fmt;
use std::ops::Mul;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use rug::float::Constant;
use rug::{Float, Integer};

use super::{HpReal, PrecisionContext};
use crate::error::{Error, Result};

/// Largest argument accepted by [`factorial_exact`].
pub const MAX_FACTORIAL_N: u64 = 10_000_000;

/// Ranges shorter than this are multiplied directly.
const LEAF_LEN: u64 = 32;
/// Ranges longer than this split their two halves across threads.
const PARALLEL_LEN: u64 = 1 << 14;

/// An exact non-negative integer of arbitrary size.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigNat(Integer);

impl BigNat {
    pub fn from_u64(value: u64) -> Self {
        BigNat(Integer::from(value))
    }

    pub fn from_integer(value: Integer) -> Result<Self> {
        if value < 0 {
            return Err(Error::domain(format!("{value} is negative")));
        }
        Ok(BigNat(value))
    }

    pub fn as_integer(&self) -> &Integer {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0 == 0
    }

    /// Number of significant bits; zero has bit length 0.
    pub fn bit_len(&self) -> u32 {
        self.0.significant_bits()
    }
}

impl From<u64> for BigNat {
    fn from(value: u64) -> Self {
        BigNat::from_u64(value)
    }
}

impl Mul<&BigNat> for &BigNat {
    type Output = BigNat;

    fn mul(self, rhs: &BigNat) -> BigNat {
        BigNat(Integer::from(&self.0 * &rhs.0))
    }
}

impl Mul for BigNat {
    type Output = BigNat;

    fn mul(self, rhs: BigNat) -> BigNat {
        BigNat(self.0 * rhs.0)
    }
}

impl fmt::Display for BigNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Product of the integers in `lo..=hi` by a balanced product tree.
fn range_product(lo: u64, hi: u64) -> Integer {
    if lo > hi {
        return Integer::from(1);
    }
    let len = hi - lo + 1;
    if len <= LEAF_LEN {
        let mut acc = Integer::from(1);
        let mut word: u64 = 1;
        for k in lo..=hi {
            match word.checked_mul(k) {
                Some(w) => word = w,
                None => {
                    acc *= word;
                    word = k;
                }
            }
        }
        acc *= word;
        return acc;
    }
    let mid = lo + len / 2;
    let (left, right) = if len > PARALLEL_LEN {
        rayon::join(|| range_product(lo, mid - 1), || range_product(mid, hi))
    } else {
        (range_product(lo, mid - 1), range_product(mid, hi))
    };
    left * right
}

/// Exact `n!` for `1 <= n <= 10^7`.
pub fn factorial_exact(n: u64) -> Result<BigNat> {
    if n == 0 || n > MAX_FACTORIAL_N {
        return Err(Error::domain(format!(
            "factorial argument must lie in 1..={MAX_FACTORIAL_N}, got {n}"
        )));
    }
    Ok(BigNat(range_product(2, n)))
}

/// Large factorials are reused across table cells and validation passes.
fn shared_factorial(n: u64) -> Result<Arc<BigNat>> {
    const CACHE_FROM: u64 = 1000;
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<BigNat>>>> = OnceLock::new();
    if n < CACHE_FROM {
        return factorial_exact(n).map(Arc::new);
    }
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().expect("factorial cache poisoned").get(&n) {
        return Ok(Arc::clone(hit));
    }
    let value = Arc::new(factorial_exact(n)?);
    cache
        .lock()
        .expect("factorial cache poisoned")
        .insert(n, Arc::clone(&value));
    Ok(value)
}

/// Natural log of a positive integer as a float of `bits` precision.
///
/// Writes `v = m * 2^e` with `m` the leading `bits` bits of `v` and returns
/// `ln m + e ln 2`; the truncated tail contributes less than `2^(1 - bits)`.
fn ln_integer(v: &Integer, bits: u32) -> Float {
    let shift = v.significant_bits().saturating_sub(bits);
    let mantissa = Integer::from(v >> shift);
    let mut out = Float::with_val(bits, &mantissa).ln();
    if shift > 0 {
        out += Float::with_val(bits, Constant::Log2) * shift;
    }
    out
}

/// `ln v` rounded to `ctx.bits()`, evaluated at the working precision.
pub fn ln_big(v: &BigNat, ctx: &PrecisionContext) -> Result<HpReal> {
    if v.is_zero() {
        return Err(Error::domain("ln of zero"));
    }
    let ln = ln_integer(v.as_integer(), ctx.working_bits());
    Ok(HpReal::from_float(Float::with_val(ctx.bits(), ln)))
}

/// `ln n!` as a raw float at `bits` of precision.
pub(crate) fn ln_factorial_bits(n: u64, bits: u32) -> Result<Float> {
    let fact = shared_factorial(n)?;
    Ok(ln_integer(fact.as_integer(), bits))
}

/// `ln n!` from the exact factorial.
pub fn ln_factorial_exact(n: u64, ctx: &PrecisionContext) -> Result<HpReal> {
    let fact = shared_factorial(n)?;
    ln_big(&fact, ctx)
}

/// `ln n! = Σ_{k=2}^{n} ln k`, summed term by term. Kept independent of the
/// product tree so the two can cross-check each other.
pub fn ln_factorial_sum(n: u64, ctx: &PrecisionContext) -> Result<HpReal> {
    if n == 0 || n > MAX_FACTORIAL_N {
        return Err(Error::domain(format!(
            "factorial argument must lie in 1..={MAX_FACTORIAL_N}, got {n}"
        )));
    }
    // rounding accumulates over n terms
    let bits = ctx.working_bits() + 64 - n.leading_zeros();
    const CHUNK: u64 = 4096;
    let chunks: Vec<(u64, u64)> = (2..=n)
        .step_by(CHUNK as usize)
        .map(|lo| (lo, (lo + CHUNK - 1).min(n)))
        .collect();
    let partials: Vec<Float> = chunks
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut acc = Float::with_val(bits, 0);
            for k in lo..=hi {
                acc += Float::with_val(bits, k).ln();
            }
            acc
        })
        .collect();
    let mut total = Float::with_val(bits, 0);
    for part in partials {
        total += part;
    }
    Ok(HpReal::from_float(Float::with_val(ctx.bits(), total)))
}
