use std::fmt;
use std::str::FromStr;

use rug::Float;

use crate::error::{Error, Result};

/// How results are checked before they are handed back to the caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Validation {
    /// Evaluate once at the working precision and trust it.
    None,
    /// Recompute with [`PrecisionContext::VALIDATION_STEP`] more bits and
    /// accept only if both evaluations agree to the requested tolerance.
    PrecisionDoubling,
}

impl FromStr for Validation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Validation::None),
            "double" | "precision_doubling" => Ok(Validation::PrecisionDoubling),
            other => Err(Error::Parse(format!("unknown validation policy `{other}`"))),
        }
    }
}

impl fmt::Display for Validation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Validation::None => "none",
            Validation::PrecisionDoubling => "double",
        })
    }
}

/// Working precision and validation policy shared by every high-precision
/// computation in the crate.
///
/// `bits` is the precision of delivered results. Internally, operations that
/// suffer cancellation evaluate with `bits + guard_bits` (or more, see the
/// per-operation policies) and round on the way out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionContext {
    bits: u32,
    validation: Validation,
    guard_bits: u32,
    tolerance: f64,
    max_bits: u32,
}

impl PrecisionContext {
    pub const MIN_BITS: u32 = 128;
    pub const DEFAULT_BITS: u32 = 384;
    pub const DEFAULT_GUARD_BITS: u32 = 64;
    pub const DEFAULT_TOLERANCE: f64 = 1e-12;
    pub const DEFAULT_MAX_BITS: u32 = 1 << 16;
    /// Extra bits used by the validation recomputation.
    pub const VALIDATION_STEP: u32 = 64;

    pub fn new(bits: u32) -> Result<Self> {
        if bits < Self::MIN_BITS {
            return Err(Error::Precision(format!(
                "working precision must be at least {} bits, got {bits}",
                Self::MIN_BITS
            )));
        }
        Ok(PrecisionContext {
            bits,
            validation: Validation::PrecisionDoubling,
            guard_bits: Self::DEFAULT_GUARD_BITS,
            tolerance: Self::DEFAULT_TOLERANCE,
            max_bits: Self::DEFAULT_MAX_BITS.max(bits),
        })
    }

    pub fn with_validation(mut self, validation: Validation) -> Self {
        self.validation = validation;
        self
    }

    pub fn with_guard_bits(mut self, guard_bits: u32) -> Self {
        self.guard_bits = guard_bits;
        self
    }

    /// Relative tolerance that two validation evaluations must agree to.
    pub fn with_tolerance(mut self, tolerance: f64) -> Result<Self> {
        if !(tolerance > 0.0 && tolerance < 1.0) {
            return Err(Error::Precision(format!(
                "tolerance must lie in (0, 1), got {tolerance}"
            )));
        }
        self.tolerance = tolerance;
        Ok(self)
    }

    /// Upper bound on the precision that automatic raising may reach.
    pub fn with_max_bits(mut self, max_bits: u32) -> Self {
        self.max_bits = max_bits.max(self.bits);
        self
    }

    /// Same policy, different working precision. Keeps `max_bits` at least
    /// as large as the new precision.
    pub fn with_bits(self, bits: u32) -> Result<Self> {
        let mut ctx = PrecisionContext::new(bits)?;
        ctx.validation = self.validation;
        ctx.guard_bits = self.guard_bits;
        ctx.tolerance = self.tolerance;
        ctx.max_bits = self.max_bits.max(bits);
        Ok(ctx)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn validation(&self) -> Validation {
        self.validation
    }

    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn max_bits(&self) -> u32 {
        self.max_bits
    }

    /// Internal evaluation precision: `bits + guard_bits`.
    pub fn working_bits(&self) -> u32 {
        self.bits + self.guard_bits
    }

    /// Precision needed to resolve a relative difference of `10^-error_digits`
    /// in a quantity with `magnitude_digits` decimal digits before the point:
    /// `ceil(3.33 * (magnitude_digits + error_digits)) + guard_bits`, never
    /// below the current precision.
    pub fn bits_for(&self, magnitude_digits: u32, error_digits: u32) -> u32 {
        let wanted = (3.33 * f64::from(magnitude_digits + error_digits)).ceil() as u32;
        (wanted + self.guard_bits).max(self.bits)
    }

    /// Context raised per [`bits_for`](Self::bits_for) for the common case of
    /// resolving percentage errors below `10^-error_digits` on `ln n!`.
    pub fn raised_for(&self, magnitude_digits: u32, error_digits: u32) -> Result<Self> {
        self.with_bits(self.bits_for(magnitude_digits, error_digits))
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext::new(Self::DEFAULT_BITS).expect("default precision is valid")
    }
}

/// `|a - b| <= tol * |b|`, with two exact zeros agreeing.
pub(crate) fn agrees(a: &Float, b: &Float, tol: f64) -> bool {
    if b.is_zero() {
        return a.is_zero();
    }
    if !a.is_finite() || !b.is_finite() {
        return false;
    }
    let prec = a.prec().max(b.prec());
    let diff = Float::with_val(prec, a - b).abs();
    let bound = Float::with_val(prec, b.abs_ref()) * tol;
    diff <= bound
}

/// Runs `eval` under the context's validation policy.
///
/// With [`Validation::None`] the value is computed once at `start_bits`.
/// Otherwise the value is computed at `p` and `p + VALIDATION_STEP` bits; on
/// disagreement `p` is raised (to at least `next_bits(p, best)`, and at least
/// doubled) until the results agree or `max_bits` would be exceeded.
///
/// Returns the higher-precision value and the precision `p` that passed.
pub(crate) fn certify<F, N>(
    ctx: &PrecisionContext,
    what: &str,
    start_bits: u32,
    eval: F,
    next_bits: N,
) -> Result<(Float, u32)>
where
    F: Fn(u32) -> Result<Float>,
    N: Fn(u32, &Float) -> u32,
{
    let mut p = start_bits.max(ctx.bits());
    if ctx.validation() == Validation::None {
        return Ok((eval(p)?, p));
    }
    loop {
        let hi_bits = p + PrecisionContext::VALIDATION_STEP;
        if hi_bits > ctx.max_bits() {
            return Err(Error::InsufficientPrecision {
                what: what.to_string(),
                needed_bits: hi_bits,
                max_bits: ctx.max_bits(),
            });
        }
        let lo = eval(p)?;
        let hi = eval(hi_bits)?;
        if agrees(&lo, &hi, ctx.tolerance()) {
            return Ok((hi, p));
        }
        p = next_bits(p, &hi).max(p.saturating_mul(2));
    }
}
