use rug::Float;

use crate::approx::{ln_approx_raw, MethodId};
use crate::error::{Error, Result};
use crate::mpcore::{certify, ln_factorial_bits, HpReal, PrecisionContext, MAX_FACTORIAL_N};

/// One `(method, n)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorRecord {
    pub n: u64,
    pub method: MethodId,
    /// `ln n!`, at the validated precision.
    pub ln_exact: HpReal,
    /// `ln` of the approximation, at the validated precision.
    pub ln_approx: HpReal,
    /// Signed percentage error `100 (approximation − n!)/n!`, rounded to the
    /// context precision.
    pub pct_error: HpReal,
    /// Precision at which the value passed validation.
    pub bits_used: u32,
}

impl ErrorRecord {
    pub fn magnitude(&self) -> HpReal {
        self.pct_error.abs()
    }
}

fn pct_at(method: MethodId, n: u64, bits: u32) -> Result<Float> {
    let x = Float::with_val(bits, n);
    let diff = ln_approx_raw(method, &x, bits)? - ln_factorial_bits(n, bits)?;
    Ok(diff.exp_m1() * 100u32)
}

/// Decimal digits of `|v|` above the point, at least one.
fn integer_digits(v: &Float) -> u32 {
    let abs = Float::with_val(64, v.abs_ref());
    if abs < 1 {
        1
    } else {
        abs.log10().to_f64().floor() as u32 + 1
    }
}

/// Signed percentage error of `method` at `n`, validated under the context's
/// policy. When the first validation pass disagrees the precision is raised
/// to resolve the observed error magnitude, up to `ctx.max_bits()`.
pub fn percentage_error(method: MethodId, n: u64, ctx: &PrecisionContext) -> Result<ErrorRecord> {
    if n == 0 || n > MAX_FACTORIAL_N {
        return Err(Error::domain(format!(
            "n must lie in 1..={MAX_FACTORIAL_N}, got {n}"
        )));
    }
    let magnitude = integer_digits(&ln_factorial_bits(n, 64)?);
    let tol_digits = (-ctx.tolerance().log10()).ceil() as u32;
    let next_bits = |bits: u32, best: &Float| {
        let rel = Float::with_val(64, best.abs_ref()) / 100u32;
        let err_digits = if rel.is_zero() || !rel.is_finite() || rel >= 1 {
            0
        } else {
            (-rel.log10().to_f64()).ceil() as u32
        };
        ctx.bits_for(magnitude, err_digits + tol_digits + 2)
            .max(bits)
    };
    let what = format!("percentage error of {method} at n = {n}");
    let (_, bits_used) = certify(
        ctx,
        &what,
        ctx.bits(),
        |bits| pct_at(method, n, bits),
        next_bits,
    )?;

    let final_bits = match ctx.validation() {
        crate::mpcore::Validation::None => bits_used,
        crate::mpcore::Validation::PrecisionDoubling => {
            bits_used + PrecisionContext::VALIDATION_STEP
        }
    };
    let x = Float::with_val(final_bits, n);
    let ln_exact = ln_factorial_bits(n, final_bits)?;
    let ln_approx = ln_approx_raw(method, &x, final_bits)?;
    let pct = Float::with_val(final_bits, &ln_approx - &ln_exact).exp_m1() * 100u32;
    Ok(ErrorRecord {
        n,
        method,
        ln_exact: HpReal::from_float(ln_exact),
        ln_approx: HpReal::from_float(ln_approx),
        pct_error: HpReal::from_float(pct).round_to(ctx.bits()),
        bits_used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Validation;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn pct(method: MethodId, n: u64) -> f64 {
        percentage_error(method, n, &ctx())
            .unwrap()
            .pct_error
            .to_f64()
    }

    #[test]
    fn stirling_underestimates_at_two() {
        let v = pct(MethodId::Stirling, 2);
        assert!(v < 0.0);
        assert!((v.abs() - 4.0498).abs() < 1e-4, "{v}");
    }

    #[test]
    fn ramanujan_at_ten() {
        let v = pct(MethodId::Ramanujan, 10);
        assert!((v - 8.59e-6).abs() < 0.01e-6, "{v}");
    }

    #[test]
    fn record_is_self_consistent() {
        let rec = percentage_error(MethodId::Chen, 1000, &ctx()).unwrap();
        let recomputed = (&rec.ln_approx - &rec.ln_exact).exp_m1() * HpReal::from_u64(100, 64);
        assert!(recomputed.ulps_from(&rec.pct_error, ctx().bits()) <= 1.0);
        assert_eq!(rec.n, 1000);
        assert_eq!(rec.method, MethodId::Chen);
        assert!(rec.bits_used >= ctx().bits());
    }

    #[test]
    fn n_equal_one() {
        // Stirling at 1: √(2π)/e − 1
        let v = pct(MethodId::Stirling, 1);
        let want = 100.0 * ((2.0 * std::f64::consts::PI).sqrt() / std::f64::consts::E - 1.0);
        assert!((v - want).abs() < 1e-12);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            percentage_error(MethodId::Stirling, 0, &ctx()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            percentage_error(MethodId::Stirling, MAX_FACTORIAL_N + 1, &ctx()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn raises_precision_for_tiny_errors() {
        // At 128 bits the SAM error at 10^6 (≈1e-50 on a 1.3e7 logarithm) is noise.
        let low = PrecisionContext::new(128).unwrap();
        let rec = percentage_error(MethodId::Sam, 1_000_000, &low).unwrap();
        assert!(rec.bits_used > 128);
        let v = rec.pct_error.to_f64();
        assert!((v + 1.27e-50).abs() < 0.01e-50, "{v}");
    }

    #[test]
    fn refuses_when_capped() {
        let capped = PrecisionContext::new(128).unwrap().with_max_bits(192);
        let err = percentage_error(MethodId::Sam, 1_000_000, &capped).unwrap_err();
        assert!(
            matches!(err, Error::InsufficientPrecision { .. }),
            "{err:?}"
        );
    }

    #[test]
    fn unvalidated_single_pass() {
        let c = ctx().with_validation(Validation::None);
        let rec = percentage_error(MethodId::Gosper, 10, &c).unwrap();
        assert_eq!(rec.bits_used, 384);
    }
}
