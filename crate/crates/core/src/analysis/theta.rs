use rug::float::Constant;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::mpcore::{certify, ln_factorial_bits, HpReal, PrecisionContext, MAX_FACTORIAL_N};

/// Ramanujan's θ at an integer together with both published bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaRecord {
    pub n: u64,
    pub theta: HpReal,
    pub ram_lo: Rational,
    pub ram_hi: Rational,
    pub hv_lo: HpReal,
    pub hv_hi: HpReal,
    pub in_ram_bounds: bool,
    pub in_hv_bounds: bool,
}

/// Hirschhorn–Villarino bounds at `n`, exactly:
/// `lo = 1 − 11/(8n) + 79/(112n²)`, `hi = lo + 20/(33n³)`.
pub fn hv_bounds(n: u64) -> (Rational, Rational) {
    let n = Integer::from(n);
    let n2 = Integer::from(n.square_ref());
    let n3 = Integer::from(&n2 * &n);
    let lo = Rational::from(1) - Rational::from((11, n * 8u32)) + Rational::from((79, n2 * 112u32));
    let hi = &lo + Rational::from((20, n3 * 33u32));
    (lo, hi)
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 || n > MAX_FACTORIAL_N {
        return Err(Error::domain(format!(
            "n must lie in 1..={MAX_FACTORIAL_N}, got {n}"
        )));
    }
    Ok(())
}

/// `θ_n = 30 (exp(6 (ln n! − n ln n + n − ½ ln π)) − 8n³ − 4n² − n)`.
///
/// The exponential is ≈ 8n³, so about `3 log₁₀ n` digits cancel.
fn theta_raw(n: u64, bits: u32) -> Result<Float> {
    let x = Float::with_val(bits, n);
    let ln_x = Float::with_val(bits, x.ln_ref());
    let half_ln_pi = Float::with_val(bits, Constant::Pi).ln() / 2u32;
    let inner = ln_factorial_bits(n, bits)? - Float::with_val(bits, &x * &ln_x) + &x - half_ln_pi;
    let big = (inner * 6u32).exp();
    let n = Integer::from(n);
    let n2 = Integer::from(n.square_ref());
    let cubic = Integer::from(&n2 * &n) * 8u32 + n2 * 4u32 + n;
    Ok((big - cubic) * 30u32)
}

/// Extra working bits for θ: `3 log₁₀ n + 25` digits for the cancellation plus
/// the digits of `ln n!` lost when forming the exponent.
fn theta_extra_bits(n: u64, cancellation_factor: f64) -> u32 {
    let log_n = (n as f64).log10();
    let magnitude = ((n as f64) * (n as f64).ln().max(1.0)).log10().max(0.0);
    (3.33 * (cancellation_factor * log_n + 25.0 + magnitude)).ceil() as u32
}

fn with_tolerance_at_most(ctx: &PrecisionContext, tol: f64) -> Result<PrecisionContext> {
    ctx.with_tolerance(ctx.tolerance().min(tol))
}

/// Ramanujan's θ_n, certified to at least 20 significant digits, with the
/// bound checks filled in.
pub fn theta_of_n(n: u64, ctx: &PrecisionContext) -> Result<ThetaRecord> {
    check_n(n)?;
    let vctx = with_tolerance_at_most(ctx, 1e-20)?;
    let start = ctx.working_bits() + theta_extra_bits(n, 3.0);
    let what = format!("theta at n = {n}");
    let (theta, _) = certify(
        &vctx,
        &what,
        start,
        |bits| theta_raw(n, bits),
        |bits, _| bits * 2,
    )?;

    let ram_lo = Rational::from((3, 10));
    let ram_hi = Rational::from(1);
    let (hv_lo, hv_hi) = hv_bounds(n);

    // A flag is only meaningful if θ is separated from the bound by more than
    // its certified error.
    let slack = Float::with_val(64, theta.abs_ref()) * vctx.tolerance();
    for bound in [&ram_lo, &ram_hi, &hv_lo, &hv_hi] {
        let gap = Float::with_val(theta.prec(), &theta - bound).abs();
        if gap <= slack {
            return Err(Error::InsufficientPrecision {
                what: format!("theta at n = {n} against bound {bound}"),
                needed_bits: theta.prec() * 2,
                max_bits: ctx.max_bits(),
            });
        }
    }
    let in_ram_bounds = theta > ram_lo && theta < ram_hi;
    let in_hv_bounds = theta > hv_lo && theta < hv_hi;
    Ok(ThetaRecord {
        n,
        theta: HpReal::from_float(theta).round_to(ctx.bits()),
        hv_lo: HpReal::from_rational(&hv_lo, ctx.bits()),
        hv_hi: HpReal::from_rational(&hv_hi, ctx.bits()),
        ram_lo,
        ram_hi,
        in_ram_bounds,
        in_hv_bounds,
    })
}

/// `A_n = n³ (θ_n − 1 + 11/(8n) − 79/(112n²))`, the coefficient of `n^-3`
/// in θ's expansion seen at finite `n`.
pub fn estimate_a(n: u64, ctx: &PrecisionContext) -> Result<HpReal> {
    if n < 10 {
        return Err(Error::domain(format!("estimate_a needs n >= 10, got {n}")));
    }
    check_n(n)?;
    let vctx = with_tolerance_at_most(ctx, 1e-15)?;
    let start = ctx.working_bits() + theta_extra_bits(n, 6.0);
    let eval = |bits: u32| -> Result<Float> {
        let (lo, _) = hv_bounds(n);
        let residual = theta_raw(n, bits)? - Float::with_val(bits, &lo);
        let n3 = Integer::from(n) * n * n;
        Ok(residual * n3)
    };
    let what = format!("A at n = {n}");
    let (a, _) = certify(&vctx, &what, start, eval, |bits, _| bits * 2)?;
    Ok(HpReal::from_float(a).round_to(ctx.bits()))
}
