//! The correction factors `f(x)` written out directly, without going through
//! logarithms of the full approximations. Used to cross-check
//! [`correction_factor`](super::correction_factor).

use rug::ops::Pow;
use rug::{Float, Rational};

use super::method::{
    chen_constants, hv_theta_coefficients, laplace_coefficients, pathological_scale, sam_constant,
};
use super::MethodId;
use crate::error::{Error, Result};
use crate::mpcore::{certify, HpReal, PrecisionContext};

fn inv(bits: u32, x: &Float, k: u32) -> Float {
    Float::with_val(bits, Pow::pow(x, k)).recip()
}

fn sixth_root_factor(x: &Float, theta: Float, bits: u32) -> Float {
    // 1 + 1/(2x) + 1/(8x²) + θ/(240x³)
    let base = Float::with_val(bits, 1)
        + inv(bits, x, 1) / 2u32
        + inv(bits, x, 2) / 8u32
        + theta * inv(bits, x, 3) / 240u32;
    base.pow(Float::with_val(bits, 6u32).recip())
}

fn hv_theta(x: &Float, bits: u32) -> Float {
    let [c0, c1, c2] = hv_theta_coefficients();
    Float::with_val(bits, &c0)
        + Float::with_val(bits, &c1) * inv(bits, x, 1)
        + Float::with_val(bits, &c2) * inv(bits, x, 2)
}

fn chen_factor(x: &Float, bits: u32) -> Float {
    let [c1, c2, c3] = chen_constants();
    let denom = Float::with_val(bits, Pow::pow(x, 3u32)) * 12u32 + Float::with_val(bits, &c1) * x
        - Float::with_val(bits, &c2);
    let base = Float::with_val(bits, 1) + denom.recip();
    let exponent = Float::with_val(bits, x.square_ref()) + Float::with_val(bits, &c3);
    base.pow(exponent)
}

fn closed_form_raw(method: MethodId, x: &Float, bits: u32) -> Result<Float> {
    let x = &Float::with_val(bits, x);
    let out = match method {
        MethodId::Stirling => return Err(Error::domain("Stirling has no correction factor")),
        MethodId::Burnside => {
            // (1 + 1/(2x))^x ((1 + 1/(2x))/e)^(1/2)
            let base = Float::with_val(bits, 1) + inv(bits, x, 1) / 2u32;
            let e = Float::with_val(bits, 1).exp();
            let tail = Float::with_val(bits, &base / &e).sqrt();
            base.pow(x) * tail
        }
        MethodId::Gosper => (Float::with_val(bits, 1) + inv(bits, x, 1) / 6u32).sqrt(),
        MethodId::Mortici => (Float::with_val(bits, 1) + inv(bits, x, 2) / 12u32).pow(x),
        MethodId::Ramanujan => sixth_root_factor(x, Float::with_val(bits, 1), bits),
        MethodId::Laplace(k) => {
            let mut sum = Float::with_val(bits, 1);
            for (i, c) in laplace_coefficients()
                .iter()
                .take(usize::from(k))
                .enumerate()
            {
                sum += Float::with_val(bits, c) * inv(bits, x, i as u32 + 1);
            }
            sum
        }
        MethodId::Nemes => {
            let denom = Float::with_val(bits, x.square_ref()) * 12u32
                - Float::with_val(bits, &Rational::from((1, 10)));
            (Float::with_val(bits, 1) + denom.recip()).pow(x)
        }
        MethodId::Windschitl => {
            let base = Float::with_val(bits, x.recip_ref()).sinh() * x;
            base.pow(Float::with_val(bits, x / 2u32))
        }
        MethodId::HirschhornVillarino => sixth_root_factor(x, hv_theta(x, bits), bits),
        MethodId::Chen => chen_factor(x, bits),
        MethodId::Sam => {
            let theta =
                hv_theta(x, bits) + Float::with_val(bits, &sam_constant()) * inv(bits, x, 3);
            sixth_root_factor(x, theta, bits)
        }
        MethodId::Pathological => {
            let bump = Float::with_val(bits, pathological_scale()) * inv(bits, x, 8);
            chen_factor(x, bits) * (bump + 1u32)
        }
    };
    if !out.is_finite() || out <= 0 {
        return Err(Error::domain(format!(
            "{method} correction factor undefined at x = {x}"
        )));
    }
    Ok(out)
}

/// The closed-form correction factor `f(x)` of `method`, rounded to
/// `ctx.bits()`.
pub fn correction_factor_closed_form(
    method: MethodId,
    x: &HpReal,
    ctx: &PrecisionContext,
) -> Result<HpReal> {
    if !x.as_float().is_finite() || *x <= 0.0 {
        return Err(Error::domain(format!("x must be a positive real, got {x}")));
    }
    let what = format!("closed-form factor {method}({x:.6})");
    let (value, _) = certify(
        ctx,
        &what,
        ctx.working_bits(),
        |bits| closed_form_raw(method, x.as_float(), bits),
        |bits, _| bits * 2,
    )?;
    Ok(HpReal::from_float(value).round_to(ctx.bits()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_by_hand() {
        let ctx = PrecisionContext::default();
        let one = HpReal::from_u64(1, 384);
        let two = HpReal::from_u64(2, 384);
        let f = |m| {
            correction_factor_closed_form(m, &two, &ctx)
                .unwrap()
                .to_f64()
        };
        assert!((f(MethodId::Gosper) - (1.0f64 + 1.0 / 12.0).sqrt()).abs() < 1e-15);
        assert!((f(MethodId::Mortici) - (1.0f64 + 1.0 / 48.0).powi(2)).abs() < 1e-15);
        let lap = 1.0 + 1.0 / 24.0 + 1.0 / 1152.0 - 139.0 / 414_720.0 - 571.0 / 39_813_120.0;
        assert!((f(MethodId::Laplace(4)) - lap).abs() < 1e-15);
        let w1 = correction_factor_closed_form(MethodId::Windschitl, &one, &ctx).unwrap();
        assert!((w1.to_f64() - 1f64.sinh().sqrt()).abs() < 1e-15);
        assert!(correction_factor_closed_form(MethodId::Stirling, &one, &ctx).is_err());
    }
}
