use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Rational};

use super::method::{
    chen_constants, hv_theta_coefficients, laplace_coefficients, pathological_scale, sam_constant,
};
use super::MethodId;
use crate::error::{Error, Result};
use crate::mpcore::{certify, HpReal, PrecisionContext};

fn rat(bits: u32, value: &Rational) -> Float {
    Float::with_val(bits, value)
}

fn half_ln(bits: u32, value: Float) -> Float {
    Float::with_val(bits, value.ln() / 2u32)
}

/// `ln` that reports a domain error instead of producing NaN.
fn checked_ln(value: Float, what: &str) -> Result<Float> {
    if value <= 0 {
        return Err(Error::domain(format!("{what} is not positive")));
    }
    Ok(value.ln())
}

/// `½ln(2πx) + x ln x − x`
fn ln_stirling(x: &Float, bits: u32) -> Float {
    let two_pi_x = Float::with_val(bits, Constant::Pi) * 2u32 * x;
    let ln_x = Float::with_val(bits, x.ln_ref());
    half_ln(bits, two_pi_x) + Float::with_val(bits, x * &ln_x) - x
}

/// `x ln x − x + ½ln π + ⅙ ln(8x³ + 4x² + x + θ/30)`
fn ln_ramanujan_family(x: &Float, theta: Float, bits: u32) -> Result<Float> {
    let x2 = Float::with_val(bits, x.square_ref());
    let x3 = Float::with_val(bits, &x2 * x);
    let cubic =
        Float::with_val(bits, &x3 * 8u32) + Float::with_val(bits, &x2 * 4u32) + x + theta / 30u32;
    let sixth = checked_ln(cubic, "Ramanujan cubic")? / 6u32;
    let ln_x = Float::with_val(bits, x.ln_ref());
    let pi = Float::with_val(bits, Constant::Pi);
    Ok(Float::with_val(bits, x * &ln_x) - x + half_ln(bits, pi) + sixth)
}

/// Ramanujan's formula with an explicit `θ`:
/// `ln(√π (x/e)^x (8x³ + 4x² + x + θ/30)^(1/6))`.
pub fn ln_ramanujan_theta(x: &HpReal, theta: &HpReal, ctx: &PrecisionContext) -> Result<HpReal> {
    if !x.as_float().is_finite() || *x <= 0.0 {
        return Err(Error::domain(format!("x must be a positive real, got {x}")));
    }
    let bits = ctx.working_bits().max(theta.precision_bits());
    let x = Float::with_val(bits, x.as_float());
    let theta = Float::with_val(bits, theta.as_float());
    let out = ln_ramanujan_family(&x, theta, bits)?;
    Ok(HpReal::from_float(out).round_to(ctx.bits()))
}

/// `1 − 11/(8x) + 79/(112x²)`, optionally `+ A/x³`.
fn hv_theta(x: &Float, bits: u32, with_sam_term: bool) -> Float {
    let [c0, c1, c2] = hv_theta_coefficients();
    let x2 = Float::with_val(bits, x.square_ref());
    let mut theta = rat(bits, &c0) + rat(bits, &c1) / x + rat(bits, &c2) / &x2;
    if with_sam_term {
        let x3 = Float::with_val(bits, &x2 * x);
        theta += rat(bits, &sam_constant()) / x3;
    }
    theta
}

/// `(x² + 53/210) · ln(1 + 1/(12x³ + 24x/7 − 1/2))`
fn ln_chen_factor(x: &Float, bits: u32) -> Float {
    let [c1, c2, c3] = chen_constants();
    let x2 = Float::with_val(bits, x.square_ref());
    let x3 = Float::with_val(bits, &x2 * x);
    let denom = Float::with_val(bits, &x3 * 12u32) + rat(bits, &c1) * x - rat(bits, &c2);
    let inner = Float::with_val(bits, denom.recip()).ln_1p();
    (x2 + rat(bits, &c3)) * inner
}

/// Log of the approximation evaluated at `bits` of precision, no validation.
pub(crate) fn ln_approx_raw(method: MethodId, x: &Float, bits: u32) -> Result<Float> {
    let x = &Float::with_val(bits, x);
    let half = Float::with_val(bits, 0.5);
    let out = match method {
        MethodId::Stirling => ln_stirling(x, bits),
        MethodId::Burnside => {
            let shifted = Float::with_val(bits, x + &half);
            let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
            let ln_shifted = Float::with_val(bits, shifted.ln_ref()) - 1u32;
            half_ln(bits, two_pi) + shifted * ln_shifted
        }
        MethodId::Gosper => {
            let pi = Float::with_val(bits, Constant::Pi);
            let ln_x = Float::with_val(bits, x.ln_ref());
            let lin = Float::with_val(bits, x * 2u32) + Float::with_val(bits, 3u32).recip();
            half_ln(bits, pi) + Float::with_val(bits, x * &ln_x) - x + half_ln(bits, lin)
        }
        MethodId::Mortici => {
            // x ln(x/e + 1/(12ex)) = x (ln(x + 1/(12x)) − 1)
            let two_pi_x = Float::with_val(bits, Constant::Pi) * 2u32 * x;
            let inner = Float::with_val(bits, x * 12u32).recip() + x;
            half_ln(bits, two_pi_x) + Float::with_val(bits, x * (inner.ln() - 1u32))
        }
        MethodId::Ramanujan => ln_ramanujan_family(x, Float::with_val(bits, 1), bits)?,
        MethodId::Laplace(k) => {
            if !(1..=4).contains(&k) {
                return Err(Error::domain(format!(
                    "Laplace series order {k} not in 1..=4"
                )));
            }
            let mut series = Float::with_val(bits, 1);
            let mut power = Float::with_val(bits, 1);
            for c in laplace_coefficients().iter().take(usize::from(k)) {
                power /= x;
                series += rat(bits, c) * &power;
            }
            let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
            let ln_x = Float::with_val(bits, x.ln_ref());
            Float::with_val(bits, x + &half) * ln_x - x
                + half_ln(bits, two_pi)
                + checked_ln(series, "truncated Laplace series")?
        }
        MethodId::Nemes => {
            let x2 = Float::with_val(bits, x.square_ref());
            let denom = x2 * 12u32 - rat(bits, &Rational::from((1, 10)));
            if denom <= 0 {
                return Err(Error::domain(
                    "Nemes denominator 12x² − 1/10 is not positive",
                ));
            }
            ln_stirling(x, bits) + Float::with_val(bits, x * denom.recip().ln_1p())
        }
        MethodId::Windschitl => {
            let s = Float::with_val(bits, x.recip_ref()).sinh() * x;
            ln_stirling(x, bits) + Float::with_val(bits, x / 2u32) * s.ln()
        }
        MethodId::HirschhornVillarino => ln_ramanujan_family(x, hv_theta(x, bits, false), bits)?,
        MethodId::Chen => ln_stirling(x, bits) + ln_chen_factor(x, bits),
        MethodId::Sam => ln_ramanujan_family(x, hv_theta(x, bits, true), bits)?,
        MethodId::Pathological => {
            let x8 = Float::with_val(bits, Pow::pow(x, 8u32));
            let bump = Float::with_val(bits, pathological_scale()) / x8;
            ln_stirling(x, bits) + ln_chen_factor(x, bits) + bump.ln_1p()
        }
    };
    if !out.is_finite() {
        return Err(Error::domain(format!("{method} is not finite at x = {x}")));
    }
    Ok(out)
}

fn check_domain(method: MethodId, x: &HpReal) -> Result<()> {
    if !x.as_float().is_finite() || *x <= 0.0 {
        return Err(Error::domain(format!("x must be a positive real, got {x}")));
    }
    if matches!(method, MethodId::Laplace(_)) && *x < 1.0 {
        return Err(Error::domain(format!(
            "the truncated Laplace series needs x >= 1, got {x}"
        )));
    }
    Ok(())
}

/// Natural log of `method`'s approximation to `Γ(x+1)`, certified under the
/// context's validation policy and rounded to `ctx.bits()`.
pub fn ln_approx(method: MethodId, x: &HpReal, ctx: &PrecisionContext) -> Result<HpReal> {
    check_domain(method, x)?;
    let what = format!("ln {method}({x:.6})");
    let (value, _) = certify(
        ctx,
        &what,
        ctx.working_bits(),
        |bits| ln_approx_raw(method, x.as_float(), bits),
        |bits, _| bits * 2,
    )?;
    Ok(HpReal::from_float(value).round_to(ctx.bits()))
}

/// The factor `f(x)` with `approximation = Stirling · f(x)`, obtained as
/// `exp(ln approximation − ln Stirling)`.
pub fn correction_factor(method: MethodId, x: &HpReal, ctx: &PrecisionContext) -> Result<HpReal> {
    if method == MethodId::Stirling {
        return Err(Error::domain("Stirling has no correction factor"));
    }
    check_domain(method, x)?;
    let what = format!("correction factor {method}({x:.6})");
    let eval = |bits: u32| -> Result<Float> {
        let diff = ln_approx_raw(method, x.as_float(), bits)?
            - ln_approx_raw(MethodId::Stirling, x.as_float(), bits)?;
        Ok(diff.exp())
    };
    let (value, _) = certify(ctx, &what, ctx.working_bits(), eval, |bits, _| bits * 2)?;
    Ok(HpReal::from_float(value).round_to(ctx.bits()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn x(v: f64) -> HpReal {
        HpReal::from_f64(v, 384)
    }

    #[test]
    fn stirling_closed_form_at_one() {
        let got = ln_approx(MethodId::Stirling, &x(1.0), &ctx())
            .unwrap()
            .to_f64();
        let want = 0.5 * (2.0 * std::f64::consts::PI).ln() - 1.0;
        assert!((got - want).abs() < 1e-15);
    }

    #[test]
    fn windschitl_at_one() {
        let got = ln_approx(MethodId::Windschitl, &x(1.0), &ctx())
            .unwrap()
            .to_f64();
        let want = 0.5 * (2.0 * std::f64::consts::PI).ln() - 1.0 + 0.5 * 1f64.sinh().ln();
        assert!((got - want).abs() < 1e-15, "{got} vs {want}");
    }

    #[test]
    fn ramanujan_matches_direct_formula() {
        // f64 evaluation of √π (x/e)^x (8x³+4x²+x+1/30)^(1/6) at x = 3
        let xv = 3.0f64;
        let direct = std::f64::consts::PI.sqrt()
            * (xv / std::f64::consts::E).powf(xv)
            * (8.0 * xv.powi(3) + 4.0 * xv * xv + xv + 1.0 / 30.0).powf(1.0 / 6.0);
        let got = ln_approx(MethodId::Ramanujan, &x(xv), &ctx())
            .unwrap()
            .to_f64();
        assert!((got - direct.ln()).abs() < 1e-14);
    }

    #[test]
    fn domain_checks() {
        let c = ctx();
        assert!(matches!(
            ln_approx(MethodId::Stirling, &x(0.0), &c),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            ln_approx(MethodId::Gosper, &x(-2.0), &c),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            ln_approx(MethodId::Laplace(4), &x(0.5), &c),
            Err(Error::Domain(_))
        ));
        assert!(ln_approx(MethodId::Laplace(4), &x(1.0), &c).is_ok());
        assert!(ln_approx(MethodId::Burnside, &x(0.25), &c).is_ok());
        assert!(matches!(
            correction_factor(MethodId::Stirling, &x(2.0), &c),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn nemes_pole_is_a_domain_error() {
        // 12x² − 1/10 = 0 near x = 0.0913
        let r = ln_approx(MethodId::Nemes, &x(0.05), &ctx());
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn gosper_factor_at_six() {
        let f = correction_factor(MethodId::Gosper, &x(6.0), &ctx())
            .unwrap()
            .to_f64();
        assert!((f - (1.0f64 + 1.0 / 36.0).sqrt()).abs() < 1e-15);
        assert!(f.to_string().starts_with("1.01379"));
    }

    #[test]
    fn nemes_factor_at_one() {
        let f = correction_factor(MethodId::Nemes, &x(1.0), &ctx())
            .unwrap()
            .to_f64();
        assert!((f - (1.0 + 1.0 / 11.9)).abs() < 1e-15);
        assert!(f.to_string().starts_with("1.08403"));
    }

    #[test]
    fn mortici_factor_at_a_million() {
        // (1 + 1/(12x²))^x = 1 + 1/(12x) + 1/(288x²) + O(x^-3)
        let f = correction_factor(MethodId::Mortici, &x(1e6), &ctx()).unwrap();
        let dev = (f - HpReal::from_u64(1, 384)).to_f64();
        assert!((dev - 1.0 / 12e6 - 1.0 / 288e12).abs() < 1e-20, "{dev}");
        assert!(dev > 1e-10);
    }

    #[test]
    fn results_carry_context_precision() {
        let c = ctx().with_bits(512).unwrap();
        let v = ln_approx(MethodId::Chen, &x(7.5), &c).unwrap();
        assert_eq!(v.precision_bits(), 512);
    }
}
