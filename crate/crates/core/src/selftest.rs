//! Invariant checks run by `gammaprox selftest`.

use rayon::prelude::*;
use rug::ops::Pow;
use rug::Integer;

use crate::analysis::{percentage_error, theta_of_n};
use crate::approx::{correction_factor, correction_factor_closed_form, MethodId};
use crate::error::Result;
use crate::mpcore::{
    factorial_exact, ln_big, ln_factorial_exact, ln_factorial_sum, BigNat, HpReal, PrecisionContext,
};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, outcome: Result<(bool, String)>) -> Check {
    match outcome {
        Ok((passed, detail)) => Check {
            name,
            passed,
            detail,
        },
        Err(e) => Check {
            name,
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn factorial_recurrence() -> Result<(bool, String)> {
    let mut prev = factorial_exact(1)?;
    for n in 2..=300u64 {
        let next = factorial_exact(n)?;
        if next != &prev * &BigNat::from(n) {
            return Ok((false, format!("n! != n (n-1)! at n = {n}")));
        }
        prev = next;
    }
    Ok((true, "n = 2..300".into()))
}

fn tree_vs_sum(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let ns: Vec<u64> = (1..=200).chain([10_000]).collect();
    let worst = ns
        .par_iter()
        .map(|&n| {
            let tree = ln_factorial_exact(n, ctx)?;
            let sum = ln_factorial_sum(n, ctx)?;
            Ok(tree.ulps_from(&sum, ctx.bits()))
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok((
        worst <= 4.0,
        format!("max {worst} ulps over n = 1..200, 10^4"),
    ))
}

fn ln_multiplicative(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let pairs = [
        (Integer::from(3).pow(500), Integer::from(7).pow(300)),
        (Integer::from(12345), Integer::from(2).pow(4000) + 1),
        (Integer::from(1), Integer::from(999_999_937u64)),
    ];
    let tol = HpReal::from_u64(1, ctx.bits()).ulp().to_f64() * 64.0;
    for (a, b) in pairs {
        let ab = BigNat::from_integer(Integer::from(&a * &b))?;
        let lhs = ln_big(&ab, ctx)?;
        let rhs =
            &ln_big(&BigNat::from_integer(a)?, ctx)? + &ln_big(&BigNat::from_integer(b)?, ctx)?;
        let rel = ((&lhs - &rhs).abs().to_f64()) / lhs.abs().to_f64().max(1.0);
        if rel > tol {
            return Ok((false, format!("relative gap {rel:e}")));
        }
    }
    Ok((true, "3 pairs".into()))
}

const FACTOR_XS: [u64; 6] = [1, 2, 5, 10, 100, 10_000];

fn factor_routes(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let mut methods = MethodId::CORRECTED.to_vec();
    methods.extend([MethodId::Sam, MethodId::Pathological]);
    let mut worst = 0.0f64;
    for method in methods {
        for x in FACTOR_XS {
            let x = HpReal::from_u64(x, ctx.bits());
            let ratio = correction_factor(method, &x, ctx)?;
            let closed = correction_factor_closed_form(method, &x, ctx)?;
            worst = worst.max(ratio.ulps_from(&closed, ctx.bits()));
        }
    }
    Ok((worst <= 10.0, format!("max {worst} ulps")))
}

fn factors_tend_to_one(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let mut methods = MethodId::CORRECTED.to_vec();
    methods.extend([
        MethodId::Laplace(1),
        MethodId::Laplace(2),
        MethodId::Laplace(3),
        MethodId::Sam,
    ]);
    let one = HpReal::from_u64(1, ctx.bits());
    for method in methods {
        let mut last = f64::INFINITY;
        for k in 1..=6 {
            let x = HpReal::from_u64(10u64.pow(k), ctx.bits());
            let dev = (&correction_factor(method, &x, ctx)? - &one).abs().to_f64();
            if dev >= last {
                return Ok((false, format!("{method}: |f - 1| not decreasing at 10^{k}")));
            }
            last = dev;
        }
        if last >= 1e-5 {
            return Ok((false, format!("{method}: |f(10^6) - 1| = {last:e}")));
        }
    }
    Ok((true, "|f(10^k) - 1| decreasing, < 1e-5 at 10^6".into()))
}

fn pathological_ratio(ctx: &PrecisionContext) -> Result<(bool, String)> {
    for x in FACTOR_XS {
        let xr = HpReal::from_u64(x, ctx.bits());
        let ratio = &correction_factor(MethodId::Pathological, &xr, ctx)?
            / &correction_factor(MethodId::Chen, &xr, ctx)?;
        let bump = HpReal::parse("1e100", ctx.working_bits())?
            / HpReal::from_u64(x, ctx.working_bits()).pow(&HpReal::from_u64(8, 64))?;
        let want = &bump + &HpReal::from_u64(1, ctx.working_bits());
        let rel = (&(&ratio - &want) / &want).abs().to_f64();
        if rel > 1e-100 {
            return Ok((false, format!("x = {x}: relative gap {rel:e}")));
        }
    }
    Ok((true, "PATH/C = 1 + 10^100/x^8".into()))
}

fn theta_bounds(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let ns: Vec<u64> = (1..=50).chain([100, 1000, 10_000]).collect();
    let records = ns
        .par_iter()
        .map(|&n| theta_of_n(n, ctx))
        .collect::<Result<Vec<_>>>()?;
    for rec in &records {
        if !(rec.in_ram_bounds && rec.in_hv_bounds) {
            return Ok((false, format!("bounds fail at n = {}", rec.n)));
        }
    }
    if records.windows(2).any(|w| w[1].theta <= w[0].theta) {
        return Ok((false, "theta not increasing".into()));
    }
    Ok((true, format!("{} values of n, increasing", records.len())))
}

fn ordering_at_a_million(ctx: &PrecisionContext) -> Result<(bool, String)> {
    use MethodId::*;
    let order = [
        Stirling,
        Burnside,
        Gosper,
        Mortici,
        Ramanujan,
        Nemes,
        Windschitl,
        HirschhornVillarino,
        Chen,
        Sam,
    ];
    let mags = order
        .par_iter()
        .map(|&m| Ok(percentage_error(m, 1_000_000, ctx)?.magnitude()))
        .collect::<Result<Vec<_>>>()?;
    let ok = mags.windows(2).all(|w| w[0] > w[1]);
    Ok((ok, "S > B > G > M > R > N > W > HV > C > SAM".into()))
}

/// Runs every invariant check.
pub fn run(ctx: &PrecisionContext) -> Vec<Check> {
    vec![
        check("factorial recurrence", factorial_recurrence()),
        check("ln n! product tree vs sum", tree_vs_sum(ctx)),
        check("ln_big multiplicative", ln_multiplicative(ctx)),
        check("correction factor ratio vs closed form", factor_routes(ctx)),
        check("correction factors tend to one", factors_tend_to_one(ctx)),
        check("pathological factor ratio", pathological_ratio(ctx)),
        check("theta bounds and monotonicity", theta_bounds(ctx)),
        check("error ordering at n = 10^6", ordering_at_a_million(ctx)),
    ]
}
