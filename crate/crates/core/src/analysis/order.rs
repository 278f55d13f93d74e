use rayon::prelude::*;

use super::percentage_error;
use crate::approx::MethodId;
use crate::error::{Error, Result};
use crate::mpcore::{HpReal, PrecisionContext};

/// Least-squares line through `(ln n, ln |pct error|)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderFit {
    pub method: MethodId,
    pub sample_ns: Vec<u64>,
    pub slope: HpReal,
    pub intercept: HpReal,
}

impl OrderFit {
    /// Empirical order `p` in `error ≈ C n^-p`.
    pub fn order(&self) -> f64 {
        -self.slope.to_f64()
    }
}

/// Fits the convergence order of `method` over `sample_ns`.
pub fn estimate_order(
    method: MethodId,
    sample_ns: &[u64],
    ctx: &PrecisionContext,
) -> Result<OrderFit> {
    if sample_ns.len() < 3 {
        return Err(Error::domain(format!(
            "order fit needs at least 3 sample sizes, got {}",
            sample_ns.len()
        )));
    }
    if sample_ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("sample sizes must be strictly increasing"));
    }
    let records = sample_ns
        .par_iter()
        .map(|&n| percentage_error(method, n, ctx))
        .collect::<Result<Vec<_>>>()?;

    let bits = ctx.bits();
    let mut points = Vec::with_capacity(records.len());
    for rec in &records {
        if rec.pct_error.is_zero() {
            return Err(Error::domain(format!(
                "percentage error of {method} at n = {} is zero; no order to fit",
                rec.n
            )));
        }
        let x = HpReal::from_u64(rec.n, bits).ln()?;
        let y = rec.pct_error.abs().ln()?;
        points.push((x, y));
    }

    let count = HpReal::from_u64(points.len() as u64, bits);
    let zero = HpReal::from_u64(0, bits);
    let sum = |f: &dyn Fn(&(HpReal, HpReal)) -> HpReal| {
        points.iter().fold(zero.clone(), |acc, p| &acc + &f(p))
    };
    let mean_x = &sum(&|p| p.0.clone()) / &count;
    let mean_y = &sum(&|p| p.1.clone()) / &count;
    let sxx = sum(&|p| {
        let dx = &p.0 - &mean_x;
        &dx * &dx
    });
    let sxy = sum(&|p| &(&p.0 - &mean_x) * &(&p.1 - &mean_y));
    let slope = &sxy / &sxx;
    let intercept = &mean_y - &(&slope * &mean_x);
    Ok(OrderFit {
        method,
        sample_ns: sample_ns.to_vec(),
        slope,
        intercept,
    })
}
