//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::time::{Duration, Instant};

use gammaprox::analysis::{estimate_a, estimate_order, percentage_error, theta_of_n};
use gammaprox::approx::{correction_factor, correction_factor_closed_form, MethodId};
use gammaprox::mpcore::{ln_factorial_exact, ln_factorial_sum, HpReal, PrecisionContext};
use gammaprox::report::published::{published_cells, PublishedCell};
use gammaprox::report::{compute_cells, format_value, OutputFormat, TableRequest};
use rayon::prelude::*;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

/// Compares every computed cell of a preset table with its printed value at
/// the printed number of significant figures.
fn reproduce_table(table: u8) -> (Vec<String>, Duration) {
    let start = Instant::now();
    let req = TableRequest::preset(table, OutputFormat::Csv).unwrap();
    let cells = compute_cells(&req, &ctx()).expect("table cells");
    let elapsed = start.elapsed();
    let published = published_cells(table);
    assert_eq!(cells.len(), published.len());
    let mut mismatches = Vec::new();
    for (cell, printed) in cells.iter().zip(&published) {
        assert_eq!(
            (cell.record.n, cell.record.method),
            (printed.n, printed.method)
        );
        let ours = format_value(&cell.record.magnitude(), printed.sig_figs()).unwrap();
        if ours != printed.expected() {
            mismatches.push(format!(
                "{} n={}: computed {ours}, expected {}",
                printed.method,
                printed.n,
                printed.expected()
            ));
        }
    }
    (mismatches, elapsed)
}

fn within_one_unit_of_two_figs(cell: &PublishedCell, value: &HpReal) -> bool {
    // expected d.d × 10^k; one unit of the second figure is 10^(k-1)
    let expected: f64 = cell.expected().parse().unwrap();
    let k = expected.log10().floor();
    (value.to_f64() - expected).abs() <= 10f64.powf(k - 1.0) * (1.0 + 1e-9)
}

fn criterion_1() -> Outcome {
    let (mismatches, elapsed) = reproduce_table(1);
    let typo = published_cells(1)
        .into_iter()
        .find(|c| c.is_suspected_typo())
        .unwrap();
    let s100 = percentage_error(MethodId::Stirling, 100, &ctx())
        .unwrap()
        .magnitude();
    let typo_ok = within_one_unit_of_two_figs(&typo, &s100);
    let fast = elapsed < Duration::from_secs(120);
    outcome(
        mismatches.is_empty() && typo_ok && fast,
        format!(
            "27 cells, {} mismatched {:?}; S n=100 = {} (expect 8.3e-2 ± 1e-3); {:.2?}",
            mismatches.len(),
            mismatches,
            s100.to_sci_string_digits(4),
            elapsed
        ),
    )
}

fn criterion_2() -> Outcome {
    let (mismatches, _) = reproduce_table(2);
    let n100 = percentage_error(MethodId::Nemes, 100, &ctx())
        .unwrap()
        .magnitude();
    let typo_ok = format_value(&n100, 2).unwrap() == "6.5e-12";
    outcome(
        mismatches.is_empty() && typo_ok,
        format!(
            "36 cells, {} mismatched {:?}; N n=100 = {}",
            mismatches.len(),
            mismatches,
            format_value(&n100, 2).unwrap()
        ),
    )
}

fn criterion_3() -> Outcome {
    let (mismatches, _) = reproduce_table(3);
    let c = percentage_error(MethodId::Chen, 1_000_000, &ctx())
        .unwrap()
        .magnitude();
    let sam = percentage_error(MethodId::Sam, 1_000_000, &ctx())
        .unwrap()
        .magnitude();
    let headline =
        format_value(&c, 2).unwrap() == "4.2e-44" && format_value(&sam, 2).unwrap() == "1.3e-50";
    outcome(
        mismatches.is_empty() && headline,
        format!(
            "36 cells, {} mismatched {:?}; C(10^6) = {}, SAM(10^6) = {}",
            mismatches.len(),
            mismatches,
            format_value(&c, 2).unwrap(),
            format_value(&sam, 2).unwrap()
        ),
    )
}

fn criterion_4() -> Outcome {
    let ns: Vec<u64> = (1..=50).chain([100, 1000, 10_000]).collect();
    let records: Vec<_> = ns
        .par_iter()
        .map(|&n| theta_of_n(n, &ctx()).unwrap())
        .collect();
    let failing: Vec<u64> = records
        .iter()
        .filter(|r| !(r.in_ram_bounds && r.in_hv_bounds))
        .map(|r| r.n)
        .collect();
    let hand = 30.0 * (6f64.exp() / std::f64::consts::PI.powi(3) - 13.0);
    let theta1 = records[0].theta.to_f64();
    let theta1_ok = (theta1 - hand).abs() < 1e-3;
    outcome(
        failing.is_empty() && theta1_ok,
        format!(
            "{} n checked, failing {:?}; theta_1 = {theta1:.6} vs hand {hand:.6}",
            ns.len(),
            failing
        ),
    )
}

fn criterion_5() -> Outcome {
    let claims = [
        (MethodId::Burnside, -1.0),
        (MethodId::Ramanujan, -4.0),
        (MethodId::Nemes, -5.0),
        (MethodId::Windschitl, -5.0),
        (MethodId::Chen, -7.0),
        (MethodId::Sam, -7.0),
    ];
    let ns = [1000, 10_000, 1_000_000];
    let mut ok = true;
    let mut parts = Vec::new();
    for (method, claimed) in claims {
        let slope = estimate_order(method, &ns, &ctx()).unwrap().slope.to_f64();
        let hit = (slope - claimed).abs() <= 0.1;
        ok &= hit;
        parts.push(format!(
            "{method} {slope:.3}{}",
            if hit { "" } else { " (off)" }
        ));
    }
    outcome(
        ok,
        format!("slopes over 10^3,10^4,10^6: {}", parts.join(", ")),
    )
}

fn criterion_6() -> Outcome {
    let c = ctx();
    let mut worst = (0.0f64, String::new());
    for method in MethodId::CORRECTED {
        for x in [1u64, 2, 5, 10, 100, 10_000] {
            let xr = HpReal::from_u64(x, c.bits());
            let ratio = correction_factor(method, &xr, &c).unwrap();
            let closed = correction_factor_closed_form(method, &xr, &c).unwrap();
            let ulps = ratio.ulps_from(&closed, c.bits());
            if ulps >= worst.0 {
                worst = (ulps, format!("{method} at x={x}"));
            }
        }
    }
    outcome(
        worst.0 <= 10.0,
        format!(
            "9 methods x 6 points, worst {} ulps ({}) at {} bits",
            worst.0,
            worst.1,
            c.bits()
        ),
    )
}

fn criterion_7() -> Outcome {
    let ns = [10_000u64, 100_000, 1_000_000];
    let values: Vec<f64> = ns
        .par_iter()
        .map(|&n| estimate_a(n, &ctx()).unwrap().to_f64())
        .collect();
    let near = values.iter().all(|a| (a - 0.5266).abs() < 1e-2);
    let gap = (values[1] - values[0]).abs();
    outcome(
        near && gap < 1e-3,
        format!(
            "A_1e4 = {:.10}, A_1e5 = {:.10}, A_1e6 = {:.10}; gap {gap:.3e}",
            values[0], values[1], values[2]
        ),
    )
}

fn criterion_8() -> Outcome {
    let rec = percentage_error(MethodId::Pathological, 1_000_000, &ctx()).unwrap();
    let huge = rec.magnitude() > HpReal::parse("1e50", 64).unwrap();
    let slope = estimate_order(
        MethodId::Pathological,
        &[10_000, 100_000, 1_000_000],
        &ctx(),
    )
    .unwrap()
    .slope
    .to_f64();
    outcome(
        huge && (slope + 8.0).abs() <= 0.1,
        format!(
            "PATH(10^6) = {} %, slope over 10^4..10^6 = {slope:.4}",
            rec.magnitude().to_sci_string_digits(3)
        ),
    )
}

fn criterion_9() -> Outcome {
    let c = ctx();
    let ns: Vec<u64> = (1..=1000).chain([10_000, 1_000_000]).collect();
    let worst = ns
        .par_iter()
        .map(|&n| {
            let tree = ln_factorial_exact(n, &c).unwrap();
            let sum = ln_factorial_sum(n, &c).unwrap();
            tree.ulps_from(&sum, c.bits())
        })
        .reduce(|| 0.0, f64::max);

    // every published cell certified at the working precision: bits and
    // bits + 64 agree to the context tolerance without raising precision
    let mut uncertified = Vec::new();
    for table in 1..=3u8 {
        let req = TableRequest::preset(table, OutputFormat::Csv).unwrap();
        for cell in compute_cells(&req, &c).unwrap() {
            if cell.record.bits_used != c.bits() {
                uncertified.push(format!("{} n={}", cell.record.method, cell.record.n));
            }
        }
    }
    outcome(
        worst <= 4.0 && uncertified.is_empty(),
        format!(
            "tree vs sum worst {worst} ulps over n=1..1000,1e4,1e6; {} published cells needed raised precision {:?}",
            uncertified.len(),
            uncertified
        ),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("Table 1 reproduction", criterion_1),
        ("Table 2 reproduction", criterion_2),
        ("Table 3 reproduction", criterion_3),
        ("theta bounds", criterion_4),
        ("order claims", criterion_5),
        ("correction-factor equivalence", criterion_6),
        ("A convergence", criterion_7),
        ("pathological counterexample", criterion_8),
        ("oracle cross-checks", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let status = if result.passed { "PASS" } else { "FAIL" };
        if !result.passed {
            failed += 1;
        }
        println!(
            "criterion {} [{status}] {name}: {} ({:.2?})",
            i + 1,
            result.detail,
            start.elapsed()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
