use gammaprox::analysis::{estimate_a, percentage_error, theta_of_n};
use gammaprox::approx::{correction_factor, ln_approx, MethodId};
use gammaprox::mpcore::{HpReal, PrecisionContext, Validation};
use gammaprox::selftest;
use rug::Rational;

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

#[test]
fn invariant_suite_passes() {
    for check in selftest::run(&ctx()) {
        assert!(check.passed, "{}: {}", check.name, check.detail);
    }
}

#[test]
fn hv_window_implies_ramanujan_window() {
    for n in (1..=200).chain([500, 5000, 50_000]) {
        let rec = theta_of_n(n, &ctx()).unwrap();
        assert!(!rec.in_hv_bounds || rec.in_ram_bounds, "n = {n}");
        assert_eq!(rec.ram_lo, Rational::from((3, 10)));
        assert!(rec.hv_hi > rec.hv_lo);
    }
}

#[test]
fn a_sequence_stays_inside_hv_term() {
    // 0 < A_n < 20/33 and increasing toward the published constant
    let upper = 20.0 / 33.0;
    let mut last = 0.0;
    for n in [10u64, 20, 50, 100, 1000, 10_000, 100_000] {
        let a = estimate_a(n, &ctx()).unwrap().to_f64();
        assert!(a > 0.0 && a < upper, "A_{n} = {a}");
        assert!(a > last);
        last = a;
    }
    assert!((last - 0.526_636_197).abs() < 1e-4);
}

#[test]
fn pathological_error_is_astronomical_at_moderate_n() {
    let rec = percentage_error(MethodId::Pathological, 1000, &ctx()).unwrap();
    // ≈ 100 · 10^100 / 10^24
    let mag = rec.magnitude();
    assert!(mag > HpReal::parse("9.9e77", 64).unwrap());
    assert!(mag < HpReal::parse("1.1e78", 64).unwrap());
}

#[test]
fn validation_policy_does_not_change_values() {
    let plain = ctx().with_validation(Validation::None);
    for method in [
        MethodId::Gosper,
        MethodId::HirschhornVillarino,
        MethodId::Sam,
    ] {
        let a = percentage_error(method, 10_000, &ctx()).unwrap().pct_error;
        let b = percentage_error(method, 10_000, &plain).unwrap().pct_error;
        // the unvalidated pass loses ~log2(ln n! / |error|) bits to cancellation
        let rel = (&(&a - &b) / &a).abs().to_f64();
        assert!(rel < 1e-70, "{method}: {rel:e}");
    }
}

#[test]
fn sign_of_errors() {
    // Stirling and Gosper undershoot, Burnside and Ramanujan overshoot
    let sign = |m| {
        percentage_error(m, 50, &ctx())
            .unwrap()
            .pct_error
            .is_sign_negative()
    };
    assert!(sign(MethodId::Stirling));
    assert!(sign(MethodId::Gosper));
    assert!(!sign(MethodId::Burnside));
    assert!(!sign(MethodId::Ramanujan));
}

#[test]
fn evaluators_accept_non_integer_arguments() {
    let x = HpReal::parse("2.5", 384).unwrap();
    for method in MethodId::ALL {
        assert!(ln_approx(method, &x, &ctx()).is_ok(), "{method}");
    }
    // Γ(3.5) = 15√π/8
    let gamma = (15.0 * std::f64::consts::PI.sqrt() / 8.0).ln();
    let chen = ln_approx(MethodId::Chen, &x, &ctx()).unwrap().to_f64();
    assert!((chen - gamma).abs() < 1e-5);
}

#[test]
fn laplace_truncations_improve_with_order() {
    let x = HpReal::from_u64(50, 384);
    let mut last = f64::INFINITY;
    for k in 1..=4 {
        let f = correction_factor(MethodId::Laplace(k), &x, &ctx()).unwrap();
        let err = percentage_error(MethodId::Laplace(k), 50, &ctx())
            .unwrap()
            .magnitude()
            .to_f64();
        assert!(err < last, "L{k}");
        assert!(f > 1.0);
        last = err;
    }
}
