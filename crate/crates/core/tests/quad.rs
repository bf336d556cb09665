use approx::assert_abs_diff_eq;
use kappa_fourier::quad::*;
use kappa_fourier::specfun::{gamma, ln_gamma};
use kappa_fourier::Complex64;
use std::f64::consts::PI;

fn beta_fn(x: f64, y: f64) -> f64 {
    (ln_gamma(x) + ln_gamma(y) - ln_gamma(x + y)).exp()
}

#[test]
fn symmetric_rule_masses_and_moments() {
    for alpha in [-0.9, -0.5, -0.25, 0.0, 0.7, 2.0, 6.5] {
        for n in [1, 5, 16, 40] {
            let rule = gauss_jacobi(alpha, n).unwrap();
            let mass = PI.sqrt() * gamma(alpha + 1.0) / gamma(alpha + 1.5);
            assert!(
                (rule.mass() / mass - 1.0).abs() < 1e-12,
                "alpha={alpha} n={n}"
            );
            assert!(rule.weights.iter().all(|&w| w > 0.0));
            assert!(rule.integrate(|t| t).abs() < 1e-14);
            if n >= 2 {
                // ∫ t² (1−t²)^α dt = B(3/2, α+1)
                let m2 = rule.integrate(|t| t * t);
                assert!((m2 / beta_fn(1.5, alpha + 1.0) - 1.0).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn rule_is_exact_to_degree_2n_minus_1() {
    for (alpha, beta) in [(0.0, 0.0), (-0.5, 0.3), (1.5, -0.7), (0.0, 2.4)] {
        let n = 12;
        let rule = gauss_jacobi_ab(alpha, beta, n).unwrap();
        for k in 0..(2 * n) {
            // ∫ (1+t)^k (1−t)^α (1+t)^β dt = 2^{α+β+k+1} B(α+1, β+k+1)
            let want = 2f64.powf(alpha + beta + k as f64 + 1.0)
                * beta_fn(alpha + 1.0, beta + k as f64 + 1.0);
            let got = rule.integrate(|t| (1.0 + t).powi(k as i32));
            assert!(
                (got / want - 1.0).abs() < 1e-12,
                "({alpha},{beta}) k={k}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn large_rules_stay_accurate() {
    let rule = gauss_legendre(200).unwrap();
    assert_abs_diff_eq!(
        rule.integrate(|t| (30.0 * t).cos()),
        2.0 * 30f64.sin() / 30.0,
        epsilon = 1e-14
    );
    let rule = gauss_jacobi_ab(0.0, -0.8, 150).unwrap();
    assert!((rule.mass() / jacobi_mass(0.0, -0.8) - 1.0).abs() < 1e-12);
}

#[test]
fn half_line_gaussian_moments() {
    for p in [0.0, 0.5, 1.0, 2.2, -0.5] {
        let got = HalfLine::new(p)
            .tol(1e-12)
            .integrate_real(|u| (-u * u).exp())
            .unwrap();
        let want = 0.5 * gamma((p + 1.0) / 2.0);
        assert!((got / want - 1.0).abs() < 1e-12, "p={p}: {got} vs {want}");
    }
}

#[test]
fn half_line_oscillatory() {
    // ∫_0^∞ e^{−u²} cos(vu) du = √π/2 e^{−v²/4}
    for v in [1.0, 10.0, 25.0] {
        let got = HalfLine::new(0.0)
            .tol(1e-12)
            .freq(v)
            .integrate(|u| Complex64::new((-u * u).exp() * (v * u).cos(), 0.0))
            .unwrap();
        let want = 0.5 * PI.sqrt() * (-v * v / 4.0).exp();
        assert!((got.re - want).abs() < 1e-14, "v={v}: {} vs {want}", got.re);
    }
}

#[test]
fn half_line_tail_failure() {
    let err = HalfLine::new(0.0)
        .integrate_real(|u| 1.0 / (1.0 + u * u))
        .unwrap_err();
    assert!(matches!(err, kappa_fourier::Error::TailBound(_)));
}
