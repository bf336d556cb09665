use approx::assert_abs_diff_eq;
use kappa_fourier::genpoly::*;
use kappa_fourier::specfun::gegenbauer_p;
use proptest::prelude::*;

const LAMBDAS: [f64; 6] = [-0.4, -0.1, 0.0, 0.5, 1.0, 2.5];

fn grid(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |j| -1.0 + 2.0 * j as f64 / (n - 1) as f64)
}

#[test]
fn q_odd_examples() {
    let q = q_odd(0, 0.7).unwrap();
    for t in grid(11) {
        assert_abs_diff_eq!(q.eval(t), 1.0 + t, epsilon = 1e-14);
    }
    let paired = q_odd_paired(0, 0.7, true).unwrap();
    assert_abs_diff_eq!(paired.eval(0.3), 0.7, epsilon = 1e-14);
    for r in 0..5 {
        assert_abs_diff_eq!(q_odd(r, 0.3).unwrap().eval(1.0), 2.0, epsilon = 1e-12);
    }
    for t in grid(101) {
        let a = q_odd(2, 0.8).unwrap().eval(t);
        assert_abs_diff_eq!(a, q_odd_sum_form(2, 0.8, t).unwrap(), epsilon = 1e-12);
    }
    assert!(matches!(
        q_odd(1, -0.5),
        Err(kappa_fourier::Error::InvalidLambda(_))
    ));
}

#[test]
fn q_even_examples() {
    assert_abs_diff_eq!(q_even(1, 0.3, 1).unwrap().eval(1.0), 2.0, epsilon = 1e-13);
    assert_abs_diff_eq!(q_even(1, 0.3, -1).unwrap().eval(1.0), 0.0, epsilon = 1e-13);
    for t in grid(101) {
        let a = q_even(2, 0.5, 1).unwrap().eval(t);
        assert_abs_diff_eq!(a, q_even_sum_form(2, 0.5, 1, t).unwrap(), epsilon = 1e-12);
    }
    assert!(q_even(0, 0.3, 1).is_err());
    assert!(q_even(1, 0.3, 0).is_err());
}

#[test]
fn dual_construction_agrees() {
    for r in 0..=6 {
        for &lam in &LAMBDAS {
            let qo = q_odd(r, lam).unwrap();
            for t in grid(512) {
                let d = qo.eval(t) - q_odd_sum_form(r, lam, t).unwrap();
                assert!(d.abs() < 1e-10, "odd r={r} λ={lam} t={t} diff {d}");
            }
            if r == 0 {
                continue;
            }
            for sign in [1, -1] {
                let qe = q_even(r, lam, sign).unwrap();
                for t in grid(512) {
                    let d = qe.eval(t) - q_even_sum_form(r, lam, sign, t).unwrap();
                    assert!(d.abs() < 1e-10, "even r={r} λ={lam} t={t} diff {d}");
                }
            }
        }
    }
}

#[test]
fn odd_decomposition() {
    for r in 0..=6 {
        for &lam in &LAMBDAS {
            let b = decomp_odd(r, lam).unwrap();
            assert_eq!(b.values.len(), r + 1);
            assert_abs_diff_eq!(b.sum(), 1.0, epsilon = 1e-12);
            assert!(b.values[0] > 0.0);
            for s in 1..=r {
                let v = b.values[s];
                if lam == 0.0 {
                    assert_eq!(v, 0.0);
                } else {
                    assert_eq!(v.signum(), lam.signum(), "r={r} λ={lam} s={s}");
                }
            }
            for t in grid(200) {
                let p = gegenbauer_p(2 * r + 1, lam - 0.5, t).unwrap();
                assert!((b.reconstruct(t) - p).abs() < 1e-10);
            }
        }
    }
    let b = decomp_odd(2, -0.3).unwrap();
    assert!(b.values[0] > 0.0 && b.values[1] < 0.0 && b.values[2] < 0.0);
}

#[test]
fn even_decomposition() {
    for r in 1..=6 {
        for &lam in &LAMBDAS {
            let d = decomp_even(r, lam).unwrap();
            assert_abs_diff_eq!(d.sum(), 1.0, epsilon = 1e-12);
            assert!(d.values[0] > 0.0);
            for s in 1..=r {
                if lam != 0.0 {
                    assert_eq!(d.values[s].signum(), lam.signum());
                }
            }
            for t in grid(200) {
                let p = gegenbauer_p(2 * r, lam - 0.5, t).unwrap();
                assert!((d.reconstruct(t) - p).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn even_decomposition_linear_solve() {
    // P_2^{(0)}(t) = d0·T_2(t) + d1 at two sample points
    let (t1, t2) = (0.2f64, 0.9f64);
    let p = |t: f64| gegenbauer_p(2, 0.0, t).unwrap();
    let (a11, a21) = (2.0 * t1 * t1 - 1.0, 2.0 * t2 * t2 - 1.0);
    let det = a11 - a21;
    let d0 = (p(t1) - p(t2)) / det;
    let d1 = (a11 * p(t2) - a21 * p(t1)) / det;
    let d = decomp_even(1, 0.5).unwrap();
    assert_abs_diff_eq!(d.values[0], d0, epsilon = 1e-13);
    assert_abs_diff_eq!(d.values[1], d1, epsilon = 1e-13);
    assert_abs_diff_eq!(d.values[0], 0.75, epsilon = 1e-14);
    assert_abs_diff_eq!(d.values[1], 0.25, epsilon = 1e-14);
}

#[test]
fn chebyshev_combination_identities() {
    for r in 0..=5 {
        for &lam in &LAMBDAS {
            let b = decomp_odd(r, lam).unwrap();
            let q0: Vec<_> = (0..=r).map(|s| q_odd(r - s, 0.0).unwrap()).collect();
            for t in grid(97) {
                let rhs: f64 = (0..=r).map(|s| b.values[s] * q0[s].eval(t)).sum();
                assert!((q_odd(r, lam).unwrap().eval(t) - rhs).abs() < 1e-10);
            }
            if r == 0 {
                continue;
            }
            let d = decomp_even(r, lam).unwrap();
            for t in grid(97) {
                let rhs: f64 = (0..=r)
                    .map(|s| {
                        let k = r - s;
                        let q = if k == 0 {
                            2.0
                        } else {
                            q_even(k, 0.0, 1).unwrap().eval(t)
                        };
                        d.values[s] * q
                    })
                    .sum();
                assert!((q_even(r, lam, 1).unwrap().eval(t) - rhs).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn nonnegativity_dichotomy() {
    for r in 1..=5 {
        for &lam in &LAMBDAS {
            let rep = sign_analysis(&q_odd(r, lam).unwrap());
            let expect = if lam >= 0.0 {
                SignVerdict::Nonnegative
            } else {
                SignVerdict::ChangesSign
            };
            assert_eq!(rep.verdict, expect, "r={r} λ={lam} min {}", rep.min_value);
            if lam < 0.0 {
                let minima = cheb_extrema(2 * r + 1, ExtremaKind::Minima);
                let q = q_odd(r, lam).unwrap();
                for &t in &minima {
                    assert!(q.eval(t) < 0.0, "r={r} λ={lam} t={t}");
                }
                assert!(rep
                    .negative_intervals
                    .iter()
                    .any(|&(lo, hi)| minima.iter().any(|&m| lo <= m && m <= hi)));
            } else {
                assert!(rep.negative_intervals.is_empty());
            }
        }
    }
    for &lam in &LAMBDAS {
        let rep = sign_analysis(&q_odd(0, lam).unwrap());
        assert_eq!(rep.verdict, SignVerdict::Nonnegative);
        assert_abs_diff_eq!(rep.min_location, -1.0, epsilon = 1e-12);
    }
}

#[test]
fn sign_analysis_basics() {
    let rep = sign_analysis(&PolyOnInterval::constant(1.0));
    assert_eq!(rep.verdict, SignVerdict::Nonnegative);
    assert_eq!(rep.min_value, 1.0);
    // t² − 1/4 is negative exactly on (−1/2, 1/2)
    let p = PolyOnInterval::new(Basis::Monomial, vec![-0.25, 0.0, 1.0]);
    let rep = sign_analysis(&p);
    assert_eq!(rep.verdict, SignVerdict::ChangesSign);
    assert_abs_diff_eq!(rep.min_value, -0.25, epsilon = 1e-14);
    assert_abs_diff_eq!(rep.min_location, 0.0, epsilon = 1e-8);
    assert_eq!(rep.negative_intervals.len(), 1);
    let (lo, hi) = rep.negative_intervals[0];
    assert_abs_diff_eq!(lo, -0.5, epsilon = 1e-12);
    assert_abs_diff_eq!(hi, 0.5, epsilon = 1e-12);
}

#[test]
fn extrema_examples() {
    assert_eq!(cheb_extrema(2, ExtremaKind::AllExtrema), vec![0.0]);
    let m = cheb_extrema(3, ExtremaKind::Minima);
    assert_eq!(m.len(), 1);
    assert_abs_diff_eq!(m[0], 0.5, epsilon = 1e-15);
    let all = cheb_extrema(4, ExtremaKind::AllExtrema);
    let want = [
        std::f64::consts::FRAC_1_SQRT_2,
        0.0,
        -std::f64::consts::FRAC_1_SQRT_2,
    ];
    for (x, w) in all.iter().zip(want) {
        assert_abs_diff_eq!(*x, w, epsilon = 1e-15);
    }
}

proptest! {
    #[test]
    fn basis_conversions_agree(coeffs in prop::collection::vec(-2.0f64..2.0, 1..12),
                               alpha in -0.9f64..3.0, t in -1.0f64..=1.0) {
        let g = PolyOnInterval::new(Basis::GegenbauerNormalized(alpha), coeffs.clone());
        let c = g.to_chebyshev();
        let m = g.to_monomial();
        let scale = coeffs.iter().map(|x| x.abs()).sum::<f64>().max(1.0);
        prop_assert!((g.eval(t) - c.eval(t)).abs() < 1e-12 * scale);
        prop_assert!((g.eval(t) - m.eval(t)).abs() < 1e-11 * scale * 4f64.powi(c.degree() as i32 / 4));
        prop_assert!((c.reflect().eval(t) - g.eval(-t)).abs() < 1e-12 * scale);
    }

    #[test]
    fn derivative_matches_difference(coeffs in prop::collection::vec(-2.0f64..2.0, 1..10),
                                     t in -0.99f64..0.99) {
        let p = PolyOnInterval::new(Basis::Chebyshev, coeffs);
        let h = 1e-5;
        let fd = (p.eval(t + h) - p.eval(t - h)) / (2.0 * h);
        prop_assert!((p.derivative().eval(t) - fd).abs() < 1e-6);
    }
}
