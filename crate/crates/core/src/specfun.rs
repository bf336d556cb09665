//! Classical special functions: Gamma, Pochhammer symbols, normalized Bessel
//! functions, normalized Gegenbauer polynomials, Kummer's function and the
//! modified Bessel function of the first kind.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(z: f64) -> f64 {
    let mut s = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        s += c / (z + i as f64);
    }
    s
}

/// Gamma function for real arguments. Poles return infinity (or NaN at
/// nonpositive integers through the reflection formula).
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        if x == x.floor() {
            return f64::NAN;
        }
        PI / ((PI * x).sin() * gamma(1.0 - x))
    } else if x > 171.7 {
        f64::INFINITY
    } else {
        let z = x - 1.0;
        let t = z + LANCZOS_G + 0.5;
        (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * lanczos_sum(z)
    }
}

/// ln|Γ(x)|.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        if x == x.floor() {
            return f64::INFINITY;
        }
        (PI / (PI * x).sin().abs()).ln() - ln_gamma(1.0 - x)
    } else {
        let z = x - 1.0;
        let t = z + LANCZOS_G + 0.5;
        0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln()
    }
}

/// Γ(a)/Γ(b), switching to logarithms when either argument is large.
pub fn gamma_ratio(a: f64, b: f64) -> f64 {
    if a > 0.0 && b > 0.0 && (a > 150.0 || b > 150.0) {
        (ln_gamma(a) - ln_gamma(b)).exp()
    } else {
        gamma(a) / gamma(b)
    }
}

/// Digamma ψ(x) for real x > 0, by upward recurrence to x ≥ 10 and the
/// asymptotic series.
pub fn digamma(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let x2 = 1.0 / (x * x);
    let series = x2
        * (1.0 / 12.0 - x2 * (1.0 / 120.0 - x2 * (1.0 / 252.0 - x2 * (1.0 / 240.0 - x2 / 132.0))));
    acc + x.ln() - 0.5 / x - series
}

/// Pochhammer symbol (base)_n = base (base+1) ... (base+n-1).
pub fn pochhammer(base: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (base + k as f64))
}

/// Binomial coefficient C(n, k) as a float.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn check_order(order: f64) -> Result<()> {
    if order.is_nan() || order <= -1.0 {
        Err(Error::InvalidOrder(order))
    } else {
        Ok(())
    }
}

fn use_series(order: f64, x: f64) -> bool {
    x * x / 4.0 <= f64::max(9.0, 3.0 * (order + 1.0))
}

/// Normalized Bessel function j_ν(x) = 2^ν Γ(ν+1) x^{-ν} J_ν(x), even in x.
///
/// Three regimes: the power series near the origin, Hankel's asymptotic
/// expansion for large arguments, and Miller's backward recurrence normalized
/// by the Neumann series in between.
pub fn bessel_j_norm(order: f64, x: f64) -> Result<f64> {
    check_order(order)?;
    Ok(j_norm_unchecked(order, x))
}

pub(crate) fn j_norm_unchecked(order: f64, x: f64) -> f64 {
    let x = x.abs();
    if x == 0.0 {
        return 1.0;
    }
    if use_series(order, x) {
        return j_series(order, x);
    }
    if x >= 25.0 {
        if let Some(j) = hankel_asymptotic(order, x) {
            return (ln_gamma(order + 1.0) - order * (x / 2.0).ln()).exp() * j;
        }
    }
    miller(order, x, 0)[0]
}

/// j_ν'(x) = −x/(2(ν+1)) j_{ν+1}(x).
pub fn bessel_j_norm_deriv(order: f64, x: f64) -> Result<f64> {
    check_order(order)?;
    Ok(-x / (2.0 * (order + 1.0)) * j_norm_unchecked(order + 1.0, x))
}

fn j_series(order: f64, x: f64) -> f64 {
    let q = -x * x / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (order + k));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs().max(1e-300) && k * (order + k) > q.abs() {
            break;
        }
        if k > 500.0 {
            break;
        }
    }
    sum
}

/// Hankel's expansion of J_ν(x); `None` if the asymptotic series does not
/// reach double precision before its terms start growing.
fn hankel_asymptotic(order: f64, x: f64) -> Option<f64> {
    let mu = 4.0 * order * order;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0f64;
    let mut prev = f64::INFINITY;
    let mut k = 0usize;
    loop {
        k += 1;
        let kf = k as f64;
        term *= (mu - (2.0 * kf - 1.0).powi(2)) / (8.0 * kf * x);
        let mag = term.abs();
        if mag == 0.0 {
            break;
        }
        if mag > prev && mag > 1e-16 {
            return None;
        }
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
        if mag < 1e-17 {
            break;
        }
        prev = mag;
        if k > 200 {
            return None;
        }
    }
    let chi = x - (order / 2.0 + 0.25) * PI;
    Some((2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin()))
}

/// Miller's backward recurrence. Returns s_m = Γ(ν+1)(x/2)^{-ν} J_{ν+m}(x)
/// for m = 0..=extra (s_0 = j_ν(x)).
fn miller(order: f64, x: f64, extra: usize) -> Vec<f64> {
    let span = x.max(extra as f64);
    let mut top = (span + 20.0 + 12.0 * x.cbrt()).ceil() as usize + extra + 10;
    top += top % 2;
    let half = top / 2;
    // weights of the Neumann series 1 = Σ w_k Γ(ν+1)(x/2)^{-ν} J_{ν+2k}
    let mut w = Vec::with_capacity(half + 1);
    w.push(1.0);
    let mut ratio = 1.0;
    for k in 1..=half {
        let kf = k as f64;
        if k > 1 {
            ratio *= (order + kf - 1.0) / kf;
        }
        w.push((order + 2.0 * kf) * ratio);
    }
    let mut out = vec![0.0; extra + 1];
    let mut f_next = 0.0;
    let mut f_cur = 1e-300_f64.sqrt();
    let mut sum = w[half] * f_cur;
    if top <= extra {
        out[top] = f_cur;
    }
    for k in (1..=top).rev() {
        let f_prev = 2.0 * (order + k as f64) / x * f_cur - f_next;
        f_next = f_cur;
        f_cur = f_prev;
        let m = k - 1;
        if m % 2 == 0 {
            sum += w[m / 2] * f_cur;
        }
        if m <= extra {
            out[m] = f_cur;
        }
        if f_cur.abs() > 1e250 {
            let s = 1e-250;
            f_cur *= s;
            f_next *= s;
            sum *= s;
            for v in out.iter_mut() {
                *v *= s;
            }
        }
    }
    for v in out.iter_mut() {
        *v /= sum;
    }
    out
}

/// s_m = Γ(ν+1)(x/2)^{-ν} J_{ν+m}(x) for m = 0..count, the Bessel values
/// of consecutive orders sharing the normalization of j_ν.
pub fn bessel_j_norm_seq(order: f64, x: f64, count: usize) -> Result<Vec<f64>> {
    check_order(order)?;
    if count == 0 {
        return Ok(Vec::new());
    }
    let x = x.abs();
    if x == 0.0 {
        let mut v = vec![0.0; count];
        v[0] = 1.0;
        return Ok(v);
    }
    if count == 1 || use_series(order, x) || x > 2.0 * (count as f64) + 60.0 {
        // each order separately: s_m = (x/2)^m / (ν+1)_m · j_{ν+m}(x)
        let lx = (x / 2.0).ln();
        let lg0 = ln_gamma(order + 1.0);
        return Ok((0..count)
            .map(|m| {
                let nu = order + m as f64;
                let scale = (m as f64 * lx + lg0 - ln_gamma(nu + 1.0)).exp();
                if scale == 0.0 {
                    0.0
                } else {
                    scale * j_norm_unchecked(nu, x)
                }
            })
            .collect());
    }
    Ok(miller(order, x, count - 1))
}

/// Normalized Gegenbauer polynomial P_n^{(α)}(t), P_n^{(α)}(1) = 1, orthogonal
/// for the weight (1−t²)^α.
pub fn gegenbauer_p(n: usize, alpha: f64, t: f64) -> Result<f64> {
    if alpha.is_nan() || alpha <= -1.0 {
        return Err(Error::Domain(format!("alpha = {alpha} must exceed -1")));
    }
    if !(t.abs() <= 1.0 + 1e-14) {
        return Err(Error::Domain(format!("|t| = {} exceeds 1", t.abs())));
    }
    Ok(gegenbauer_p_seq(n, alpha, t.clamp(-1.0, 1.0))[n])
}

/// P_0^{(α)}(t), ..., P_n^{(α)}(t). No domain checks.
///
/// Runs the recurrence for D_n = C_n^λ/λ (λ = α + 1/2), which stays finite at
/// λ = 0 where D_n = 2T_n/n, and rescales by D_n(1) = 2(2λ+1)_{n−1}/n!.
pub fn gegenbauer_p_seq(n: usize, alpha: f64, t: f64) -> Vec<f64> {
    let lam = alpha + 0.5;
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n == 0 {
        return out;
    }
    let mut d_prev = 2.0 * t;
    out.push(t);
    if n == 1 {
        return out;
    }
    let mut d_cur = 2.0 * (lam + 1.0) * t * t - 1.0;
    let mut norm_cur = 2.0 * (lam + 1.0) - 1.0;
    out.push(d_cur / norm_cur);
    for k in 3..=n {
        let kf = k as f64;
        let d_next = (2.0 * t * (kf + lam - 1.0) * d_cur - (kf + 2.0 * lam - 2.0) * d_prev) / kf;
        let norm_next = norm_cur * (2.0 * lam + kf - 1.0) / kf;
        d_prev = d_cur;
        d_cur = d_next;
        norm_cur = norm_next;
        out.push(d_cur / norm_cur);
    }
    out
}

/// D_n(1) = C_n^λ(1)/λ = 2(2λ+1)_{n−1}/n! for n ≥ 1 (finite at λ = 0).
pub fn gegenbauer_c_over_lambda_at_one(n: usize, lambda: f64) -> f64 {
    if n == 0 {
        return f64::NAN;
    }
    // (2/n) Π_{k<n} (2λ+k)/k, kept as a running product so large n cannot overflow
    let mut p = 2.0 / n as f64;
    for k in 1..n {
        p *= (2.0 * lambda + k as f64) / k as f64;
    }
    p
}

/// Kummer's confluent hypergeometric function Φ(a; c; x) = ₁F₁(a; c; x).
pub fn kummer_phi(a: f64, c: f64, x: f64) -> Result<f64> {
    kummer_phi_terms(a, c, x).map(|(v, _)| v)
}

/// Φ(a; c; x) together with the number of series terms summed.
pub fn kummer_phi_terms(a: f64, c: f64, x: f64) -> Result<(f64, usize)> {
    if c <= 0.0 && c == c.floor() {
        return Err(Error::InvalidC(c));
    }
    if a <= 0.0 && a == a.floor() {
        let m = (-a) as usize;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..=m {
            let kf = k as f64;
            term *= (a + kf - 1.0) / (c + kf - 1.0) * x / kf;
            sum += term;
        }
        return Ok((sum, m + 1));
    }
    if x < 0.0 {
        let (v, n) = kummer_series(c - a, c, -x);
        return Ok((x.exp() * v, n));
    }
    Ok(kummer_series(a, c, x))
}

fn kummer_series(a: f64, c: f64, x: f64) -> (f64, usize) {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0usize;
    loop {
        k += 1;
        let kf = k as f64;
        term *= (a + kf - 1.0) / (c + kf - 1.0) * x / kf;
        sum += term;
        if term == 0.0 {
            break;
        }
        if term.abs() <= 1e-17 * sum.abs() && kf > x {
            break;
        }
        if k >= 100_000 {
            break;
        }
    }
    (sum, k + 1)
}

/// Modified Bessel function I_ν(b) for complex b on the principal branch,
/// summed from its power series.
pub fn bessel_i_mod(order: f64, b: Complex64) -> Result<Complex64> {
    check_order(order)?;
    if b == Complex64::new(0.0, 0.0) {
        return if order > 0.0 {
            Ok(Complex64::new(0.0, 0.0))
        } else if order == 0.0 {
            Ok(Complex64::new(1.0, 0.0))
        } else {
            Err(Error::Domain(format!("I_{order}(0) is infinite")))
        };
    }
    let q = b * b / 4.0;
    let mut term = Complex64::new(1.0 / gamma(order + 1.0), 0.0);
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (order + k));
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() && k * (order + k) > q.norm() {
            break;
        }
        if k > 2000.0 {
            break;
        }
    }
    let pre = ((b / 2.0).ln() * order).exp();
    Ok(pre * sum)
}
