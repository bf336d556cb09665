//! Polynomials q_n(t,λ) = 1 ± P_n^{(λ−1/2)}(t) on [-1,1], their expansions in
//! Chebyshev polynomials, and sign certification.
//!
//! Throughout, P_n^{(α)} is the Gegenbauer polynomial normalized by P_n(1) = 1,
//! so P_n^{(−1/2)} = T_n.

use crate::error::{Error, Result};
use crate::specfun::{binomial, gegenbauer_p_seq, pochhammer};
use std::f64::consts::PI;

/// Threshold below which a value counts as negative.
pub const NONNEG_TOL: f64 = -1e-12;

const SCAN_POINTS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Basis {
    Monomial,
    Chebyshev,
    /// P_k^{(α)} normalized to 1 at t = 1.
    GegenbauerNormalized(f64),
}

/// Polynomial on [-1,1] stored as coefficients in one of the bases above.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyOnInterval {
    pub basis: Basis,
    pub coeffs: Vec<f64>,
}

impl PolyOnInterval {
    pub fn new(basis: Basis, coeffs: Vec<f64>) -> Self {
        let coeffs = if coeffs.is_empty() { vec![0.0] } else { coeffs };
        Self { basis, coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(Basis::Chebyshev, vec![c])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn domain(&self) -> (f64, f64) {
        (-1.0, 1.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self.basis {
            Basis::Monomial => self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c),
            Basis::Chebyshev => clenshaw(&self.coeffs, t),
            Basis::GegenbauerNormalized(alpha) => {
                let p = gegenbauer_p_seq(self.degree(), alpha, t);
                self.coeffs.iter().zip(&p).map(|(c, p)| c * p).sum()
            }
        }
    }

    /// Chebyshev coefficients. Conversion from the other bases interpolates at
    /// the degree+1 Chebyshev–Gauss nodes, which is exact for polynomials.
    pub fn to_chebyshev(&self) -> Self {
        if self.basis == Basis::Chebyshev {
            return self.clone();
        }
        let m = self.coeffs.len();
        let mf = m as f64;
        let vals: Vec<f64> = (0..m)
            .map(|j| self.eval((PI * (j as f64 + 0.5) / mf).cos()))
            .collect();
        let coeffs = (0..m)
            .map(|k| {
                let s: f64 = vals
                    .iter()
                    .enumerate()
                    .map(|(j, v)| v * (PI * k as f64 * (j as f64 + 0.5) / mf).cos())
                    .sum();
                if k == 0 {
                    s / mf
                } else {
                    2.0 * s / mf
                }
            })
            .collect();
        Self::new(Basis::Chebyshev, coeffs)
    }

    /// Monomial coefficients, for display.
    pub fn to_monomial(&self) -> Self {
        if self.basis == Basis::Monomial {
            return self.clone();
        }
        let cheb = self.to_chebyshev();
        let n = cheb.coeffs.len();
        let mut out = vec![0.0; n];
        let mut t_prev = vec![0.0; n];
        let mut t_cur = vec![0.0; n];
        t_cur[0] = 1.0;
        for (k, &c) in cheb.coeffs.iter().enumerate() {
            if k == 1 {
                t_prev = std::mem::replace(&mut t_cur, vec![0.0; n]);
                t_cur[1] = 1.0;
            } else if k >= 2 {
                let mut next = vec![0.0; n];
                for i in 0..n {
                    if i >= 1 {
                        next[i] += 2.0 * t_cur[i - 1];
                    }
                    next[i] -= t_prev[i];
                }
                t_prev = std::mem::replace(&mut t_cur, next);
            }
            for i in 0..n {
                out[i] += c * t_cur[i];
            }
        }
        Self::new(Basis::Monomial, out)
    }

    /// t ↦ p(−t).
    pub fn reflect(&self) -> Self {
        // every supported basis has parity (−1)^k
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 1 { -c } else { c })
            .collect();
        Self::new(self.basis, coeffs)
    }

    /// Derivative in the Chebyshev basis.
    pub fn derivative(&self) -> Self {
        let c = self.to_chebyshev().coeffs;
        let n = c.len() - 1;
        if n == 0 {
            return Self::constant(0.0);
        }
        let mut d = vec![0.0; n + 1];
        for k in (1..=n).rev() {
            d[k - 1] = d.get(k + 1).copied().unwrap_or(0.0) + 2.0 * k as f64 * c[k];
        }
        d[0] *= 0.5;
        d.truncate(n);
        Self::new(Basis::Chebyshev, d)
    }
}

fn clenshaw(c: &[f64], t: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &ck in c.iter().skip(1).rev() {
        let b0 = 2.0 * t * b1 - b2 + ck;
        b2 = b1;
        b1 = b0;
    }
    t * b1 - b2 + c[0]
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda.is_nan() || lambda <= -0.5 || !lambda.is_finite() {
        return Err(Error::InvalidLambda(lambda));
    }
    Ok(())
}

fn one_plus(n: usize, lambda: f64, sign: f64) -> PolyOnInterval {
    let mut g = vec![0.0; n + 1];
    g[0] = 1.0;
    g[n] += sign;
    PolyOnInterval::new(Basis::GegenbauerNormalized(lambda - 0.5), g).to_chebyshev()
}

/// q_{2r+1}(t,λ) = 1 + P_{2r+1}^{(λ−1/2)}(t).
///
/// The kernel e_{κ,a}(v) pairs with e^{−ivt}, under which the same function
/// reads 1 − P_{2r+1}(t) (so q_1 = 1 − t); see [`q_odd_paired`].
pub fn q_odd(r: usize, lambda: f64) -> Result<PolyOnInterval> {
    check_lambda(lambda)?;
    Ok(one_plus(2 * r + 1, lambda, 1.0))
}

/// q_odd with an explicit pairing flag: `conjugate = true` gives the
/// e^{−ivt} convention 1 − P_{2r+1}(t), i.e. q_odd reflected in t.
pub fn q_odd_paired(r: usize, lambda: f64, conjugate: bool) -> Result<PolyOnInterval> {
    let q = q_odd(r, lambda)?;
    Ok(if conjugate { q.reflect() } else { q })
}

/// q_{2r}(t,λ) = 1 + sign_v·P_{2r}^{(λ−1/2)}(t).
pub fn q_even(r: usize, lambda: f64, sign_v: i32) -> Result<PolyOnInterval> {
    check_lambda(lambda)?;
    if r == 0 {
        return Err(Error::InvalidParams("q_even needs r >= 1".into()));
    }
    if sign_v != 1 && sign_v != -1 {
        return Err(Error::InvalidParams(format!(
            "sign_v = {sign_v} must be ±1"
        )));
    }
    Ok(one_plus(2 * r, lambda, sign_v as f64))
}

/// 1 + t·Σ_s (−1)^s C(r,s) (λ+r+1)_s/(λ+1/2)_s (1−t²)^s, an independent
/// closed form for q_{2r+1}(t,λ).
pub fn q_odd_sum_form(r: usize, lambda: f64, t: f64) -> Result<f64> {
    check_lambda(lambda)?;
    Ok(1.0 + t * finite_sum(r, lambda + r as f64 + 1.0, lambda, t))
}

/// 1 + sign_v·Σ_s (−1)^s C(r,s) (λ+r)_s/(λ+1/2)_s (1−t²)^s for q_{2r}(t,λ).
pub fn q_even_sum_form(r: usize, lambda: f64, sign_v: i32, t: f64) -> Result<f64> {
    check_lambda(lambda)?;
    Ok(1.0 + sign_v as f64 * finite_sum(r, lambda + r as f64, lambda, t))
}

fn finite_sum(r: usize, top: f64, lambda: f64, t: f64) -> f64 {
    let w = 1.0 - t * t;
    let mut sum = 0.0;
    let mut pw = 1.0;
    for s in 0..=r {
        let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binomial(r, s) * pochhammer(top, s) / pochhammer(lambda + 0.5, s) * pw;
        pw *= w;
    }
    sum
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompKind {
    /// P_{2r+1}^{(λ−1/2)} = Σ_s b_s T_{2r+1−2s}
    OddB,
    /// P_{2r}^{(λ−1/2)} = Σ_s d_s T_{2r−2s}
    EvenD,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecompCoeffs {
    pub kind: DecompKind,
    pub r: usize,
    pub lambda: f64,
    pub values: Vec<f64>,
}

impl DecompCoeffs {
    fn top_degree(&self) -> usize {
        match self.kind {
            DecompKind::OddB => 2 * self.r + 1,
            DecompKind::EvenD => 2 * self.r,
        }
    }

    /// Σ_s values[s]·T_{n−2s}(t).
    pub fn reconstruct(&self, t: f64) -> f64 {
        self.to_poly().eval(t)
    }

    pub fn to_poly(&self) -> PolyOnInterval {
        let n = self.top_degree();
        let mut c = vec![0.0; n + 1];
        for (s, v) in self.values.iter().enumerate() {
            c[n - 2 * s] += v;
        }
        PolyOnInterval::new(Basis::Chebyshev, c)
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// b_s^r(λ) = (2r+2−s)_s (λ)_s (λ+r+1)_{r−s} / (4^r (λ+1/2)_r s!).
pub fn decomp_odd(r: usize, lambda: f64) -> Result<DecompCoeffs> {
    check_lambda(lambda)?;
    let rf = r as f64;
    let den = 4f64.powi(r as i32) * pochhammer(lambda + 0.5, r);
    let values = (0..=r)
        .map(|s| {
            let sf = s as f64;
            pochhammer(2.0 * rf + 2.0 - sf, s)
                * pochhammer(lambda, s)
                * pochhammer(lambda + rf + 1.0, r - s)
                / (den * pochhammer(1.0, s))
        })
        .collect();
    Ok(DecompCoeffs {
        kind: DecompKind::OddB,
        r,
        lambda,
        values,
    })
}

/// d_s^r(λ) = 2(2r+1−s)_s (λ)_s (λ+r)_{r−s} / (4^r (λ+1/2)_r s!) for s < r and
/// d_r^r(λ) = (r+1)_r (λ)_r / (4^r (λ+1/2)_r r!).
pub fn decomp_even(r: usize, lambda: f64) -> Result<DecompCoeffs> {
    check_lambda(lambda)?;
    if r == 0 {
        return Err(Error::InvalidParams("decomp_even needs r >= 1".into()));
    }
    let rf = r as f64;
    let den = 4f64.powi(r as i32) * pochhammer(lambda + 0.5, r);
    let values = (0..=r)
        .map(|s| {
            if s == r {
                pochhammer(rf + 1.0, r) * pochhammer(lambda, r) / (den * pochhammer(1.0, r))
            } else {
                let sf = s as f64;
                2.0 * pochhammer(2.0 * rf + 1.0 - sf, s)
                    * pochhammer(lambda, s)
                    * pochhammer(lambda + rf, r - s)
                    / (den * pochhammer(1.0, s))
            }
        })
        .collect();
    Ok(DecompCoeffs {
        kind: DecompKind::EvenD,
        r,
        lambda,
        values,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignVerdict {
    Nonnegative,
    ChangesSign,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignReport {
    pub min_value: f64,
    pub min_location: f64,
    pub negative_intervals: Vec<(f64, f64)>,
    pub verdict: SignVerdict,
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Global minimum on [-1,1] and the maximal intervals where p < 0.
///
/// The scan uses t = cos θ on a uniform θ grid so that the endpoints, where
/// the Chebyshev-type oscillations cluster, are resolved. Local minima of the
/// grid values are refined by bisection on the derivative.
pub fn sign_analysis(p: &PolyOnInterval) -> SignReport {
    let p = p.to_chebyshev();
    let dp = p.derivative();
    let f = |t: f64| p.eval(t);
    let grid: Vec<f64> = (0..=SCAN_POINTS)
        .map(|j| (PI * (SCAN_POINTS - j) as f64 / SCAN_POINTS as f64).cos())
        .collect();
    let vals: Vec<f64> = grid.iter().map(|&t| f(t)).collect();

    let mut min_value = vals[0];
    let mut min_location = grid[0];
    let mut consider = |t: f64, v: f64| {
        if v < min_value {
            min_value = v;
            min_location = t;
        }
    };
    for j in 0..grid.len() {
        consider(grid[j], vals[j]);
    }
    for j in 1..grid.len() - 1 {
        if vals[j] <= vals[j - 1] && vals[j] <= vals[j + 1] {
            let (lo, hi) = (grid[j - 1], grid[j + 1]);
            let (dlo, dhi) = (dp.eval(lo), dp.eval(hi));
            if dlo < 0.0 && dhi > 0.0 {
                let t = bisect(|t| dp.eval(t), lo, hi);
                consider(t, f(t));
            }
        }
    }

    let mut negative_intervals = Vec::new();
    let mut start: Option<f64> = None;
    let mut deepest = f64::INFINITY;
    for j in 0..grid.len() {
        let neg = vals[j] < 0.0;
        match (start, neg) {
            (None, true) => {
                let lo = if j == 0 {
                    grid[0]
                } else {
                    bisect(f, grid[j - 1], grid[j])
                };
                start = Some(lo);
                deepest = vals[j];
            }
            (Some(_), true) => deepest = deepest.min(vals[j]),
            (Some(lo), false) => {
                let hi = bisect(f, grid[j - 1], grid[j]);
                if deepest.min(min_in(lo, hi, min_value, min_location)) < NONNEG_TOL {
                    negative_intervals.push((lo, hi));
                }
                start = None;
            }
            (None, false) => {}
        }
    }
    if let Some(lo) = start {
        if deepest.min(min_in(lo, 1.0, min_value, min_location)) < NONNEG_TOL {
            negative_intervals.push((lo, 1.0));
        }
    }

    let verdict = if min_value >= NONNEG_TOL {
        SignVerdict::Nonnegative
    } else {
        SignVerdict::ChangesSign
    };
    SignReport {
        min_value,
        min_location,
        negative_intervals,
        verdict,
    }
}

fn min_in(lo: f64, hi: f64, v: f64, t: f64) -> f64 {
    if t >= lo && t <= hi {
        v
    } else {
        f64::INFINITY
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremaKind {
    Minima,
    AllExtrema,
}

/// Interior extrema cos(kπ/n), k = 1..n−1, of T_n; minima are the odd k.
pub fn cheb_extrema(n: usize, kind: ExtremaKind) -> Vec<f64> {
    (1..n)
        .filter(|k| kind == ExtremaKind::AllExtrema || k % 2 == 1)
        .map(|k| {
            let x = (k as f64 * PI / n as f64).cos();
            if 2 * k == n {
                0.0
            } else {
                x
            }
        })
        .collect()
}
