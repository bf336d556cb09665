//! The (κ,a)-kernel on the line in its several parametrizations, the radial
//! function Ψ_a^d for κ ≡ 0, boundedness classification and sup-norm search.

use crate::error::{Error, Result};
use crate::quad::gauss_jacobi_ab;
use crate::specfun::{
    bessel_j_norm_seq, gamma, gegenbauer_c_over_lambda_at_one, gegenbauer_p_seq, j_norm_unchecked,
    ln_gamma,
};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Dimension, deformation parameter a and multiplicity ⟨κ⟩, with the derived
/// λ_κ = ⟨κ⟩ + (d−2)/2 and λ = 2λ_κ/a.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    pub d: u32,
    pub a: f64,
    pub kappa: f64,
    pub lambda_k: f64,
    pub lambda: f64,
}

impl Params {
    pub fn new(d: u32, a: f64, kappa: f64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParams("d must be at least 1".into()));
        }
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::InvalidParams(format!("a = {a} must be positive")));
        }
        if !(kappa >= 0.0) || !kappa.is_finite() {
            return Err(Error::InvalidParams(format!(
                "kappa = {kappa} must be nonnegative"
            )));
        }
        let lambda_k = kappa + (d as f64 - 2.0) / 2.0;
        if !(2.0 * lambda_k + a > 0.0) {
            return Err(Error::InvalidParams(format!(
                "2*lambda_kappa + a = {} must be positive",
                2.0 * lambda_k + a
            )));
        }
        Ok(Params {
            d,
            a,
            kappa,
            lambda_k,
            lambda: 2.0 * lambda_k / a,
        })
    }

    fn require_1d(&self) -> Result<()> {
        if self.d != 1 {
            return Err(Error::InvalidParams(format!(
                "operation needs d = 1, got d = {}",
                self.d
            )));
        }
        Ok(())
    }
}

/// R with 2/a = R when 2/a is (numerically) a positive integer.
pub fn integer_ratio(a: f64) -> Option<u32> {
    let r = 2.0 / a;
    let rr = r.round();
    if rr >= 1.0 && (r - rr).abs() < 1e-9 * rr.max(1.0) {
        Some(rr as u32)
    } else {
        None
    }
}

/// (j_λ(v), C |v|^μ j_{λ+μ}(v)) with C = Γ(λ+1)/(2^μ Γ(λ+1+μ)). For integer μ
/// both values come from one backward recurrence.
fn bessel_pair(lambda: f64, mu: f64, v: f64) -> (f64, f64) {
    let x = v.abs();
    if x == 0.0 {
        return (1.0, 0.0);
    }
    let m = mu.round();
    if (mu - m).abs() < 1e-12 && m >= 1.0 {
        let s = bessel_j_norm_seq(lambda, x, m as usize + 1).expect("order checked by caller");
        return (s[0], s[m as usize]);
    }
    let scale = (ln_gamma(lambda + 1.0) - ln_gamma(lambda + 1.0 + mu) + mu * (x / 2.0).ln()).exp();
    (
        j_norm_unchecked(lambda, x),
        scale * j_norm_unchecked(lambda + mu, x),
    )
}

/// b_{κ,a}(x) = j_λ((2/a)|x|^{a/2}) + Γ(λ+1)/Γ(λ+1+2/a) · x/(ai)^{2/a} · j_{λ+2/a}((2/a)|x|^{a/2}),
/// with (ai)^{2/a} = a^{2/a} e^{iπ/a}.
pub fn kernel_b(params: &Params, x: f64) -> Result<Complex64> {
    params.require_1d()?;
    let a = params.a;
    let z = (2.0 / a) * x.abs().powf(a / 2.0);
    let lam = params.lambda;
    let j0 = j_norm_unchecked(lam, z);
    let j1 = j_norm_unchecked(lam + 2.0 / a, z);
    let coef = gamma_quotient(lam + 1.0, lam + 1.0 + 2.0 / a) * x * a.powf(-2.0 / a);
    Ok(Complex64::new(j0, 0.0) + Complex64::from_polar(coef * j1, -PI / a))
}

fn gamma_quotient(p: f64, q: f64) -> f64 {
    if p > 0.0 && q > 0.0 {
        (ln_gamma(p) - ln_gamma(q)).exp()
    } else {
        gamma(p) / gamma(q)
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda.is_nan() || lambda <= -1.0 {
        Err(Error::InvalidLambda(lambda))
    } else {
        Ok(())
    }
}

/// e_{2r+1}(v,λ) = j_λ(v) + i(−1)^{r+1} v^{2r+1}/(2^{2r+1}(λ+1)_{2r+1}) j_{λ+2r+1}(v).
pub fn kernel_e_odd(r: u32, lambda: f64, v: f64) -> Result<Complex64> {
    check_lambda(lambda)?;
    let (j0, t) = bessel_pair(lambda, (2 * r + 1) as f64, v);
    let sign = if r % 2 == 0 { -1.0 } else { 1.0 };
    Ok(Complex64::new(j0, sign * t * v.signum()))
}

/// e_{2r}(v,λ) = j_λ(v) + (−1)^r v^{2r}/(2^{2r}(λ+1)_{2r}) j_{λ+2r}(v) sign v.
pub fn kernel_e_even(r: u32, lambda: f64, v: f64) -> Result<f64> {
    check_lambda(lambda)?;
    if r == 0 {
        return Err(Error::Domain("even kernel needs r >= 1".into()));
    }
    let (j0, t) = bessel_pair(lambda, (2 * r) as f64, v);
    let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
    Ok(j0 + sign * t * v.signum())
}

/// e_{κ,a}(v) = j_λ(v) + e^{−iπ/a} C |v|^{2/a} j_{λ+2/a}(v) sign v with
/// λ = (2κ−1)/a and C = Γ(λ+1)/(2^{2/a}Γ(λ+1+2/a)). Only 2κ−1+a > 0 is
/// required, so κ may be negative here.
pub fn kernel_e_general(kappa: f64, a: f64, v: f64) -> Result<Complex64> {
    if !(a > 0.0) || !(2.0 * kappa - 1.0 + a > 0.0) {
        return Err(Error::InvalidParams(format!(
            "need a > 0 and 2κ−1+a > 0 (κ = {kappa}, a = {a})"
        )));
    }
    let lam = (2.0 * kappa - 1.0) / a;
    let (j0, t) = bessel_pair(lam, 2.0 / a, v);
    Ok(Complex64::new(j0, 0.0) + Complex64::from_polar(t * v.signum(), -PI / a))
}

/// Classification of ‖B_{κ,a}‖_∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictTag {
    BoundedByOne,
    BoundedAboveOne,
    Unbounded,
    Open,
}

impl VerdictTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerdictTag::BoundedByOne => "BoundedByOne",
            VerdictTag::BoundedAboveOne => "BoundedAboveOne",
            VerdictTag::Unbounded => "Unbounded",
            VerdictTag::Open => "Open",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundednessVerdict {
    pub tag: VerdictTag,
    /// Point where the kernel modulus exceeds one: v for d = 1 (the argument
    /// of e_{κ,a}), w for d ≥ 2 (the argument of Ψ_a^d at `witness_tau`).
    pub witness: Option<f64>,
    pub witness_tau: Option<f64>,
    pub witness_modulus: Option<f64>,
    pub citation: &'static str,
    /// For the open band with 2/a ∈ ℕ: the κ interval (lo, hi] where the
    /// threshold κ_0(a) lies; unknown inside.
    pub open_interval: Option<(f64, f64)>,
    pub note: String,
}

impl BoundednessVerdict {
    fn plain(tag: VerdictTag, citation: &'static str, note: impl Into<String>) -> Self {
        BoundednessVerdict {
            tag,
            witness: None,
            witness_tau: None,
            witness_modulus: None,
            citation,
            open_interval: None,
            note: note.into(),
        }
    }
}

pub const CITE_CRITERION: &str =
    "boundedness criterion (Proposition: 0<a<=2, kappa>=1/2-a/4 or a>=2)";
pub const CITE_DUNKL: &str = "Dunkl case a=2";
pub const CITE_THM2: &str = "Theorem 2";
pub const CITE_THM4: &str = "Theorem 4";
pub const CITE_REMARK4: &str = "Remark 4(i): kappa_0(a) undetermined";
pub const CITE_NONE: &str = "no applicable result";

const WITNESS_MARGIN: f64 = 1e-12;

pub fn classify_boundedness(params: &Params) -> Result<BoundednessVerdict> {
    let Params { d, a, kappa, .. } = *params;
    let threshold = 0.5 - a / 4.0;
    let at_threshold = (kappa - threshold).abs() < 1e-12;
    let is_dunkl = (a - 2.0).abs() < 1e-12;
    let ratio = integer_ratio(a);
    if d == 1 && a < 2.0 && kappa < threshold && !at_threshold {
        return Ok(BoundednessVerdict::plain(
            VerdictTag::Unbounded,
            CITE_CRITERION,
            format!("kappa < 1/2 - a/4 = {threshold}"),
        ));
    }
    if is_dunkl {
        return Ok(BoundednessVerdict::plain(
            VerdictTag::BoundedByOne,
            CITE_DUNKL,
            "",
        ));
    }
    let thm2 = a <= 1.0 + 1e-12 && ratio.is_some() && (d >= 2 || kappa >= 0.5);
    if thm2 {
        return Ok(BoundednessVerdict::plain(
            VerdictTag::BoundedByOne,
            CITE_THM2,
            "",
        ));
    }
    let thm4_first = d == 1 && a <= 1.0 + 1e-12 && at_threshold;
    let thm4_second = a > 1.0 + 1e-12 && !is_dunkl;
    if thm4_first || thm4_second {
        if d == 1 {
            if let Some((v, m)) = witness_1d(kappa, a) {
                return Ok(BoundednessVerdict {
                    tag: VerdictTag::BoundedAboveOne,
                    witness: Some(v),
                    witness_tau: None,
                    witness_modulus: Some(m),
                    citation: CITE_THM4,
                    open_interval: None,
                    note: String::new(),
                });
            }
            return Ok(BoundednessVerdict::plain(
                VerdictTag::Open,
                CITE_THM4,
                "Theorem 4 applies but no witness was found by the search",
            ));
        }
        if kappa == 0.0 {
            if let Some((w, tau, m)) = witness_radial(d, a) {
                return Ok(BoundednessVerdict {
                    tag: VerdictTag::BoundedAboveOne,
                    witness: Some(w),
                    witness_tau: Some(tau),
                    witness_modulus: Some(m),
                    citation: CITE_THM4,
                    open_interval: None,
                    note: String::new(),
                });
            }
        }
        return Ok(BoundednessVerdict::plain(
            VerdictTag::Open,
            CITE_THM4,
            "Theorem 4 asserts norm > 1; a witness needs the intertwining operator, which is not evaluated",
        ));
    }
    if d == 1 && ratio.is_some() && a <= 1.0 + 1e-12 && kappa < 0.5 {
        let mut v = BoundednessVerdict::plain(
            VerdictTag::Open,
            CITE_REMARK4,
            "bounded by one for kappa >= kappa_0(a), with kappa_0(a) in (1/2 - a/4, 1/2]",
        );
        v.open_interval = Some((threshold, 0.5));
        return Ok(v);
    }
    Ok(BoundednessVerdict::plain(VerdictTag::Open, CITE_NONE, ""))
}

/// Searches for v with |e_{κ,a}(v)| > 1: the points 2πs, a small-|v| sweep on
/// the side sign(cos(π/a)), and a uniform grid on [−50, 50]; the best
/// candidate is polished by golden-section search and re-verified.
pub fn witness_1d(kappa: f64, a: f64) -> Option<(f64, f64)> {
    let modulus = |v: f64| {
        kernel_e_general(kappa, a, v)
            .map(|z| z.norm())
            .unwrap_or(0.0)
    };
    let side = if (PI / a).cos() < 0.0 { -1.0 } else { 1.0 };
    let mut cands: Vec<f64> = Vec::new();
    for s in 1..=50 {
        let v = 2.0 * PI * s as f64;
        cands.push(v);
        cands.push(-v);
    }
    for k in -80..=0 {
        cands.push(side * 10f64.powf(k as f64 / 20.0));
    }
    for k in 1..=5000 {
        let v = 0.01 * k as f64;
        cands.push(v);
        cands.push(-v);
    }
    let mut best = (0.0, 1.0);
    for &v in &cands {
        let m = modulus(v);
        if m > best.1 {
            best = (v, m);
        }
    }
    if best.0 == 0.0 {
        return None;
    }
    let h = (best.0.abs() * 0.05).clamp(1e-6, 0.01);
    let (v, m) = golden_max(&modulus, best.0 - h, best.0 + h, 60);
    let (v, m) = if m > best.1 { (v, m) } else { best };
    // re-verify at return time
    let check = modulus(v);
    if check > 1.0 + WITNESS_MARGIN {
        Some((v, check))
    } else {
        let _ = m;
        None
    }
}

/// Witness for d ≥ 2, κ = 0, where B_{0,a} = Ψ_a^d with η = (d−2)/2.
fn witness_radial(d: u32, a: f64) -> Option<(f64, f64, f64)> {
    let eta = (d as f64 - 2.0) / 2.0;
    let cfg = PsiConfig::new(a, eta).ok()?;
    let tau = if (PI / a).cos() < 0.0 { -1.0 } else { 1.0 };
    let modulus = |w: f64| {
        psi_series(&cfg, w.abs(), tau)
            .map(|z| z.norm())
            .unwrap_or(0.0)
    };
    let mut best = (0.0, 1.0);
    let mut cands: Vec<f64> = (-80..=0).map(|k| 10f64.powf(k as f64 / 20.0)).collect();
    cands.extend((1..=400).map(|k| 0.05 * k as f64));
    for &w in &cands {
        let m = modulus(w);
        if m > best.1 {
            best = (w, m);
        }
    }
    if best.0 == 0.0 {
        return None;
    }
    let h = (best.0 * 0.05).clamp(1e-6, 0.05);
    let (w, m) = golden_max(&modulus, (best.0 - h).max(0.0), best.0 + h, 60);
    let w = if m > best.1 { w } else { best.0 };
    let check = modulus(w);
    (check > 1.0 + WITNESS_MARGIN).then_some((w, tau, check))
}

fn golden_max<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, iters: usize) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Grid maximum of |e_{κ,a}| over ±{0, step, …, v_max}, polished by three
/// rounds of golden-section search around the best grid point.
///
/// Returns (sup, argmax). The grid is evaluated in parallel; ties resolve to
/// the smaller |v| (then to positive v), so the result is deterministic.
pub fn supnorm_search(params: &Params, v_max: f64, grid_step: f64) -> Result<(f64, f64)> {
    params.require_1d()?;
    if !(v_max > 0.0) || !(grid_step > 0.0) {
        return Err(Error::InvalidParams(
            "v_max and grid_step must be positive".into(),
        ));
    }
    let (kappa, a) = (params.kappa, params.a);
    let n = (v_max / grid_step + 1e-9).floor() as i64;
    let modulus = |v: f64| {
        kernel_e_general(kappa, a, v)
            .map(|z| z.norm())
            .unwrap_or(f64::NAN)
    };
    // index order: 0, 1, -1, 2, -2, ...
    let key = |i: i64| if i > 0 { 2 * i - 1 } else { -2 * i };
    let (best_i, best_m) = (-n..=n)
        .into_par_iter()
        .map(|i| (i, modulus(i as f64 * grid_step)))
        .reduce(
            || (0i64, f64::NEG_INFINITY),
            |x, y| {
                if y.1 > x.1 || (y.1 == x.1 && key(y.0) < key(x.0)) {
                    y
                } else {
                    x
                }
            },
        );
    let mut best = (best_i as f64 * grid_step, best_m);
    if best_i != 0 {
        let mut h = grid_step;
        for _ in 0..3 {
            let (v, m) = golden_max(&modulus, best.0 - h, best.0 + h, 40);
            if m > best.1 {
                best = (v, m);
            }
            h /= 10.0;
        }
    }
    Ok((best.1, best.0))
}

/// Configuration of the radial function Ψ_a^d(w, τ), η = λ_κ, R = 2/a.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiConfig {
    pub a: f64,
    pub eta: f64,
    pub series_terms: usize,
    pub simplex_quad_order: usize,
    pub tol: f64,
}

impl PsiConfig {
    /// Ψ for a general a > 0. η must be ≥ 0; η ∈ [−1/2, 0) is accepted only for
    /// evaluation at τ = ±1, where the Gegenbauer limit is finite.
    pub fn new(a: f64, eta: f64) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::InvalidParams(format!("a = {a} must be positive")));
        }
        if !(eta >= -0.5) {
            return Err(Error::InvalidParams(format!("eta = {eta} below -1/2")));
        }
        Ok(PsiConfig {
            a,
            eta,
            series_terms: 4000,
            simplex_quad_order: 0,
            tol: 1e-13,
        })
    }

    /// Ψ with a = 2/R.
    pub fn from_r(r: u32, eta: f64) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParams("R must be positive".into()));
        }
        Self::new(2.0 / r as f64, eta)
    }

    pub fn r(&self) -> Option<u32> {
        integer_ratio(self.a)
    }
}

/// Ψ_a^d(w,τ) = Γ(ν_0+1)(w/2)^{−ν_0} Σ_j e^{−iπj/a} ((η+j)/η) C_j^η(τ) J_{ν_j}(w),
/// ν_j = 2(η+j)/a, summed until the bound |J_ν(w)| ≤ (w/2)^ν/Γ(ν+1) certifies
/// the tail below `cfg.tol`.
pub fn psi_series(cfg: &PsiConfig, w: f64, tau: f64) -> Result<Complex64> {
    let eta = cfg.eta;
    if !(tau.abs() <= 1.0 + 1e-14) {
        return Err(Error::Domain(format!("tau = {tau} outside [-1, 1]")));
    }
    let tau = tau.clamp(-1.0, 1.0);
    if eta < 0.0 && tau.abs() != 1.0 {
        return Err(Error::Domain(
            "eta < 0 is only supported at tau = ±1".into(),
        ));
    }
    if w < 0.0 {
        return Err(Error::Domain(format!("w = {w} must be nonnegative")));
    }
    if w == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let a = cfg.a;
    let mu = 2.0 / a;
    let nu0 = 2.0 * eta / a;
    let half = w / 2.0;
    // bound on the j-th term, and the term coefficient (η+j)/η·C_j^η(1)
    let coef = |j: usize| {
        if j == 0 {
            1.0
        } else {
            (eta + j as f64) * gegenbauer_c_over_lambda_at_one(j, eta)
        }
    };
    let bound = |j: usize| {
        let nu = nu0 + mu * j as f64;
        (ln_gamma(nu0 + 1.0) - ln_gamma(nu + 1.0) + mu * j as f64 * half.ln()).exp() * coef(j).abs()
    };
    // number of terms
    let mut count = None;
    let mut j = 1;
    while j < cfg.series_terms {
        let b = bound(j);
        let next = bound(j + 1);
        if b < cfg.tol / 2.0 && next <= 0.5 * b.max(f64::MIN_POSITIVE) {
            count = Some(j);
            break;
        }
        if b == 0.0 {
            count = Some(j);
            break;
        }
        j += 1;
    }
    let count = match count {
        Some(c) => c,
        None => {
            return Err(Error::Truncation {
                terms: cfg.series_terms,
                bound: bound(cfg.series_terms),
            })
        }
    };
    let p = gegenbauer_p_seq(count, eta - 0.5, tau);
    let besselv: Vec<f64> = match integer_ratio(a) {
        Some(r) => {
            let seq = bessel_j_norm_seq(nu0, w, r as usize * (count - 1) + 1)?;
            (0..count).map(|k| seq[r as usize * k]).collect()
        }
        None => (0..count)
            .map(|k| {
                let nu = nu0 + mu * k as f64;
                let scale =
                    (ln_gamma(nu0 + 1.0) - ln_gamma(nu + 1.0) + mu * k as f64 * half.ln()).exp();
                if scale == 0.0 {
                    0.0
                } else {
                    scale * j_norm_unchecked(nu, w)
                }
            })
            .collect(),
    };
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..count {
        let c = if eta < 0.0 {
            // P_k is undefined at η < 0; use C_k^η(±1)/η·(η+k) = coef(k)·(±1)^k
            coef(k) * if tau < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 }
        } else {
            coef(k) * p[k]
        };
        sum += Complex64::from_polar(c * besselv[k], -PI * k as f64 / a);
    }
    Ok(sum)
}

/// The phases c_j = cos((q − 2πj)/R), q = arccos τ, whose Dirichlet mixture
/// represents Ψ.
pub fn psi_phases(r: u32, tau: f64) -> Vec<f64> {
    let q = tau.clamp(-1.0, 1.0).acos();
    (0..r)
        .map(|j| ((q - 2.0 * PI * j as f64) / r as f64).cos())
        .collect()
}

/// Ψ_{2/R}^d(w,τ) from its simplex integral: the expectation of
/// exp(−iw Σ_j c_j t_j) under the Dirichlet(η,…,η) law on T^{R−1},
/// integrated by stick-breaking coordinates with a Gauss–Jacobi rule of
/// `quad_order` nodes in each coordinate.
pub fn psi_simplex(r: u32, eta: f64, w: f64, tau: f64, quad_order: usize) -> Result<Complex64> {
    if r < 2 {
        return Err(Error::InvalidParams("R must be at least 2".into()));
    }
    if !(eta > 0.0) {
        return Err(Error::Quadrature(format!(
            "endpoint exponent eta-1 = {} is not integrable",
            eta - 1.0
        )));
    }
    if !(tau.abs() <= 1.0 + 1e-14) {
        return Err(Error::Domain(format!("tau = {tau} outside [-1, 1]")));
    }
    let c = psi_phases(r, tau);
    // stick k (k = 1..R−1): x_k ~ Beta(η, (R−k)η) on [0, 1]
    let mut rules = Vec::with_capacity(r as usize - 1);
    for k in 1..r {
        let rule = gauss_jacobi_ab((r - k) as f64 * eta - 1.0, eta - 1.0, quad_order)?;
        let mass: f64 = rule.weights.iter().sum();
        let nodes: Vec<f64> = rule.nodes.iter().map(|s| 0.5 * (1.0 + s)).collect();
        let weights: Vec<f64> = rule.weights.iter().map(|wt| wt / mass).collect();
        rules.push((nodes, weights));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut idx = vec![0usize; rules.len()];
    loop {
        let mut weight = 1.0;
        let mut remaining = 1.0;
        let mut phase = 0.0;
        for (k, &i) in idx.iter().enumerate() {
            let x = rules[k].0[i];
            weight *= rules[k].1[i];
            phase += c[k + 1] * remaining * x;
            remaining *= 1.0 - x;
        }
        phase += c[0] * remaining;
        sum += Complex64::from_polar(weight, -w * phase);
        // advance the multi-index
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(sum);
            }
            idx[k] += 1;
            if idx[k] < quad_order {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Exponential type θ(a,τ) of w ↦ Ψ_{2/R}^d(w,τ).
pub fn psi_type(r: u32, tau: f64) -> f64 {
    let q = tau.clamp(-1.0, 1.0).acos();
    let rf = r as f64;
    if r % 2 == 0 || q <= PI / 2.0 {
        (q / rf).cos()
    } else {
        ((PI - q) / rf).cos()
    }
}

/// c_λ = Γ(λ+1)/(√π Γ(λ+1/2)), the normalization of (1−t²)^{λ−1/2} on [−1,1].
pub fn c_lambda(lambda: f64) -> f64 {
    (ln_gamma(lambda + 1.0) - ln_gamma(lambda + 0.5)).exp() / PI.sqrt()
}

/// Closed-form density ψ_1^d(t,τ) of Ψ_1^d with respect to c_λ(1−t²)^{λ−1/2}dt,
/// λ = 2η: c(η)(1−t²)^{1/2−2η}(1+τ)^{1/2−η}(1+τ−2t²)^{η−1} on |t| ≤ √((1+τ)/2),
/// with c(η) = √2 c_{η−1/2}/c_{2η} fixed by unit mass.
pub fn psi_density_a1(eta: f64, t: f64, tau: f64) -> Result<f64> {
    if !(eta > 1.0) {
        return Err(Error::Domain(format!("eta = {eta} must exceed 1")));
    }
    if !(t.abs() < 1.0) || !(tau.abs() <= 1.0) {
        return Err(Error::Domain(format!(
            "(t, tau) = ({t}, {tau}) outside (-1,1) x [-1,1]"
        )));
    }
    let theta2 = (1.0 + tau) / 2.0;
    if t * t >= theta2 {
        return Ok(0.0);
    }
    let c = 2f64.sqrt() * c_lambda(eta - 0.5) / c_lambda(2.0 * eta);
    Ok(c * (1.0 - t * t).powf(0.5 - 2.0 * eta)
        * (1.0 + tau).powf(0.5 - eta)
        * (1.0 + tau - 2.0 * t * t).powf(eta - 1.0))
}

/// Density of Ψ_1^d against dt: ρ(t) = ψ_1^d(t,τ) c_{2η}(1−t²)^{2η−1/2}.
pub fn psi_density_a1_dt(eta: f64, t: f64, tau: f64) -> Result<f64> {
    let psi = psi_density_a1(eta, t, tau)?;
    Ok(psi * c_lambda(2.0 * eta) * (1.0 - t * t).powf(2.0 * eta - 0.5))
}

/// Gaussian-smoothed density of w ↦ Ψ(w,τ): the inverse Fourier transform
/// of Ψ(w,τ) e^{−σ²w²/2}, computed as a Fourier series on the period
/// [−period_half, period_half] (the density lives in [−1, 1]).
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothedDensity {
    pub sigma: f64,
    pub period_half: f64,
    pub coeffs: Vec<Complex64>,
}

impl SmoothedDensity {
    pub fn from_fn<F: Fn(f64) -> Result<Complex64>>(
        psi: F,
        sigma: f64,
        period_half: f64,
    ) -> Result<Self> {
        let dw = PI / period_half;
        let k_max = (9.0 / (sigma * dw)).ceil() as usize;
        let mut coeffs = Vec::with_capacity(k_max + 1);
        for k in 0..=k_max {
            let w = k as f64 * dw;
            coeffs.push(psi(w)? * (-0.5 * sigma * sigma * w * w).exp());
        }
        Ok(SmoothedDensity {
            sigma,
            period_half,
            coeffs,
        })
    }

    pub fn eval(&self, t: f64) -> f64 {
        let dw = PI / self.period_half;
        let mut s = self.coeffs[0].re;
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            s += 2.0 * (c * Complex64::from_polar(1.0, k as f64 * dw * t)).re;
        }
        s / (2.0 * self.period_half)
    }
}
