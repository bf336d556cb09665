//! Integral transforms on the half-line and the line: Hankel and deformed
//! Hankel transforms, the one-dimensional (κ,a)-transform through its
//! even/odd splitting, the non-deformed transforms F_r^λ with inversion and
//! Plancherel checks, the operator δ_λ, and Schwartz-image diagnostics.

use crate::error::{Error, Result};
use crate::genpoly::{q_even, q_odd};
use crate::kernels::{c_lambda, kernel_e_odd, Params};
use crate::quad::{half_line_rule, HalfLine, QuadRule, RuleKind};
use crate::specfun::{digamma, gamma, j_norm_unchecked, kummer_phi, ln_gamma, pochhammer};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Default relative tolerance of the adaptive half-line integrals.
pub const DEFAULT_TOL: f64 = 1e-11;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

// ---------------------------------------------------------------------------
// Measures

/// Measures on the half-line or the line, with their normalizations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeasureSpec {
    /// dν_η(u) = b_η u^{2η+1} du on ℝ₊, b_η⁻¹ = 2^η Γ(η+1).
    Nu { eta: f64 },
    /// dν_{η,a}(u) = b_{η,a} u^{2η+a−1} du on ℝ₊, b_{η,a}⁻¹ = a^{2η/a} Γ(2η/a+1).
    NuA { eta: f64, a: f64 },
    /// d~ν_λ(u) = |u|^{2λ+1} du / (2^{λ+1} Γ(λ+1)) on ℝ.
    NuTilde { lambda: f64 },
    /// dμ_{κ,a}(x) = c_{κ,a} |x|^{2κ+a−2} dx on ℝ, c_{κ,a}⁻¹ = 2 a^λ Γ(λ+1),
    /// λ = (2κ−1)/a.
    Mu { kappa: f64, a: f64 },
}

impl MeasureSpec {
    /// Exponent p of the density |u|^p.
    pub fn power(&self) -> f64 {
        match *self {
            MeasureSpec::Nu { eta } => 2.0 * eta + 1.0,
            MeasureSpec::NuA { eta, a } => 2.0 * eta + a - 1.0,
            MeasureSpec::NuTilde { lambda } => 2.0 * lambda + 1.0,
            MeasureSpec::Mu { kappa, a } => 2.0 * kappa + a - 2.0,
        }
    }

    pub fn constant(&self) -> f64 {
        match *self {
            MeasureSpec::Nu { eta } => (-eta * 2f64.ln() - ln_gamma(eta + 1.0)).exp(),
            MeasureSpec::NuA { eta, a } => {
                let e = 2.0 * eta / a;
                (-e * a.ln() - ln_gamma(e + 1.0)).exp()
            }
            MeasureSpec::NuTilde { lambda } => {
                (-(lambda + 1.0) * 2f64.ln() - ln_gamma(lambda + 1.0)).exp()
            }
            MeasureSpec::Mu { kappa, a } => {
                let lam = (2.0 * kappa - 1.0) / a;
                0.5 * (-lam * a.ln() - ln_gamma(lam + 1.0)).exp()
            }
        }
    }

    pub fn is_full_line(&self) -> bool {
        matches!(self, MeasureSpec::NuTilde { .. } | MeasureSpec::Mu { .. })
    }

    pub fn density(&self, u: f64) -> f64 {
        self.constant() * u.abs().powf(self.power())
    }

    /// ∫ f dm, splitting the line into two half-lines when needed.
    pub fn integrate<F: Fn(f64) -> Complex64>(&self, f: F, tol: f64) -> Result<Complex64> {
        let hl = HalfLine::new(self.power()).tol(tol);
        let k = self.constant();
        if self.is_full_line() {
            Ok(k * hl.integrate(|u| f(u) + f(-u))?)
        } else {
            Ok(k * hl.integrate(f)?)
        }
    }
}

// ---------------------------------------------------------------------------
// Sampled functions

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayHint {
    Power(f64),
    SuperPolynomial,
}

/// A function known on a grid, evaluated elsewhere by local cubic
/// interpolation and taken as zero outside the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFn {
    pub grid: Vec<f64>,
    pub values: Vec<Complex64>,
    pub decay_hint: Option<DecayHint>,
    pub parity: Parity,
}

impl SampledFn {
    pub fn new(grid: Vec<f64>, values: Vec<Complex64>, parity: Parity) -> Result<Self> {
        if grid.len() != values.len() || grid.len() < 4 {
            return Err(Error::InvalidParams(
                "grid and values need equal length >= 4".into(),
            ));
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParams(
                "grid must be strictly increasing".into(),
            ));
        }
        let sf = SampledFn {
            grid,
            values,
            decay_hint: None,
            parity,
        };
        if parity != Parity::None && sf.is_symmetric() {
            let sign = if parity == Parity::Even { 1.0 } else { -1.0 };
            let n = sf.grid.len();
            for i in 0..n {
                let d = sf.values[i] - sign * sf.values[n - 1 - i];
                if d.norm() > 1e-12 * (1.0 + sf.values[i].norm()) {
                    return Err(Error::InvalidParams(format!(
                        "parity tag violated at u = {}",
                        sf.grid[i]
                    )));
                }
            }
        }
        Ok(sf)
    }

    pub fn from_fn<F: Fn(f64) -> Complex64>(grid: Vec<f64>, f: F, parity: Parity) -> Result<Self> {
        let values = grid.iter().map(|&u| f(u)).collect();
        Self::new(grid, values, parity)
    }

    pub fn with_decay(mut self, hint: DecayHint) -> Self {
        self.decay_hint = Some(hint);
        self
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.grid.len();
        (0..n).all(|i| {
            (self.grid[i] + self.grid[n - 1 - i]).abs() <= 1e-12 * (1.0 + self.grid[i].abs())
        })
    }

    pub fn eval(&self, u: f64) -> Complex64 {
        let g = &self.grid;
        let n = g.len();
        if u < g[0] || u > g[n - 1] {
            return c(0.0);
        }
        let j = g.partition_point(|&x| x <= u).clamp(1, n - 1) - 1;
        let lo = j.saturating_sub(1).min(n - 4);
        let mut acc = c(0.0);
        for a in lo..lo + 4 {
            let mut l = 1.0;
            for b in lo..lo + 4 {
                if a != b {
                    l *= (u - g[b]) / (g[a] - g[b]);
                }
            }
            acc += self.values[a] * l;
        }
        acc
    }

    /// (f(u) ± f(−u))/2 on a symmetric grid.
    fn part(&self, sign: f64, parity: Parity) -> Result<Self> {
        if !self.is_symmetric() {
            return Err(Error::InvalidParams(
                "even/odd parts need a symmetric grid".into(),
            ));
        }
        let n = self.grid.len();
        let values = (0..n)
            .map(|i| 0.5 * (self.values[i] + sign * self.values[n - 1 - i]))
            .collect();
        Ok(SampledFn {
            grid: self.grid.clone(),
            values,
            decay_hint: self.decay_hint,
            parity,
        })
    }

    pub fn even_part(&self) -> Result<Self> {
        self.part(1.0, Parity::Even)
    }

    pub fn odd_part(&self) -> Result<Self> {
        self.part(-1.0, Parity::Odd)
    }
}

// ---------------------------------------------------------------------------
// Hankel transforms

/// H_η(f)(v) = ∫_0^∞ f(u) j_η(uv) dν_η(u).
pub fn hankel<F: Fn(f64) -> f64>(eta: f64, f: F, v: f64) -> Result<f64> {
    hankel_tol(eta, f, v, DEFAULT_TOL)
}

pub fn hankel_tol<F: Fn(f64) -> f64>(eta: f64, f: F, v: f64, tol: f64) -> Result<f64> {
    if !(eta >= -0.5) {
        return Err(Error::InvalidParams(format!(
            "Hankel order {eta} below -1/2"
        )));
    }
    let m = MeasureSpec::Nu { eta };
    let hl = HalfLine::new(m.power()).tol(tol).freq(v);
    Ok(m.constant() * hl.integrate_real(|u| f(u) * j_norm_unchecked(eta, u * v))?)
}

/// H_{η,a}(f)(v) = ∫_0^∞ f(u) j_{2η/a}((2/a)(vu)^{a/2}) dν_{η,a}(u), integrated
/// directly in u.
pub fn hankel_deformed<F: Fn(f64) -> f64>(eta: f64, a: f64, f: F, v: f64) -> Result<f64> {
    hankel_deformed_tol(eta, a, f, v, DEFAULT_TOL)
}

pub fn hankel_deformed_tol<F: Fn(f64) -> f64>(
    eta: f64,
    a: f64,
    f: F,
    v: f64,
    tol: f64,
) -> Result<f64> {
    if !(a > 0.0) || !(2.0 * eta + a >= 1.0) {
        return Err(Error::InvalidParams(format!(
            "need a > 0 and 2η+a >= 1 (η = {eta}, a = {a})"
        )));
    }
    let m = MeasureSpec::NuA { eta, a };
    let order = 2.0 * eta / a;
    let v = v.abs();
    let arg = move |u: f64| (2.0 / a) * (v * u).powf(a / 2.0);
    let u_max = quad_cutoff(&|u| c(f(u)), m.power(), tol)?;
    // local frequency of the Bessel argument at the far end of the range
    let freq = if v == 0.0 {
        0.0
    } else {
        v.powf(a / 2.0) * u_max.powf(a / 2.0 - 1.0).max(1.0)
    };
    let hl = HalfLine::new(m.power()).tol(tol).freq(freq).u_max(u_max);
    Ok(m.constant() * hl.integrate_real(|u| f(u) * j_norm_unchecked(order, arg(u)))?)
}

fn quad_cutoff<F: Fn(f64) -> Complex64>(f: &F, power: f64, tol: f64) -> Result<f64> {
    crate::quad::find_cutoff(f, power, tol)
}

/// u ↦ f(x(u)) with x(u) = (a/2)^{1/a} |u|^{2/a} sign u.
pub fn change_of_vars_a<F: Fn(f64) -> Complex64>(f: F, a: f64) -> impl Fn(f64) -> Complex64 {
    let k = (a / 2.0).powf(1.0 / a);
    move |u: f64| f(k * u.abs().powf(2.0 / a) * u.signum())
}

/// x(u) = (a/2)^{1/a} |u|^{2/a} sign u.
pub fn x_of_u(a: f64, u: f64) -> f64 {
    (a / 2.0).powf(1.0 / a) * u.abs().powf(2.0 / a) * u.signum()
}

/// One-dimensional (κ,a)-transform
/// H_λ(g_e)(z) + e^{−iπ/a}(2/a)^{1/a} y H_{λ+2/a}(u^{−2/a} g_o)(z),
/// z = (2/a)^{1/2}|y|^{a/2}, with g = A f.
pub fn gft_1d<F: Fn(f64) -> Complex64 + Sync>(params: &Params, f: F, y: f64) -> Result<Complex64> {
    gft_1d_tol(params, f, y, DEFAULT_TOL)
}

pub fn gft_1d_tol<F: Fn(f64) -> Complex64 + Sync>(
    params: &Params,
    f: F,
    y: f64,
    tol: f64,
) -> Result<Complex64> {
    if params.d != 1 {
        return Err(Error::InvalidParams("gft_1d needs d = 1".into()));
    }
    let a = params.a;
    let lam = params.lambda;
    if lam < -0.5 {
        return Err(Error::InvalidParams(format!("λ = {lam} below -1/2")));
    }
    let g = change_of_vars_a(&f, a);
    let ge = |u: f64| 0.5 * (g(u) + g(-u));
    let go = |u: f64| 0.5 * (g(u) - g(-u));
    let z = (2.0 / a).sqrt() * y.abs().powf(a / 2.0);

    let me = MeasureSpec::Nu { eta: lam };
    let even = HalfLine::new(me.power())
        .tol(tol)
        .freq(z)
        .integrate(|u| ge(u) * j_norm_unchecked(lam, u * z))?
        * me.constant();
    if y == 0.0 {
        return Ok(even);
    }

    let mu = lam + 2.0 / a;
    let ratio = |u: f64| go(u) / u.powf(2.0 / a);
    check_origin_limit(&ratio)?;
    let mo = MeasureSpec::Nu { eta: mu };
    let odd = HalfLine::new(mo.power())
        .tol(tol)
        .freq(z)
        .integrate(|u| ratio(u) * j_norm_unchecked(mu, u * z))?
        * mo.constant();
    let phase = Complex64::from_polar((2.0 / a).powf(1.0 / a) * y, -PI / a);
    Ok(even + phase * odd)
}

/// Rejects odd parts whose ratio u^{−2/a} g_o(u) has no finite limit at 0.
fn check_origin_limit<F: Fn(f64) -> Complex64>(ratio: &F) -> Result<()> {
    let r1 = ratio(1e-2).norm();
    let r2 = ratio(1e-4).norm();
    let r3 = ratio(1e-6).norm();
    if !(r2.is_finite() && r3.is_finite()) || (r3 > 10.0 * r2 + 1.0 && r2 > 10.0 * r1 + 1.0) {
        return Err(Error::OriginSingularity(format!(
            "u^(-2/a) g_o(u) grows toward the origin ({r1:e}, {r2:e}, {r3:e})"
        )));
    }
    Ok(())
}

/// ∫_ℝ B_{κ,a}(x, y) f(x) dμ_{κ,a}(x) with the kernel evaluated directly, for
/// cross-checking [`gft_1d`]. The substitution x = s^{2/a} removes the
/// |x|^{a/2} cusp of the kernel at the origin.
pub fn gft_1d_direct<F: Fn(f64) -> Complex64>(
    params: &Params,
    f: F,
    y: f64,
    tol: f64,
) -> Result<Complex64> {
    let a = params.a;
    let m = MeasureSpec::Mu {
        kappa: params.kappa,
        a,
    };
    let p = 2.0 / a;
    // |x|^{2κ+a−2} dx = (2/a) s^{2λ+1} ds
    let power = p * (2.0 * params.kappa + a - 2.0) + p - 1.0;
    let z = (2.0 / a).sqrt() * y.abs().powf(a / 2.0);
    let hl = HalfLine::new(power).tol(tol).freq(z * (2.0 / a).sqrt());
    let val = hl.integrate(|s| {
        let x = s.powf(p);
        let bp = crate::kernels::kernel_b(params, x * y).unwrap_or(c(f64::NAN));
        let bm = crate::kernels::kernel_b(params, -x * y).unwrap_or(c(f64::NAN));
        bp * f(x) + bm * f(-x)
    })?;
    Ok(m.constant() * p * val)
}

// ---------------------------------------------------------------------------
// Kernels through the integral representation

fn rule_alpha_matches(rule: &QuadRule, lambda: f64) -> Result<()> {
    match rule.symmetric_alpha() {
        Some(al) if (al - (lambda - 0.5)).abs() <= 1e-12 => Ok(()),
        _ => Err(Error::RuleMismatch(format!(
            "need a Gauss–Jacobi rule for (1−t²)^{}, got {:?}",
            lambda - 0.5,
            rule.kind
        ))),
    }
}

/// c_λ ∫ (1−t²)^{λ−1/2} q_{2r+1}(t,λ) e^{−ivt} dt by the supplied rule.
pub fn kernel_via_integral(r: usize, lambda: f64, v: f64, rule: &QuadRule) -> Result<Complex64> {
    rule_alpha_matches(rule, lambda)?;
    let q = q_odd(r, lambda)?;
    Ok(c_lambda(lambda) * rule.integrate_complex(|t| Complex64::from_polar(q.eval(t), -v * t)))
}

/// c_λ ∫ (1−t²)^{λ−1/2} q_{2r}(t,v,λ) e^{−ivt} dt, the even-index analogue.
pub fn kernel_even_via_integral(
    r: usize,
    lambda: f64,
    v: f64,
    rule: &QuadRule,
) -> Result<Complex64> {
    rule_alpha_matches(rule, lambda)?;
    let sign = if v < 0.0 { -1 } else { 1 };
    let q = q_even(r, lambda, sign)?;
    Ok(c_lambda(lambda) * rule.integrate_complex(|t| Complex64::from_polar(q.eval(t), -v * t)))
}

// ---------------------------------------------------------------------------
// Non-deformed transforms F_r^λ

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

fn check_fr(lambda: f64) -> Result<()> {
    if !(lambda >= -0.5) || !lambda.is_finite() {
        return Err(Error::InvalidLambda(lambda));
    }
    Ok(())
}

/// e_{2r+1}(w, λ); at λ = −1/2 this is the limit kernel (e^{−iw} for r = 0).
fn e_odd(r: usize, lambda: f64, w: f64) -> Complex64 {
    kernel_e_odd(r as u32, lambda, w).expect("λ validated")
}

/// F_r^λ(g)(v) = ∫ e_{2r+1}(uv,λ) g(u) d~ν_λ(u); the inverse direction uses
/// the conjugate kernel.
pub fn f_r_lambda<G: Fn(f64) -> Complex64>(
    r: usize,
    lambda: f64,
    g: G,
    v: f64,
    dir: Direction,
) -> Result<Complex64> {
    f_r_lambda_tol(r, lambda, g, v, dir, DEFAULT_TOL)
}

pub fn f_r_lambda_tol<G: Fn(f64) -> Complex64>(
    r: usize,
    lambda: f64,
    g: G,
    v: f64,
    dir: Direction,
    tol: f64,
) -> Result<Complex64> {
    check_fr(lambda)?;
    let m = MeasureSpec::NuTilde { lambda };
    let hl = HalfLine::new(m.power()).tol(tol).freq(v);
    let val = hl
        .integrate(|u| {
            let e = e_odd(r, lambda, u * v);
            let (ep, em) = match dir {
                Direction::Forward => (e, e.conj()),
                Direction::Inverse => (e.conj(), e),
            };
            ep * g(u) + em * g(-u)
        })
        .map_err(|e| match e {
            Error::TailBound(u) => Error::Decay(format!("g not negligible before u = {u}")),
            other => other,
        })?;
    Ok(m.constant() * val)
}

/// Closed form of F_r^λ(u^{2s+1}e^{−u²})(v) for s ≥ r:
/// i K v^{2r+1} e^{−v²/4} Φ(r−s; λ+2r+2; v²/4),
/// K = (−1)^{r+1} Γ(λ+r+s+2)/(2^{λ+2r+2} Γ(λ+2r+2)).
pub fn gauss_moment_closed_form(r: usize, lambda: f64, s: usize, v: f64) -> Result<Complex64> {
    check_fr(lambda)?;
    if s < r {
        return Err(Error::InvalidParams(format!(
            "closed form needs s >= r (r = {r}, s = {s})"
        )));
    }
    let (rf, sf) = (r as f64, s as f64);
    let sign = if r % 2 == 0 { -1.0 } else { 1.0 };
    let k = sign
        * (ln_gamma(lambda + rf + sf + 2.0)
            - (lambda + 2.0 * rf + 2.0) * 2f64.ln()
            - ln_gamma(lambda + 2.0 * rf + 2.0))
        .exp();
    let phi = kummer_phi(rf - sf, lambda + 2.0 * rf + 2.0, v * v / 4.0)?;
    Ok(I * (k * v.powi(2 * r as i32 + 1) * (-v * v / 4.0).exp() * phi))
}

/// F_r^λ on fixed quadrature grids, for transforming many functions with the
/// same (r, λ). Forward values are kept at ±v for every v-node.
#[derive(Debug, Clone)]
pub struct FrGrid {
    pub r: usize,
    pub lambda: f64,
    pub u_rule: QuadRule,
    pub v_rule: QuadRule,
    /// e_{2r+1}(u_i v_j, λ), row j, column i.
    kernel: Vec<Complex64>,
}

/// Forward transform of one function on an [`FrGrid`].
#[derive(Debug, Clone)]
pub struct FrSamples {
    /// F(v_j) and F(−v_j).
    pub plus: Vec<Complex64>,
    pub minus: Vec<Complex64>,
    pub tail: Option<PowerTail>,
}

/// F_o(v) ≈ Σ_k A_k v^{−(p + 2k)} for v > V, fitted on [V/2, V].
#[derive(Debug, Clone)]
pub struct PowerTail {
    pub v0: f64,
    pub p: f64,
    pub coeffs: Vec<Complex64>,
}

impl FrGrid {
    /// Grids [0, u_max] and [0, v_max] with panel widths resolving the
    /// oscillation of e(uv) in either variable.
    pub fn new(r: usize, lambda: f64, u_max: f64, v_max: f64) -> Result<Self> {
        check_fr(lambda)?;
        let p = 2.0 * lambda + 1.0;
        let u_rule = half_line_rule(p, u_max, (6.0 / v_max).min(0.5))?;
        let v_rule = half_line_rule(p, v_max, (5.0 / u_max).min(0.75))?;
        let nu = u_rule.len();
        let kernel: Vec<Complex64> = v_rule
            .nodes
            .par_iter()
            .flat_map_iter(|&v| {
                let us = &u_rule.nodes;
                us.iter()
                    .map(move |&u| e_odd(r, lambda, u * v))
                    .collect::<Vec<_>>()
            })
            .collect();
        debug_assert_eq!(kernel.len(), nu * v_rule.len());
        Ok(FrGrid {
            r,
            lambda,
            u_rule,
            v_rule,
            kernel,
        })
    }

    fn norm(&self) -> f64 {
        MeasureSpec::NuTilde {
            lambda: self.lambda,
        }
        .constant()
    }

    fn u_max(&self) -> f64 {
        match self.u_rule.kind {
            RuleKind::HalfLineComposite { u_max, .. } => u_max,
            _ => unreachable!(),
        }
    }

    pub fn v_max(&self) -> f64 {
        match self.v_rule.kind {
            RuleKind::HalfLineComposite { u_max, .. } => u_max,
            _ => unreachable!(),
        }
    }

    pub fn forward<G: Fn(f64) -> Complex64>(&self, g: G) -> Result<FrSamples> {
        let gp: Vec<Complex64> = self.u_rule.nodes.iter().map(|&u| g(u)).collect();
        let gm: Vec<Complex64> = self.u_rule.nodes.iter().map(|&u| g(-u)).collect();
        let far = g(self.u_max()).norm().max(g(-self.u_max()).norm());
        let scale = gp.iter().chain(&gm).map(|z| z.norm()).fold(0.0, f64::max);
        if far > 1e-15 * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::Decay(format!(
                "g not negligible at u = {}",
                self.u_max()
            )));
        }
        let nu = gp.len();
        let k = self.norm();
        let (plus, minus): (Vec<_>, Vec<_>) = (0..self.v_rule.len())
            .into_par_iter()
            .map(|j| {
                let row = &self.kernel[j * nu..(j + 1) * nu];
                let mut fp = c(0.0);
                let mut fm = c(0.0);
                for i in 0..nu {
                    let w = self.u_rule.weights[i];
                    let e = row[i];
                    fp += w * (e * gp[i] + e.conj() * gm[i]);
                    fm += w * (e.conj() * gp[i] + e * gm[i]);
                }
                (k * fp, k * fm)
            })
            .unzip();
        let tail = self.fit_tail(&plus, &minus)?;
        Ok(FrSamples { plus, minus, tail })
    }

    /// Fits the algebraic tail of the odd part; the even part must be
    /// negligible at v_max.
    fn fit_tail(&self, plus: &[Complex64], minus: &[Complex64]) -> Result<Option<PowerTail>> {
        let vn = &self.v_rule.nodes;
        let v0 = self.v_max();
        let scale = plus
            .iter()
            .chain(minus)
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        let n = vn.len();
        let fe_end = 0.5 * (plus[n - 1] + minus[n - 1]);
        if fe_end.norm() > 1e-13 * scale {
            return Err(Error::Decay(format!(
                "even part of the transform not negligible at v = {v0} ({:e})",
                fe_end.norm()
            )));
        }
        let fo: Vec<Complex64> = (0..n).map(|j| 0.5 * (plus[j] - minus[j])).collect();
        if fo[n - 1].norm() <= 1e-14 * scale {
            return Ok(None);
        }
        let sel: Vec<usize> = (0..n).filter(|&j| vn[j] >= 0.5 * v0).collect();
        let (ja, jb) = (sel[0], sel[sel.len() - 1]);
        let slope = (fo[jb].norm().ln() - fo[ja].norm().ln()) / (vn[jb].ln() - vn[ja].ln());
        let lam = self.lambda;
        let k0 = ((-slope - 2.0 * lam - 3.0) / 2.0).round().max(0.0);
        if k0 as usize >= self.r {
            return Err(Error::Decay(format!(
                "odd part decays like v^{slope:.2}, outside the algebraic-tail lattice"
            )));
        }
        let p = 2.0 * lam + 3.0 + 2.0 * k0;
        // least squares in x = v0/v for A_0 x^p + A_1 x^{p+2}
        let basis = |v: f64, k: usize| (v0 / v).powf(p + 2.0 * k as f64);
        let mut ata = [[0.0f64; 2]; 2];
        let mut atb = [c(0.0); 2];
        for &j in &sel {
            let b = [basis(vn[j], 0), basis(vn[j], 1)];
            for a in 0..2 {
                for bb in 0..2 {
                    ata[a][bb] += b[a] * b[bb];
                }
                atb[a] += b[a] * fo[j];
            }
        }
        let det = ata[0][0] * ata[1][1] - ata[0][1] * ata[1][0];
        let x0 = (atb[0] * ata[1][1] - atb[1] * ata[0][1]) / det;
        let x1 = (atb[1] * ata[0][0] - atb[0] * ata[1][0]) / det;
        let mut resid: f64 = 0.0;
        for &j in &sel {
            let m = x0 * basis(vn[j], 0) + x1 * basis(vn[j], 1);
            resid = resid.max((m - fo[j]).norm() / fo[j].norm().max(1e-300));
        }
        if resid > 1e-3 {
            return Err(Error::Decay(format!(
                "algebraic tail fit residual {resid:e}"
            )));
        }
        // convert to coefficients of v^{-(p+2k)}
        let coeffs = vec![x0 * v0.powf(p), x1 * v0.powf(p + 2.0)];
        Ok(Some(PowerTail { v0, p, coeffs }))
    }

    /// (∫|F_r^λ g|² d~ν_λ, ∫|g|² d~ν_λ).
    pub fn plancherel<G: Fn(f64) -> Complex64>(&self, g: G) -> Result<(f64, f64)> {
        let s = self.forward(&g)?;
        let k = self.norm();
        let mut lhs = 0.0;
        for j in 0..self.v_rule.len() {
            lhs += self.v_rule.weights[j] * (s.plus[j].norm_sqr() + s.minus[j].norm_sqr());
        }
        lhs *= k;
        if let Some(t) = &s.tail {
            // ∫_V^∞ 2|F_o|² v^{2λ+1} dv for the fitted tail
            let q0 = 2.0 * self.lambda + 2.0;
            let pw = |q: f64| t.v0.powf(q0 - q) / (q - q0);
            let (a0, a1) = (t.coeffs[0], t.coeffs[1]);
            let integral = a0.norm_sqr() * pw(2.0 * t.p)
                + 2.0 * (a0 * a1.conj()).re * pw(2.0 * t.p + 2.0)
                + a1.norm_sqr() * pw(2.0 * t.p + 4.0);
            lhs += k * 2.0 * integral;
        }
        let rhs = MeasureSpec::NuTilde {
            lambda: self.lambda,
        }
        .integrate(|u| c(g(u).norm_sqr()), 1e-13)?
        .re;
        Ok((lhs, rhs))
    }

    /// ∫ conj(e_{2r+1}(uv,λ)) F(v) d~ν_λ(v) from forward samples.
    pub fn inverse_at(&self, s: &FrSamples, u: f64) -> Result<Complex64> {
        let (r, lam) = (self.r, self.lambda);
        let mut acc = c(0.0);
        for j in 0..self.v_rule.len() {
            let v = self.v_rule.nodes[j];
            let e = e_odd(r, lam, u * v);
            acc += self.v_rule.weights[j] * (e.conj() * s.plus[j] + e * s.minus[j]);
        }
        let mut val = self.norm() * acc;
        if let Some(t) = &s.tail {
            val += inverse_tail(r, lam, t, u)?;
        }
        Ok(val)
    }
}

/// Contribution of v > V to the inversion integral for F_o ≈ Σ A_k v^{−p_k}:
/// −iσ sign(u) Σ_k A_k |u|^{p_k−2λ−2} ∫_{|u|V}^∞ t^{λ+1−p_k} J_{λ+2r+1}(t) dt,
/// σ = (−1)^{r+1}.
fn inverse_tail(r: usize, lambda: f64, t: &PowerTail, u: f64) -> Result<Complex64> {
    if u == 0.0 {
        return Ok(c(0.0));
    }
    let sigma = if r % 2 == 0 { -1.0 } else { 1.0 };
    let nu = lambda + 2.0 * r as f64 + 1.0;
    let x = u.abs() * t.v0;
    let mut acc = c(0.0);
    for (k, a) in t.coeffs.iter().enumerate() {
        let p = t.p + 2.0 * k as f64;
        let beta = lambda + 1.0 - p;
        let tail = bessel_power_tail(beta, nu, x)?;
        acc += a * u.abs().powf(p - 2.0 * lambda - 2.0) * tail;
    }
    Ok(-I * sigma * u.signum() * acc)
}

/// ∫_X^∞ t^β J_ν(t) dt for β < 1/2 and X > 0.
///
/// When β + ν > −1 this is the complete integral 2^β Γ((ν+β+1)/2)/Γ((ν−β+1)/2)
/// minus ∫_0^X. Otherwise the parts identity
/// I(β+1, ν+1) = X^{β+1} J_ν(X) + (β+ν+1) I(β, ν) raises the indices, and the
/// case β + ν = −1 is reduced to ∫_X^∞ j_ν(t)/t dt.
pub fn bessel_power_tail(beta: f64, nu: f64, x: f64) -> Result<f64> {
    if !(beta < 0.5) || !(nu > -1.0) {
        return Err(Error::Domain(format!(
            "∫ t^β J_ν diverges at infinity for β = {beta}"
        )));
    }
    let s = beta + nu;
    if s > -1.0 {
        let total =
            2f64.powf(beta) * gamma(0.5 * (nu + beta + 1.0)) / gamma(0.5 * (nu - beta + 1.0));
        if x <= 0.0 {
            return Ok(total);
        }
        // J_ν(t) t^β = t^{β+ν} j_ν(t)/(2^ν Γ(ν+1))
        let rule = half_line_rule(s, x, 1.0)?;
        let head = rule.integrate(|t| j_norm_unchecked(nu, t)) / (2f64.powf(nu) * gamma(nu + 1.0));
        return Ok(total - head);
    }
    if !(x > 0.0) {
        return Err(Error::Domain(format!(
            "∫_0^∞ t^β J_ν diverges at 0 for β + ν = {s}"
        )));
    }
    if (s + 1.0).abs() < 1e-12 {
        return Ok(j_over_t_tail(nu, x) / (2f64.powf(nu) * gamma(nu + 1.0)));
    }
    let jx = (x / 2.0).powf(nu) * j_norm_unchecked(nu, x) / gamma(nu + 1.0);
    Ok((bessel_power_tail(beta + 1.0, nu + 1.0, x)? - x.powf(beta + 1.0) * jx) / (s + 1.0))
}

/// ∫_X^∞ j_ν(t)/t dt, from ∫_0^∞ (j_ν(t) − 1_{t<1})/t dt = ln 2 + ψ(ν+1)/2 − γ/2.
fn j_over_t_tail(nu: f64, x: f64) -> f64 {
    const EULER: f64 = 0.577_215_664_901_532_9;
    let total = 2f64.ln() + 0.5 * digamma(nu + 1.0) - 0.5 * EULER;
    let gl = crate::quad::gauss_legendre(24).expect("Legendre rule");
    let near = |hi: f64| {
        let h = 0.5 * hi;
        gl.integrate(|s| {
            let t = h * (1.0 + s);
            (j_norm_unchecked(nu, t) - 1.0) / t
        }) * h
    };
    if x <= 1.0 {
        // ∫_X^∞ j/t = total − ∫_0^X (j−1)/t + ln(1/X)
        total - near(x) - x.ln()
    } else {
        let rule = half_line_rule(0.0, x - 1.0, 1.0).expect("panel rule");
        let far = rule.integrate(|s| j_norm_unchecked(nu, 1.0 + s) / (1.0 + s));
        total - near(1.0) - far
    }
}

// ---------------------------------------------------------------------------
// The operator δ_λ

/// Fornberg weights for the k-th derivative at 0 on the given offsets.
pub fn fd_weights(k: usize, offsets: &[f64]) -> Vec<f64> {
    let n = offsets.len();
    let mut delta = vec![vec![vec![0.0; n]; n]; k + 1];
    delta[0][0][0] = 1.0;
    let mut c1 = 1.0;
    for nn in 1..n {
        let mut c2 = 1.0;
        for nu in 0..nn {
            let c3 = offsets[nn] - offsets[nu];
            c2 *= c3;
            for m in 0..=k.min(nn) {
                let prev = delta[m][nn - 1][nu];
                let prev_m = if m > 0 { delta[m - 1][nn - 1][nu] } else { 0.0 };
                delta[m][nn][nu] = (offsets[nn] * prev - m as f64 * prev_m) / c3;
            }
        }
        for m in 0..=k.min(nn) {
            let prev = delta[m][nn - 1][nn - 1];
            let prev_m = if m > 0 {
                delta[m - 1][nn - 1][nn - 1]
            } else {
                0.0
            };
            delta[m][nn][nn] = c1 / c2 * (m as f64 * prev_m - offsets[nn - 1] * prev);
        }
        c1 = c2;
    }
    delta[k][n - 1].clone()
}

/// k-th derivative at x by a (2m+1)-point central stencil of step h.
pub fn central_derivative<F: Fn(f64) -> Complex64>(
    f: &F,
    x: f64,
    k: usize,
    m: usize,
    h: f64,
) -> Complex64 {
    let offsets: Vec<f64> = (0..=2 * m).map(|i| i as f64 - m as f64).collect();
    let w = fd_weights(k, &offsets);
    let mut acc = c(0.0);
    for (o, wi) in offsets.iter().zip(&w) {
        if *wi != 0.0 {
            acc += *wi * f(x + o * h);
        }
    }
    acc / h.powi(k as i32)
}

/// Accuracy order of the (2m+1)-point central stencil for the k-th derivative.
fn stencil_order(k: usize, m: usize) -> i32 {
    (2 * ((2 * m + 2 - k) / 2)) as i32
}

/// k-th derivative at x with two levels of Richardson extrapolation over
/// steps h, h/2, h/4.
pub fn richardson_derivative<F: Fn(f64) -> Complex64>(
    f: &F,
    x: f64,
    k: usize,
    h: f64,
) -> Complex64 {
    let m = (k + 1) / 2 + 3;
    let p = stencil_order(k, m);
    let d: Vec<Complex64> = (0..3)
        .map(|i| central_derivative(f, x, k, m, h / 2f64.powi(i)))
        .collect();
    let f1 = 2f64.powi(p);
    let r1 = (f1 * d[1] - d[0]) / (f1 - 1.0);
    let r2 = (f1 * d[2] - d[1]) / (f1 - 1.0);
    let f2 = 2f64.powi(p + 2);
    (f2 * r2 - r1) / (f2 - 1.0)
}

/// Default step for the k-th derivative at the origin, balancing rounding
/// against truncation for functions varying on an O(1) scale.
pub fn default_step(k: usize) -> f64 {
    0.05 * (k.max(1) as f64).powf(0.7)
}

/// δ_λ g(u) = g'' + ((2λ+1)/u) g' − (λ+1/2 + 2r(λ+r+1)) (g(u) − g(−u))/u²
/// with derivatives from 9-point central differences of step h.
pub fn delta_lambda_apply<G: Fn(f64) -> Complex64>(
    r: usize,
    lambda: f64,
    g: &G,
    u: f64,
) -> Result<Complex64> {
    delta_lambda_apply_h(r, lambda, g, u, 1e-2)
}

pub fn delta_lambda_apply_h<G: Fn(f64) -> Complex64>(
    r: usize,
    lambda: f64,
    g: &G,
    u: f64,
    h: f64,
) -> Result<Complex64> {
    let at = |x: f64| -> Complex64 {
        let d1 = central_derivative(g, x, 1, 4, h);
        let d2 = central_derivative(g, x, 2, 4, h);
        delta_from_derivs(r, lambda, x, g(x), g(-x), d1, d2)
    };
    if u != 0.0 {
        return Ok(at(u));
    }
    // limit at the origin from symmetric samples at shrinking ε
    let eps = [0.08, 0.04, 0.02];
    let vals: Vec<Complex64> = eps.iter().map(|&e| 0.5 * (at(e) + at(-e))).collect();
    let odd: Vec<f64> = eps
        .iter()
        .map(|&e| (0.5 * (at(e) - at(-e))).norm())
        .collect();
    let d1 = (vals[1] - vals[0]).norm();
    let d2 = (vals[2] - vals[1]).norm();
    let tiny = 1e-6 * (1.0 + vals[2].norm());
    if odd[2] > 0.75 * odd[1] + tiny {
        return Err(Error::OriginSingularity(format!(
            "odd part of δ_λ g(±ε) grows as ε → 0 ({:e}, {:e})",
            odd[1], odd[2]
        )));
    }
    if d2 > 0.5 * d1 + tiny {
        return Err(Error::OriginSingularity(format!(
            "δ_λ g(ε) does not settle as ε → 0 (successive changes {d1:e}, {d2:e})"
        )));
    }
    // Richardson on the O(ε²) behaviour of the even average
    Ok((4.0 * vals[2] - vals[1]) / 3.0)
}

/// δ_λ g(u) from g(u), g(−u), g'(u), g''(u).
pub fn delta_from_derivs(
    r: usize,
    lambda: f64,
    u: f64,
    g_u: Complex64,
    g_minus_u: Complex64,
    d1: Complex64,
    d2: Complex64,
) -> Complex64 {
    let rf = r as f64;
    let coef = lambda + 0.5 + 2.0 * rf * (lambda + rf + 1.0);
    d2 + (2.0 * lambda + 1.0) / u * d1 - coef * (g_u - g_minus_u) / (u * u)
}

// ---------------------------------------------------------------------------
// Polynomial × Gaussian test functions

/// g(u) = p(u) e^{−u²} with p in monomial coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyGaussian {
    pub coeffs: Vec<f64>,
}

impl PolyGaussian {
    pub fn new(coeffs: Vec<f64>) -> Self {
        PolyGaussian { coeffs }
    }

    /// u^{2s+1} e^{−u²}.
    pub fn odd_moment(s: usize) -> Self {
        let mut c = vec![0.0; 2 * s + 2];
        c[2 * s + 1] = 1.0;
        PolyGaussian::new(c)
    }

    pub fn eval(&self, u: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * u + c) * (-u * u).exp()
    }

    pub fn eval_c(&self, u: f64) -> Complex64 {
        c(self.eval(u))
    }

    /// Polynomial part of g'.
    pub fn derivative(&self) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![0.0; n + 1];
        for k in 1..n {
            out[k - 1] += k as f64 * self.coeffs[k];
        }
        for k in 0..n {
            out[k + 1] -= 2.0 * self.coeffs[k];
        }
        PolyGaussian::new(out)
    }

    /// δ_λ g, exact. Requires the u-coefficient to vanish when r ≥ 1, since
    /// otherwise δ_λ g has a 1/u singularity.
    pub fn delta(&self, r: usize, lambda: f64) -> Result<Self> {
        let d1 = self.derivative();
        let d2 = d1.derivative();
        let rf = r as f64;
        let coef = 2.0 * lambda + 1.0 + 4.0 * rf * (lambda + rf + 1.0);
        let n = d2.coeffs.len().max(self.coeffs.len()) + 2;
        // numerator of u² δ_λ g
        let mut num = vec![0.0; n];
        for (k, &a) in d2.coeffs.iter().enumerate() {
            num[k + 2] += a;
        }
        for (k, &a) in d1.coeffs.iter().enumerate() {
            num[k + 1] += (2.0 * lambda + 1.0) * a;
        }
        for (k, &a) in self.coeffs.iter().enumerate() {
            if k % 2 == 1 {
                num[k] -= coef * a;
            }
        }
        let scale = num.iter().map(|x| x.abs()).fold(1.0, f64::max);
        if num[0].abs() > 1e-13 * scale || num[1].abs() > 1e-13 * scale {
            return Err(Error::OriginSingularity(format!(
                "δ_λ g has a 1/u term of size {:e}; g needs g'(0) = 0",
                num[1]
            )));
        }
        let mut out: Vec<f64> = num[2..].to_vec();
        while out.len() > 1 && *out.last().unwrap() == 0.0 {
            out.pop();
        }
        Ok(PolyGaussian::new(out))
    }

    /// ∂^k g(0), exact.
    pub fn derivative_at_zero(&self, k: usize) -> f64 {
        // coefficient of u^k in p(u) Σ_j (−1)^j u^{2j}/j!
        let mut acc = 0.0;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if i <= k && (k - i) % 2 == 0 {
                let j = (k - i) / 2;
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                acc += a * sign / pochhammer(1.0, j);
            }
        }
        acc * pochhammer(1.0, k)
    }
}

// ---------------------------------------------------------------------------
// Schwartz-space diagnostics

/// a_n(g)(v) = Σ_{k=0}^n Σ_{l=0}^k ∂^{2l+1}g(0)/((k−l)!(2l+1)!) v^{2k+1} e^{−v²},
/// from the supplied odd derivatives ∂^1 g(0), ∂^3 g(0), … (at least n+1).
pub fn schwartz_correction_from(odd_derivs: &[f64], n: usize) -> Result<impl Fn(f64) -> f64> {
    if odd_derivs.len() < n + 1 {
        return Err(Error::DerivativeEstimation(format!(
            "need {} odd derivatives, got {}",
            n + 1,
            odd_derivs.len()
        )));
    }
    let mut poly = vec![0.0; 2 * n + 2];
    for k in 0..=n {
        let mut s = 0.0;
        for l in 0..=k {
            s += odd_derivs[l] / (pochhammer(1.0, k - l) * pochhammer(1.0, 2 * l + 1));
        }
        poly[2 * k + 1] = s;
    }
    let pg = PolyGaussian::new(poly);
    Ok(move |v: f64| pg.eval(v))
}

/// a_n(g) with the odd derivatives of g at 0 estimated by extrapolated
/// central differences.
pub fn schwartz_correction<G: Fn(f64) -> f64>(g: &G, n: usize) -> Result<impl Fn(f64) -> f64> {
    let derivs = odd_derivatives_at_zero(&|u| c(g(u)), n + 1)?;
    schwartz_correction_from(&derivs.iter().map(|z| z.re).collect::<Vec<_>>(), n)
}

/// ∂^1 f(0), ∂^3 f(0), …, ∂^{2count−1} f(0).
pub fn odd_derivatives_at_zero<F: Fn(f64) -> Complex64>(
    f: &F,
    count: usize,
) -> Result<Vec<Complex64>> {
    (0..count)
        .map(|l| {
            let k = 2 * l + 1;
            let h = default_step(k);
            let a = richardson_derivative(f, 0.0, k, h);
            let b = richardson_derivative(f, 0.0, k, 0.75 * h);
            if !(a.norm().is_finite()) || (a - b).norm() > 1e-5 * (1.0 + a.norm()) {
                return Err(Error::DerivativeEstimation(format!(
                    "order {k}: estimates {a} and {b} disagree"
                )));
            }
            Ok(a)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayEstimate {
    /// |F(v)| ~ v^{−p}
    Power(f64),
    SuperPolynomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothness {
    Finite(usize),
    /// All tested orders stabilize.
    Infinite,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchwartzDiag {
    pub decay_exponent_estimate: DecayEstimate,
    /// max |residual| of the log-log line fit over the last decade
    pub fit_residual: f64,
    pub origin_smoothness_order: Smoothness,
    /// whether ∂^1, ∂^3, ∂^5 F(0) vanish (to 1e-6 relative)
    pub odd_derivative_zeros: Vec<bool>,
}

const DIAG_ORDERS: usize = 4;

/// Decay regression on [v_lo, v_hi] (at least three decades), origin
/// smoothness by stabilization of difference quotients, and odd derivatives
/// at 0.
pub fn schwartz_diagnose<F: Fn(f64) -> Complex64 + Sync>(
    f: &F,
    v_range: (f64, f64),
) -> Result<SchwartzDiag> {
    let (lo, hi) = v_range;
    if !(lo > 0.0 && hi / lo >= 999.999) {
        return Err(Error::InsufficientRange(format!(
            "[{lo}, {hi}] spans fewer than three decades"
        )));
    }
    let (decay, fit_residual) = decay_regression(f, lo, hi);
    let origin_smoothness_order = origin_smoothness(f);
    let scale = f(0.0).norm().max(f(0.5).norm()).max(1e-300);
    let odd_derivative_zeros = (0..3)
        .map(|l| {
            let k = 2 * l + 1;
            let d = richardson_derivative(f, 0.0, k, default_step(k));
            d.norm() < 1e-6 * scale.max(1.0)
        })
        .collect();
    Ok(SchwartzDiag {
        decay_exponent_estimate: decay,
        fit_residual,
        origin_smoothness_order,
        odd_derivative_zeros,
    })
}

fn decay_regression<F: Fn(f64) -> Complex64 + Sync>(
    f: &F,
    lo: f64,
    hi: f64,
) -> (DecayEstimate, f64) {
    let per_decade = 20;
    let decades = (hi / lo).log10();
    let n = (decades * per_decade as f64).round() as usize;
    let vs: Vec<f64> = (0..=n)
        .map(|i| lo * (hi / lo).powf(i as f64 / n as f64))
        .collect();
    let vals: Vec<f64> = vs.par_iter().map(|&v| f(v).norm()).collect();
    let peak = vals.iter().cloned().fold(0.0, f64::max);
    // envelope: running maximum from the right removes oscillation zeros
    let mut env = vals.clone();
    for i in (0..env.len() - 1).rev() {
        env[i] = env[i].max(env[i + 1]);
    }
    let floor = 1e-13 * peak;
    if env[n] <= floor {
        return (DecayEstimate::SuperPolynomial, 0.0);
    }
    // the exponent comes from the final decade, where pre-asymptotic terms
    // have died out; the decade before it only serves the steepening test
    let start = n - 2 * per_decade;
    let xs: Vec<f64> = vs[start..].iter().map(|v| v.ln()).collect();
    let ys: Vec<f64> = env[start..].iter().map(|v| v.ln()).collect();
    let mid = per_decade;
    let (s1, _) = line_fit(&xs[..=mid], &ys[..=mid]);
    let (slope, icpt) = line_fit(&xs[mid..], &ys[mid..]);
    let resid = xs[mid..]
        .iter()
        .zip(&ys[mid..])
        .map(|(x, y)| (y - slope * x - icpt).abs())
        .fold(0.0, f64::max);
    if slope < 1.5 * s1 - 1.0 {
        return (DecayEstimate::SuperPolynomial, resid);
    }
    (DecayEstimate::Power(-slope), resid)
}

fn line_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Largest k ≤ DIAG_ORDERS such that the central difference quotients of all
/// orders ≤ k settle as the step shrinks.
fn origin_smoothness<F: Fn(f64) -> Complex64>(f: &F) -> Smoothness {
    let steps = [0.2, 0.1, 0.05, 0.025];
    for k in 1..=DIAG_ORDERS {
        let d: Vec<Complex64> = steps
            .iter()
            .map(|&h| central_derivative(f, 0.0, k, (k + 1) / 2, h))
            .collect();
        let c1 = (d[1] - d[0]).norm();
        let c2 = (d[2] - d[1]).norm();
        let c3 = (d[3] - d[2]).norm();
        let tiny = 1e-7 * (1.0 + d[3].norm());
        // second-order stencils converge like h²: each change about 1/4 of the last
        let settles = c3 <= tiny || (c3 <= 0.6 * c2 && c2 <= 0.6 * c1);
        if !settles {
            return Smoothness::Finite(k - 1);
        }
    }
    Smoothness::Infinite
}

/// Even/odd split of a transform in the variable s = |y|^{a/2}:
/// F(y) = F_1(s) + y F_2(s).
#[derive(Debug, Clone, PartialEq)]
pub struct SplitStructure {
    pub f1: SchwartzDiag,
    pub f2: SchwartzDiag,
    /// F_1 and F_2 are both smooth at 0 and rapidly decreasing in s
    pub holds: bool,
}

/// Checks that gft_1d(f) has the form F_1(|y|^{a/2}) + y F_2(|y|^{a/2}) with
/// even Schwartz F_1, F_2, by diagnosing both components over s_range.
pub fn split_structure<F: Fn(f64) -> Complex64 + Sync>(
    params: &Params,
    f: F,
    s_range: (f64, f64),
) -> Result<SplitStructure> {
    let a = params.a;
    // the odd part of f carries the y F_2 term alone; dividing its transform
    // by y keeps relative accuracy near y = 0
    let fe = |x: f64| 0.5 * (f(x) + f(-x));
    let fo = |x: f64| 0.5 * (f(x) - f(-x));
    let comp = |s: f64, which: usize| -> Complex64 {
        let y = s.abs().powf(2.0 / a).max(1e-200);
        let val = if which == 1 {
            gft_1d(params, fe, y)
        } else {
            gft_1d(params, fo, y).map(|w| w / y)
        };
        val.unwrap_or(c(f64::NAN))
    };
    let f1 = schwartz_diagnose(&|s: f64| comp(s, 1), s_range)?;
    let f2 = schwartz_diagnose(&|s: f64| comp(s, 2), s_range)?;
    let good = |d: &SchwartzDiag| {
        d.decay_exponent_estimate == DecayEstimate::SuperPolynomial
            && d.origin_smoothness_order == Smoothness::Infinite
    };
    let holds = good(&f1) && good(&f2);
    Ok(SplitStructure { f1, f2, holds })
}
