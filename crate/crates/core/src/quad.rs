//! Quadrature rules: Gauss–Jacobi (Golub–Welsch with Newton polishing),
//! Gauss–Legendre, and a composite half-line rule for integrands of the
//! form F(u) u^p on [0, ∞).

use crate::error::{Error, Result};
use crate::specfun::ln_gamma;
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use std::sync::OnceLock;

/// Weight function a rule integrates against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RuleKind {
    /// (1−t)^alpha (1+t)^beta on [−1, 1]; alpha = beta gives (1−t²)^alpha.
    GaussJacobi { alpha: f64, beta: f64 },
    /// Unit weight on [−1, 1].
    GaussLegendre,
    /// u^power on [0, u_max], composite panels.
    HalfLineComposite { power: f64, u_max: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadRule {
    pub kind: RuleKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub target_tolerance: f64,
}

impl QuadRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Σ weights.
    pub fn mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    pub fn integrate_complex<F: Fn(f64) -> Complex64>(&self, f: F) -> Complex64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| f(x) * w)
            .sum()
    }

    /// Symmetric Jacobi exponent, if this is a (1−t²)^α rule.
    pub fn symmetric_alpha(&self) -> Option<f64> {
        match self.kind {
            RuleKind::GaussJacobi { alpha, beta } if alpha == beta => Some(alpha),
            RuleKind::GaussLegendre => Some(0.0),
            _ => None,
        }
    }
}

/// ∫_{−1}^{1} (1−t)^α (1+t)^β dt.
pub fn jacobi_mass(alpha: f64, beta: f64) -> f64 {
    ((alpha + beta + 1.0) * std::f64::consts::LN_2 + ln_gamma(alpha + 1.0) + ln_gamma(beta + 1.0)
        - ln_gamma(alpha + beta + 2.0))
    .exp()
}

/// Recurrence coefficients (diagonal a_k, squared off-diagonal b_k) of the
/// monic Jacobi polynomials; b[0] is unused.
fn jacobi_recurrence(alpha: f64, beta: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let ab = alpha + beta;
    let mut a = Vec::with_capacity(n);
    let mut b = vec![0.0; n + 1];
    for k in 0..n {
        let kf = k as f64;
        a.push(if k == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            (beta * beta - alpha * alpha) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
        });
    }
    for (k, bk) in b.iter_mut().enumerate().skip(1) {
        let kf = k as f64;
        *bk = if k == 1 {
            4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))
        } else {
            let s = 2.0 * kf + ab;
            4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0))
        };
    }
    (a, b)
}

/// Orthonormal polynomial values p_0..p_{n} and derivative of p_n at x.
fn orthonormal_eval(a: &[f64], sb: &[f64], p0: f64, n: usize, x: f64) -> (f64, f64, f64) {
    let (mut p_prev, mut p) = (0.0, p0);
    let (mut d_prev, mut d) = (0.0, 0.0);
    let mut sumsq = p * p;
    for k in 0..n {
        let p_next = ((x - a[k]) * p - sb[k] * p_prev) / sb[k + 1];
        let d_next = ((x - a[k]) * d + p - sb[k] * d_prev) / sb[k + 1];
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
        if k + 1 < n {
            sumsq += p * p;
        }
    }
    (p, d, sumsq)
}

/// n-point Gauss–Jacobi rule for (1−t)^α(1+t)^β on [−1, 1].
pub fn gauss_jacobi_ab(alpha: f64, beta: f64, n: usize) -> Result<QuadRule> {
    if !(alpha > -1.0) || !(beta > -1.0) {
        return Err(Error::Domain(format!(
            "Jacobi exponents ({alpha}, {beta}) must exceed -1"
        )));
    }
    if n == 0 {
        return Err(Error::Domain("rule needs at least one node".into()));
    }
    let mass = jacobi_mass(alpha, beta);
    let (a, b) = jacobi_recurrence(alpha, beta, n);
    let sb: Vec<f64> = b.iter().map(|v| v.sqrt()).collect();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        m[(k, k)] = a[k];
        if k + 1 < n {
            m[(k, k + 1)] = sb[k + 1];
            m[(k + 1, k)] = sb[k + 1];
        }
    }
    let eig = SymmetricEigen::new(m);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| (eig.eigenvalues[i], mass * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let p0 = 1.0 / mass.sqrt();
    for pair in pairs.iter_mut() {
        let mut x = pair.0;
        for _ in 0..3 {
            let (p, d, _) = orthonormal_eval(&a, &sb, p0, n, x);
            if d == 0.0 || !d.is_finite() {
                break;
            }
            let dx = p / d;
            let nx = x - dx;
            if !(nx > -1.0 && nx < 1.0) || dx.abs() > 1e-6 {
                break;
            }
            x = nx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, _, sumsq) = orthonormal_eval(&a, &sb, p0, n, x);
        let w = 1.0 / sumsq;
        pair.0 = x;
        if w.is_finite() && w > 0.0 {
            pair.1 = w;
        }
    }
    Ok(QuadRule {
        kind: if alpha == 0.0 && beta == 0.0 {
            RuleKind::GaussLegendre
        } else {
            RuleKind::GaussJacobi { alpha, beta }
        },
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
        target_tolerance: 1e-12,
    })
}

/// n-point rule for the symmetric weight (1−t²)^α on [−1, 1].
pub fn gauss_jacobi(alpha: f64, n: usize) -> Result<QuadRule> {
    let mut rule = gauss_jacobi_ab(alpha, alpha, n)?;
    // enforce exact symmetry of nodes and weights
    let len = rule.len();
    for i in 0..len / 2 {
        let j = len - 1 - i;
        let x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
        let w = 0.5 * (rule.weights[i] + rule.weights[j]);
        rule.nodes[i] = -x;
        rule.nodes[j] = x;
        rule.weights[i] = w;
        rule.weights[j] = w;
    }
    if len % 2 == 1 {
        rule.nodes[len / 2] = 0.0;
    }
    Ok(rule)
}

/// ∫_{−1}^{1} (1−t²)^α dt = √π Γ(α+1)/Γ(α+3/2).
pub fn symmetric_jacobi_mass(alpha: f64) -> f64 {
    (0.5 * std::f64::consts::PI.ln() + ln_gamma(alpha + 1.0) - ln_gamma(alpha + 1.5)).exp()
}

pub fn gauss_legendre(n: usize) -> Result<QuadRule> {
    gauss_jacobi(0.0, n)
}

const PANEL_POINTS: usize = 16;

fn panel_rule() -> &'static QuadRule {
    static RULE: OnceLock<QuadRule> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(PANEL_POINTS).expect("Legendre rule"))
}

/// Composite rule for ∫_0^{u_max} F(u) u^p du: a Gauss–Jacobi panel carrying
/// the u^p factor on [0, width] followed by Gauss–Legendre panels of at most
/// `width`. The returned weights include u^p.
pub fn half_line_rule(power: f64, u_max: f64, width: f64) -> Result<QuadRule> {
    if !(power > -1.0) {
        return Err(Error::Domain(format!("power {power} must exceed -1")));
    }
    if !(u_max > 0.0 && width > 0.0) {
        return Err(Error::Domain("u_max and width must be positive".into()));
    }
    let first = width.min(u_max);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    if power == 0.0 {
        push_panel(&mut nodes, &mut weights, 0.0, first);
    } else {
        let gj = gauss_jacobi_ab(0.0, power, PANEL_POINTS)?;
        let half = 0.5 * first;
        let scale = half.powf(power + 1.0);
        for (&s, &w) in gj.nodes.iter().zip(&gj.weights) {
            nodes.push(half * (1.0 + s));
            weights.push(w * scale);
        }
    }
    let rest = u_max - first;
    if rest > 0.0 {
        let count = (rest / width).ceil().max(1.0) as usize;
        let h = rest / count as f64;
        let start = nodes.len();
        for k in 0..count {
            push_panel(
                &mut nodes,
                &mut weights,
                first + k as f64 * h,
                first + (k + 1) as f64 * h,
            );
        }
        if power != 0.0 {
            for i in start..nodes.len() {
                weights[i] *= nodes[i].powf(power);
            }
        }
    }
    Ok(QuadRule {
        kind: RuleKind::HalfLineComposite { power, u_max },
        nodes,
        weights,
        target_tolerance: 0.0,
    })
}

fn push_panel(nodes: &mut Vec<f64>, weights: &mut Vec<f64>, lo: f64, hi: f64) {
    let gl = panel_rule();
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    for (&s, &w) in gl.nodes.iter().zip(&gl.weights) {
        nodes.push(mid + half * s);
        weights.push(w * half);
    }
}

/// Scans dyadic shells [U, 2U] until |F(u)| u^p is negligible relative to
/// its running maximum; returns the cutoff.
pub fn find_cutoff<F: Fn(f64) -> Complex64>(f: &F, power: f64, tol: f64) -> Result<f64> {
    let amp = |u: f64| f(u).norm() * if power == 0.0 { 1.0 } else { u.powf(power) };
    let mut scale: f64 = 0.0;
    for k in 1..=32 {
        scale = scale.max(amp(k as f64 / 32.0));
    }
    let mut lo = 1.0;
    let mut quiet = 0;
    while lo <= 1e4 {
        let mut m: f64 = 0.0;
        for k in 0..=64 {
            m = m.max(amp(lo * (1.0 + k as f64 / 64.0)));
        }
        scale = scale.max(m);
        if scale == 0.0 || m * lo <= 1e-3 * tol * scale {
            quiet += 1;
            if quiet == 2 {
                return Ok(lo);
            }
        } else {
            quiet = 0;
        }
        lo *= 2.0;
    }
    Err(Error::TailBound(lo))
}

/// Adaptive integrator for ∫_0^∞ F(u) u^p du with F smooth on [0, ∞) and
/// rapidly decaying.
#[derive(Debug, Clone, Copy)]
pub struct HalfLine {
    pub power: f64,
    pub tol: f64,
    /// Largest oscillation frequency of F; panels are narrowed to resolve it.
    pub freq: f64,
    pub u_max: Option<f64>,
}

impl HalfLine {
    pub fn new(power: f64) -> Self {
        HalfLine {
            power,
            tol: 1e-10,
            freq: 0.0,
            u_max: None,
        }
    }

    pub fn tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn freq(mut self, freq: f64) -> Self {
        self.freq = freq.abs();
        self
    }

    pub fn u_max(mut self, u_max: f64) -> Self {
        self.u_max = Some(u_max);
        self
    }

    pub fn initial_width(&self, u_max: f64) -> f64 {
        let w = if self.freq > 0.0 {
            (6.0 / self.freq).min(1.0)
        } else {
            1.0
        };
        w.min(u_max / 4.0)
    }

    pub fn integrate<F: Fn(f64) -> Complex64>(&self, f: F) -> Result<Complex64> {
        let u_max = match self.u_max {
            Some(u) => u,
            None => find_cutoff(&f, self.power, self.tol)?,
        };
        let mut width = self.initial_width(u_max);
        let mut prev: Option<Complex64> = None;
        for _ in 0..8 {
            let rule = half_line_rule(self.power, u_max, width)?;
            let mut val = Complex64::new(0.0, 0.0);
            let mut l1 = 0.0;
            for (&u, &w) in rule.nodes.iter().zip(&rule.weights) {
                let term = f(u) * w;
                l1 += term.norm();
                val += term;
            }
            if let Some(p) = prev {
                if (val - p).norm() <= 0.1 * self.tol * val.norm() + 1e-14 * l1 {
                    return Ok(val);
                }
            }
            prev = Some(val);
            width /= 2.0;
        }
        Err(Error::Quadrature(format!(
            "panel doubling did not converge on [0, {u_max}]"
        )))
    }

    pub fn integrate_real<F: Fn(f64) -> f64>(&self, f: F) -> Result<f64> {
        self.integrate(|u| Complex64::new(f(u), 0.0)).map(|z| z.re)
    }
}
