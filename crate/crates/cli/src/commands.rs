use crate::config::{ConfigError, Settings};
use crate::report::{Cell, Report, RowError, SuiteCount};
use kappa_fourier::genpoly::{q_even, q_odd, sign_analysis, SignVerdict};
use kappa_fourier::kernels::{
    classify_boundedness, integer_ratio, kernel_b, kernel_e_general, kernel_e_odd, psi_series,
    psi_type, supnorm_search, Params, PsiConfig, SmoothedDensity,
};
use kappa_fourier::suites::{
    run_all, run_suite, SuiteReport, DENSITY_HALF_PERIOD, DENSITY_SIGMA, SUITE_NAMES,
};
use kappa_fourier::transforms::{f_r_lambda_tol, gft_1d_tol, Direction, DEFAULT_TOL};
use kappa_fourier::{Complex64, Error};
use serde_json::json;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmd {
    EvalKernel,
    EvalPsi,
    Transform,
    Classify,
    Sweep,
    Posdef,
    Verify,
}

impl Cmd {
    pub fn name(self) -> &'static str {
        match self {
            Cmd::EvalKernel => "eval-kernel",
            Cmd::EvalPsi => "eval-psi",
            Cmd::Transform => "transform",
            Cmd::Classify => "classify",
            Cmd::Sweep => "sweep",
            Cmd::Posdef => "posdef",
            Cmd::Verify => "verify",
        }
    }

    pub fn defaults(self) -> Vec<(&'static str, &'static str)> {
        let mut d = vec![("out", "csv"), ("d", "1")];
        match self {
            Cmd::EvalKernel => d.extend([("step", "0.1"), ("y", "1"), ("tau", "1")]),
            Cmd::EvalPsi => d.extend([("step", "0.1"), ("tau", "1"), ("tol", "1e-13")]),
            Cmd::Transform => d.extend([("step", "0.1"), ("func", "gauss"), ("r", "0")]),
            Cmd::Classify => {}
            Cmd::Sweep => d.extend([("v_max", "50"), ("step", "0.01")]),
            Cmd::Posdef => d.extend([("tau", "1")]),
            Cmd::Verify => d.extend([("suite", "all")]),
        }
        d
    }
}

/// Row-level failure: the error text and whether it is an input or a
/// numerical problem.
fn row_error(report: &mut Report, e: &Error) -> Cell {
    report.row_errors.push(if e.is_numerical() {
        RowError::Numerical
    } else {
        RowError::Input
    });
    Cell::Str(e.to_string())
}

fn value_cells(report: &mut Report, z: Result<Complex64, Error>) -> [Cell; 4] {
    match z {
        Ok(z) => [z.re.into(), z.im.into(), z.norm().into(), Cell::Empty],
        Err(e) => {
            let msg = row_error(report, &e);
            [Cell::Empty, Cell::Empty, Cell::Empty, msg]
        }
    }
}

/// The single value under `key`, or the grid 0, step, …, v_max.
fn points(s: &Settings, key: &str) -> Result<Vec<f64>, ConfigError> {
    if let Some(v) = s.f64(key)? {
        return Ok(vec![v]);
    }
    let Some(v_max) = s.positive("v_max")? else {
        return Err(ConfigError(format!("need --{key} or --v-max")));
    };
    let step = s.positive("step")?.unwrap_or(0.1);
    let n = (v_max / step + 1e-9).floor() as usize;
    if n > 1_000_000 {
        return Err(ConfigError("grid has more than a million points".into()));
    }
    Ok((0..=n).map(|i| i as f64 * step).collect())
}

fn params(s: &Settings) -> Result<Result<Params, Error>, ConfigError> {
    let d = s.u32("d")?.unwrap_or(1);
    let a = s.req_f64("a")?;
    let kappa = s.req_f64("kappa")?;
    Ok(Params::new(d, a, kappa))
}

fn r_usize(s: &Settings) -> Result<usize, ConfigError> {
    Ok(s.u32("r")?.unwrap_or(0) as usize)
}

pub fn run(cmd: Cmd, s: &Settings) -> Result<Report, ConfigError> {
    match cmd {
        Cmd::EvalKernel => eval_kernel(s),
        Cmd::EvalPsi => eval_psi(s),
        Cmd::Transform => transform(s),
        Cmd::Classify => classify(s),
        Cmd::Sweep => sweep(s),
        Cmd::Posdef => posdef(s),
        Cmd::Verify => verify(s),
    }
}

fn invalid(e: Error) -> ConfigError {
    ConfigError(e.to_string())
}

fn eval_kernel(s: &Settings) -> Result<Report, ConfigError> {
    let echo = s.echo().clone();
    const VALUES: [&str; 4] = ["re", "im", "modulus", "error"];
    if let Some(lambda) = s.f64("lambda")? {
        // e_{2r+1}(v, λ)
        let r = s.u32("r")?.unwrap_or(0);
        let mut rep = Report::new(
            "eval-kernel",
            echo,
            [&["r", "lambda", "v"][..], &VALUES].concat(),
        );
        for v in points(s, "v")? {
            let vals = value_cells(&mut rep, kernel_e_odd(r, lambda, v));
            rep.push(
                [
                    vec![Cell::Int(r as i64), lambda.into(), v.into()],
                    vals.to_vec(),
                ]
                .concat(),
            );
        }
        return Ok(rep);
    }
    let p = params(s)?.map_err(invalid)?;
    if p.d >= 2 {
        // radial kernel through Ψ with η = λ_κ
        let tau = s.f64("tau")?.unwrap_or(1.0);
        let mut cfg = PsiConfig::new(p.a, p.lambda_k).map_err(invalid)?;
        if let Some(t) = s.positive("tol")? {
            cfg.tol = t;
        }
        let mut rep = Report::new(
            "eval-kernel",
            echo,
            [&["d", "a", "kappa", "w", "tau"][..], &VALUES].concat(),
        );
        let key = if s.has("w") { "w" } else { "v" };
        for w in points(s, key)? {
            let vals = value_cells(&mut rep, psi_series(&cfg, w, tau));
            rep.push(
                [
                    vec![
                        Cell::Int(p.d as i64),
                        p.a.into(),
                        p.kappa.into(),
                        w.into(),
                        tau.into(),
                    ],
                    vals.to_vec(),
                ]
                .concat(),
            );
        }
        return Ok(rep);
    }
    if let Some(x) = s.f64("x")? {
        // B_{κ,a}(x, y) depends on x·y in one dimension
        let y = s.f64("y")?.unwrap_or(1.0);
        let mut rep = Report::new(
            "eval-kernel",
            echo,
            [&["d", "a", "kappa", "x", "y"][..], &VALUES].concat(),
        );
        let vals = value_cells(&mut rep, kernel_b(&p, x * y));
        rep.push(
            [
                vec![Cell::Int(1), p.a.into(), p.kappa.into(), x.into(), y.into()],
                vals.to_vec(),
            ]
            .concat(),
        );
        return Ok(rep);
    }
    let mut rep = Report::new(
        "eval-kernel",
        echo,
        [&["d", "a", "kappa", "v"][..], &VALUES].concat(),
    );
    for v in points(s, "v")? {
        let vals = value_cells(&mut rep, kernel_e_general(p.kappa, p.a, v));
        rep.push(
            [
                vec![Cell::Int(1), p.a.into(), p.kappa.into(), v.into()],
                vals.to_vec(),
            ]
            .concat(),
        );
    }
    Ok(rep)
}

fn psi_config(s: &Settings) -> Result<(PsiConfig, Option<u32>), ConfigError> {
    let eta = s.req_f64("eta")?;
    let cfg = match (s.u32("R")?, s.positive("a")?) {
        (Some(_), Some(_)) => return Err(ConfigError("give either R or a, not both".into())),
        (Some(r), None) => PsiConfig::from_r(r, eta),
        (None, Some(a)) => PsiConfig::new(a, eta),
        (None, None) => return Err(ConfigError("missing required value: R or a".into())),
    };
    let mut cfg = cfg.map_err(invalid)?;
    if let Some(t) = s.positive("tol")? {
        cfg.tol = t;
    }
    let r = cfg.r();
    Ok((cfg, r))
}

fn eval_psi(s: &Settings) -> Result<Report, ConfigError> {
    let (cfg, r) = psi_config(s)?;
    let tau = s.f64("tau")?.unwrap_or(1.0);
    let cols = vec!["a", "R", "eta", "tau", "w", "re", "im", "modulus", "error"];
    let mut rep = Report::new("eval-psi", s.echo().clone(), cols);
    let key = if s.has("w") { "w" } else { "v" };
    for w in points(s, key)? {
        let vals = value_cells(&mut rep, psi_series(&cfg, w, tau));
        let rc = r.map_or(Cell::Empty, |r| Cell::Int(r as i64));
        rep.push(
            [
                vec![cfg.a.into(), rc, cfg.eta.into(), tau.into(), w.into()],
                vals.to_vec(),
            ]
            .concat(),
        );
    }
    Ok(rep)
}

/// Test inputs for the transform command.
fn test_function(name: &str) -> Result<fn(f64) -> Complex64, ConfigError> {
    fn gauss(x: f64) -> Complex64 {
        Complex64::new((-x * x).exp(), 0.0)
    }
    fn odd_gauss(x: f64) -> Complex64 {
        Complex64::new(x * (-x * x).exp(), 0.0)
    }
    fn mixed_gauss(x: f64) -> Complex64 {
        Complex64::new((1.0 + x) * (-x * x).exp(), 0.0)
    }
    fn cubic_gauss(x: f64) -> Complex64 {
        Complex64::new(x * x * x * (-x * x).exp(), 0.0)
    }
    fn exp_abs(x: f64) -> Complex64 {
        Complex64::new((-x.abs()).exp(), 0.0)
    }
    Ok(match name {
        "gauss" => gauss,
        "odd-gauss" => odd_gauss,
        "mixed-gauss" => mixed_gauss,
        "cubic-gauss" => cubic_gauss,
        "exp-abs" => exp_abs,
        other => {
            return Err(ConfigError(format!(
                "unknown func {other:?} (gauss, odd-gauss, mixed-gauss, cubic-gauss, exp-abs)"
            )))
        }
    })
}

fn transform(s: &Settings) -> Result<Report, ConfigError> {
    let fname = s.str("func").unwrap_or("gauss").to_string();
    let f = test_function(&fname)?;
    let tol = s.positive("tol")?.unwrap_or(DEFAULT_TOL);
    const VALUES: [&str; 4] = ["re", "im", "modulus", "error"];
    if let Some(lambda) = s.f64("lambda")? {
        let r = r_usize(s)?;
        let cols = [&["r", "lambda", "func", "v"][..], &VALUES].concat();
        let mut rep = Report::new("transform", s.echo().clone(), cols);
        for v in points(s, "v")? {
            let vals = value_cells(
                &mut rep,
                f_r_lambda_tol(r, lambda, f, v, Direction::Forward, tol),
            );
            rep.push(
                [
                    vec![
                        Cell::Int(r as i64),
                        lambda.into(),
                        fname.as_str().into(),
                        v.into(),
                    ],
                    vals.to_vec(),
                ]
                .concat(),
            );
        }
        return Ok(rep);
    }
    let p = params(s)?.map_err(invalid)?;
    let cols = [&["d", "a", "kappa", "func", "y"][..], &VALUES].concat();
    let mut rep = Report::new("transform", s.echo().clone(), cols);
    let key = if s.has("y") { "y" } else { "v" };
    for y in points(s, key)? {
        let vals = value_cells(&mut rep, gft_1d_tol(&p, f, y, tol));
        rep.push(
            [
                vec![
                    Cell::Int(p.d as i64),
                    p.a.into(),
                    p.kappa.into(),
                    fname.as_str().into(),
                    y.into(),
                ],
                vals.to_vec(),
            ]
            .concat(),
        );
    }
    Ok(rep)
}

const VERDICT_COLS: [&str; 8] = [
    "verdict",
    "citation",
    "witness",
    "witness_tau",
    "witness_modulus",
    "open_lo",
    "open_hi",
    "note",
];

fn verdict_cells(p: &Result<Params, Error>, rep: &mut Report) -> (Vec<Cell>, Cell) {
    match p
        .as_ref()
        .map_err(Clone::clone)
        .and_then(classify_boundedness)
    {
        Ok(v) => (
            vec![
                v.tag.as_str().into(),
                v.citation.into(),
                Cell::opt(v.witness),
                Cell::opt(v.witness_tau),
                Cell::opt(v.witness_modulus),
                Cell::opt(v.open_interval.map(|i| i.0)),
                Cell::opt(v.open_interval.map(|i| i.1)),
                v.note.into(),
            ],
            Cell::Empty,
        ),
        Err(e) => (vec![Cell::Empty; VERDICT_COLS.len()], row_error(rep, &e)),
    }
}

fn classify(s: &Settings) -> Result<Report, ConfigError> {
    let d = s.u32("d")?.unwrap_or(1);
    let a = s.req_f64("a")?;
    let kappa = s.req_f64("kappa")?;
    let cols = [&["d", "a", "kappa"][..], &VERDICT_COLS, &["error"]].concat();
    let mut rep = Report::new("classify", s.echo().clone(), cols);
    let p = Params::new(d, a, kappa);
    let (cells, err) = verdict_cells(&p, &mut rep);
    rep.push(
        [
            vec![Cell::Int(d as i64), a.into(), kappa.into()],
            cells,
            vec![err],
        ]
        .concat(),
    );
    Ok(rep)
}

fn sweep(s: &Settings) -> Result<Report, ConfigError> {
    let d = s.u32("d")?.unwrap_or(1);
    let a_list = s
        .f64_list("a_list")?
        .ok_or_else(|| ConfigError("missing required value: a_list".into()))?;
    let kappas = s
        .range("kappa_range")?
        .ok_or_else(|| ConfigError("missing required value: kappa_range".into()))?;
    let v_max = s.positive("v_max")?.unwrap_or(50.0);
    let step = s.positive("step")?.unwrap_or(0.01);
    let cols = [
        &["d", "a", "kappa", "sup", "argmax", "exceeds_one"][..],
        &VERDICT_COLS[..2],
        &["error"],
    ]
    .concat();
    let mut rep = Report::new("sweep", s.echo().clone(), cols);
    for &a in &a_list {
        for &kappa in &kappas {
            let p = Params::new(d, a, kappa);
            let sup = match &p {
                Ok(p) if p.d == 1 => supnorm_search(p, v_max, step).map(Some),
                Ok(_) => Ok(None),
                Err(e) => Err(e.clone()),
            };
            let (sup_cells, err) = match sup {
                Ok(Some((m, v))) => (
                    vec![m.into(), v.into(), Cell::Bool(m > 1.0 + 1e-10)],
                    Cell::Empty,
                ),
                Ok(None) => (vec![Cell::Empty; 3], Cell::Empty),
                Err(e) => (vec![Cell::Empty; 3], row_error(&mut rep, &e)),
            };
            let (verdict, verr) = if err == Cell::Empty {
                let (cells, e) = verdict_cells(&p, &mut rep);
                (cells[..2].to_vec(), e)
            } else {
                (vec![Cell::Empty; 2], err)
            };
            rep.push(
                [
                    vec![Cell::Int(d as i64), a.into(), kappa.into()],
                    sup_cells,
                    verdict,
                    vec![verr],
                ]
                .concat(),
            );
        }
    }
    Ok(rep)
}

fn posdef(s: &Settings) -> Result<Report, ConfigError> {
    if s.has("eta") {
        return posdef_density(s);
    }
    let lambda = s.f64("lambda")?.ok_or_else(|| {
        ConfigError("posdef needs --lambda (polynomials) or --eta (Psi density)".into())
    })?;
    let rs: Vec<usize> = match s.u32("r")? {
        Some(r) => vec![r as usize],
        None => (1..=5).collect(),
    };
    let cols = vec![
        "r",
        "lambda",
        "poly",
        "min_value",
        "min_location",
        "verdict",
        "negative_intervals",
        "error",
    ];
    let mut rep = Report::new("posdef", s.echo().clone(), cols);
    for r in rs {
        let mut polys = vec![("q_odd", q_odd(r, lambda))];
        if r >= 1 {
            polys.push(("q_even+", q_even(r, lambda, 1)));
            polys.push(("q_even-", q_even(r, lambda, -1)));
        }
        for (name, p) in polys {
            let head = vec![Cell::Int(r as i64), lambda.into(), name.into()];
            let tail = match p {
                Ok(p) => {
                    let sr = sign_analysis(&p);
                    let verdict = match sr.verdict {
                        SignVerdict::Nonnegative => "Nonnegative",
                        SignVerdict::ChangesSign => "ChangesSign",
                    };
                    let iv: Vec<String> = sr
                        .negative_intervals
                        .iter()
                        .map(|(lo, hi)| format!("{lo:.16e}:{hi:.16e}"))
                        .collect();
                    vec![
                        sr.min_value.into(),
                        sr.min_location.into(),
                        verdict.into(),
                        iv.join(";").into(),
                        Cell::Empty,
                    ]
                }
                Err(e) => {
                    let msg = row_error(&mut rep, &e);
                    vec![Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty, msg]
                }
            };
            rep.push([head, tail].concat());
        }
    }
    Ok(rep)
}

/// Gaussian-smoothed inverse transform of w ↦ Ψ(w, τ): its minimum and its
/// largest value outside the support radius θ(a, τ) plus a smoothing margin.
fn posdef_density(s: &Settings) -> Result<Report, ConfigError> {
    let (cfg, r) = psi_config(s)?;
    let Some(r) = r.or_else(|| integer_ratio(cfg.a)) else {
        return Err(ConfigError(
            "the density check needs 2/a to be an integer".into(),
        ));
    };
    let tau = s.f64("tau")?.unwrap_or(1.0);
    let cols = vec![
        "R",
        "eta",
        "tau",
        "sigma",
        "theta",
        "min_density",
        "peak",
        "outside_rel",
        "nonnegative",
        "supported",
        "error",
    ];
    let mut rep = Report::new("posdef", s.echo().clone(), cols);
    let theta = psi_type(r, tau);
    let head = vec![
        Cell::Int(r as i64),
        cfg.eta.into(),
        tau.into(),
        DENSITY_SIGMA.into(),
        theta.into(),
    ];
    let tail = match SmoothedDensity::from_fn(
        |w| psi_series(&cfg, w, tau),
        DENSITY_SIGMA,
        DENSITY_HALF_PERIOD,
    ) {
        Ok(dens) => {
            let n = 1500;
            let ts: Vec<f64> = (0..=n)
                .map(|i| -DENSITY_HALF_PERIOD + 2.0 * DENSITY_HALF_PERIOD * i as f64 / n as f64)
                .collect();
            let vals: Vec<f64> = ts.iter().map(|&t| dens.eval(t)).collect();
            let min = vals.iter().cloned().fold(f64::INFINITY, f64::min);
            let peak = vals.iter().cloned().fold(0.0, f64::max);
            let outside = ts
                .iter()
                .zip(&vals)
                .filter(|(t, _)| t.abs() > theta + 8.0 * DENSITY_SIGMA)
                .map(|(_, v)| v.abs())
                .fold(0.0, f64::max)
                / peak;
            vec![
                min.into(),
                peak.into(),
                outside.into(),
                Cell::Bool(min >= -1e-7),
                Cell::Bool(outside <= 1e-7),
                Cell::Empty,
            ]
        }
        Err(e) => {
            let msg = row_error(&mut rep, &e);
            [vec![Cell::Empty; 5], vec![msg]].concat()
        }
    };
    rep.push([head, tail].concat());
    Ok(rep)
}

fn verify(s: &Settings) -> Result<Report, ConfigError> {
    let name = s.str("suite").unwrap_or("all");
    let reports: Vec<SuiteReport> = if name == "all" {
        run_all()
    } else {
        vec![run_suite(name).ok_or_else(|| {
            ConfigError(format!(
                "unknown suite {name:?}; known: all, {}",
                SUITE_NAMES.join(", ")
            ))
        })?]
    };
    let cols = vec![
        "suite", "row", "status", "inputs", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual",
        "tol", "checks", "failures", "errors",
    ];
    let mut rep = Report::new("verify", s.echo().clone(), cols);
    let mut count = SuiteCount::default();
    let mut detail = Vec::new();
    for r in &reports {
        if r.passed() {
            count.passed += 1;
        } else {
            count.failed += 1;
        }
        let counts = [
            Cell::Int(r.checks as i64),
            Cell::Int(r.failures as i64),
            Cell::Int(r.errors.len() as i64),
        ];
        let status = if r.passed() { "pass" } else { "fail" };
        let row_cells = |row: Option<&kappa_fourier::suites::CheckRow>| -> Vec<Cell> {
            match row {
                Some(w) => vec![
                    w.inputs.clone().into(),
                    w.lhs.re.into(),
                    w.lhs.im.into(),
                    w.rhs.re.into(),
                    w.rhs.im.into(),
                    w.residual.into(),
                    w.tol.into(),
                ],
                None => vec![Cell::Empty; 7],
            }
        };
        let mut summary = vec![r.name.into(), "summary".into(), status.into()];
        summary.extend(row_cells(r.worst.as_ref()));
        summary.extend(counts.clone());
        rep.push(summary);
        for f in &r.failed_rows {
            let mut row = vec![r.name.into(), "failure".into(), "fail".into()];
            row.extend(row_cells(Some(f)));
            row.extend(vec![Cell::Empty; 3]);
            rep.push(row);
        }
        for e in &r.errors {
            let mut row = vec![
                r.name.into(),
                "error".into(),
                "fail".into(),
                e.clone().into(),
            ];
            row.extend(vec![Cell::Empty; 9]);
            rep.push(row);
        }
        detail.push(json!({
            "suite": r.name,
            "passed": r.passed(),
            "checks": r.checks,
            "failures": r.failures,
            "worst_residual": r.worst_residual(),
            "notes": r.notes,
            "elapsed_s": r.elapsed.as_secs_f64(),
        }));
    }
    rep.suites = Some(count);
    rep.detail = Some(json!({ "suites": detail }));
    Ok(rep)
}
