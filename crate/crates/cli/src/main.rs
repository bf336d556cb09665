mod commands;
mod config;
mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use commands::Cmd;
use config::{read_config_file, ConfigError, Settings};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "kappa-fourier",
    version,
    about = "Kernels, transforms and verification suites for the (kappa, a)-generalized Fourier transform"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Evaluate B_{κ,a}(x,y), e_{κ,a}(v) or e_{2r+1}(v,λ)
    EvalKernel,
    /// Evaluate Ψ_a^d(w,τ) by its Bessel series
    EvalPsi,
    /// Apply F_{κ,a} (one dimension) or F_r^λ to a built-in test function
    Transform,
    /// Boundedness verdict for ‖B_{κ,a}‖_∞ with its citation
    Classify,
    /// Sup-norm search over an (a, κ) grid
    Sweep,
    /// Sign analysis of q_n(·,λ), or the smoothed density of Ψ with --eta
    Posdef,
    /// Run verification suites
    Verify,
}

#[derive(Clone, Copy, ValueEnum)]
enum Out {
    Csv,
    Json,
}

#[derive(Args)]
struct Flags {
    #[arg(long, global = true)]
    d: Option<u32>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(
        long,
        global = true,
        allow_hyphen_values = true,
        conflicts_with = "lambda"
    )]
    kappa: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    lambda: Option<f64>,
    #[arg(long, global = true)]
    r: Option<u32>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    v: Option<f64>,
    #[arg(long, global = true)]
    v_max: Option<f64>,
    #[arg(long, global = true)]
    step: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    tau: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    eta: Option<f64>,
    #[arg(long = "R", global = true)]
    big_r: Option<u32>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    x: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    y: Option<f64>,
    #[arg(long, global = true)]
    w: Option<f64>,
    /// comma-separated a values
    #[arg(long, global = true)]
    a_list: Option<String>,
    /// lo:hi:step
    #[arg(long, global = true)]
    kappa_range: Option<String>,
    /// built-in test function for `transform`
    #[arg(long, global = true)]
    func: Option<String>,
    #[arg(long, global = true, value_enum)]
    out: Option<Out>,
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true)]
    suite: Option<String>,
    /// key=value file; flags override its values
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

impl Flags {
    fn to_map(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                m.insert(k.to_string(), v);
            }
        };
        let num = |x: Option<f64>| x.map(|x| format!("{x:?}"));
        let int = |x: Option<u32>| x.map(|x| x.to_string());
        put("d", int(self.d));
        put("a", num(self.a));
        put("kappa", num(self.kappa));
        put("lambda", num(self.lambda));
        put("r", int(self.r));
        put("v", num(self.v));
        put("v_max", num(self.v_max));
        put("step", num(self.step));
        put("tau", num(self.tau));
        put("eta", num(self.eta));
        put("R", int(self.big_r));
        put("tol", num(self.tol));
        put("x", num(self.x));
        put("y", num(self.y));
        put("w", num(self.w));
        put("a_list", self.a_list.clone());
        put("kappa_range", self.kappa_range.clone());
        put("func", self.func.clone());
        put(
            "out",
            self.out.map(|o| match o {
                Out::Csv => "csv".to_string(),
                Out::Json => "json".to_string(),
            }),
        );
        put(
            "output",
            self.output.as_ref().map(|p| p.display().to_string()),
        );
        put("suite", self.suite.clone());
        m
    }
}

fn cmd_of(c: Command) -> Cmd {
    match c {
        Command::EvalKernel => Cmd::EvalKernel,
        Command::EvalPsi => Cmd::EvalPsi,
        Command::Transform => Cmd::Transform,
        Command::Classify => Cmd::Classify,
        Command::Sweep => Cmd::Sweep,
        Command::Posdef => Cmd::Posdef,
        Command::Verify => Cmd::Verify,
    }
}

fn run(cli: Cli) -> Result<i32, ConfigError> {
    let start = Instant::now();
    let cmd = cmd_of(cli.command);
    let file = match &cli.flags.config {
        Some(p) => read_config_file(p)?,
        None => BTreeMap::new(),
    };
    let settings = Settings::merge(&cmd.defaults(), &file, &cli.flags.to_map())?;
    let json = match settings.str("out") {
        Some("csv") | None => false,
        Some("json") => true,
        Some(other) => {
            return Err(ConfigError(format!(
                "out = {other:?}: expected csv or json"
            )))
        }
    };
    if let Some(t) = settings.f64("tol")? {
        if t <= 0.0 {
            return Err(ConfigError("tol must be positive".into()));
        }
    }
    let report = commands::run(cmd, &settings)?;
    let mut sink: Box<dyn Write> = match settings.str("output") {
        Some(path) => Box::new(
            std::fs::File::create(path)
                .map_err(|e| ConfigError(format!("cannot create {path}: {e}")))?,
        ),
        None => Box::new(std::io::stdout().lock()),
    };
    let io = |e: std::io::Error| ConfigError(format!("write failed: {e}"));
    if json {
        let v = report.to_json(start.elapsed());
        serde_json::to_writer_pretty(&mut sink, &v)
            .map_err(|e| ConfigError(format!("write failed: {e}")))?;
        sink.write_all(b"\n").map_err(io)?;
    } else {
        // CSV stays a pure table; the effective config goes to stderr
        let echo: Vec<String> = settings
            .echo()
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        eprintln!("# {} {}", cmd.name(), echo.join(" "));
        report
            .write_csv(&mut sink)
            .map_err(|e| ConfigError(format!("write failed: {e}")))?;
    }
    sink.flush().map_err(io)?;
    if let Some(s) = &report.suites {
        eprintln!("# suites passed {} failed {}", s.passed, s.failed);
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
