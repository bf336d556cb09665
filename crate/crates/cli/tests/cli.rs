use std::collections::HashMap;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kappa-fourier"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn kappa-fourier")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

/// Header-keyed CSV rows.
fn rows(o: &Output) -> Vec<HashMap<String, String>> {
    let mut rd = csv::Reader::from_reader(&o.stdout[..]);
    let header: Vec<String> = rd.headers().unwrap().iter().map(String::from).collect();
    rd.records()
        .map(|r| {
            header
                .iter()
                .cloned()
                .zip(r.unwrap().iter().map(String::from))
                .collect()
        })
        .collect()
}

fn num(row: &HashMap<String, String>, key: &str) -> f64 {
    row[key]
        .parse()
        .unwrap_or_else(|_| panic!("{key} = {:?}", row[key]))
}

#[test]
fn dunkl_kernel_is_a_character() {
    let o = run(&["eval-kernel", "--a", "2", "--kappa", "0", "--x", "1.0"]);
    assert_eq!(code(&o), 0);
    let r = &rows(&o)[0];
    assert!((num(r, "re") - 1f64.cos()).abs() < 1e-14);
    assert!((num(r, "im") + 1f64.sin()).abs() < 1e-14);
    assert!((num(r, "modulus") - 1.0).abs() < 1e-14);
}

#[test]
fn witness_and_psi_examples() {
    let o = run(&[
        "eval-kernel",
        "--a",
        "0.6667",
        "--kappa",
        "0.3333",
        "--v",
        "6.2832",
    ]);
    assert_eq!(code(&o), 0);
    assert!(num(&rows(&o)[0], "modulus") > 1.0);
    let o = run(&[
        "eval-psi", "--R", "2", "--eta", "1", "--w", "0", "--tau", "0.5",
    ]);
    assert_eq!(code(&o), 0);
    let r = &rows(&o)[0];
    assert_eq!(num(r, "re"), 1.0);
    assert_eq!(num(r, "im"), 0.0);
}

#[test]
fn classify_examples() {
    let o = run(&["classify", "--d", "1", "--a", "1", "--kappa", "0.6"]);
    let r = &rows(&o)[0];
    assert_eq!(
        (r["verdict"].as_str(), r["citation"].as_str()),
        ("BoundedByOne", "Theorem 2")
    );
    let o = run(&["classify", "--d", "1", "--a", "3", "--kappa", "0.2"]);
    let r = &rows(&o)[0];
    assert_eq!(
        (r["verdict"].as_str(), r["citation"].as_str()),
        ("BoundedAboveOne", "Theorem 4")
    );
    assert!(num(r, "witness_modulus") > 1.0);
    // inside the band between 1/2 − a/4 and 1/2 for 2/a ∈ ℕ
    let o = run(&["classify", "--a", "1", "--kappa", "0.3"]);
    let r = &rows(&o)[0];
    assert_eq!(r["verdict"], "Open");
    assert_eq!((num(r, "open_lo"), num(r, "open_hi")), (0.25, 0.5));
    assert_eq!(code(&o), 0);
}

#[test]
fn sweep_row_count_and_regimes() {
    let o = run(&[
        "sweep",
        "--a-list",
        "2,1,0.6667",
        "--kappa-range",
        "0:1:0.1",
    ]);
    let rs = rows(&o);
    assert_eq!(rs.len(), 33);
    // tuples with 2λ_κ + a ≤ 0 are row-level input errors
    let bad: Vec<_> = rs.iter().filter(|r| !r["error"].is_empty()).collect();
    assert_eq!(bad.len(), 3);
    assert_eq!(code(&o), 2);
    assert_eq!(rs[3]["kappa"], "2.9999999999999999e-1");

    let o = run(&[
        "sweep",
        "--a-list",
        "1,0.5,0.4",
        "--kappa-range",
        "0.5:2:0.5",
        "--v-max",
        "100",
    ]);
    assert_eq!(code(&o), 0);
    for r in rows(&o) {
        assert!(num(&r, "sup") <= 1.0 + 1e-10, "{r:?}");
    }
    let o = run(&["sweep", "--a-list", "3,1.5", "--kappa-range", "0:1:0.25"]);
    assert_eq!(code(&o), 0);
    for r in rows(&o) {
        assert!(num(&r, "sup") > 1.0, "{r:?}");
        assert_eq!(r["exceeds_one"], "true");
    }
}

#[test]
fn csv_output_is_deterministic() {
    let args = [
        "transform",
        "--a",
        "1.5",
        "--kappa",
        "0.6",
        "--func",
        "mixed-gauss",
        "--v-max",
        "3",
        "--step",
        "0.5",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout.clone()).unwrap();
    assert!(text.starts_with("d,a,kappa,func,y,re,im,modulus,error\r\n"));
    assert_eq!(text.lines().count(), 8);
    // file output matches stdout byte for byte
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let mut with_file = args.to_vec();
    with_file.extend(["--output", path.to_str().unwrap()]);
    assert_eq!(code(&run(&with_file)), 0);
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
}

#[test]
fn json_report_carries_schema_config_and_wall_time() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# sample\na = 1\nkappa = 0.6\nv-max = 2\n").unwrap();
    let o = run(&[
        "classify",
        "--config",
        cfg.to_str().unwrap(),
        "--kappa",
        "0.3",
        "--out",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "kappa-fourier/1");
    assert_eq!(v["command"], "classify");
    // flag beats file beats default
    assert_eq!(v["config"]["kappa"], "0.3");
    assert_eq!(v["config"]["a"], "1");
    assert_eq!(v["config"]["v_max"], "2");
    assert_eq!(v["config"]["d"], "1");
    assert_eq!(v["rows"][0]["verdict"], "Open");
    assert!(v["meta"]["wall_time_s"].is_number());
    let csv = run(&[
        "classify",
        "--config",
        cfg.to_str().unwrap(),
        "--kappa",
        "0.3",
    ]);
    assert!(!String::from_utf8(csv.stdout).unwrap().contains("wall"));
    assert!(String::from_utf8(csv.stderr).unwrap().contains("kappa=0.3"));
}

#[test]
fn config_and_usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "a=1\nkappa=0.6\ncolour=blue\n").unwrap();
    let o = run(&["classify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains(":3") && err.contains("colour"), "{err}");

    std::fs::write(&cfg, "a=one\nkappa=0.6\n").unwrap();
    let o = run(&["classify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8(o.stderr).unwrap().contains("a = \"one\""));

    assert_eq!(code(&run(&["classify", "--a", "1"])), 2);
    assert_eq!(
        code(&run(&[
            "classify", "--a", "1", "--kappa", "0.5", "--lambda", "0.2"
        ])),
        2
    );
    assert_eq!(code(&run(&["verify", "--suite", "no-such-suite"])), 2);
    assert_eq!(
        code(&run(&["eval-kernel", "--a", "1", "--kappa", "0.5"])),
        2
    );
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(
        code(&run(&[
            "eval-kernel",
            "--a",
            "1",
            "--kappa",
            "0.5",
            "--v",
            "1",
            "--tol",
            "-1"
        ])),
        2
    );
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn numerical_failure_exits_3() {
    let o = run(&[
        "eval-psi", "--R", "3", "--eta", "1", "--w", "10000", "--tau", "0.5",
    ]);
    assert_eq!(code(&o), 3);
    let r = &rows(&o)[0];
    assert!(r["error"].contains("truncation"), "{r:?}");
    assert_eq!(r["w"], "1.0000000000000000e4");
}

#[test]
fn verify_exit_status() {
    let o = run(&["verify", "--suite", "lemma1"]);
    assert_eq!(code(&o), 0);
    let rs = rows(&o);
    assert_eq!(rs.len(), 1);
    assert_eq!(rs[0]["status"], "pass");
    assert!(num(&rs[0], "residual") < 1e-9);

    let o = run(&["verify", "--suite", "posdef"]);
    assert_eq!(code(&o), 0);

    // this suite has failing rows, each with its inputs and both sides
    let o = run(&["verify", "--suite", "thm4-lower"]);
    assert_eq!(code(&o), 1);
    let failures: Vec<_> = rows(&o)
        .into_iter()
        .filter(|r| r["row"] == "failure")
        .collect();
    assert!(!failures.is_empty());
    for f in failures {
        assert!(f["inputs"].contains("a="));
        assert!(num(&f, "lhs_re") < num(&f, "rhs_re"));
    }
}

#[test]
fn posdef_modes() {
    let o = run(&["posdef", "--lambda", "-0.2", "--r", "2"]);
    assert_eq!(code(&o), 0);
    let rs = rows(&o);
    assert_eq!(rs.len(), 3);
    assert!(rs.iter().all(|r| r["verdict"] == "ChangesSign"));
    let o = run(&["posdef", "--lambda", "0.3"]);
    let rs = rows(&o);
    assert_eq!(rs.len(), 15);
    assert!(rs
        .iter()
        .filter(|r| r["poly"] == "q_odd")
        .all(|r| r["verdict"] == "Nonnegative"));

    let o = run(&["posdef", "--R", "2", "--eta", "1.5", "--tau", "0.3"]);
    assert_eq!(code(&o), 0);
    let r = &rows(&o)[0];
    assert_eq!(
        (r["nonnegative"].as_str(), r["supported"].as_str()),
        ("true", "true")
    );
    assert!((num(r, "theta") - (0.65f64).sqrt()).abs() < 1e-12);
}

#[test]
fn transform_paths() {
    // F_0^{-1/2} is the classical transform: (1/√2)e^{−v²/4} for e^{−u²}
    let o = run(&["transform", "--lambda", "-0.5", "--r", "0", "--v", "1"]);
    assert_eq!(code(&o), 0);
    let r = &rows(&o)[0];
    assert!((num(r, "re") - (-0.25f64).exp() / 2f64.sqrt()).abs() < 1e-12);
    let o = run(&[
        "transform",
        "--a",
        "2",
        "--kappa",
        "0",
        "--func",
        "odd-gauss",
        "--y",
        "1",
    ]);
    let r = &rows(&o)[0];
    // x e^{−x²} ↦ −(i y/(2√2)) e^{−y²/4}
    assert!((num(r, "im") + (-0.25f64).exp() / (2.0 * 2f64.sqrt())).abs() < 1e-12);
    assert_eq!(
        code(&run(&[
            "transform",
            "--a",
            "1",
            "--kappa",
            "0.5",
            "--v",
            "1",
            "--func",
            "nope"
        ])),
        2
    );
}
