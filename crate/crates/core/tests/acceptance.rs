//! One PASS/FAIL line per acceptance criterion, written straight to stderr so
//! the lines survive libtest output capture.

use kappa_fourier::suites::{run_suite, SuiteReport};
use std::io::Write;
use std::time::Duration;

struct Criterion {
    id: u32,
    title: &'static str,
    suites: &'static [&'static str],
}

const CRITERIA: [Criterion; 15] = [
    Criterion {
        id: 1,
        title: "Lemma 1 identity",
        suites: &["lemma1"],
    },
    Criterion {
        id: 2,
        title: "Lemma 2 identity",
        suites: &["lemma2"],
    },
    Criterion {
        id: 3,
        title: "closed form vs integral representation",
        suites: &["integral-rep"],
    },
    Criterion {
        id: 4,
        title: "Theorem 2 kernel bound",
        suites: &["thm2"],
    },
    Criterion {
        id: 5,
        title: "Theorem 4 witnesses",
        suites: &["thm4-witness", "thm4-lower"],
    },
    Criterion {
        id: 6,
        title: "nonnegativity dichotomy",
        suites: &["posdef"],
    },
    Criterion {
        id: 7,
        title: "decomposition identities",
        suites: &["decomp"],
    },
    Criterion {
        id: 8,
        title: "Psi cross-validation",
        suites: &["psi"],
    },
    Criterion {
        id: 9,
        title: "Psi positive-definiteness proxy",
        suites: &["psi-density"],
    },
    Criterion {
        id: 10,
        title: "Example 1 ratio at a=4",
        suites: &["example1"],
    },
    Criterion {
        id: 11,
        title: "Gaussian moments vs Kummer form",
        suites: &["kummer"],
    },
    Criterion {
        id: 12,
        title: "Plancherel and inversion",
        suites: &["unitarity"],
    },
    Criterion {
        id: 13,
        title: "eigenfunction and adjointness",
        suites: &["eigen"],
    },
    Criterion {
        id: 14,
        title: "Lemma 10 correction",
        suites: &["lemma10"],
    },
    Criterion {
        id: 15,
        title: "Schwartz diagnostics",
        suites: &["schwartz"],
    },
];

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn short(z: kappa_fourier::Complex64) -> String {
    if z.im == 0.0 {
        format!("{:.6}", z.re)
    } else {
        format!("{:.6}{:+.6}i", z.re, z.im)
    }
}

fn summary(r: &SuiteReport) -> String {
    let mut s = format!(
        "{} {}/{} checks ok, worst residual {:.2e}",
        r.name,
        r.checks - r.failures,
        r.checks,
        r.worst_residual()
    );
    if let Some(w) = r.worst.as_ref() {
        s.push_str(&format!(" (tol {:.0e})", w.tol));
    }
    for f in r.failed_rows.iter().take(3) {
        s.push_str(&format!(
            "; failed [{}] lhs {} rhs {}",
            f.inputs,
            short(f.lhs),
            short(f.rhs)
        ));
    }
    if r.failed_rows.len() > 3 {
        s.push_str(&format!("; {} more failures", r.failed_rows.len() - 3));
    }
    if let Some(e) = r.errors.first() {
        s.push_str(&format!("; {} errors, first: {}", r.errors.len(), e));
    }
    s
}

fn emit(line: &str) {
    let mut err = std::io::stderr().lock();
    err.write_all(line.as_bytes()).unwrap();
    err.write_all(b"\n").unwrap();
}

#[test]
fn acceptance() {
    let mut total = Duration::ZERO;
    let mut must_pass = Vec::new();
    for crit in &CRITERIA {
        let reports: Vec<SuiteReport> = crit
            .suites
            .iter()
            .map(|s| run_suite(s).expect("known suite"))
            .collect();
        total += reports.iter().map(|r| r.elapsed).sum::<Duration>();
        let detail: Vec<String> = reports.iter().map(summary).collect();
        let line = match crit.id {
            1 => {
                let r = &reports[0];
                let fast = r.elapsed < Duration::from_secs(5);
                must_pass.push((1, r.passed() && fast));
                format!(
                    "{} criterion 1: {}: {}; runtime {:.2} s (limit 5 s)",
                    verdict(r.passed() && fast),
                    crit.title,
                    detail[0],
                    r.elapsed.as_secs_f64()
                )
            }
            5 => {
                let (i, ii) = (reports[0].passed(), reports[1].passed());
                must_pass.push((5, i));
                format!(
                    "{} criterion 5: {}: (i) {} {}; (ii) {} {}",
                    verdict(i && ii),
                    crit.title,
                    verdict(i),
                    detail[0],
                    verdict(ii),
                    detail[1]
                )
            }
            _ => {
                let r = &reports[0];
                if crit.id != 10 {
                    must_pass.push((crit.id, r.passed()));
                }
                let mut line = format!(
                    "{} criterion {}: {}: {}",
                    verdict(r.passed()),
                    crit.id,
                    crit.title,
                    detail[0]
                );
                if !r.passed() {
                    for n in &r.notes {
                        line.push_str(&format!("; note: {n}"));
                    }
                }
                line
            }
        };
        emit(&line);
    }
    let fast = total < Duration::from_secs(300);
    emit(&format!(
        "{} suite runtime: {:.1} s in total (limit 300 s)",
        verdict(fast),
        total.as_secs_f64()
    ));
    let failed: Vec<u32> = must_pass
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(id, _)| *id)
        .collect();
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
    assert!(fast);
}
