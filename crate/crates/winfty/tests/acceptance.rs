use std::io::Write;
use std::time::Instant;

use winfty::report::{Check, Report, Status};
use winfty::suites::{self, RunConfig};

struct Outcome {
    number: usize,
    title: &'static str,
    checks: Vec<Check>,
    seconds: f64,
    /// Check ids whose failure is an expected, documented deviation.
    expected_failures: &'static [&'static str],
}

fn select(r: &Report, pred: impl Fn(&str) -> bool) -> Vec<Check> {
    r.checks.iter().filter(|c| pred(&c.id)).cloned().collect()
}

fn line(o: &Outcome) -> bool {
    let failing: Vec<&Check> = o.checks.iter().filter(|c| c.status == Status::Fail).collect();
    let unexpected: Vec<&&Check> = failing.iter().filter(|c| !o.expected_failures.contains(&c.id.as_str())).collect();
    let counted = o.checks.iter().filter(|c| c.status != Status::Info).count();
    let status = if failing.is_empty() { "PASS" } else { "FAIL" };
    let mut s = format!("criterion {:>2} {}: {} ({} checks, {:.1} s)", o.number, status, o.title, counted, o.seconds);
    for c in &failing {
        s.push_str(&format!("\n    {} {}: {}", if unexpected.iter().any(|u| u.id == c.id) { "unexpected" } else { "known" }, c.id, c.detail));
    }
    // Written to stderr directly so the lines show without --nocapture.
    let _ = writeln!(std::io::stderr(), "{}", s);
    unexpected.is_empty() && counted > 0
}

#[test]
fn acceptance() {
    let cfg = RunConfig::default();
    let mut out = Vec::new();

    let t = Instant::now();
    let sigma = suites::sigma(&cfg).unwrap();
    let ts = t.elapsed().as_secs_f64();
    out.push(Outcome { number: 1, title: "Schur table", checks: select(&sigma, |id| id == "sigma.table.schur"), seconds: ts, expected_failures: &[] });
    out.push(Outcome {
        number: 2,
        title: "Jack table and orthogonality",
        checks: select(&sigma, |id| id == "sigma.table.jack" || id == "sigma.jack.orthogonal"),
        seconds: ts,
        expected_failures: &[],
    });
    out.push(Outcome {
        number: 3,
        title: "sigma maps",
        checks: select(&sigma, |id| id == "sigma.schur" || id == "sigma.jack.schur-point"),
        seconds: ts,
        expected_failures: &[],
    });

    let t = Instant::now();
    let y = suites::yangian(&cfg).unwrap();
    let ty = t.elapsed().as_secs_f64();
    out.push(Outcome {
        number: 4,
        title: "Yangian relations",
        checks: select(&y, |id| id.starts_with("yangian.exact") || id.starts_with("yangian.numeric") || id.starts_with("yangian.literal")),
        seconds: ty,
        expected_failures: &[],
    });
    out.push(Outcome { number: 5, title: "one-layer truncation", checks: select(&y, |id| id == "yangian.one-layer"), seconds: ty, expected_failures: &[] });

    let t = Instant::now();
    let ope = suites::ope(&cfg).unwrap();
    let to = t.elapsed().as_secs_f64();
    out.push(Outcome {
        number: 6,
        title: "OPEs and field forms",
        checks: select(&ope, |id| (id.starts_with("ope.") && !id.starts_with("ope.a-system") && !id.starts_with("ope.w.") && !id.starts_with("ope.modes") && !id.starts_with("ope.fock")) || id.starts_with("form.")),
        seconds: to,
        expected_failures: &[],
    });
    let a_dim = ope.checks.iter().find(|c| c.id == "ope.a-system.dimension").expect("dimension check");
    assert!(a_dim.detail.starts_with("solution space dimension 3"), "{}", a_dim.detail);
    out.push(Outcome {
        number: 7,
        title: "a_n system",
        checks: select(&ope, |id| id.starts_with("ope.a-system")),
        seconds: to,
        expected_failures: &["ope.a-system.dimension"],
    });
    out.push(Outcome {
        number: 8,
        title: "W structure constants and mode commutators",
        checks: select(&ope, |id| id.starts_with("ope.w.") || id.starts_with("ope.modes")),
        seconds: to,
        expected_failures: &[],
    });
    out.push(Outcome { number: 9, title: "mode/Fock cross-check", checks: select(&ope, |id| id.starts_with("ope.fock")), seconds: to, expected_failures: &[] });

    let t = Instant::now();
    let kp = suites::kp(&cfg).unwrap();
    out.push(Outcome { number: 10, title: "KP pipeline", checks: kp.checks.clone(), seconds: t.elapsed().as_secs_f64(), expected_failures: &[] });

    let t = Instant::now();
    let tau = suites::tau_suite(&cfg).unwrap();
    out.push(Outcome { number: 11, title: "tau functions", checks: tau.checks.clone(), seconds: t.elapsed().as_secs_f64(), expected_failures: &[] });

    out.push(Outcome { number: 12, title: "3D bosons", checks: select(&sigma, |id| id.starts_with("sigma.boson")), seconds: ts, expected_failures: &[] });

    out.sort_by_key(|o| o.number);
    let results: Vec<bool> = out.iter().map(line).collect();
    assert!(results.iter().all(|x| *x), "unexpected failures above");
}
