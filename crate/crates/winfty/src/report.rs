//! Verification reports: one entry per check with the label of the display
//! it concerns, rendered as JSON, LaTeX or text.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Recorded for reference; does not affect the outcome.
    Info,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check { id: id.into(), anchor: anchor.into(), status: if ok { Status::Pass } else { Status::Fail }, detail: detail.into() }
    }

    pub fn info(id: impl Into<String>, anchor: impl Into<String>, detail: impl Into<String>) -> Self {
        Check { id: id.into(), anchor: anchor.into(), status: Status::Info, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    pub config: Value,
    pub version: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Latex,
    Text,
}

impl Report {
    pub fn new(suite: &str, config: Value) -> Self {
        Report { suite: suite.into(), checks: Vec::new(), config, version: env!("CARGO_PKG_VERSION").into() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }

    pub fn render(&self, f: Format) -> String {
        match f {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes"),
            Format::Text => {
                let mut s = format!("suite {} (version {})\n", self.suite, self.version);
                for c in &self.checks {
                    let st = match c.status {
                        Status::Pass => "pass",
                        Status::Fail => "FAIL",
                        Status::Info => "info",
                    };
                    let _ = writeln!(s, "[{}] {} ({}): {}", st, c.id, c.anchor, c.detail);
                }
                let _ = writeln!(s, "{}", if self.passed() { "all checks passed" } else { "some checks failed" });
                s
            }
            Format::Latex => {
                let esc = |t: &str| t.replace('\\', "\\textbackslash{}").replace('_', "\\_").replace('^', "\\^{}").replace('&', "\\&").replace('%', "\\%").replace('#', "\\#");
                let mut s = String::from("\\begin{tabular}{lll}\n\\hline\ncheck & label & status\\\\\n\\hline\n");
                for c in &self.checks {
                    let st = match c.status {
                        Status::Pass => "pass",
                        Status::Fail => "\\textbf{fail}",
                        Status::Info => "info",
                    };
                    let _ = writeln!(s, "\\texttt{{{}}} & {} & {}\\\\", esc(&c.id), esc(&c.anchor), st);
                }
                s.push_str("\\hline\n\\end{tabular}\n");
                s
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn info_does_not_fail() {
        let mut r = Report::new("x", Value::Null);
        r.push(Check::info("a", "b", "c"));
        r.push(Check::new("d", "e", true, ""));
        assert!(r.passed());
        r.push(Check::new("f", "g", false, "bad"));
        assert_eq!(r.first_failure().unwrap().id, "f");
        let v: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(v["checks"][2]["status"], "fail");
        assert!(r.render(Format::Latex).contains("\\textbf{fail}"));
    }
}
