use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use winfty::bosonfermion::{sigma_jack, sigma_schur};
use winfty::kp::plucker_tau;
use winfty::report::Format;
use winfty::suites::{self, Alpha0, Params, RunConfig};
use winfty::symfun::{jack, schur, GrowthPath, Partition, PowerSumPolynomial};
use winfty::yangian::Gauge;
use winfty::Error;

#[derive(Parser)]
#[command(name = "winfty", version, about = "Symmetric function expansions and verification suites")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Expand a symmetric function in power sums.
    Expand(ExpandArgs),
    /// Run a verification suite; exit 1 on the first failing check.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Schur,
    Jack,
    Sigma,
    Tau,
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    Schur,
    Jack,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Latex,
    Text,
}

#[derive(Args)]
struct Common {
    /// "symbolic" or a point "h1,h2" with rational entries.
    #[arg(long, default_value = "symbolic")]
    params: String,
    /// "symbolic", "miura", "zero" or a rational value.
    #[arg(long, default_value = "symbolic")]
    alpha0: String,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    #[arg(long)]
    degree: Option<u32>,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct ExpandArgs {
    #[arg(value_enum)]
    kind: Kind,
    /// A partition such as "2,1" ("" for the empty one), or for `tau` a
    /// JSON file holding a k x n matrix of rational strings.
    arg: String,
    /// Growth path for `jack`, e.g. "h1,2h1,h2".
    #[arg(long)]
    path: Option<String>,
    /// Which boson-fermion map `sigma` uses.
    #[arg(long, value_enum, default_value = "schur")]
    basis: Basis,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    suite: String,
    /// Restrict OPE checks to these pairs, e.g. "V2V3,V1V4".
    #[arg(long, value_delimiter = ',')]
    pairs: Option<Vec<String>>,
    /// A single N or an inclusive range "a..b".
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    level: Option<usize>,
    /// ef (alias tree) or literal.
    #[arg(long, default_value = "ef")]
    gauge: String,
    #[arg(long, default_value_t = 20)]
    random_matrices: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[command(flatten)]
    common: Common,
}

struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

fn rational(s: &str) -> Result<BigRational, Usage> {
    s.trim().parse::<BigRational>().map_err(|_| Usage(format!("not a rational number: {:?}", s)))
}

fn parse_params(s: &str) -> Result<Params, Usage> {
    if s == "symbolic" {
        return Ok(Params::Symbolic);
    }
    match s.split(',').collect::<Vec<_>>()[..] {
        [a, b] => Ok(Params::Point(rational(a)?, rational(b)?)),
        _ => Err(Usage(format!("--params takes \"symbolic\" or \"h1,h2\", got {:?}", s))),
    }
}

fn parse_alpha0(s: &str) -> Result<Alpha0, Usage> {
    Ok(match s {
        "symbolic" => Alpha0::Symbolic,
        "miura" => Alpha0::Miura,
        "zero" => Alpha0::Zero,
        v => Alpha0::Value(rational(v)?),
    })
}

fn parse_n(s: &str) -> Result<Vec<usize>, Usage> {
    let int = |t: &str| t.trim().parse::<usize>().ok().filter(|&n| n > 0).ok_or_else(|| Usage(format!("--n takes a positive integer or a..b, got {:?}", s)));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (int(a)?, int(b.trim_start_matches('='))?);
            if a > b {
                return Err(Usage(format!("empty range {:?}", s)));
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![int(s)?]),
    }
}

fn parse_gauge(s: &str) -> Result<Gauge, Usage> {
    match s {
        "ef" | "tree" => Ok(Gauge::Tree),
        "literal" => Ok(Gauge::Literal),
        _ => Err(Usage(format!("--gauge takes ef or literal, got {:?}", s))),
    }
}

fn config(c: &Common) -> Result<RunConfig, Usage> {
    if c.degree == Some(0) || c.jobs == Some(0) {
        return Err(Usage("--degree and --jobs must be positive".into()));
    }
    if let Some(j) = c.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().map_err(|e| Usage(e.to_string()))?;
    }
    Ok(RunConfig { params: parse_params(&c.params)?, alpha0: parse_alpha0(&c.alpha0)?, degree: c.degree, jobs: c.jobs, ..RunConfig::default() })
}

fn format(f: FormatArg) -> Format {
    match f {
        FormatArg::Json => Format::Json,
        FormatArg::Latex => Format::Latex,
        FormatArg::Text => Format::Text,
    }
}

fn specialize(p: &PowerSumPolynomial, cfg: &RunConfig) -> Result<PowerSumPolynomial, Usage> {
    let mut out = PowerSumPolynomial::zero(p.degree_bound());
    for (mu, c) in p.terms() {
        out.add_term(mu.clone(), &cfg.specialize(c)?);
    }
    Ok(out)
}

/// A constant polynomial prints as its value; anything else as the map
/// from power-sum monomials to coefficients.
fn render_poly(p: &PowerSumPolynomial, f: Format, extra: Value) -> String {
    if p.terms().keys().all(|mu| mu.parts().is_empty()) {
        let c = p.terms().values().next().map_or("0".to_string(), |c| c.to_string());
        return if f == Format::Json { Value::String(c).to_string() } else { c };
    }
    match f {
        Format::Json => {
            let mut v = extra;
            v["terms"] = p.to_json();
            serde_json::to_string_pretty(&v).expect("serializes")
        }
        Format::Latex => p.to_latex(),
        Format::Text => p.to_string(),
    }
}

fn expand(a: &ExpandArgs) -> Result<String, Usage> {
    let cfg = config(&a.common)?;
    let f = format(a.common.format);
    if let Kind::Tau = a.kind {
        let text = std::fs::read_to_string(&a.arg).map_err(|e| Usage(format!("{}: {}", a.arg, e)))?;
        let rows: Vec<Vec<String>> = serde_json::from_str(&text).map_err(|e| Usage(format!("{}: expected a JSON array of arrays of rational strings: {}", a.arg, e)))?;
        let m = rows.iter().map(|r| r.iter().map(|x| rational(x)).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>()?;
        let t = plucker_tau(&m)?;
        let coeffs: serde_json::Map<String, Value> = t.coeffs.iter().map(|(l, c)| (format!("S{}", l), Value::String(c.to_string()))).collect();
        return Ok(render_poly(&t.tau, f, json!({ "kind": "tau", "matrix": rows, "schur": coeffs })));
    }
    let lambda = Partition::parse(&a.arg)?;
    let degree = a.common.degree.unwrap_or(lambda.size().max(1));
    if degree < lambda.size() {
        return Err(Usage(format!("--degree {} is below |lambda| = {}", degree, lambda.size())));
    }
    let (name, p) = match a.kind {
        Kind::Schur => ("schur", schur(&lambda, degree)),
        Kind::Jack => {
            let path = a.path.as_deref().map(GrowthPath::parse).transpose()?;
            ("jack", jack(&lambda, path.as_ref())?.with_degree(degree))
        }
        Kind::Sigma => match a.basis {
            Basis::Schur => ("sigma-schur", sigma_schur(&lambda)?.with_degree(degree)),
            Basis::Jack => ("sigma-jack", sigma_jack(&lambda)?.with_degree(degree)),
        },
        Kind::Tau => unreachable!(),
    };
    let p = specialize(&p, &cfg)?;
    Ok(render_poly(&p, f, json!({ "kind": name, "partition": lambda.to_string(), "path": a.path, "config": cfg.to_json() })))
}

fn verify(a: &VerifyArgs) -> Result<(String, bool, Option<String>), Usage> {
    if !suites::SUITES.contains(&a.suite.as_str()) {
        return Err(Usage(format!("unknown suite {:?}; expected one of {}", a.suite, suites::SUITES.join(", "))));
    }
    let mut cfg = config(&a.common)?;
    cfg.n = a.n.as_deref().map(parse_n).transpose()?;
    cfg.level = a.level;
    cfg.pairs = a.pairs.clone();
    cfg.gauge = parse_gauge(&a.gauge)?;
    cfg.seed = a.seed;
    cfg.random_matrices = a.random_matrices;
    if cfg.level == Some(0) {
        return Err(Usage("--level must be positive".into()));
    }
    let r = suites::run(&a.suite, &cfg)?;
    let first = r.first_failure().map(|c| format!("first failure: {} ({}): {}", c.id, c.anchor, c.detail));
    Ok((r.render(format(a.common.format)), r.passed(), first))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let out = match &cli.cmd {
        Cmd::Expand(a) => expand(a).map(|s| (s, true, None)),
        Cmd::Verify(a) => verify(a),
    };
    match out {
        Ok((s, ok, first)) => {
            // A closed pipe (e.g. `| head`) is not an error.
            let _ = writeln!(std::io::stdout(), "{}", s);
            if let Some(f) = first {
                eprintln!("{}", f);
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Usage(m)) => {
            eprintln!("error: {}", m);
            ExitCode::from(2)
        }
    }
}
