//! The verification suites behind `winfty verify`, shared with the
//! acceptance tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{ParamRational, Specialization, Var};
use crate::bosonfermion::{sigma_jack_all, sigma_schur, DiagramFock, ModuleKind};
use crate::error::Result;
use crate::kp::tau::{self, BilinearOp};
use crate::kp::{self, BracketTable, ModeSource, Variant, BRACKET_PAIRS};
use crate::report::{Check, Report};
use crate::symfun::{hall_inner, jack, partitions_of, partitions_up_to, schur, tables, GrowthPath, InnerProductSpec, DEFAULT_DEGREE};
use crate::vertex::{self, catalog, derive_a_system, fock_cross_check, verify_commutators, verify_w_structure, Workspace};
use crate::yangian::{check_relation_exact, check_relation_numeric, one_layer_truncation, Gauge, Relation, YangianParams};

#[derive(Clone, Debug, PartialEq)]
pub enum Params {
    Symbolic,
    Point(BigRational, BigRational),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Alpha0 {
    Symbolic,
    Miura,
    Zero,
    Value(BigRational),
}

/// Options shared by all suites; unset fields take per-suite defaults.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub params: Params,
    pub alpha0: Alpha0,
    pub n: Option<Vec<usize>>,
    pub degree: Option<u32>,
    pub level: Option<usize>,
    pub seed: u64,
    pub jobs: Option<usize>,
    pub pairs: Option<Vec<String>>,
    pub gauge: Gauge,
    pub random_matrices: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            params: Params::Symbolic,
            alpha0: Alpha0::Symbolic,
            n: None,
            degree: None,
            level: None,
            seed: 7,
            jobs: None,
            pairs: None,
            gauge: Gauge::Tree,
            random_matrices: 20,
        }
    }
}

impl RunConfig {
    pub fn to_json(&self) -> Value {
        json!({
            "params": match &self.params { Params::Symbolic => "symbolic".to_string(), Params::Point(a, b) => format!("{},{}", a, b) },
            "alpha0": match &self.alpha0 {
                Alpha0::Symbolic => "symbolic".to_string(),
                Alpha0::Miura => "miura".to_string(),
                Alpha0::Zero => "zero".to_string(),
                Alpha0::Value(v) => v.to_string(),
            },
            "n": self.n,
            "degree": self.degree,
            "level": self.level,
            "seed": self.seed,
            "jobs": self.jobs,
            "pairs": self.pairs,
            "gauge": self.gauge.name(),
            "random_matrices": self.random_matrices,
        })
    }

    /// Apply --params and --alpha0 to a symbolic coefficient.
    pub fn specialize(&self, x: &ParamRational) -> Result<ParamRational> {
        let mut s = Specialization::new();
        if let Params::Point(a, b) = &self.params {
            s = s.with(Var::H1, ParamRational::from_rat(a.clone())).with(Var::H2, ParamRational::from_rat(b.clone()));
        }
        let x = match &self.alpha0 {
            Alpha0::Symbolic => x.clone(),
            Alpha0::Miura => x.subs(Var::A0, &ParamRational::alpha0_miura())?,
            Alpha0::Zero => x.subs_i64(Var::A0, 0)?,
            Alpha0::Value(v) => x.subs(Var::A0, &ParamRational::from_rat(v.clone()))?,
        };
        s.apply(&x)
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A parameter point with h1 > 0 > h2, h1 != -h2 and psi0 != 0.
fn random_point(rng: &mut ChaCha8Rng) -> (BigRational, BigRational, BigRational) {
    loop {
        let h1 = rat(rng.gen_range(1..=19), rng.gen_range(1..=7));
        let h2 = rat(-rng.gen_range(1..=19), rng.gen_range(1..=7));
        let psi0 = rat(rng.gen_range(-19..=19), rng.gen_range(1..=7));
        if &h1 + &h2 != rat(0, 1) && psi0 != rat(0, 1) {
            return (h1, h2, psi0);
        }
    }
}

fn exact_params(cfg: &RunConfig) -> Result<YangianParams> {
    match &cfg.params {
        Params::Symbolic => Ok(YangianParams::generic()),
        Params::Point(a, b) => YangianParams::at_point(a.clone(), b.clone(), &ParamRational::psi0_sym()),
    }
}

/// Relations 3 to 7 exactly in the chosen gauge, relations 1, 2, 8, 9
/// numerically at two seeded points, and the one-layer truncation.
pub fn yangian(cfg: &RunConfig) -> Result<Report> {
    let level = cfg.level.unwrap_or(4);
    let mut r = Report::new("yangian", cfg.to_json());
    let params = exact_params(cfg)?;
    for rel in [Relation::Y3, Relation::Y4, Relation::Y5, Relation::Y6, Relation::Y7] {
        let x = check_relation_exact(rel, level, cfg.gauge, &params)?;
        let detail = format!("{} index tuples, gauge {}, level {}{}", x.checked, x.gauge, level, x.counterexample.as_ref().map(|c| format!("; {}", c)).unwrap_or_default());
        r.push(Check::new(format!("yangian.exact.{}", rel.anchor()), rel.anchor(), x.passed(), detail));
    }
    if cfg.gauge == Gauge::Tree {
        let x = check_relation_exact(Relation::Y3, level.min(2), Gauge::Literal, &params)?;
        r.push(Check::info(
            "yangian.literal.yangian3",
            "yangian3",
            format!("E = 1 on every edge: {}{}", x.status, x.counterexample.map(|c| format!("; {}", c)).unwrap_or_default()),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut k = 0;
    let mut skipped = 0;
    while k < 2 {
        let (h1, h2, psi0) = random_point(&mut rng);
        // Rational points can make two box weights collide; such points are
        // not generic and are redrawn.
        let checks = YangianParams::at_point(h1.clone(), h2.clone(), &ParamRational::from_rat(psi0.clone())).and_then(|p| {
            [Relation::Y1, Relation::Y2, Relation::Y8, Relation::Y9].into_iter().map(|rel| check_relation_numeric(rel, level, &p, 25).map(|x| (rel, x))).collect::<Result<Vec<_>>>()
        });
        let checks = match checks {
            Err(crate::Error::MultiplePole(_)) if skipped < 50 => {
                skipped += 1;
                continue;
            }
            c => c?,
        };
        k += 1;
        for (rel, x) in checks {
            let detail = format!(
                "h1 = {}, h2 = {}, psi0 = {}: max residual {}{}{}",
                h1,
                h2,
                psi0,
                x.max_residual.clone().unwrap_or_default(),
                if skipped > 0 { format!(" (non-generic draws skipped so far: {})", skipped) } else { String::new() },
                x.counterexample.as_ref().map(|c| format!("; {}", c)).unwrap_or_default()
            );
            r.push(Check::new(format!("yangian.numeric.{}.point{}", rel.anchor(), k), rel.anchor(), x.passed(), detail));
        }
    }
    let t = one_layer_truncation(5)?;
    r.push(Check::new(
        "yangian.one-layer",
        "psi0 = -1/(h1 h2)",
        t.passed(),
        format!("{} height-one states, {} second-layer boxes{}", t.states, t.second_layer_edges, t.counterexample.map(|c| format!("; {}", c)).unwrap_or_default()),
    ));
    Ok(r)
}

fn pair_name(lhs: &str, rhs: &str) -> String {
    format!("{}{}", lhs, rhs)
}

/// Displayed OPEs (optionally only some pairs and some N), and on a full
/// run also the field forms, the a_n system, the mode algebra and the Fock
/// space cross-check.
pub fn ope(cfg: &RunConfig) -> Result<Report> {
    let mut r = Report::new("ope", cfg.to_json());
    let mut ws = Workspace::new();
    let wanted = cfg.pairs.as_ref().map(|v| v.iter().map(|s| s.to_uppercase()).collect::<Vec<_>>());
    for s in catalog() {
        if let Some(w) = &wanted {
            if !w.contains(&pair_name(s.lhs, s.rhs).to_uppercase()) && !w.contains(&s.id.to_uppercase()) {
                continue;
            }
        }
        let c = vertex::verify_spec_at(&mut ws, &s, cfg.n.as_deref())?;
        let ok = c.holds && c.certified != Some(false);
        let mut detail = format!("N = {:?}, {}: {}", c.ns, c.regime, c.detail);
        if let Some(k) = &c.correction {
            if !c.printed_holds {
                detail.push_str(&format!(" [reading: {}]", k));
            }
        }
        r.push(Check::new(format!("ope.{}", c.id), c.anchor, ok, detail));
    }
    if wanted.is_some() {
        if r.checks.is_empty() {
            return Err(crate::Error::Unsupported("no displayed OPE matches --pairs".into()));
        }
        return Ok(r);
    }
    for f in vertex::field_forms() {
        let c = vertex::verify_form(&mut ws, &f)?;
        let mut detail = format!("N = {:?}: {}", c.ns, c.detail);
        if let (false, Some(k)) = (c.printed_holds, &c.correction) {
            detail.push_str(&format!(" [reading: {}]", k));
        }
        r.push(Check::new(c.id, c.anchor, c.holds, detail));
    }
    let a = derive_a_system(&[3, 4, 5, 6])?;
    let rows_ok = a.rows.iter().all(|x| x.matches);
    r.push(Check::new("ope.a-system.rows", "a_n equations", rows_ok, format!("17 rows re-derived at N = {:?} up to row scaling", a.ns)));
    r.push(Check::new("ope.a-system.residual", "a_n solution", a.printed_residual_zero, "printed solution in the printed equations"));
    let unique = a.normalized_matches.iter().all(|m| m.1) && a.solution_matches;
    r.push(Check::new(
        "ope.a-system.solution",
        "a_n solution",
        unique,
        format!("with a13 = -1, a3 = 1/4 and the V3 normalization the solution is unique and printed at N = {:?}", a.ns),
    ));
    r.push(Check::new(
        "ope.a-system.dimension",
        "a_n solution",
        a.printed_dimension == 2,
        format!("solution space dimension {} (stated: 2); free direction after a13, a3: {}", a.printed_dimension, a.residual_direction.join(", ")),
    ));
    for c in verify_commutators(&[1, 2, 3, 4], 3)? {
        r.push(Check::new(format!("ope.modes.{}", c.id), "vjmvkn", c.holds && c.antisymmetric, if c.detail.is_empty() { format!("N = {:?}, |m|,|n| <= {}", c.ns, c.range) } else { c.detail }));
    }
    let w = verify_w_structure(&[(1, 1), (1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (2, 4), (3, 3)], 3)?;
    r.push(Check::new("ope.w.laws", "vjmvkn", w.displayed_laws, "[V1,V1], [V2,V1], [V2,V2] from the structure constants"));
    for c in &w.measured {
        r.push(Check::new(format!("ope.w.V{}V{}", c.pair.0, c.pair.1), "vjmvkn", c.holds, c.detail.clone()));
    }
    let level = cfg.level.unwrap_or(5) as u32;
    let f = fock_cross_check((1, -2), 2, level, 3, &[(1, 1), (1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (2, 4), (3, 3)])?;
    for c in &f.checks {
        r.push(Check::new(
            format!("ope.fock.V{}V{}", c.pair.0, c.pair.1),
            "mode commutators",
            c.holds,
            format!("h = (1,-2), N = 2, level <= {}, |m|,|n| <= 3, {} states{}", level, c.states, if c.detail.is_empty() { String::new() } else { format!("; {}", c.detail) }),
        ));
    }
    Ok(r)
}

/// Schur and Jack tables, orthogonality, the sigma maps and the 3D bosons.
pub fn sigma(cfg: &RunConfig) -> Result<Report> {
    let mut r = Report::new("sigma", cfg.to_json());
    let mut bad = Vec::new();
    let st = tables::schur_table()?;
    for e in &st {
        if schur(&e.shape, DEFAULT_DEGREE) != e.value {
            bad.push(e.shape.to_string());
        }
    }
    r.push(Check::new("sigma.table.schur", "Schur table", bad.is_empty(), format!("{} entries; mismatches {:?}", st.len(), bad)));
    let jt = tables::jack_table()?;
    let mut bad = Vec::new();
    for e in &jt {
        let path = e.path.map(GrowthPath::parse).transpose()?;
        if jack(&e.shape, path.as_ref())? != e.value {
            bad.push(format!("{} {:?}", e.shape, e.path));
        }
    }
    r.push(Check::new("sigma.table.jack", "Jack table", bad.is_empty(), format!("{} entries; mismatches {:?}", jt.len(), bad)));
    let spec = InnerProductSpec::jack();
    let mut bad = Vec::new();
    for n in 1..=4 {
        let ys: Vec<_> = partitions_of(n).into_iter().map(|l| jack(&l, None).map(|y| (l, y))).collect::<Result<_>>()?;
        for i in 0..ys.len() {
            for j in i + 1..ys.len() {
                if !hall_inner(&ys[i].1, &ys[j].1, &spec).is_zero() {
                    bad.push(format!("{} {}", ys[i].0, ys[j].0));
                }
            }
        }
    }
    r.push(Check::new("sigma.jack.orthogonal", "beta = -1/(h1 h2)", bad.is_empty(), format!("all pairs with |lambda| <= 4; failures {:?}", bad)));
    let top = cfg.degree.unwrap_or(6);
    let mut bad = Vec::new();
    for l in partitions_up_to(top) {
        if sigma_schur(&l)? != schur(&l, DEFAULT_DEGREE) {
            bad.push(l.to_string());
        }
    }
    r.push(Check::new("sigma.schur", "sigma map, Schur", bad.is_empty(), format!("|lambda| <= {}; failures {:?}", top, bad)));
    let mut bad = Vec::new();
    for n in 0..=top {
        for (l, y) in sigma_jack_all(n)? {
            if y.specialize(&Specialization::schur_point())? != sigma_schur(&l)? {
                bad.push(l.to_string());
            }
        }
    }
    r.push(Check::new("sigma.jack.schur-point", "sigma map, Jack", bad.is_empty(), format!("h1 = 1, h2 = -1, |lambda| <= {}; failures {:?}", top, bad)));
    let fk = DiagramFock::new(ModuleKind::ThreeD, ParamRational::psi0_sym(), 4)?;
    let c = fk.b_mode(1, 1)?.op.commutator(&fk.b_mode(-1, 1)?.op);
    let mut ok = true;
    for i in 0..fk.dim() {
        if fk.module.level(i) <= 3 {
            for (row, x) in &c.cols[i] {
                ok &= if *row == i { *x == ParamRational::psi0_sym() } else { x.is_zero() };
            }
        }
    }
    r.push(Check::new("sigma.boson.commutator", "[a_n, a_m] = psi0 n delta", ok, "[b_{1,1}, b_{-1,1}] on plane partitions with <= 3 boxes"));
    let level = 4;
    let f3 = DiagramFock::new(ModuleKind::ThreeD, ParamRational::psi0_jack(), level)?;
    let f2 = DiagramFock::jack(level)?;
    let h = f2.hamiltonians(3)?;
    let mut bad = Vec::new();
    for n in 1..=3usize {
        let b = f3.b_mode(n as i64, 1)?;
        for (j, src) in f2.module.states.iter().enumerate() {
            let j3 = f3.module.index_of(src).expect("height-one state");
            for (i, tgt) in f2.module.states.iter().enumerate() {
                let i3 = f3.module.index_of(tgt).expect("height-one state");
                if b.element(i3, j3) != h[n - 1].element(i, j) {
                    bad.push(format!("n={} <{}|.|{}>", n, tgt, src));
                }
            }
        }
    }
    r.push(Check::new("sigma.boson.reduction", "b_{n,1} at psi0 = -1/(h1 h2)", bad.is_empty(), format!("n <= 3, height-one states with <= {} boxes; mismatches {:?}", level, bad)));
    Ok(r)
}

fn variants(cfg: &RunConfig) -> Vec<Variant> {
    let mut v = vec![Variant::Schur, Variant::Jack];
    for n in cfg.n.clone().unwrap_or_else(|| vec![1, 2, 3, 4]) {
        v.push(Variant::ThreeD(n));
    }
    v
}

/// The KP pipeline for each variant, the identities between variants, the
/// symmetric forms and the log tau substitution.
pub fn kp(cfg: &RunConfig) -> Result<Report> {
    let mut r = Report::new("kp", cfg.to_json());
    for n in 0..4 {
        let got = kp::hamiltonian(n)?;
        let want = kp::printed_hamiltonian(n)?.canonical()?;
        r.push(Check::new(format!("kp.H{}", n), "H_n = Res L^(n+1)/(n+1)", got == want, format!("H{} = {}", n, got)));
    }
    for v in variants(cfg) {
        let name = v.name();
        let mut src = ModeSource::new(v);
        let mt = src.mode_table()?;
        let pm = kp::printed_mode_table(v)?;
        r.push(Check::new(format!("kp.{}.modes", name), "mode table", mt == pm, mt.describe().join("; ")));
        let bt = BracketTable::derive(&mut src, &mt, &BRACKET_PAIRS)?;
        let mut bad = Vec::new();
        for b in kp::printed_brackets(v)? {
            if bt.get(b.pair.0, b.pair.1)? != &b {
                bad.push(format!("{:?}", b.pair));
            }
        }
        r.push(Check::new(format!("kp.{}.brackets", name), "Poisson brackets", bad.is_empty(), format!("printed brackets; mismatches {:?}", bad)));
        let anti = BRACKET_PAIRS.iter().map(|&(i, j)| bt.antisymmetric(i, j)).collect::<Result<Vec<_>>>()?;
        r.push(Check::new(format!("kp.{}.antisymmetry", name), "Poisson brackets", anti.iter().all(|x| *x), format!("{} pairs", anti.len())));
        let flows = kp::kp_flows(&bt)?;
        for (a, b) in flows.iter().zip(kp::printed_flows(v)?) {
            r.push(Check::new(format!("kp.{}.{}", name, a.label()), "evolution equations", *a == b, format!("{} = {}", a.label(), a.rhs)));
        }
        let e = kp::eliminate(v, &flows)?;
        let (p1, p2, p3, sh) = kp::printed_elimination(v)?;
        let ok = e.v1 == p1 && e.v2 == p2 && e.v0t3 == p3 && e.shift == sh;
        r.push(Check::new(format!("kp.{}.elimination", name), "elimination", ok, format!("v1 = {}; v2 = {}; shift {}", e.v1, e.v2, e.shift)));
        r.push(Check::new(format!("kp.{}.kp", name), "KP equation", e.kp == kp::printed_kp(v, false)?, format!("{} = 0", e.kp)));
        let rs = &e.rescaling;
        r.push(Check::new(
            format!("kp.{}.rescaled", name),
            "KP equation, rescaled",
            e.kp_rescaled == kp::printed_kp(v, true)?,
            format!(
                "v0 -> {} v0, x -> {} x, y^2 -> {} y^2, t -> {} t{}",
                rs.alpha,
                rs.beta,
                rs.gamma_sq,
                rs.delta,
                if rs.is_real() { "" } else { " (y scaled by an imaginary factor)" }
            ),
        ));
        let k = tau::dispersion(&e.kp_rescaled)?;
        let cert = tau::log_tau_certificate(&k);
        r.push(Check::new(
            format!("kp.{}.log-tau", name),
            "bilinear form",
            cert.is_ok(),
            match &cert {
                Ok((c, s)) => format!("u = ({}) (log tau)_xx, s = {}", c, s),
                Err(e) => e.to_string(),
            },
        ));
        let s = tau::derived_s(&e)?;
        let ps = tau::printed_s(v)?;
        r.push(Check::new(format!("kp.{}.bilinear", name), "bilinear form", s == ps, format!("s = {}", s)));
        if let Variant::ThreeD(n) = v {
            let sym = tau::printed_s_symmetric(n as i64)?;
            r.push(Check::new(format!("kp.{}.bilinear-symmetric", name), "3-kpvoSyBili", s == sym, "s = -(sigma2 - 3 psi0^2 sigma3^2), psi0 = -N/(h1 h2)"));
        }
    }
    // jack -> schur and threeD(N = 1) -> jack on every printed equation
    let printed = |v: Variant| -> Result<Vec<kp::DiffPoly>> {
        let mut out: Vec<kp::DiffPoly> = kp::printed_flows(v)?.into_iter().map(|f| f.rhs).collect();
        out.push(kp::printed_kp(v, false)?);
        out.push(kp::printed_kp(v, true)?);
        Ok(out)
    };
    let (sch, jk, t1) = (printed(Variant::Schur)?, printed(Variant::Jack)?, printed(Variant::ThreeD(1))?);
    let down = jk.iter().map(|x| x.map_coeffs(|c| Variant::Schur.specialize(c))).collect::<Result<Vec<_>>>()?;
    r.push(Check::new("kp.identity.jack-schur", "h1 = 1, h2 = -1", down == sch, "flows and KP equations of the Jack case at the Schur point"));
    r.push(Check::new("kp.identity.threeD-jack", "N = 1", t1 == jk, "flows and KP equations of the 3D case at N = 1"));
    let k = ParamRational::parse("(h1*h2-a0^2*h1^2*h2^2*(3*N^2+1))/4")?.subs(Var::A0, &ParamRational::alpha0_miura())?;
    let sym = (&ParamRational::sigma2() - &(&ParamRational::parse("3*psi0^2")? * &ParamRational::sigma3().pow(2)))
        .scale(&rat(1, 4))
        .subs(Var::Psi0, &ParamRational::parse("-N/(h1*h2)")?)?;
    r.push(Check::new("kp.symmetric.dispersion", "3-kpv0Sy", k == sym, "K = (sigma2 - 3 psi0^2 sigma3^2)/4 at psi0 = -N/(h1 h2), alpha0 = -h3/(h1 h2), N symbolic"));
    r.push(Check::new("kp.symmetric.identity", "for any number k", tau::verify_symmetric_identity()?, "k^2 N + h1 h2 a0^2 N (N+k)(N-k) = -(k^2 psi0 sigma2 + psi0^3 sigma3^2)"));
    Ok(r)
}

/// Bilinear forms and Pluecker tau functions.
pub fn tau_suite(cfg: &RunConfig) -> Result<Report> {
    let mut r = Report::new("tau", cfg.to_json());
    let one = ParamRational::one();
    let form = BilinearOp::tau_form(&one);
    let ratio = form.ratio_to(&tau::schur_perp_form()?);
    r.push(Check::new(
        "tau.schur-perp",
        "kpequationS",
        ratio == Some(ParamRational::from_i64(12)),
        format!("tau form = {} x Schur perp form, as bilinear operators", ratio.map(|x| x.to_string()).unwrap_or_else(|| "no multiple of".into())),
    ));
    let trivial = tau::TauPolynomial::from_coeffs([(crate::symfun::Partition::empty(), rat(1, 1)), (crate::symfun::Partition::new(vec![1]), rat(1, 1))].into());
    r.push(Check::new("tau.trivial", "kpequationS", form.apply(&trivial.tau).is_zero(), "tau = 1 + p1"));
    let at = tau::relation_at_schur_point(&tau::jack_relation()?)?;
    let want: std::collections::BTreeMap<_, _> = tau::relation_at_schur_point(&tau::schur_relation())?.into_iter().map(|(k, v)| (k, v.scale(&rat(12, 1)))).collect();
    r.push(Check::new("tau.jack-relation.schur-point", "kpequationJc", at == want, format!("{} surviving terms, each 12 times the Schur relation", at.len())));
    let jf = tau::jack_perp_form()?;
    let target = BilinearOp::tau_form(&tau::printed_s(Variant::Jack)?);
    let (a, b) = (jf.symbol(), target.symbol());
    let differ: Vec<String> = a.keys().chain(b.keys()).filter(|k| a.get(k) != b.get(k)).map(|(x, y)| format!("{:?}|{:?}", &x[..3], &y[..3])).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    r.push(Check::info("tau.jack-perp.generic", "kpequationJ", format!("Y-perp form vs tau form at generic h: {} symbol terms differ {:?}", differ.len(), differ)));
    let rows: Vec<(usize, usize)> = vec![(2, 5), (3, 6)];
    let checks = tau::random_tau_checks(&rows, cfg.random_matrices, cfg.seed)?;
    let hir = checks.iter().filter(|c| c.hirota_zero).count();
    let pl = checks.iter().filter(|c| c.first_plucker_zero).count();
    let bad = checks.iter().find(|c| !(c.hirota_zero && c.first_plucker_zero));
    r.push(Check::new(
        "tau.random.hirota",
        "kpequationS",
        hir == checks.len(),
        format!("{}/{} random tau functions ({} each of 2x5 and 3x6, seed {}){}", hir, checks.len(), cfg.random_matrices, cfg.seed, bad.map(|c| format!("; first failure {:?}", c.matrix)).unwrap_or_default()),
    ));
    r.push(Check::new("tau.random.plucker", "first Pluecker relation", pl == checks.len(), format!("{}/{} coefficient sets", pl, checks.len())));
    let a = vec![vec![rat(1, 1), rat(2, 1), rat(3, 1)], vec![rat(2, 1), rat(4, 1), rat(6, 1)]];
    let e = tau::plucker_tau(&a);
    r.push(Check::new("tau.rank", "rank check", matches!(e, Err(crate::Error::RankError { .. })), "rank one 2x3 matrix is rejected"));
    Ok(r)
}

pub const SUITES: [&str; 5] = ["yangian", "ope", "sigma", "kp", "tau"];

pub fn run(suite: &str, cfg: &RunConfig) -> Result<Report> {
    match suite {
        "yangian" => yangian(cfg),
        "ope" => ope(cfg),
        "sigma" => sigma(cfg),
        "kp" => kp(cfg),
        "tau" => tau_suite(cfg),
        _ => Err(crate::Error::Unsupported(format!("unknown suite {}; expected one of {:?}", suite, SUITES))),
    }
}
