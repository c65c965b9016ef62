//! Bilinear forms of the KP equation and tau functions in the times
//! x_n (x_1 = x, x_2 = y, x_3 = t) with p_n = n x_n, so d/dx_n = n d/dp_n.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::bracket::Variant;
use super::diffpoly::{DiffPoly, Dir, Jet, FIELD_F};
use super::hierarchy::Elimination;
use crate::algebra::{ParamRational, Var};
use crate::error::{Error, Result};
use crate::symfun::{jack, schur, GrowthPath, Partition, PowerSumPolynomial};

/// Derivative counts in x_1 .. x_8.
pub type MultiIndex = [u8; 8];

fn mi(parts: &[u32]) -> Result<MultiIndex> {
    let mut m = [0u8; 8];
    for &p in parts {
        if p == 0 || p > 8 {
            return Err(Error::Unsupported(format!("time x_{} out of range", p)));
        }
        m[p as usize - 1] += 1;
    }
    Ok(m)
}

/// sum c D^a f . D^b g as a map (a, b) -> c.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BilinearOp {
    pub terms: BTreeMap<(MultiIndex, MultiIndex), ParamRational>,
}

impl BilinearOp {
    fn add_term(&mut self, a: MultiIndex, b: MultiIndex, c: &ParamRational) {
        let e = self.terms.entry((a, b)).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    /// 3 t_yy t - 3 t_y t_y - 4 t_tx t + 4 t_t t_x + s (t_xxxx t - 4 t_xxx t_x + 3 t_xx t_xx).
    pub fn tau_form(s: &ParamRational) -> Self {
        let m = |p: &[u32]| mi(p).unwrap();
        let mut op = BilinearOp::default();
        let i = ParamRational::from_i64;
        op.add_term(m(&[2, 2]), m(&[]), &i(3));
        op.add_term(m(&[2]), m(&[2]), &i(-3));
        op.add_term(m(&[1, 3]), m(&[]), &i(-4));
        op.add_term(m(&[3]), m(&[1]), &i(4));
        op.add_term(m(&[1, 1, 1, 1]), m(&[]), s);
        op.add_term(m(&[1, 1, 1]), m(&[1]), &(s * &i(-4)));
        op.add_term(m(&[1, 1]), m(&[1, 1]), &(s * &i(3)));
        op
    }

    /// sum c f^perp tau . g^perp tau, where f^perp is f with p_n -> d/dx_n.
    pub fn from_perp_pairs(pairs: &[(ParamRational, PowerSumPolynomial, PowerSumPolynomial)]) -> Result<Self> {
        let mut op = BilinearOp::default();
        for (c, f, g) in pairs {
            for (mu, a) in f.terms() {
                for (nu, b) in g.terms() {
                    op.add_term(mi(mu.parts())?, mi(nu.parts())?, &(c * &(a * b)));
                }
            }
        }
        Ok(op)
    }

    pub fn scale(&self, c: &ParamRational) -> Self {
        let mut op = BilinearOp::default();
        for ((a, b), x) in &self.terms {
            op.add_term(*a, *b, &(x * c));
        }
        op
    }

    /// The polynomial P(a, b) + P(b, a) of e^{a.x}, e^{b.x}: two forms
    /// agree on B(tau, tau) for every tau exactly when these agree.
    pub fn symbol(&self) -> BTreeMap<(MultiIndex, MultiIndex), ParamRational> {
        let mut out: BTreeMap<(MultiIndex, MultiIndex), ParamRational> = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            for k in [(*a, *b), (*b, *a)] {
                let e = out.entry(k).or_default();
                *e += c;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// The factor r with self = r other as operators on B(tau, tau), if any.
    pub fn ratio_to(&self, other: &BilinearOp) -> Option<ParamRational> {
        let (a, b) = (self.symbol(), other.symbol());
        let (k, x) = b.iter().next()?;
        let r = a.get(k)?.checked_div(x).ok()?;
        let scaled: BTreeMap<_, _> = b.iter().map(|(k, v)| (*k, v * &r)).collect();
        (scaled == a).then_some(r)
    }

    /// B(tau, tau) for a polynomial tau in the power sums.
    pub fn apply(&self, tau: &PowerSumPolynomial) -> PowerSumPolynomial {
        let mut cache: HashMap<MultiIndex, PowerSumPolynomial> = HashMap::new();
        let mut get = |m: MultiIndex| -> PowerSumPolynomial {
            cache
                .entry(m)
                .or_insert_with(|| {
                    let mut f = tau.clone();
                    for (i, &k) in m.iter().enumerate() {
                        for _ in 0..k {
                            f = d_time(&f, i as u32 + 1);
                        }
                    }
                    f
                })
                .clone()
        };
        let degree = tau.degree_bound() * 2;
        let mut out = PowerSumPolynomial::zero(degree);
        for ((a, b), c) in &self.terms {
            let fa = get(*a).with_degree(degree);
            let fb = get(*b);
            out = out.add(&fa.mul(&fb).scale(c));
        }
        out
    }
}

/// d/dx_n = n d/dp_n.
pub fn d_time(f: &PowerSumPolynomial, n: u32) -> PowerSumPolynomial {
    let mut out = PowerSumPolynomial::zero(f.degree_bound());
    for (mu, c) in f.terms() {
        let k = mu.multiplicity(n);
        if k > 0 {
            out.add_term(mu.without_part(n).unwrap(), &c.scale(&BigRational::from_integer(BigInt::from(k as u64 * n as u64))));
        }
    }
    out
}

fn part(s: &str) -> Partition {
    Partition::parse(s).expect("static partition")
}

/// S_22^perp t . t - S_21^perp t . S_1^perp t + S_2^perp t . S_11^perp t.
pub fn schur_perp_form() -> Result<BilinearOp> {
    let s = |l: &str| schur(&part(l), 8);
    let one = PowerSumPolynomial::one(8);
    let i = ParamRational::from_i64;
    BilinearOp::from_perp_pairs(&[(i(1), s("2,2"), one), (i(-1), s("2,1"), s("1")), (i(1), s("2"), s("1,1"))])
}

/// A Jack function label: partition and, where printed, its growth path.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Label {
    pub shape: String,
    pub path: Option<String>,
}

fn lab(shape: &str, path: Option<&str>) -> Label {
    Label { shape: shape.into(), path: path.map(|p| p.into()) }
}

/// The printed deformed relation: terms (coefficient, Y label, Y label).
pub fn jack_relation() -> Result<Vec<(ParamRational, Label, Label)>> {
    let a = "(3*h1+4*h2)*(h1+h2)";
    let b = "(3*h2+4*h1)*(h1+h2)";
    let rows: Vec<(String, Label, Label)> = vec![
        (a.into(), lab("4", None), lab("", None)),
        (b.into(), lab("1,1,1,1", None), lab("", None)),
        (format!("2*{}*(2*h1-h2)/(h1-h2)", a), lab("3,1", Some("h1,2h1,h2")), lab("", None)),
        (format!("2*{}*(2*h2-h1)/(h2-h1)", b), lab("2,1,1", Some("h2,2h2,h1")), lab("", None)),
        ("3*(5*h1^2+4*h1*h2+5*h2^2)*(h1-h2)/(h1-2*h2)".into(), lab("2,2", Some("h1,h2,h1+h2")), lab("", None)),
        (format!("-4*{}", a), lab("3", None), lab("1", None)),
        ("-6*(8*h1^2+13*h1*h2+8*h2^2)*(h1-h2)/(h1-2*h2)".into(), lab("2,1", Some("h1,h2")), lab("1", None)),
        (format!("-4*{}", b), lab("1,1,1", None), lab("1", None)),
        (format!("3*{}", a), lab("2", None), lab("2", None)),
        ("12*(h1^2+h1*h2+h2^2)".into(), lab("2", None), lab("1,1", None)),
        (format!("3*{}", b), lab("1,1", None), lab("1,1", None)),
    ];
    rows.into_iter().map(|(c, x, y)| Ok((ParamRational::parse(&c)?, x, y))).collect()
}

/// The printed Schur relation c_22 c_0 - c_21 c_1 + c_2 c_11.
pub fn schur_relation() -> Vec<(ParamRational, Label, Label)> {
    let i = ParamRational::from_i64;
    vec![(i(1), lab("2,2", None), lab("", None)), (i(-1), lab("2,1", None), lab("1", None)), (i(1), lab("2", None), lab("1,1", None))]
}

fn y_of(l: &Label) -> Result<PowerSumPolynomial> {
    let p = part(&l.shape);
    match &l.path {
        Some(s) => jack(&p, Some(&GrowthPath::parse(s)?)),
        None => jack(&p, None),
    }
}

/// The deformed equation as Y^perp pairs.
pub fn jack_perp_form() -> Result<BilinearOp> {
    let mut pairs = Vec::new();
    for (c, a, b) in jack_relation()? {
        pairs.push((c, y_of(&a)?, y_of(&b)?));
    }
    BilinearOp::from_perp_pairs(&pairs)
}

/// A relation with its coefficients at h1 = 1, h2 = -1, growth paths
/// dropped and equal pairs merged.
pub fn relation_at_schur_point(rel: &[(ParamRational, Label, Label)]) -> Result<BTreeMap<(String, String), ParamRational>> {
    let mut out: BTreeMap<(String, String), ParamRational> = BTreeMap::new();
    for (c, a, b) in rel {
        let v = c.subs_i64(Var::H1, 1)?.subs_i64(Var::H2, -1)?;
        let key = if a.shape <= b.shape { (a.shape.clone(), b.shape.clone()) } else { (b.shape.clone(), a.shape.clone()) };
        let e = out.entry(key).or_default();
        *e += &v;
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Evaluate a relation on coefficients keyed by partition text.
pub fn evaluate_relation(rel: &[(ParamRational, Label, Label)], c: &BTreeMap<String, BigRational>) -> Result<ParamRational> {
    let get = |l: &Label| ParamRational::from_rat(c.get(&l.shape).cloned().unwrap_or_else(BigRational::zero));
    let mut s = ParamRational::zero();
    for (k, a, b) in rel {
        s += &(k * &(get(a) * get(b)));
    }
    Ok(s)
}

fn det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else { return BigRational::zero() };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            for k in c..n {
                let x = &f * &m[c][k];
                m[r][k] -= x;
            }
        }
    }
    d
}

fn rank(a: &[Vec<BigRational>]) -> usize {
    let mut m = a.to_vec();
    let (rows, cols) = (m.len(), m.first().map_or(0, |r| r.len()));
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(p, r);
        for i in r + 1..rows {
            let f = &m[i][c] / &m[r][c];
            for k in c..cols {
                let x = &f * &m[r][k];
                m[i][k] -= x;
            }
        }
        r += 1;
    }
    r
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// A tau polynomial with its Schur coefficients.
#[derive(Clone, Debug)]
pub struct TauPolynomial {
    pub coeffs: BTreeMap<Partition, BigRational>,
    pub tau: PowerSumPolynomial,
}

impl TauPolynomial {
    /// sum c_lambda S_lambda.
    pub fn from_coeffs(coeffs: BTreeMap<Partition, BigRational>) -> Self {
        let top = coeffs.keys().map(|l| l.size()).max().unwrap_or(0).max(4);
        let mut tau = PowerSumPolynomial::zero(top);
        for (l, c) in &coeffs {
            tau = tau.add(&schur(l, top).scale(&ParamRational::from_rat(c.clone())));
        }
        TauPolynomial { coeffs, tau }
    }

    pub fn coeff_map(&self) -> BTreeMap<String, BigRational> {
        self.coeffs.iter().map(|(l, c)| (l.parts().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","), c.clone())).collect()
    }
}

/// tau = sum Delta_I(A) S_lambda over the maximal minors of a k x n matrix,
/// with columns I = {i_1 < ... < i_k} and lambda_j = i_{k+1-j} - (k+1-j).
pub fn plucker_tau(a: &[Vec<BigRational>]) -> Result<TauPolynomial> {
    let k = a.len();
    let n = a.first().map_or(0, |r| r.len());
    if k > n || a.iter().any(|r| r.len() != n) {
        return Err(Error::Unsupported(format!("need a k x n matrix with k <= n, got {} rows", k)));
    }
    let r = rank(a);
    if r < k {
        return Err(Error::RankError { rank: r, rows: k });
    }
    let mut coeffs = BTreeMap::new();
    for cols in combinations(n, k) {
        let m: Vec<Vec<BigRational>> = a.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
        let d = det(m);
        if d.is_zero() {
            continue;
        }
        let lambda: Vec<u32> = (1..=k).map(|j| (cols[k - j] + 1 - (k + 1 - j)) as u32).collect();
        coeffs.insert(Partition::new(lambda), d);
    }
    Ok(TauPolynomial::from_coeffs(coeffs))
}

/// A k x n matrix of small random rationals of full rank.
pub fn random_matrix(k: usize, n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<BigRational>> {
    loop {
        let a: Vec<Vec<BigRational>> = (0..k)
            .map(|_| (0..n).map(|_| BigRational::new(BigInt::from(rng.gen_range(-9i64..=9)), BigInt::from(rng.gen_range(1i64..=4)))).collect())
            .collect();
        if rank(&a) == k {
            return a;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TauCheck {
    pub shape: (usize, usize),
    pub matrix: Vec<Vec<String>>,
    /// Number of nonzero Schur coefficients.
    pub support: usize,
    pub hirota_zero: bool,
    pub first_plucker_zero: bool,
}

/// The Schur bilinear form and the first Pluecker relation on `count`
/// seeded random matrices of each shape.
pub fn random_tau_checks(shapes: &[(usize, usize)], count: usize, seed: u64) -> Result<Vec<TauCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut jobs = Vec::new();
    for &(k, n) in shapes {
        for _ in 0..count {
            jobs.push((k, n, random_matrix(k, n, &mut rng)));
        }
    }
    let op = BilinearOp::tau_form(&ParamRational::one());
    let rel = schur_relation();
    jobs.into_par_iter()
        .map(|(k, n, a)| {
            let t = plucker_tau(&a)?;
            let hirota_zero = op.apply(&t.tau).is_zero();
            let first_plucker_zero = evaluate_relation(&rel, &t.coeff_map())?.is_zero();
            Ok(TauCheck {
                shape: (k, n),
                matrix: a.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
                support: t.coeffs.len(),
                hirota_zero,
                first_plucker_zero,
            })
        })
        .collect()
}

/// Check that 3/4 u_yy - (u_t + k u_xxx - 3/2 u u_x)_x with u = c F_xx,
/// F = log tau, is (c/4) d_x^2 of the bilinear form over tau^2, for
/// c = -8k and s = -4k. Returns (c, s) on success.
pub fn log_tau_certificate(k: &ParamRational) -> Result<(ParamRational, ParamRational)> {
    let c = k.scale(&BigRational::from_integer(BigInt::from(-8)));
    let s = k.scale(&BigRational::from_integer(BigInt::from(-4)));
    let f = DiffPoly::jet(Jet::new(FIELD_F));
    // tau_{a+e}/tau = d_e(tau_a/tau) + (tau_a/tau) F_e
    let ratio = |dirs: &[Dir]| {
        let mut r = DiffPoly::constant(ParamRational::one());
        for &d in dirs {
            r = r.d(d).add(&r.mul(&f.d(d)));
        }
        r
    };
    use Dir::{T, X, Y};
    let bil = ratio(&[Y, Y])
        .sub(&ratio(&[Y]).pow(2))
        .scale(&ParamRational::from_i64(3))
        .sub(&ratio(&[X, T]).sub(&ratio(&[X]).mul(&ratio(&[T]))).scale(&ParamRational::from_i64(4)))
        .add(&ratio(&[X, X, X, X]).sub(&ratio(&[X, X, X]).mul(&ratio(&[X])).scale(&ParamRational::from_i64(4))).add(&ratio(&[X, X]).pow(2).scale(&ParamRational::from_i64(3))).scale(&s));
    let u = f.d(X).d(X).scale(&c);
    let inner = u.d(T).add(&u.d(X).d(X).d(X).scale(k)).sub(&u.mul(&u.d(X)).scale(&ParamRational::frac(3, 2)));
    let pde = u.d(Y).d(Y).scale(&ParamRational::frac(3, 4)).sub(&inner.d(X));
    let lhs = bil.d(X).d(X).scale(&c);
    let rhs = pde.scale(&ParamRational::from_i64(4));
    if lhs == rhs {
        Ok((c, s))
    } else {
        Err(Error::Evaluation { point: format!("k = {}", k), reason: format!("residual {}", lhs.sub(&rhs)) })
    }
}

/// k^2 N + h1 h2 a0^2 N (N+k)(N-k), its product form, and
/// -(k^2 psi0 sigma2 + psi0^3 sigma3^2), at psi0 = -N/(h1 h2) and
/// a0 = -h3/(h1 h2), with k, N, h1, h2 symbolic. True when all three agree.
pub fn verify_symmetric_identity() -> Result<bool> {
    let p = |s: &str| ParamRational::parse(s);
    let sub = |x: ParamRational| -> Result<ParamRational> {
        x.subs(Var::A0, &ParamRational::alpha0_miura())?.subs(Var::Psi0, &p("-N/(h1*h2)")?)
    };
    let lhs = sub(p("k^2*N+h1*h2*a0^2*N*(N+k)*(N-k)")?)?;
    let (h1, h2, h3) = (ParamRational::h1(), ParamRational::h2(), ParamRational::h3());
    let psi = p("psi0")?;
    let kk = p("k")?;
    let prod = &(&kk + &(&psi * &(&h1 * &h2))) * &(&(&kk + &(&psi * &(&h1 * &h3))) * &(&kk + &(&psi * &(&h2 * &h3))));
    let mid = sub(&kk.pow(3) - &prod)?;
    let rhs = sub(-(&(&kk.pow(2) * &(&psi * &ParamRational::sigma2())) + &(&psi.pow(3) * &ParamRational::sigma3().pow(2))))?;
    Ok(lhs == mid && mid == rhs)
}

/// K in 3/4 u_yy - (u_t + K u_xxx - 3/2 u u_x)_x, read off an equation
/// normalized to that v0_yy coefficient.
pub fn dispersion(kp: &DiffPoly) -> Result<ParamRational> {
    let yy = kp.coeff(&[Jet::parse("v0_yy")?]);
    if yy != ParamRational::frac(3, 4) {
        return Err(Error::Unsupported(format!("v0_yy coefficient {} is not 3/4", yy)));
    }
    Ok(-kp.coeff(&[Jet::parse("v0_xxxx")?]))
}

/// The printed s of the bilinear form, at a0 on the Miura line.
pub fn printed_s(variant: Variant) -> Result<ParamRational> {
    let h3 = "(-h1-h2)";
    match variant {
        Variant::Schur => Ok(ParamRational::one()),
        Variant::Jack => ParamRational::parse(&format!("-(h1*h2-4*{h3}^2)")),
        Variant::ThreeD(n) => ParamRational::parse(&format!("-(h1*h2-(3*N^2+1)*{h3}^2)"))?.subs_i64(Var::N, n as i64),
    }
}

/// The same s as -(sigma2 - 3 psi0^2 sigma3^2) with psi0 = -N/(h1 h2).
pub fn printed_s_symmetric(n: i64) -> Result<ParamRational> {
    let x = -(&ParamRational::sigma2() - &(&ParamRational::parse("3*psi0^2")? * &ParamRational::sigma3().pow(2)));
    x.subs(Var::Psi0, &ParamRational::parse("-N/(h1*h2)")?)?.subs_i64(Var::N, n)
}

/// s = -4K from a derived equation, with a0 put on the Miura line.
pub fn derived_s(e: &Elimination) -> Result<ParamRational> {
    let k = dispersion(&e.kp_rescaled)?;
    let k = match e.variant {
        Variant::Schur => k,
        _ => k.subs(Var::A0, &ParamRational::alpha0_miura())?,
    };
    Ok(k.scale(&BigRational::from_integer(BigInt::from(-4))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn trivial_taus() {
        let op = BilinearOp::tau_form(&ParamRational::one());
        assert!(op.apply(&PowerSumPolynomial::one(4)).is_zero());
        let t = TauPolynomial::from_coeffs([(Partition::empty(), q(1)), (part("1"), q(1))].into());
        assert!(op.apply(&t.tau).is_zero());
    }

    #[test]
    fn two_by_four_minors() {
        let a = vec![vec![q(1), q(2), q(-1), q(3)], vec![q(0), q(5), q(2), q(-4)]];
        let t = plucker_tau(&a).unwrap();
        assert!(evaluate_relation(&schur_relation(), &t.coeff_map()).unwrap().is_zero());
        assert!(BilinearOp::tau_form(&ParamRational::one()).apply(&t.tau).is_zero());
    }

    #[test]
    fn rank_deficient() {
        let a = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        assert!(matches!(plucker_tau(&a), Err(Error::RankError { rank: 1, rows: 2 })));
    }

    #[test]
    fn schur_form_is_twelfth_of_tau_form() {
        let r = BilinearOp::tau_form(&ParamRational::one()).ratio_to(&schur_perp_form().unwrap());
        assert_eq!(r, Some(ParamRational::from_i64(12)));
    }

    #[test]
    fn symmetric_identity() {
        assert!(verify_symmetric_identity().unwrap());
    }
}
