//! Conformal mode tables, Poisson brackets of the KP fields v_n and the
//! evolution equations they generate.
//!
//! With z = e^{ix} and W_l(x) = sum_m V_{l,m} e^{-imx}, the cylinder fields
//! are V~_1 = i W_1, V~_2 = -W_2 + c2, V~_3 = -i W_3 + i t3 W_1 and
//! V~_4 = W_4 + s4 W_2, and v_n = (-i)^{n+1} V~_{n+1}. So
//! v_0 = W_1, v_1 = W_2 - c2, v_2 = W_3 - t3 W_1, v_3 = W_4 + s4 W_2.
//! The shifts come from the Schwarzian of z = e^{ix}, which is 1/2: a
//! (z-w)^-4 pole a X in V_2 A adds (a/12) z' X to the transformed A.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::diffpoly::{DiffPoly, Jet};
use super::psdo::PseudoDiffOp;
use crate::algebra::{ParamRational, Var};
use crate::error::{Error, Result};
use crate::vertex::catalog::Workspace;
use crate::vertex::expr::Regime;
use crate::vertex::modes::{v_commutator, ModeCommutator, ModeTarget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    /// N = 1, h1 = 1, h2 = -1, alpha0 = 0.
    Schur,
    /// N = 1 with h1, h2, alpha0 free.
    Jack,
    /// N layers with h1, h2, alpha0 free.
    ThreeD(usize),
}

impl Variant {
    pub fn name(&self) -> String {
        match self {
            Variant::Schur => "schur".into(),
            Variant::Jack => "jack".into(),
            Variant::ThreeD(n) => format!("threeD(N={})", n),
        }
    }

    pub fn regime(&self) -> Regime {
        match self {
            Variant::Schur => Regime::BOSON,
            _ => Regime::GENERIC,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Variant::ThreeD(n) => *n,
            _ => 1,
        }
    }

    /// Bring a printed coefficient (symbolic N, h1, h2, a0) to this variant.
    pub fn specialize(&self, x: &ParamRational) -> Result<ParamRational> {
        match self {
            Variant::Schur => x.subs_i64(Var::N, 1)?.subs_i64(Var::A0, 0)?.subs_i64(Var::H1, 1)?.subs_i64(Var::H2, -1),
            Variant::Jack => x.subs_i64(Var::N, 1),
            Variant::ThreeD(n) => x.subs_i64(Var::N, *n as i64),
        }
    }
}

/// The constants c2, t3, s4 of the cylinder fields (see the module docs).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModeTable {
    pub variant: Variant,
    pub c2: ParamRational,
    pub t3: ParamRational,
    pub s4: ParamRational,
}

impl ModeTable {
    /// v_n as a combination of the W_l (constants dropped).
    fn v_in_w(&self, i: u8) -> Vec<(usize, ParamRational)> {
        let one = ParamRational::one();
        match i {
            0 => vec![(1, one)],
            1 => vec![(2, one)],
            2 => vec![(3, one), (1, -&self.t3)],
            _ => vec![(4, one), (2, self.s4.clone())],
        }
    }

    /// W_l as a differential polynomial in the v_n.
    fn w_in_v(&self, l: usize) -> DiffPoly {
        let v = |i| DiffPoly::field(i);
        let c2 = DiffPoly::constant(self.c2.clone());
        match l {
            1 => v(0),
            2 => v(1).add(&c2),
            3 => v(2).add(&v(0).scale(&self.t3)),
            _ => v(3).sub(&v(1).add(&c2).scale(&self.s4)),
        }
    }

    pub fn describe(&self) -> Vec<String> {
        vec![
            "V~1 = i W1".into(),
            format!("V~2 = -W2 + ({})", self.c2),
            format!("V~3 = -i W3 + i ({}) W1", self.t3),
            format!("V~4 = W4 + ({}) W2", self.s4),
        ]
    }
}

/// The printed tables, in the form (c2, t3, s4) with N, h1, h2, a0 free.
pub fn printed_mode_table(variant: Variant) -> Result<ModeTable> {
    let (c2, t3, s4) = match variant {
        Variant::Schur => ("1/24", "1/12", "-7/20"),
        Variant::Jack => ("1/24", "-h1*h2/12", "-(-7*h1*h2/20+a0^2*h1^2*h2^2/5)"),
        Variant::ThreeD(_) => (
            "(N+h1*h2*a0^2*N*(N+1)*(N-1))/24",
            "-h1*h2*(1+(N+1)*(N-1)*a0^2*h1*h2)/12",
            "h1*h2*(7+a0^2*h1*h2*(3*N^2-7))/20",
        ),
    };
    let f = |s: &str| variant.specialize(&ParamRational::parse(s)?);
    Ok(ModeTable { variant, c2: f(c2)?, t3: f(t3)?, s4: f(s4)? })
}

fn pole_coeff(c: &ModeCommutator, order: u32, target: ModeTarget) -> ParamRational {
    c.terms.iter().filter(|t| t.order == order && t.target == target).map(|t| t.coeff.clone()).fold(ParamRational::zero(), |a, b| &a + &b)
}

/// Mode commutators [V_j, V_k] for one variant, computed once.
pub struct ModeSource {
    pub variant: Variant,
    ws: Workspace,
    cache: BTreeMap<(usize, usize), ModeCommutator>,
}

impl ModeSource {
    pub fn new(variant: Variant) -> Self {
        ModeSource { variant, ws: Workspace::new(), cache: BTreeMap::new() }
    }

    pub fn commutator(&mut self, j: usize, k: usize) -> Result<&ModeCommutator> {
        if !self.cache.contains_key(&(j, k)) {
            let c = v_commutator(&mut self.ws, j, k, self.variant.regime(), self.variant.n())?;
            self.cache.insert((j, k), c);
        }
        Ok(&self.cache[&(j, k)])
    }

    /// The cylinder constants from the measured (z-w)^-4 poles of V_2 V_j.
    pub fn mode_table(&mut self) -> Result<ModeTable> {
        let twelfth = ParamRational::frac(1, 12);
        let c2 = &pole_coeff(self.commutator(2, 2)?, 4, ModeTarget::Central) * &twelfth;
        let t3 = &pole_coeff(self.commutator(2, 3)?, 4, ModeTarget::V { l: 1, d: 0 }) * &twelfth;
        let s4 = -(&pole_coeff(self.commutator(2, 4)?, 4, ModeTarget::V { l: 2, d: 0 }) * &twelfth);
        Ok(ModeTable { variant: self.variant, c2, t3, s4 })
    }
}

/// {v_i(x), v_j(y)} = sum_r coeffs[r](x) d_x^r delta(x-y).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bracket {
    pub pair: (u8, u8),
    pub coeffs: Vec<DiffPoly>,
}

impl Bracket {
    pub fn operator(&self) -> PseudoDiffOp {
        let c = self.coeffs.iter().enumerate().map(|(r, a)| (r as i32, a.clone())).collect();
        PseudoDiffOp::differential(c).expect("nonnegative orders")
    }

    fn from_map(pair: (u8, u8), m: BTreeMap<u32, DiffPoly>) -> Self {
        let len = m.iter().filter(|(_, v)| !v.is_zero()).map(|(r, _)| *r as usize + 1).max().unwrap_or(0);
        let coeffs = (0..len).map(|r| m.get(&(r as u32)).cloned().unwrap_or_default()).collect();
        Bracket { pair, coeffs }
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(r, c)| format!("[{}] d^{} delta", c, r))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[derive(Clone, Debug)]
pub struct BracketTable {
    pub table: ModeTable,
    pub brackets: BTreeMap<(u8, u8), Bracket>,
}

/// Polynomial in (M, n) with M = m + n, keyed by the exponents.
type Poly2 = BTreeMap<(u32, u32), BigRational>;

fn poly2_mul_linear(p: &Poly2, a: i64, b: i64, c: i64) -> Poly2 {
    // times (a M + b n + c)
    let mut r = Poly2::new();
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    for ((i, j), v) in p {
        for (di, dj, f) in [(1, 0, a), (0, 1, b), (0, 0, c)] {
            if f != 0 {
                *r.entry((i + di, j + dj)).or_insert_with(BigRational::zero) += v * q(f);
            }
        }
    }
    r.retain(|_, v| !v.is_zero());
    r
}

/// The mode coefficient of one commutator term as a polynomial in (M, n).
fn term_poly(lhs_weight: u32, order: u32, target: ModeTarget) -> Poly2 {
    let mut p: Poly2 = [((0, 0), BigRational::one())].into();
    // binom(m + h - 1, r - 1) with m = M - n
    let h = lhs_weight as i64;
    let mut fact = BigRational::one();
    for s in 0..(order as i64 - 1) {
        p = poly2_mul_linear(&p, 1, -1, h - 1 - s);
        fact *= BigRational::from_integer(BigInt::from(s + 1));
    }
    for v in p.values_mut() {
        *v /= &fact;
    }
    if let ModeTarget::V { l, d } = target {
        for i in 0..d as i64 {
            p = poly2_mul_linear(&p, -1, 0, -(l as i64 + i));
        }
    }
    p
}

/// -i * i^a * (-i)^b as +-1; a non-real factor is an error.
fn phase(a: u32, b: u32) -> Result<i64> {
    match (3 + a + 3 * b) % 4 {
        0 => Ok(1),
        2 => Ok(-1),
        _ => Err(Error::Unsupported(format!("imaginary bracket term M^{} n^{}", a, b))),
    }
}

impl BracketTable {
    /// Brackets for the given pairs, from the mode commutators and `table`.
    pub fn derive(src: &mut ModeSource, table: &ModeTable, pairs: &[(u8, u8)]) -> Result<Self> {
        let mut brackets = BTreeMap::new();
        for &(i, j) in pairs {
            // (target l, 0 = central; power of M; power of n) -> coefficient
            let mut sums: BTreeMap<(usize, u32, u32), ParamRational> = BTreeMap::new();
            for (k, ck) in table.v_in_w(i) {
                for (l, cl) in table.v_in_w(j) {
                    let pref = &ck * &cl;
                    let comm = src.commutator(k, l)?.clone();
                    for t in &comm.terms {
                        for ((a, b), v) in term_poly(comm.lhs_weight, t.order, t.target) {
                            if t.target == ModeTarget::Central && a > 0 {
                                continue;
                            }
                            let e = sums.entry((t.target.index(), a, b)).or_default();
                            *e += &(&pref * &t.coeff).scale(&v);
                        }
                    }
                }
            }
            let mut acc: BTreeMap<u32, DiffPoly> = BTreeMap::new();
            for ((l, a, b), c) in sums {
                if c.is_zero() {
                    continue;
                }
                let c = c.scale(&BigRational::from_integer(BigInt::from(phase(a, b)?)));
                let f = if l == 0 { DiffPoly::constant(c) } else { table.w_in_v(l).dx_n(a).scale(&c) };
                let e = acc.entry(b).or_default();
                *e = e.add(&f);
            }
            brackets.insert((i, j), Bracket::from_map((i, j), acc));
        }
        Ok(BracketTable { table: table.clone(), brackets })
    }

    pub fn get(&self, i: u8, j: u8) -> Result<&Bracket> {
        self.brackets.get(&(i, j)).ok_or_else(|| Error::Unsupported(format!("bracket {{v{}, v{}}} not in the table", i, j)))
    }

    /// {v_i(x), v_j(y)} + {v_j(y), v_i(x)} = 0 as distributions, i.e. the
    /// operator of (i, j) is minus the adjoint of the operator of (j, i).
    pub fn antisymmetric(&self, i: u8, j: u8) -> Result<bool> {
        let a = self.get(i, j)?.operator();
        let b = self.get(j, i)?.operator().adjoint()?;
        let s = a.add(&b);
        Ok(s.coeffs.values().all(|c| c.is_zero()))
    }

    /// dv_i/dt = {v_i, H} = sum_j P_ij (delta H / delta v_j).
    pub fn evolve(&self, i: u8, h: &DiffPoly) -> Result<DiffPoly> {
        let mut fields: Vec<u8> = h.jets().iter().map(|j| j.field).collect();
        fields.dedup();
        let mut r = DiffPoly::zero();
        for j in fields {
            let e = h.euler(j)?;
            if e.is_zero() {
                continue;
            }
            r = r.add(&self.get(i, j)?.operator().apply(&e)?);
        }
        Ok(r)
    }
}

/// Pairs computed for every variant: everything needed by H_0..H_3 and
/// its mirror for the antisymmetry check.
pub const BRACKET_PAIRS: [(u8, u8); 10] = [(0, 0), (0, 1), (1, 0), (0, 2), (2, 0), (1, 1), (1, 2), (2, 1), (0, 3), (3, 0)];

/// The printed bracket lists, as (pair, [(r, coefficient, jet)]).
pub fn printed_brackets(variant: Variant) -> Result<Vec<Bracket>> {
    // {v0, v3} coefficient K and {v1, v2} coefficient G
    let (k, g, c00) = match variant {
        Variant::Schur => ("1/10", "-1", "1"),
        Variant::Jack => ("-h1*h2/10+a0^2*h1^2*h2^2/5", "h1*h2", "-1/(h1*h2)"),
        Variant::ThreeD(_) => ("h1*h2*(-1+a0^2*h1*h2*(N^2+1))/10", "h1*h2*(1+(N+1)*(N-1)*a0^2*h1*h2)", "-N/(h1*h2)"),
    };
    let s = |t: &str| t.to_string();
    let list: Vec<((u8, u8), Vec<(u32, String, &str)>)> = vec![
        (
            (0, 3),
            vec![
                (0, format!("-5*({})", k), "v0_xxx"),
                (1, format!("-10*({})", k), "v0_xx"),
                (2, format!("-6*({})", k), "v0_x"),
                (3, format!("-({})", k), "v0"),
                (0, s("3"), "v2_x"),
                (1, s("3"), "v2"),
            ],
        ),
        ((0, 0), vec![(1, s(c00), "")]),
        ((0, 1), vec![(0, s("1"), "v0_x"), (1, s("1"), "v0")]),
        ((0, 2), vec![(0, s("2"), "v1_x"), (1, s("2"), "v1")]),
        (
            (1, 2),
            vec![
                (0, s("2"), "v2_x"),
                (1, s("3"), "v2"),
                (0, format!("({})/6", g), "v0_xxx"),
                (1, format!("({})/2", g), "v0_xx"),
                (2, format!("({})/2", g), "v0_x"),
                (3, format!("({})/6", g), "v0"),
            ],
        ),
    ];
    let mut out = Vec::new();
    for (pair, terms) in list {
        let mut m: BTreeMap<u32, DiffPoly> = BTreeMap::new();
        for (r, c, jet) in terms {
            let c = variant.specialize(&ParamRational::parse(&c)?)?;
            let f = if jet.is_empty() { DiffPoly::constant(c) } else { DiffPoly::jet(Jet::parse(jet)?).scale(&c) };
            let e = m.entry(r).or_default();
            *e = e.add(&f);
        }
        out.push(Bracket::from_map(pair, m));
    }
    Ok(out)
}
