//! Mode commutators from OPEs. For A of weight h_A,
//! [A_m, B_n] = sum_r binom(m + h_A - 1, r - 1) (C_r)_{m+n},
//! with C_r the (z-w)^-r pole and (d C)_k = -(k + h_C) C_k.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::catalog::{decompose, Workspace};
use super::expr::Regime;
use super::ope::OpeResult;
use super::wstructure::binom;
use crate::algebra::ParamRational;
use crate::error::{Error, Result};

/// What a pole coefficient is expanded on: the identity or V_l^{(d)}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ModeTarget {
    Central,
    V { l: usize, d: u32 },
}

impl ModeTarget {
    fn name(&self) -> String {
        match self {
            ModeTarget::Central => "1".into(),
            ModeTarget::V { l, d } => format!("V{}{}", l, "'".repeat(*d as usize)),
        }
    }

    /// Index of the resulting mode V_{l,m+n}; 0 for the central term.
    pub fn index(&self) -> usize {
        match self {
            ModeTarget::Central => 0,
            ModeTarget::V { l, .. } => *l,
        }
    }

    /// Factor multiplying V_{l,p} in the p-th mode of this field.
    fn mode_factor(&self, p: i64) -> BigRational {
        match *self {
            ModeTarget::Central => BigRational::from_integer(BigInt::from((p == 0) as i64)),
            ModeTarget::V { l, d } => {
                let mut r = BigRational::from_integer(BigInt::from(1));
                for i in 0..d as i64 {
                    r *= BigRational::from_integer(BigInt::from(-(p + l as i64 + i)));
                }
                r
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModeTerm {
    pub order: u32,
    pub target: ModeTarget,
    pub coeff: ParamRational,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModeCommutator {
    pub lhs_weight: u32,
    pub terms: Vec<ModeTerm>,
}

impl ModeCommutator {
    /// [A_m, B_n] as coefficients of V_{l,m+n}; key 0 is the central term.
    pub fn eval(&self, m: i64, n: i64) -> BTreeMap<usize, ParamRational> {
        let mut out: BTreeMap<usize, ParamRational> = BTreeMap::new();
        for t in &self.terms {
            let f = binom(m + self.lhs_weight as i64 - 1, (t.order - 1) as usize) * t.target.mode_factor(m + n);
            let e = out.entry(t.target.index()).or_default();
            *e = &*e + &t.coeff.scale(&f);
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| format!("({}) binom(m+{},{}) ({})_(m+n)", t.coeff, self.lhs_weight as i64 - 1, t.order - 1, t.target.name()))
            .collect();
        parts.join(" + ")
    }
}

/// Expand every pole of `o` on V_l^{(d)} (l <= 4) and the identity, in
/// the given regime at N = `n`.
pub fn modes_from_ope(ws: &mut Workspace, o: &OpeResult, lhs_weight: u32, rhs_weight: u32, regime: Regime) -> Result<ModeCommutator> {
    let n = o.n;
    let mut terms = Vec::new();
    for (&r, f) in &o.poles {
        let w = (lhs_weight + rhs_weight) as i64 - r as i64;
        if w < 0 {
            return Err(Error::BasisMismatch { order: r as usize, detail: "pole beyond the total weight".into() });
        }
        let targets: Vec<ModeTarget> = if w == 0 {
            vec![ModeTarget::Central]
        } else {
            (1..=4usize.min(w as usize)).map(|l| ModeTarget::V { l, d: (w as usize - l) as u32 }).collect()
        };
        let ctx = ws.ctx(n)?;
        let basis = targets.iter().map(|t| regime.field(&ctx.field(&t.name())?)).collect::<Result<Vec<_>>>()?;
        let x = decompose(f, &basis, r as usize)?
            .ok_or_else(|| Error::BasisMismatch { order: r as usize, detail: "V-basis not independent".into() })?;
        for (t, c) in targets.into_iter().zip(x) {
            if !c.is_zero() {
                terms.push(ModeTerm { order: r, target: t, coeff: c });
            }
        }
    }
    Ok(ModeCommutator { lhs_weight, terms })
}

/// [V_{j,m}, V_{k,n}] from the V_j V_k OPE.
pub fn v_commutator(ws: &mut Workspace, j: usize, k: usize, regime: Regime, n: usize) -> Result<ModeCommutator> {
    let o = ws.ope(&format!("V{}", j), &format!("V{}", k), regime, n)?;
    modes_from_ope(ws, &o, j as u32, k as u32, regime)
}

/// [V_{k,n}, V_{j,m}] computed from the reversed OPE equals -[V_{j,m}, V_{k,n}].
pub fn antisymmetric(ws: &mut Workspace, j: usize, k: usize, regime: Regime, n: usize, range: i64) -> Result<bool> {
    let a = v_commutator(ws, j, k, regime, n)?;
    let b = v_commutator(ws, k, j, regime, n)?;
    for m in -range..=range {
        for p in -range..=range {
            let x = a.eval(m, p);
            let y: BTreeMap<usize, ParamRational> = b.eval(p, m).into_iter().map(|(l, v)| (l, -v)).collect();
            if x != y {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

type Expected = fn(i64, i64) -> Vec<(usize, String)>;

/// The commutators printed for the Miura fields, with N, h1, h2, a0 free.
/// Each entry gives [V_{j,m}, V_{k,n}] as (l, coefficient formula).
pub fn printed_commutators() -> Vec<(&'static str, usize, usize, Expected)> {
    vec![
        ("v1v1", 1, 1, |m, n| if m + n == 0 { vec![(0, format!("-N/(h1*h2)*{}", m))] } else { vec![] }),
        ("v1v2", 1, 2, |m, _| vec![(1, format!("{}", m))]),
        ("v1v3", 1, 3, |m, _| vec![(2, format!("2*{}", m))]),
        ("v1v4", 1, 4, |m, n| {
            let p = 5 * m * m * m + 5 * m * m * n + m * n * n + m;
            vec![(1, format!("h1*h2*(-1+a0^2*h1*h2*(N^2+1))/10*{}", p)), (3, format!("3*{}", m))]
        }),
        ("v2v3", 2, 3, |m, n| {
            vec![(1, format!("-h1*h2*(1+(N+1)*(N-1)*a0^2*h1*h2)/6*{}", m * m * m - m)), (3, format!("{}", 2 * m - n))]
        }),
        ("v2v2", 2, 2, |m, n| {
            let mut v = vec![(2, format!("{}", m - n))];
            if m + n == 0 {
                v.push((0, format!("(N+h1*h2*a0^2*N*(N+1)*(N-1))*{}/12", m * m * m - m)));
            }
            v
        }),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutatorCheck {
    pub id: String,
    pub ns: Vec<usize>,
    pub range: i64,
    pub holds: bool,
    pub antisymmetric: bool,
    pub detail: String,
}

/// Compare each printed commutator with the one translated from the OPE,
/// for |m|, |n| <= range at every N in `ns`.
pub fn verify_commutators(ns: &[usize], range: i64) -> Result<Vec<CommutatorCheck>> {
    let mut ws = Workspace::new();
    let mut out = Vec::new();
    for (id, j, k, exp) in printed_commutators() {
        let mut detail = String::new();
        let mut anti = true;
        'outer: for &n in ns {
            let c = v_commutator(&mut ws, j, k, Regime::GENERIC, n)?;
            anti &= antisymmetric(&mut ws, j, k, Regime::GENERIC, n, range)?;
            for m in -range..=range {
                for p in -range..=range {
                    let got = c.eval(m, p);
                    let mut want: BTreeMap<usize, ParamRational> = BTreeMap::new();
                    for (l, f) in exp(m, p) {
                        let v = super::expr::formula(&f)?.subs_i64(crate::algebra::Var::N, n as i64)?;
                        if !v.is_zero() {
                            want.insert(l, v);
                        }
                    }
                    if got != want {
                        detail = format!("N={} m={} n={}: measured {:?}, printed {:?}", n, m, p, show(&got), show(&want));
                        break 'outer;
                    }
                }
            }
        }
        out.push(CommutatorCheck { id: id.into(), ns: ns.to_vec(), range, holds: detail.is_empty(), antisymmetric: anti, detail });
    }
    Ok(out)
}

fn show(x: &BTreeMap<usize, ParamRational>) -> Vec<String> {
    x.iter().map(|(l, v)| format!("V{}: {}", l, v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg() {
        let mut ws = Workspace::new();
        let c = v_commutator(&mut ws, 1, 1, Regime::GENERIC, 2).unwrap();
        let e = c.eval(2, -2);
        assert_eq!(e.get(&0).unwrap().to_string(), ParamRational::parse("-4/(h1*h2)").unwrap().to_string());
        assert!(c.eval(2, -1).is_empty());
    }
}
