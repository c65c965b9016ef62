//! Brute-force mode algebra on the Fock space of N free currents, with
//! [a_{j,m}, a_{k,n}] = kappa m delta_{jk} delta_{m+n,0}. States are
//! polynomials in the creation modes a_{j,-k}; a_{j,n} for n > 0 acts as
//! kappa n d/da_{j,-n}, and zero modes act as 0.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use super::catalog::Workspace;
use super::coeff::Coeff;
use super::expr::Regime;
use super::field::CompositeField;
use super::modes::modes_from_ope;
use super::wstructure::binom;
use crate::error::{Error, Result};

/// Sorted creation modes (current, k) standing for a_{current,-k}.
pub type FockMonomial = Vec<(u8, u32)>;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FockState(pub HashMap<FockMonomial, Coeff>);

impl FockState {
    pub fn vacuum() -> Self {
        FockState(HashMap::from([(Vec::new(), Coeff::one())]))
    }

    pub fn basis(m: FockMonomial) -> Self {
        FockState(HashMap::from([(m, Coeff::one())]))
    }

    fn add_term(&mut self, m: FockMonomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(m.clone()).or_insert_with(Coeff::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.0.remove(&m);
        }
    }

    pub fn add(&mut self, o: &FockState) {
        for (m, c) in &o.0 {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scaled(&self, c: &Coeff) -> FockState {
        let mut out = FockState::default();
        for (m, x) in &self.0 {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

fn level(m: &FockMonomial) -> u32 {
    m.iter().map(|x| x.1).sum()
}

/// All creation monomials of N currents at the given level.
pub fn fock_basis(n: usize, lvl: u32) -> Vec<FockMonomial> {
    let mut parts: Vec<(u8, u32)> = Vec::new();
    for k in 1..=lvl {
        for j in 1..=n as u8 {
            parts.push((j, k));
        }
    }
    let mut out = Vec::new();
    fn rec(parts: &[(u8, u32)], start: usize, left: u32, cur: &mut FockMonomial, out: &mut Vec<FockMonomial>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..parts.len() {
            if parts[i].1 <= left {
                cur.push(parts[i]);
                rec(parts, i, left - parts[i].1, cur, out);
                cur.pop();
            }
        }
    }
    rec(&parts, 0, lvl, &mut Vec::new(), &mut out);
    for m in &mut out {
        m.sort_unstable();
    }
    out
}

/// Field modes acting on Fock states at fixed numeric h1, h2.
pub struct FockSpace {
    pub kappa: Coeff,
}

impl FockSpace {
    pub fn new(h1: i64, h2: i64) -> Self {
        FockSpace { kappa: Coeff::from_rat(BigRational::new(BigInt::from(-1), BigInt::from(h1 * h2))) }
    }

    /// a_{j,n} on one monomial.
    fn mode_on(&self, j: u8, n: i64, m: &FockMonomial, c: &Coeff, out: &mut FockState) {
        if n < 0 {
            let mut m2 = m.clone();
            let pos = m2.partition_point(|x| *x < (j, (-n) as u32));
            m2.insert(pos, (j, (-n) as u32));
            out.add_term(m2, c.clone());
        } else if n > 0 {
            let key = (j, n as u32);
            let e = m.iter().filter(|x| **x == key).count() as i64;
            if e > 0 {
                let mut m2 = m.clone();
                let pos = m2.iter().position(|x| *x == key).unwrap();
                m2.remove(pos);
                out.add_term(m2, (c * &self.kappa).scale(&BigRational::from_integer(BigInt::from(e * n))));
            }
        }
    }

    fn mode(&self, j: u8, n: i64, v: &FockState) -> FockState {
        let mut out = FockState::default();
        for (m, c) in &v.0 {
            self.mode_on(j, n, m, c, &mut out);
        }
        out
    }

    /// The p-th mode of a homogeneous composite field of weight h:
    /// F(z) = sum_p F_p z^{-p-h}. Each factor d^d J_j contributes
    /// sum_n (-1)^d (n+1)...(n+d) a_{j,n}; products are normal ordered.
    pub fn field_mode(&self, f: &CompositeField, p: i64, v: &FockState) -> FockState {
        let mut out = FockState::default();
        let vmax = v.0.keys().map(level).max().unwrap_or(0) as i64;
        for (mono, c) in f.terms() {
            let fs: Vec<(u8, u32)> = mono.factors().iter().map(|x| (x.current, x.deriv as u32)).collect();
            if fs.is_empty() {
                if p == 0 {
                    out.add(&v.scaled(c));
                }
                continue;
            }
            let k = fs.len();
            // Choose which factors annihilate (positive modes, applied
            // first), the rest create.
            for mask in 0u32..(1 << k) {
                let ann: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
                let cre: Vec<usize> = (0..k).filter(|i| mask & (1 << i) == 0).collect();
                let mut vals = vec![0i64; k];
                self.annihilate(&fs, &ann, 0, vmax, &mut vals, v.clone(), &mut |vals, st| {
                    let need: i64 = ann.iter().map(|&i| vals[i]).sum::<i64>() - p;
                    if need < cre.len() as i64 || (cre.is_empty() && need != 0) {
                        return;
                    }
                    let mut vals = vals.to_vec();
                    compositions(need, cre.len(), &mut Vec::new(), &mut |parts| {
                        for (&i, &q) in cre.iter().zip(parts) {
                            vals[i] = -q;
                        }
                        let mut fac = BigRational::from_integer(BigInt::from(1));
                        for (i, &(_, d)) in fs.iter().enumerate() {
                            fac *= mode_factor(vals[i], d);
                        }
                        let mut st = st.clone();
                        for &i in &cre {
                            st = self.mode(fs[i].0, vals[i], &st);
                        }
                        out.add(&st.scaled(&c.scale(&fac)));
                    });
                });
            }
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn annihilate(
        &self,
        fs: &[(u8, u32)],
        ann: &[usize],
        idx: usize,
        budget: i64,
        vals: &mut Vec<i64>,
        st: FockState,
        k: &mut dyn FnMut(&[i64], &FockState),
    ) {
        if st.is_zero() {
            return;
        }
        if idx == ann.len() {
            k(vals, &st);
            return;
        }
        for n in 1..=budget {
            let s = self.mode(fs[ann[idx]].0, n, &st);
            vals[ann[idx]] = n;
            self.annihilate(fs, ann, idx + 1, budget - n, vals, s, k);
        }
    }
}

/// (-1)^d (n+1)(n+2)...(n+d).
fn mode_factor(n: i64, d: u32) -> BigRational {
    let mut r = BigInt::from(if d % 2 == 0 { 1 } else { -1 });
    for i in 1..=d as i64 {
        r *= BigInt::from(n + i);
    }
    BigRational::from_integer(r)
}

/// Ordered compositions of `total` into `parts` positive integers.
fn compositions(total: i64, parts: usize, cur: &mut Vec<i64>, k: &mut dyn FnMut(&[i64])) {
    if parts == 0 {
        if total == 0 {
            k(cur);
        }
        return;
    }
    if parts == 1 {
        if total >= 1 {
            cur.push(total);
            k(cur);
            cur.pop();
        }
        return;
    }
    for x in 1..=total - (parts as i64 - 1) {
        cur.push(x);
        compositions(total - x, parts - 1, cur, k);
        cur.pop();
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FockCheck {
    pub pair: (usize, usize),
    pub states: usize,
    /// Poles linear in the V_l, so the V-basis commutator was also checked.
    pub linear: bool,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FockReport {
    pub h: (i64, i64),
    pub n: usize,
    pub max_level: u32,
    pub range: i64,
    pub checks: Vec<FockCheck>,
}

impl FockReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// [V_{j,m}, V_{k,n}] computed directly on every basis state up to
/// `max_level`, against sum_r binom(m+j-1, r-1) (C_r)_{m+n} with the
/// pole fields C_r acting on the same states, and against the V-basis
/// commutator when the poles are linear in the V_l. alpha0 stays symbolic.
pub fn fock_cross_check(h: (i64, i64), n: usize, max_level: u32, range: i64, pairs: &[(usize, usize)]) -> Result<FockReport> {
    let regime = Regime { alpha: super::expr::AlphaChoice::Symbolic, h: Some(h) };
    let mut ws = Workspace::new();
    let mut fields = BTreeMap::new();
    for l in 1..=4 {
        let f = ws.ctx(n)?.vf.get(l).clone();
        fields.insert(l, regime.field(&f)?);
    }
    let mut opes = Vec::new();
    for &(j, k) in pairs {
        let o = ws.ope(&format!("V{}", j), &format!("V{}", k), regime, n)?;
        let c = match modes_from_ope(&mut ws, &o, j as u32, k as u32, regime) {
            Ok(c) => Some(c),
            Err(Error::BasisMismatch { .. }) => None,
            Err(e) => return Err(e),
        };
        opes.push((o, c));
    }
    let fock = FockSpace::new(h.0, h.1);
    let states: Vec<FockMonomial> = (0..=max_level).flat_map(|l| fock_basis(n, l)).collect();
    let checks = pairs
        .par_iter()
        .zip(opes.par_iter())
        .map(|(&(j, k), (ope, comm))| -> Result<FockCheck> {
            let (a, b) = (&fields[&j], &fields[&k]);
            let mut detail = String::new();
            'outer: for m in -range..=range {
                for p in -range..=range {
                    let linear: Option<Vec<(usize, Coeff)>> = match comm {
                        Some(c) => Some(
                            c.eval(m, p)
                                .into_iter()
                                .map(|(l, x)| Ok((l, regime.coeff(&Coeff::from_param(&x)?)?)))
                                .collect::<Result<_>>()?,
                        ),
                        None => None,
                    };
                    for s in &states {
                        let v = FockState::basis(s.clone());
                        let mut lhs = fock.field_mode(a, m, &fock.field_mode(b, p, &v));
                        lhs.add(&fock.field_mode(b, p, &fock.field_mode(a, m, &v)).scaled(&-&Coeff::one()));
                        let mut from_poles = FockState::default();
                        for (&r, f) in &ope.poles {
                            let c = Coeff::from_rat(binom(m + j as i64 - 1, (r - 1) as usize));
                            from_poles.add(&fock.field_mode(f, m + p, &v).scaled(&c));
                        }
                        if lhs != from_poles {
                            detail = format!("m={} n={} on state {:?}: pole modes differ", m, p, s);
                            break 'outer;
                        }
                        if let Some(rhs) = &linear {
                            let mut want = FockState::default();
                            for (l, c) in rhs {
                                let t = if *l == 0 { v.clone() } else { fock.field_mode(&fields[l], m + p, &v) };
                                want.add(&t.scaled(c));
                            }
                            if lhs != want {
                                detail = format!("m={} n={} on state {:?}: V-basis commutator differs", m, p, s);
                                break 'outer;
                            }
                        }
                    }
                }
            }
            Ok(FockCheck { pair: (j, k), states: states.len(), linear: comm.is_some(), holds: detail.is_empty(), detail })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FockReport { h, n, max_level, range, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_on_vacuum() {
        let f = FockSpace::new(1, -2);
        let j1 = CompositeField::current(2, 1, 0);
        let v = FockState::vacuum();
        let up = f.field_mode(&j1, -1, &v);
        assert_eq!(up, FockState::basis(vec![(1, 1)]));
        let back = f.field_mode(&j1, 1, &up);
        assert_eq!(back, FockState::vacuum().scaled(&Coeff::frac(1, 2)));
        assert!(f.field_mode(&j1, 0, &v).is_zero());
    }

    #[test]
    fn basis_sizes() {
        let sizes: Vec<usize> = (0..=4).map(|l| fock_basis(2, l).len()).collect();
        assert_eq!(sizes, vec![1, 2, 5, 10, 20]);
    }
}
