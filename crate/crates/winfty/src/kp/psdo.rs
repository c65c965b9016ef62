//! Pseudo-differential operators sum_k a_k d^k with differential-polynomial
//! coefficients. Every coefficient of d^k with k >= `exact_from` is exact;
//! lower powers were dropped.

use std::collections::BTreeMap;
use std::fmt;

use super::diffpoly::DiffPoly;
use crate::algebra::ParamRational;
use crate::error::{Error, Result};
use crate::vertex::wstructure::binom;

/// Depth used for genuine differential operators (no negative powers).
const UNBOUNDED: i32 = -(1 << 20);

#[derive(Clone, Debug, PartialEq)]
pub struct PseudoDiffOp {
    pub coeffs: BTreeMap<i32, DiffPoly>,
    pub exact_from: i32,
}

impl PseudoDiffOp {
    pub fn new(coeffs: BTreeMap<i32, DiffPoly>, exact_from: i32) -> Self {
        let coeffs = coeffs.into_iter().filter(|(k, c)| *k >= exact_from && !c.is_zero()).collect();
        PseudoDiffOp { coeffs, exact_from }
    }

    /// A differential operator; exact at every order.
    pub fn differential(coeffs: BTreeMap<i32, DiffPoly>) -> Result<Self> {
        if coeffs.keys().any(|k| *k < 0) {
            return Err(Error::Unsupported("negative power in a differential operator; give a truncation depth".into()));
        }
        Ok(PseudoDiffOp::new(coeffs, UNBOUNDED))
    }

    /// d^k, exact down to `exact_from`.
    pub fn d_pow(k: i32, exact_from: i32) -> Self {
        PseudoDiffOp::new([(k, DiffPoly::constant(ParamRational::one()))].into(), exact_from)
    }

    /// L = d + sum_{n < fields} v_n d^{-n-1}, exact down to d^{-fields}.
    pub fn lax(fields: u8) -> Self {
        let mut c: BTreeMap<i32, DiffPoly> = BTreeMap::new();
        c.insert(1, DiffPoly::constant(ParamRational::one()));
        for n in 0..fields {
            c.insert(-(n as i32) - 1, DiffPoly::field(n));
        }
        PseudoDiffOp::new(c, -(fields as i32))
    }

    pub fn max_order(&self) -> i32 {
        self.coeffs.keys().next_back().copied().unwrap_or(self.exact_from)
    }

    pub fn coeff(&self, k: i32) -> DiffPoly {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut c = self.coeffs.clone();
        for (k, v) in &o.coeffs {
            let e = c.entry(*k).or_default();
            *e = e.add(v);
        }
        PseudoDiffOp::new(c, self.exact_from.max(o.exact_from))
    }

    pub fn scale(&self, s: &ParamRational) -> Self {
        PseudoDiffOp::new(self.coeffs.iter().map(|(k, v)| (*k, v.scale(s))).collect(), self.exact_from)
    }

    /// Composition by the generalized Leibniz rule
    /// a d^i . b d^j = sum_k binom(i, k) a b^{(k)} d^{i+j-k}.
    pub fn compose(&self, o: &Self) -> Result<Self> {
        let ef = (self.exact_from.saturating_add(o.max_order())).max(o.exact_from.saturating_add(self.max_order())).max(UNBOUNDED);
        let mut out: BTreeMap<i32, DiffPoly> = BTreeMap::new();
        for (&i, a) in &self.coeffs {
            if i < 0 && ef <= UNBOUNDED / 2 {
                return Err(Error::Unsupported("composition with a negative power needs a truncation depth".into()));
            }
            for (&j, b) in &o.coeffs {
                let mut bk = b.clone();
                for k in 0.. {
                    let p = i + j - k;
                    if p < ef || (i >= 0 && k > i) {
                        break;
                    }
                    let c = binom(i as i64, k as usize);
                    let term = a.mul(&bk).scale(&ParamRational::from_rat(c));
                    let e = out.entry(p).or_default();
                    *e = e.add(&term);
                    bk = bk.dx();
                }
            }
        }
        Ok(PseudoDiffOp::new(out, ef))
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut r = PseudoDiffOp::d_pow(0, UNBOUNDED);
        for _ in 0..n {
            r = r.compose(self)?;
        }
        Ok(r)
    }

    /// The coefficient of d^{-1}; fails when it was truncated away.
    pub fn residue(&self) -> Result<DiffPoly> {
        if self.exact_from > -1 {
            return Err(Error::TruncationDepth { have: -(self.exact_from as i64), need: 1 });
        }
        Ok(self.coeff(-1))
    }

    /// Formal adjoint sum_k (-d)^k . a_k, for differential operators.
    pub fn adjoint(&self) -> Result<Self> {
        let mut r = PseudoDiffOp::differential(BTreeMap::new())?;
        for (&k, a) in &self.coeffs {
            if k < 0 {
                return Err(Error::Unsupported("adjoint of a pseudo-differential operator".into()));
            }
            let sign = ParamRational::from_i64(if k % 2 == 0 { 1 } else { -1 });
            let dk = PseudoDiffOp::d_pow(k, UNBOUNDED).scale(&sign);
            let ma = PseudoDiffOp::differential([(0, a.clone())].into())?;
            r = r.add(&dk.compose(&ma)?);
        }
        Ok(r)
    }

    /// Apply a differential operator to a function.
    pub fn apply(&self, f: &DiffPoly) -> Result<DiffPoly> {
        let mut r = DiffPoly::zero();
        for (&k, a) in &self.coeffs {
            if k < 0 {
                return Err(Error::Unsupported("applying d^-1".into()));
            }
            r = r.add(&a.mul(&f.dx_n(k as u32)));
        }
        Ok(r)
    }
}

impl fmt::Display for PseudoDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().rev().map(|(k, c)| format!("[{}] d^{}", c, k)).collect();
        write!(f, "{}", if parts.is_empty() { "0".to_string() } else { parts.join(" + ") })?;
        if self.exact_from > UNBOUNDED {
            write!(f, " + O(d^{})", self.exact_from - 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(t: &[(&str, &str)]) -> DiffPoly {
        DiffPoly::from_terms(t).unwrap()
    }

    #[test]
    fn residues_of_powers() {
        let l = PseudoDiffOp::lax(4);
        assert_eq!(l.pow(2).unwrap().residue().unwrap(), p(&[("2", "v1"), ("1", "v0_x")]));
        let r3 = p(&[("3", "v2"), ("3", "v0 v0"), ("3", "v1_x"), ("1", "v0_xx")]);
        assert_eq!(l.pow(3).unwrap().residue().unwrap(), r3);
    }

    #[test]
    fn inverse_derivative_through_a_function() {
        let dinv = PseudoDiffOp::d_pow(-1, -4);
        let v = PseudoDiffOp::new([(0, DiffPoly::field(0))].into(), -4);
        let c = dinv.compose(&v).unwrap();
        assert_eq!(c.coeff(-1), p(&[("1", "v0")]));
        assert_eq!(c.coeff(-2), p(&[("-1", "v0_x")]));
        assert_eq!(c.coeff(-3), p(&[("1", "v0_xx")]));
        assert_eq!(c.exact_from, -4);
    }

    #[test]
    fn truncation_is_reported() {
        let l = PseudoDiffOp::lax(2);
        assert!(matches!(l.pow(3).unwrap().residue(), Err(Error::TruncationDepth { .. })));
    }

    #[test]
    fn associativity() {
        let a = PseudoDiffOp::new([(1, DiffPoly::field(1)), (-1, DiffPoly::field(0))].into(), -5);
        let b = PseudoDiffOp::new([(0, DiffPoly::field(2)), (-2, p(&[("1", "v0 v1")]))].into(), -5);
        let c = PseudoDiffOp::lax(3);
        let l = a.compose(&b).unwrap().compose(&c).unwrap();
        let r = a.compose(&b.compose(&c).unwrap()).unwrap();
        let ef = l.exact_from.max(r.exact_from);
        for k in ef..=l.max_order() {
            assert_eq!(l.coeff(k), r.coeff(k), "order {}", k);
        }
    }
}
