//! Differential polynomials in the KP fields. A jet is a field with its
//! derivative orders in x, y and t; a negative x order stands for the
//! formal antiderivative d_x^{-k}. In text a jet is written `v0_xxy`, with
//! a capital X for each d_x^{-1}, e.g. `v0_XXyy`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::algebra::ParamRational;
use crate::error::{Error, Result};

/// Field index of the logarithm of tau in the bilinear derivation.
pub const FIELD_F: u8 = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Jet {
    pub field: u8,
    pub x: i32,
    pub y: u32,
    pub t: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dir {
    X,
    Y,
    T,
}

impl Jet {
    pub fn new(field: u8) -> Self {
        Jet { field, x: 0, y: 0, t: 0 }
    }

    pub fn dx(field: u8, x: i32) -> Self {
        Jet { field, x, y: 0, t: 0 }
    }

    fn shifted(self, d: Dir, k: i32) -> Self {
        let mut j = self;
        match d {
            Dir::X => j.x += k,
            Dir::Y => j.y = (j.y as i32 + k) as u32,
            Dir::T => j.t = (j.t as i32 + k) as u32,
        }
        j
    }

    pub fn parse(s: &str) -> Result<Self> {
        let (name, ders) = s.split_once('_').unwrap_or((s, ""));
        let field = if name == "F" {
            FIELD_F
        } else {
            name.strip_prefix('v').and_then(|n| n.parse().ok()).ok_or_else(|| Error::Parse(format!("bad jet {}", s)))?
        };
        let mut j = Jet::new(field);
        for c in ders.chars() {
            match c {
                'x' => j.x += 1,
                'X' => j.x -= 1,
                'y' => j.y += 1,
                't' => j.t += 1,
                _ => return Err(Error::Parse(format!("bad derivative in {}", s))),
            }
        }
        Ok(j)
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field == FIELD_F {
            write!(f, "F")?;
        } else {
            write!(f, "v{}", self.field)?;
        }
        if self.x != 0 || self.y != 0 || self.t != 0 {
            let xs = if self.x < 0 { "X".repeat((-self.x) as usize) } else { "x".repeat(self.x as usize) };
            write!(f, "_{}{}{}", xs, "y".repeat(self.y as usize), "t".repeat(self.t as usize))?;
        }
        Ok(())
    }
}

/// Sorted list of jets, with repetition.
pub type Monomial = Vec<Jet>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, ParamRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly::default()
    }

    pub fn constant(c: ParamRational) -> Self {
        DiffPoly::monomial(Vec::new(), c)
    }

    pub fn jet(j: Jet) -> Self {
        DiffPoly::monomial(vec![j], ParamRational::one())
    }

    pub fn field(i: u8) -> Self {
        DiffPoly::jet(Jet::new(i))
    }

    pub fn monomial(mut m: Monomial, c: ParamRational) -> Self {
        let mut p = DiffPoly::zero();
        m.sort();
        p.add_term(m, &c);
        p
    }

    /// Sum of `coeff * jet jet ...` terms; the monomial is whitespace
    /// separated jets, empty for a constant.
    pub fn from_terms(terms: &[(&str, &str)]) -> Result<Self> {
        let mut p = DiffPoly::zero();
        for (c, m) in terms {
            let c = ParamRational::parse(c)?;
            let m = m.split_whitespace().map(Jet::parse).collect::<Result<Vec<_>>>()?;
            p = p.add(&DiffPoly::monomial(m, c));
        }
        Ok(p)
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, ParamRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[Jet]) -> ParamRational {
        let mut m = m.to_vec();
        m.sort();
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, m: Monomial, c: &ParamRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&ParamRational::from_i64(-1))
    }

    pub fn scale(&self, c: &ParamRational) -> Self {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = DiffPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let mut m = ma.clone();
                m.extend_from_slice(mb);
                m.sort();
                r.add_term(m, &(ca * cb));
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(DiffPoly::constant(ParamRational::one()), |acc, _| acc.mul(self))
    }

    pub fn map_coeffs<F: Fn(&ParamRational) -> Result<ParamRational>>(&self, f: F) -> Result<Self> {
        let mut r = DiffPoly::zero();
        for (m, c) in &self.terms {
            r.add_term(m.clone(), &f(c)?);
        }
        Ok(r)
    }

    /// Total derivative in one direction.
    pub fn d(&self, dir: Dir) -> Self {
        let mut r = DiffPoly::zero();
        for (m, c) in &self.terms {
            for i in 0..m.len() {
                if i > 0 && m[i] == m[i - 1] {
                    continue;
                }
                let mult = m.iter().filter(|j| **j == m[i]).count() as i64;
                let mut n = m.clone();
                n[i] = m[i].shifted(dir, 1);
                n.sort();
                r.add_term(n, &c.scale(&rat(mult)));
            }
        }
        r
    }

    pub fn dx(&self) -> Self {
        self.d(Dir::X)
    }

    pub fn dx_n(&self, n: u32) -> Self {
        (0..n).fold(self.clone(), |p, _| p.dx())
    }

    /// Partial derivative with respect to a jet treated as a variable.
    pub fn partial(&self, j: &Jet) -> Self {
        let mut r = DiffPoly::zero();
        for (m, c) in &self.terms {
            let k = m.iter().filter(|x| *x == j).count() as i64;
            if k == 0 {
                continue;
            }
            let mut n = m.clone();
            let pos = n.iter().position(|x| x == j).unwrap();
            n.remove(pos);
            r.add_term(n, &c.scale(&rat(k)));
        }
        r
    }

    pub fn jets(&self) -> Vec<Jet> {
        let mut v: Vec<Jet> = self.terms.keys().flatten().copied().collect();
        v.sort();
        v.dedup();
        v
    }

    /// Variational derivative with respect to a field that appears with x
    /// derivatives only.
    pub fn euler(&self, field: u8) -> Result<Self> {
        let mut r = DiffPoly::zero();
        for j in self.jets().into_iter().filter(|j| j.field == field) {
            if j.x < 0 || j.y != 0 || j.t != 0 {
                return Err(Error::Unsupported(format!("variational derivative through {}", j)));
            }
            let mut p = self.partial(&j);
            for _ in 0..j.x {
                p = p.dx().neg();
            }
            r = r.add(&p);
        }
        Ok(r)
    }

    /// Canonical representative modulo total x-derivatives (and nothing
    /// else): the homotopy formula sum_d (1/d) sum_i v_i E_i(h_d) on each
    /// homogeneous degree d, which depends only on the class of h.
    pub fn canonical(&self) -> Result<Self> {
        let mut by_degree: BTreeMap<usize, DiffPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_degree.entry(m.len()).or_default().add_term(m.clone(), c);
        }
        let mut r = DiffPoly::zero();
        for (d, h) in by_degree {
            if d == 0 {
                r = r.add(&h);
                continue;
            }
            let mut fields: Vec<u8> = h.jets().iter().map(|j| j.field).collect();
            fields.dedup();
            let mut s = DiffPoly::zero();
            for f in fields {
                s = s.add(&DiffPoly::field(f).mul(&h.euler(f)?));
            }
            r = r.add(&s.scale(&ParamRational::frac(1, d as i64)));
        }
        Ok(r)
    }

    /// An antiderivative in x. Linear jets get one more d_x^{-1}; nonlinear
    /// terms are integrated by parts from the highest derivative down. Fails
    /// when the nonlinear part is not a total derivative.
    pub fn integrate_x(&self) -> Result<Self> {
        let mut rest = self.clone();
        let mut out = DiffPoly::zero();
        for _ in 0..1000 {
            let top_term = rest.terms.iter().max_by_key(|(m, _)| (m.iter().map(|j| j.x).max(), m.len(), (*m).clone()));
            let Some((m, c)) = top_term.map(|(m, c)| (m.clone(), c.clone())) else {
                return Ok(out);
            };
            let piece = if m.len() == 1 {
                DiffPoly::monomial(vec![m[0].shifted(Dir::X, -1)], c)
            } else {
                // highest x order; it must appear in a unique jet
                let top = *m.iter().max_by_key(|j| (j.x, **j)).unwrap();
                let below = top.shifted(Dir::X, -1);
                let others: Vec<Jet> = m.iter().copied().filter(|j| *j != top).collect();
                if m.len() - others.len() != 1 || others.iter().any(|j| j.x >= top.x && *j != below) {
                    return Err(Error::Unsupported(format!("no antiderivative found for {}", rest)));
                }
                let r = others.iter().filter(|j| **j == below).count() as i64;
                let mut n: Vec<Jet> = others.iter().copied().filter(|j| *j != below).collect();
                n.extend(std::iter::repeat(below).take(r as usize + 1));
                DiffPoly::monomial(n, c.scale(&BigRational::new(BigInt::from(1), BigInt::from(r + 1))))
            };
            rest = rest.sub(&piece.dx());
            out = out.add(&piece);
        }
        Err(Error::Unsupported(format!("integration did not terminate: {}", rest)))
    }

    /// Replace every jet of `field` by the matching derivative of `expr`.
    pub fn subs(&self, field: u8, expr: &DiffPoly) -> Result<Self> {
        let mut cache: BTreeMap<Jet, DiffPoly> = BTreeMap::new();
        let mut r = DiffPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = DiffPoly::constant(c.clone());
            for j in m {
                if j.field != field {
                    acc = acc.mul(&DiffPoly::jet(*j));
                    continue;
                }
                if j.x < 0 {
                    return Err(Error::Unsupported(format!("substitution under d_x^-1 in {}", j)));
                }
                let e = cache.entry(*j).or_insert_with(|| {
                    let mut e = expr.dx_n(j.x as u32);
                    for _ in 0..j.y {
                        e = e.d(Dir::Y);
                    }
                    for _ in 0..j.t {
                        e = e.d(Dir::T);
                    }
                    e
                });
                acc = acc.mul(e);
            }
            r = r.add(&acc);
        }
        Ok(r)
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, body) = c.latex_signed();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m.iter().map(jet_latex).collect();
            if body == "1" && !m.is_empty() {
                s.push_str(&mono.join(""));
            } else if m.is_empty() {
                s.push_str(&body);
            } else {
                s.push_str(&format!("\\left({}\\right){}", body, mono.join("")));
            }
        }
        s
    }
}

fn jet_latex(j: &Jet) -> String {
    let base = if j.field == FIELD_F { "F".to_string() } else { format!("v_{}", j.field) };
    let sub = format!("{}{}{}", "x".repeat(j.x.max(0) as usize), "y".repeat(j.y as usize), "t".repeat(j.t as usize));
    let inv = if j.x < 0 { format!("\\partial_x^{{{}}}", j.x) } else { String::new() };
    if sub.is_empty() {
        format!("{}{}", inv, base)
    } else {
        format!("{}{}_{{,{}}}", inv, base.replace('_', ""), sub)
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let jets: Vec<String> = m.iter().map(|j| j.to_string()).collect();
                if m.is_empty() {
                    format!("({})", c)
                } else if c.is_one() {
                    jets.join("*")
                } else {
                    format!("({})*{}", c, jets.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for DiffPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(t: &[(&str, &str)]) -> DiffPoly {
        DiffPoly::from_terms(t).unwrap()
    }

    #[test]
    fn leibniz() {
        let a = p(&[("1", "v0 v0_x")]);
        assert_eq!(a.dx(), p(&[("1", "v0_x v0_x"), ("1", "v0 v0_xx")]));
        assert_eq!(p(&[("1", "v0_X")]).dx(), DiffPoly::field(0));
    }

    #[test]
    fn antiderivative() {
        let a = p(&[("2", "v0 v0_x"), ("3", "v1_y")]);
        let i = a.integrate_x().unwrap();
        assert_eq!(i, p(&[("1", "v0 v0"), ("3", "v1_Xy")]));
        assert!(p(&[("1", "v0 v1")]).integrate_x().is_err());
    }

    #[test]
    fn canonical_ignores_total_derivatives() {
        let h = p(&[("1", "v0 v1")]);
        let d = h.add(&p(&[("5", "v0 v0_x v2"), ("1", "v3")]).dx());
        assert_eq!(h.canonical().unwrap(), d.canonical().unwrap());
        assert_eq!(p(&[("1", "v0 v1_x")]).canonical().unwrap(), p(&[("-1", "v0_x v1")]).canonical().unwrap());
    }

    #[test]
    fn jets_round_trip() {
        for s in ["v0", "v2_xxy", "v0_XXyy", "F_xt"] {
            assert_eq!(Jet::parse(s).unwrap().to_string(), s);
        }
    }
}
