//! Sparse multivariate polynomials over Q in the parameter symbols.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub const NVARS: usize = 6;

/// Parameter symbols. The declaration order is the symbol order used by the
/// monomial ordering: h1 < h2 < a0 < N < psi0 < k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    H1 = 0,
    H2 = 1,
    A0 = 2,
    N = 3,
    Psi0 = 4,
    K = 5,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::H1, Var::H2, Var::A0, Var::N, Var::Psi0, Var::K];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::H1 => "h1",
            Var::H2 => "h2",
            Var::A0 => "a0",
            Var::N => "N",
            Var::Psi0 => "psi0",
            Var::K => "k",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        match s {
            "h1" => Some(Var::H1),
            "h2" => Some(Var::H2),
            "a0" | "alpha0" | "α0" => Some(Var::A0),
            "N" => Some(Var::N),
            "psi0" | "ψ0" => Some(Var::Psi0),
            "k" => Some(Var::K),
            _ => None,
        }
    }
}

/// Exponent vector. Ordered by total degree first, then lexicographically
/// with h1 compared first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub [u16; NVARS]);

impl Mono {
    pub fn one() -> Mono {
        Mono([0; NVARS])
    }

    pub fn var(v: Var) -> Mono {
        let mut e = [0; NVARS];
        e[v.index()] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut e = [0; NVARS];
        for i in 0..NVARS {
            e[i] = self.0[i] + o.0[i];
        }
        Mono(e)
    }

    pub fn divides(&self, o: &Mono) -> bool {
        (0..NVARS).all(|i| self.0[i] <= o.0[i])
    }

    pub fn div(&self, o: &Mono) -> Mono {
        let mut e = [0; NVARS];
        for i in 0..NVARS {
            e[i] = self.0[i] - o.0[i];
        }
        Mono(e)
    }

    pub fn meet(&self, o: &Mono) -> Mono {
        let mut e = [0; NVARS];
        for i in 0..NVARS {
            e[i] = self.0[i].min(o.0[i]);
        }
        Mono(e)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial stored as terms sorted by decreasing monomial, no zero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mono, BigRational)>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(Mono::one(), c)] }
        }
    }

    pub fn from_i64(n: i64) -> Poly {
        Poly::constant(rat(n))
    }

    pub fn var(v: Var) -> Poly {
        Poly { terms: vec![(Mono::var(v), BigRational::one())] }
    }

    pub fn monomial(m: Mono, c: BigRational) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Build from unsorted terms, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Mono, BigRational)>>(it: I) -> Poly {
        let mut acc: BTreeMap<Mono, BigRational> = BTreeMap::new();
        for (m, c) in it {
            let e = acc.entry(m).or_insert_with(BigRational::zero);
            *e += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.reverse();
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Mono, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            Some(BigRational::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Mono, BigRational)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|t| t.0.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.iter().map(|t| t.0 .0[v.index()]).max().unwrap_or(0)
    }

    pub fn uses(&self, v: Var) -> bool {
        self.terms.iter().any(|t| t.0 .0[v.index()] > 0)
    }

    pub fn vars(&self) -> Vec<Var> {
        Var::ALL.iter().copied().filter(|&v| self.uses(v)).collect()
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn mul_mono(&self, m: &Mono, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(t, x)| (t.mul(m), x * c)).collect() }
    }

    fn merge(&self, o: &Poly, sign: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &o.terms[j];
            match ma.cmp(mb) {
                Ordering::Greater => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((*mb, if sign { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if sign { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        for t in &self.terms[i..] {
            out.push(t.clone());
        }
        for (m, c) in &o.terms[j..] {
            out.push((*m, if sign { -c } else { c.clone() }));
        }
        Poly { terms: out }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.merge(o, true)
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return o.mul_mono(m, c);
        }
        if o.terms.len() == 1 {
            let (m, c) = &o.terms[0];
            return self.mul_mono(m, c);
        }
        let mut acc: HashMap<Mono, BigRational> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let e = acc.entry(ma.mul(mb)).or_insert_with(BigRational::zero);
                *e += ca * cb;
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut r = Poly::one();
        let mut b = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                r = r.mul(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Exact quotient if `d` divides `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (dm, dc) = d.terms[0].clone();
        if d.terms.len() == 1 {
            let inv = dc.recip();
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !dm.divides(m) {
                    return None;
                }
                out.push((m.div(&dm), c * &inv));
            }
            return Some(Poly { terms: out });
        }
        let mut r = self.clone();
        let mut q = Vec::new();
        while let Some((rm, rc)) = r.terms.first().cloned() {
            if !dm.divides(&rm) {
                return None;
            }
            let m = rm.div(&dm);
            let c = rc / &dc;
            r = r.sub(&d.mul_mono(&m, &c));
            q.push((m, c));
        }
        Some(Poly::from_terms(q))
    }

    /// Group by powers of `v`: exponent -> coefficient polynomial free of `v`.
    pub fn coeffs_in(&self, v: Var) -> BTreeMap<u16, Poly> {
        let mut groups: BTreeMap<u16, Vec<(Mono, BigRational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m.0[v.index()];
            let mut mm = *m;
            mm.0[v.index()] = 0;
            groups.entry(k).or_default().push((mm, c.clone()));
        }
        groups.into_iter().map(|(k, t)| (k, Poly::from_terms(t))).collect()
    }

    pub fn from_coeffs_in(v: Var, coeffs: &BTreeMap<u16, Poly>) -> Poly {
        let mut terms = Vec::new();
        for (k, p) in coeffs {
            for (m, c) in &p.terms {
                let mut mm = *m;
                mm.0[v.index()] += *k;
                terms.push((mm, c.clone()));
            }
        }
        Poly::from_terms(terms)
    }

    /// Coefficient of the highest power of `v`.
    pub fn lead_in(&self, v: Var) -> (u16, Poly) {
        let d = self.degree_in(v);
        let terms = self.terms.iter().filter(|(m, _)| m.0[v.index()] == d).map(|(m, c)| {
            let mut mm = *m;
            mm.0[v.index()] = 0;
            (mm, c.clone())
        });
        (d, Poly::from_terms(terms))
    }

    /// Multiply by the lcm of coefficient denominators and divide by the gcd
    /// of numerators, making the leading coefficient positive.
    pub fn primitive_integer(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut l = BigInt::one();
        for (_, c) in &self.terms {
            l = l.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            let n = c.numer() * (&l / c.denom());
            g = g.gcd(&n);
        }
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        let f = BigRational::new(l, g);
        self.scale(&f)
    }

    /// Scale so that the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.terms[0].1.recip();
        self.scale(&inv)
    }

    fn mono_content(&self) -> Mono {
        let mut it = self.terms.iter();
        let mut m = match it.next() {
            Some(t) => t.0,
            None => return Mono::one(),
        };
        for (t, _) in it {
            m = m.meet(t);
        }
        m
    }

    /// Greatest common divisor, normalized monic (leading coefficient 1).
    pub fn gcd(&self, o: &Poly) -> Poly {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        if self.is_constant() || o.is_constant() {
            return Poly::one();
        }
        if self == o {
            return self.monic();
        }
        let ma = self.mono_content();
        let mb = o.mono_content();
        let gm = ma.meet(&mb);
        let a = if ma.is_one() { self.clone() } else { self.div_exact(&Poly::monomial(ma, BigRational::one())).unwrap() };
        let b = if mb.is_one() { o.clone() } else { o.div_exact(&Poly::monomial(mb, BigRational::one())).unwrap() };
        let g = gcd_no_mono(&a.primitive_integer(), &b.primitive_integer());
        g.mul_mono(&gm, &BigRational::one()).monic()
    }

    /// Evaluate at a full point (one value per symbol).
    pub fn eval(&self, point: &[BigRational; NVARS]) -> BigRational {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..NVARS {
                let e = m.0[i];
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Substitute polynomial `val` for symbol `v`.
    pub fn subs(&self, v: Var, val: &Poly) -> Poly {
        if !self.uses(v) {
            return self.clone();
        }
        let coeffs = self.coeffs_in(v);
        let mut out = Poly::zero();
        let maxd = *coeffs.keys().max().unwrap_or(&0);
        let mut powers = vec![Poly::one()];
        for k in 1..=maxd {
            let next = powers[k as usize - 1].mul(val);
            powers.push(next);
        }
        for (k, c) in coeffs {
            out = out.add(&c.mul(&powers[k as usize]));
        }
        out
    }

    pub fn derivative(&self, v: Var) -> Poly {
        let terms = self.terms.iter().filter(|(m, _)| m.0[v.index()] > 0).map(|(m, c)| {
            let mut mm = *m;
            let e = mm.0[v.index()];
            mm.0[v.index()] -= 1;
            (mm, c * rat(e as i64))
        });
        Poly::from_terms(terms)
    }
}

/// Pseudo-remainder of `a` by `b` as polynomials in `v` (up to a factor
/// that is a power of the leading coefficient of `b`).
fn prem(a: &Poly, b: &Poly, v: Var) -> Poly {
    let (db, lb) = b.lead_in(v);
    let mut r = a.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let (dr, lr) = r.lead_in(v);
        if dr < db {
            return r;
        }
        let mut sh = Mono::one();
        sh.0[v.index()] = dr - db;
        let t = lr.mul_mono(&sh, &BigRational::one()).mul(b);
        r = r.mul(&lb).sub(&t);
    }
}

/// Content of `p` with respect to `v`: gcd of its coefficient polynomials.
fn content_in(p: &Poly, v: Var) -> Poly {
    let coeffs = p.coeffs_in(v);
    let mut g = Poly::zero();
    for c in coeffs.values() {
        g = if g.is_zero() { c.primitive_integer() } else { g.gcd(c) };
        if g.is_constant() {
            return Poly::one();
        }
    }
    g.primitive_integer()
}

fn gcd_no_mono(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.clone();
    }
    if let Some(_) = a.div_exact(b) {
        return b.clone();
    }
    if let Some(_) = b.div_exact(a) {
        return a.clone();
    }
    let va = a.vars();
    let vb = b.vars();
    // a symbol present in only one argument: reduce that argument to its content
    for v in &va {
        if !vb.contains(v) {
            let c = content_in(a, *v);
            return c.gcd(b).primitive_integer();
        }
    }
    for v in &vb {
        if !va.contains(v) {
            let c = content_in(b, *v);
            return a.gcd(&c).primitive_integer();
        }
    }
    // main variable: smallest degree in the pair keeps PRS short
    let v = *va
        .iter()
        .min_by_key(|v| a.degree_in(**v).max(b.degree_in(**v)))
        .unwrap();
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let cg = if ca.is_one() || cb.is_one() { Poly::one() } else { ca.gcd(&cb).primitive_integer() };
    let mut p = a.div_exact(&ca).unwrap();
    let mut q = b.div_exact(&cb).unwrap();
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    let g = loop {
        let r = prem(&p, &q, v);
        if r.is_zero() {
            break q;
        }
        if r.degree_in(v) == 0 {
            break Poly::one();
        }
        let rc = content_in(&r, v);
        let r = r.div_exact(&rc).unwrap().primitive_integer();
        p = q;
        q = r;
    };
    let g = if g.is_constant() { Poly::one() } else { g.div_exact(&content_in(&g, v)).unwrap() };
    g.mul(&cg).primitive_integer()
}

fn fmt_rat_abs(c: &BigRational) -> String {
    let a = c.abs();
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

fn fmt_mono(m: &Mono) -> String {
    let mut parts = Vec::new();
    for v in Var::ALL {
        let e = m.0[v.index()];
        if e == 1 {
            parts.push(v.name().to_string());
        } else if e > 1 {
            parts.push(format!("{}^{}", v.name(), e));
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let cs = fmt_rat_abs(c);
            if m.is_one() {
                write!(f, "{}", cs)?;
            } else if cs == "1" {
                write!(f, "{}", fmt_mono(m))?;
            } else {
                write!(f, "{}*{}", cs, fmt_mono(m))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h1() -> Poly {
        Poly::var(Var::H1)
    }
    fn h2() -> Poly {
        Poly::var(Var::H2)
    }

    #[test]
    fn arithmetic_basics() {
        let a = h1().add(&h2());
        let b = h1().sub(&h2());
        let p = a.mul(&b);
        assert_eq!(p, h1().pow(2).sub(&h2().pow(2)));
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(h1().div_exact(&h2()), None);
    }

    #[test]
    fn gcd_of_products() {
        let a = h1().add(&h2());
        let b = h1().sub(&Poly::from_i64(2).mul(&h2()));
        let c = Poly::var(Var::N).add(&Poly::one());
        let x = a.mul(&b).mul(&c).mul(&h1());
        let y = a.mul(&c).mul(&c).mul(&h1().pow(2));
        let g = x.gcd(&y);
        assert_eq!(g, a.mul(&c).mul(&h1()).monic());
    }

    #[test]
    fn gcd_coprime() {
        let x = h1().pow(2).add(&h2());
        let y = h1().add(&h2().pow(3));
        assert!(x.gcd(&y).is_one());
    }

    #[test]
    fn subs_and_eval() {
        let p = h1().pow(2).add(&h2());
        let q = p.subs(Var::H1, &h2().add(&Poly::one()));
        let mut pt: [BigRational; NVARS] = Default::default();
        pt[1] = rat(3);
        assert_eq!(q.eval(&pt), rat(19));
    }

    #[test]
    fn display_is_stable() {
        let p = h1().pow(2).scale(&rat(3)).sub(&h2()).add(&Poly::from_i64(1));
        assert_eq!(p.to_string(), "3*h1^2 - h2 + 1");
    }
}
