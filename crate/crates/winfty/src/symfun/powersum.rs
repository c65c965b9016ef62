use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use serde_json::{Map, Value};

use super::partition::Partition;
use crate::algebra::{ParamRational, Specialization};
use crate::error::{Error, Result};

pub const DEFAULT_DEGREE: u32 = 12;

/// Polynomial in p_1, p_2, ...; the monomial p_mu is keyed by the partition
/// mu. Products drop every monomial of degree above `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSumPolynomial {
    terms: BTreeMap<Partition, ParamRational>,
    degree: u32,
}

impl PowerSumPolynomial {
    pub fn zero(degree: u32) -> Self {
        PowerSumPolynomial { terms: BTreeMap::new(), degree }
    }

    pub fn one(degree: u32) -> Self {
        Self::monomial(Partition::empty(), ParamRational::one(), degree)
    }

    pub fn constant(c: ParamRational, degree: u32) -> Self {
        Self::monomial(Partition::empty(), c, degree)
    }

    /// The power sum p_n.
    pub fn p(n: u32, degree: u32) -> Self {
        Self::monomial(Partition::new(vec![n]), ParamRational::one(), degree)
    }

    pub fn monomial(mu: Partition, c: ParamRational, degree: u32) -> Self {
        let mut t = BTreeMap::new();
        if !c.is_zero() && mu.size() <= degree {
            t.insert(mu, c);
        }
        PowerSumPolynomial { terms: t, degree }
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, ParamRational)>>(it: I, degree: u32) -> Self {
        let mut s = Self::zero(degree);
        for (m, c) in it {
            s.add_term(m, &c);
        }
        s
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree
    }

    pub fn with_degree(&self, degree: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.size() <= degree).map(|(m, c)| (m.clone(), c.clone())).collect();
        PowerSumPolynomial { terms, degree }
    }

    pub fn terms(&self) -> &BTreeMap<Partition, ParamRational> {
        &self.terms
    }

    pub fn coeff(&self, mu: &Partition) -> ParamRational {
        self.terms.get(mu).cloned().unwrap_or_else(ParamRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mu: Partition, c: &ParamRational) {
        if c.is_zero() || mu.size() > self.degree {
            return;
        }
        let e = self.terms.entry(mu).or_insert_with(ParamRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// Highest degree among stored monomials.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.size()).max()
    }

    /// Homogeneous iff all monomials have the same size.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.size());
        let d = it.next()?;
        if it.all(|e| e == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn component(&self, d: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.size() == d).map(|(m, c)| (m.clone(), c.clone())).collect();
        PowerSumPolynomial { terms, degree: self.degree }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.degree = self.degree.min(o.degree);
        r.terms.retain(|m, _| m.size() <= r.degree);
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
            return Self::zero(self.degree);
        }
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        PowerSumPolynomial { terms, degree: self.degree }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let degree = self.degree.min(o.degree);
        let mut acc: BTreeMap<Partition, ParamRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                if ma.size() + mb.size() > degree {
                    continue;
                }
                let e = acc.entry(ma.union(mb)).or_insert_with(ParamRational::zero);
                *e += &(ca * cb);
            }
        }
        acc.retain(|_, v| !v.is_zero());
        PowerSumPolynomial { terms: acc, degree }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.degree);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Apply a parameter specialization to every coefficient.
    pub fn specialize(&self, s: &Specialization) -> Result<Self> {
        let mut r = Self::zero(self.degree);
        for (m, c) in &self.terms {
            r.add_term(m.clone(), &s.apply(c)?);
        }
        Ok(r)
    }

    pub fn map_coeffs<F: Fn(&ParamRational) -> Result<ParamRational>>(&self, f: F) -> Result<Self> {
        let mut r = Self::zero(self.degree);
        for (m, c) in &self.terms {
            r.add_term(m.clone(), &f(c)?);
        }
        Ok(r)
    }

    /// The involution p_n -> (-1)^{n-1} p_n.
    pub fn omega(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let odd = m.parts().iter().filter(|&&p| p % 2 == 0).count() % 2 == 1;
                (m.clone(), if odd { -c } else { c.clone() })
            })
            .collect();
        PowerSumPolynomial { terms, degree: self.degree }
    }

    /// Substitute p_n -> c^n p_n.
    pub fn rescale_grading(&self, c: &ParamRational) -> Self {
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x * &c.pow(m.size() as i32))).collect();
        PowerSumPolynomial { terms, degree: self.degree }
    }

    /// Substitute p_n -> c p_n for every n.
    pub fn rescale_length(&self, c: &ParamRational) -> Self {
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x * &c.pow(m.len() as i32))).collect();
        PowerSumPolynomial { terms, degree: self.degree }
    }

    /// Key used in the JSON form: "p[2,1,1]".
    pub fn key(mu: &Partition) -> String {
        let s: Vec<String> = mu.parts().iter().map(|p| p.to_string()).collect();
        format!("p[{}]", s.join(","))
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (mu, c) in &self.terms {
            m.insert(Self::key(mu), Value::String(c.to_string()));
        }
        Value::Object(m)
    }

    pub fn from_json(v: &Value, degree: u32) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
        let mut r = Self::zero(degree);
        for (k, c) in obj {
            let inner = k
                .strip_prefix("p[")
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("bad key {}", k)))?;
            let mu = Partition::parse(inner)?;
            let cs = c.as_str().ok_or_else(|| Error::Parse(format!("coefficient of {} is not a string", k)))?;
            r.add_term(mu, &ParamRational::parse(cs)?);
        }
        Ok(r)
    }

    /// Display order: by degree, then most parts first.
    fn display_order(&self) -> Vec<(&Partition, &ParamRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.size().cmp(&b.0.size()).then_with(|| a.0.cmp(b.0)));
        v
    }

    /// LaTeX in the style `\frac{1}{2}p_1^2+\frac{1}{2}p_{2}`.
    pub fn to_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (mu, c)) in self.display_order().into_iter().enumerate() {
            let mono = latex_mono(mu);
            let (neg, body) = c.latex_signed();
            if i > 0 {
                out.push(if neg { '-' } else { '+' });
            } else if neg {
                out.push('-');
            }
            if mono.is_empty() {
                out.push_str(&body);
            } else if body == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&body);
                out.push_str(&mono);
            }
        }
        out
    }
}

fn latex_mono(mu: &Partition) -> String {
    let mut out = String::new();
    let mut i = 0;
    let parts = mu.parts();
    while i < parts.len() {
        let v = parts[i];
        let mut m = 0;
        while i < parts.len() && parts[i] == v {
            m += 1;
            i += 1;
        }
        let base = if v < 10 && v == 1 { "p_1".to_string() } else { format!("p_{{{}}}", v) };
        out.push_str(&base);
        if m > 1 {
            out.push_str(&format!("^{}", m));
        }
    }
    out
}

impl fmt::Display for PowerSumPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .display_order()
            .into_iter()
            .map(|(mu, c)| {
                if mu.is_empty() {
                    format!("({})", c)
                } else {
                    format!("({})*{}", c, Self::key(mu))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Convenience: rational constant.
pub fn q(n: i64, d: i64) -> ParamRational {
    ParamRational::from_rat(BigRational::new(n.into(), d.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let a = PowerSumPolynomial::p(1, 6).pow(2).scale(&q(1, 2)).add(&PowerSumPolynomial::p(2, 6).scale(&q(1, 2)));
        let j = a.to_json();
        assert_eq!(j["p[1,1]"], "1/2");
        let b = PowerSumPolynomial::from_json(&j, 6).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn truncation() {
        let a = PowerSumPolynomial::p(2, 3);
        assert!(a.mul(&a).is_zero());
        assert_eq!(a.mul(&PowerSumPolynomial::p(1, 3)).len(), 1);
    }

    #[test]
    fn latex_style() {
        let a = PowerSumPolynomial::p(1, 6).pow(2).scale(&q(1, 2)).add(&PowerSumPolynomial::p(2, 6).scale(&q(-1, 2)));
        assert_eq!(a.to_latex(), "\\frac{1}{2}p_1^2-\\frac{1}{2}p_{2}");
    }
}
