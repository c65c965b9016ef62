//! Normal-ordered composites of the free currents J_1..J_N and their
//! derivatives.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use super::coeff::Coeff;
use crate::error::Result;
use num_rational::BigRational;

/// One factor d^deriv J_current.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factor {
    pub current: u8,
    pub deriv: u8,
}

impl Factor {
    pub fn weight(&self) -> u32 {
        self.deriv as u32 + 1
    }
}

/// A normal-ordered product of factors. Free currents commute inside
/// normal ordering, so factors are kept sorted. The empty monomial is the
/// identity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<Factor>);

impl Monomial {
    pub fn new(mut f: Vec<Factor>) -> Self {
        f.sort();
        Monomial(f)
    }

    pub fn identity() -> Self {
        Monomial(Vec::new())
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|f| f.weight()).sum()
    }

    pub fn times(&self, o: &Monomial) -> Monomial {
        let mut f = self.0.clone();
        f.extend_from_slice(&o.0);
        Monomial::new(f)
    }

    /// Leibniz rule; one entry per factor (duplicates not merged).
    fn derivative(&self) -> impl Iterator<Item = Monomial> + '_ {
        (0..self.0.len()).map(move |i| {
            let mut f = self.0.clone();
            f[i].deriv += 1;
            Monomial::new(f)
        })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for x in &self.0 {
            write!(f, "J{}{}", x.current, "'".repeat(x.deriv as usize))?;
        }
        Ok(())
    }
}

/// Finite linear combination of normal-ordered monomials in N currents.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CompositeField {
    pub n: usize,
    terms: BTreeMap<Monomial, Coeff>,
}

impl CompositeField {
    pub fn zero(n: usize) -> Self {
        CompositeField { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Coeff) -> Self {
        let mut f = Self::zero(n);
        f.add_term(Monomial::identity(), c);
        f
    }

    pub fn identity(n: usize) -> Self {
        Self::constant(n, Coeff::one())
    }

    /// d^deriv J_j.
    pub fn current(n: usize, j: usize, deriv: u8) -> Self {
        assert!(j >= 1 && j <= n, "current index {} out of 1..={}", j, n);
        let mut f = Self::zero(n);
        f.add_term(Monomial::new(vec![Factor { current: j as u8, deriv }]), Coeff::one());
        f
    }

    pub fn monomial(n: usize, m: Monomial, c: Coeff) -> Self {
        let mut f = Self::zero(n);
        f.add_term(m, c);
        f
    }

    pub fn from_terms(n: usize, it: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut f = Self::zero(n);
        for (m, c) in it {
            f.add_term(m, c);
        }
        f
    }

    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Coeff> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    /// The pure-number part.
    pub fn central(&self) -> Coeff {
        self.coeff(&Monomial::identity())
    }

    /// Common conformal weight, or None for a mixed or zero field.
    pub fn weight(&self) -> Option<u32> {
        let mut w = self.terms.keys().map(|m| m.weight());
        let first = w.next()?;
        w.all(|x| x == first).then_some(first)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut f = self.clone();
        for (m, c) in &o.terms {
            f.add_term(m.clone(), c.clone());
        }
        f
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut f = self.clone();
        for (m, c) in &o.terms {
            f.add_term(m.clone(), -c);
        }
        f
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self::from_terms(self.n, self.terms.iter().map(|(m, x)| (m.clone(), x * c)))
    }

    pub fn scale_rat(&self, c: &BigRational) -> Self {
        Self::from_terms(self.n, self.terms.iter().map(|(m, x)| (m.clone(), x.scale(c))))
    }

    pub fn neg(&self) -> Self {
        Self::from_terms(self.n, self.terms.iter().map(|(m, x)| (m.clone(), -x)))
    }

    pub fn derivative(&self) -> Self {
        let mut f = Self::zero(self.n);
        for (m, c) in &self.terms {
            for d in m.derivative() {
                f.add_term(d, c.clone());
            }
        }
        f
    }

    pub fn derivative_n(&self, k: u32) -> Self {
        (0..k).fold(self.clone(), |f, _| f.derivative())
    }

    /// Mode normal-ordered product :self other:.
    pub fn normal_product(&self, o: &Self) -> Self {
        let mut f = Self::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                f.add_term(a.times(b), ca * cb);
            }
        }
        f
    }

    pub fn map_coeffs(&self, g: impl Fn(&Coeff) -> Result<Coeff>) -> Result<Self> {
        let mut f = Self::zero(self.n);
        for (m, c) in &self.terms {
            f.add_term(m.clone(), g(c)?);
        }
        Ok(f)
    }

    pub fn specialize(&self, h1: &BigRational, h2: &BigRational, a0: Option<&BigRational>) -> Result<Self> {
        self.map_coeffs(|c| c.specialize(h1, h2, a0))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.terms.iter().map(|(m, c)| json!({"monomial": m.to_string(), "coeff": c.to_text()})).collect())
    }

    pub fn to_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (neg, body) = c.to_param().latex_signed();
            if i > 0 || neg {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono: String = m
                .0
                .iter()
                .map(|f| format!("J_{{{}}}{}", f.current, "^\\prime".repeat(f.deriv as usize)))
                .collect();
            if m.is_identity() {
                s.push_str(&body);
            } else if body == "1" {
                s.push_str(&format!(":{}:", mono));
            } else {
                s.push_str(&format!("\\left({}\\right):{}:", body, mono));
            }
        }
        s
    }
}

impl fmt::Display for CompositeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({})*{}", c, m)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_commute() {
        let n = 2;
        let a = CompositeField::current(n, 1, 1);
        let b = CompositeField::current(n, 2, 0);
        assert_eq!(a.normal_product(&b), b.normal_product(&a));
        let abc = a.normal_product(&b).normal_product(&a);
        let bca = b.normal_product(&a.normal_product(&a));
        assert_eq!(abc, bca);
    }

    #[test]
    fn leibniz() {
        let j = CompositeField::current(1, 1, 0);
        let jj = j.normal_product(&j);
        let d = jj.derivative();
        // (J J)' = 2 J' J
        assert_eq!(d, j.derivative().normal_product(&j).scale(&Coeff::from_i64(2)));
        assert_eq!(d.weight(), Some(3));
    }
}
