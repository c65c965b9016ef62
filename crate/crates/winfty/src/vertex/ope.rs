//! Wick contractions of free-current composites.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde_json::Value;

use super::coeff::{factorial, Coeff};
use super::field::{CompositeField, Factor, Monomial};

/// Singular part of A(z)B(w): pole order r >= 1 maps to the coefficient
/// field at w of (z-w)^-r.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct OpeResult {
    pub n: usize,
    pub poles: BTreeMap<u32, CompositeField>,
}

impl OpeResult {
    pub fn pole(&self, r: u32) -> CompositeField {
        self.poles.get(&r).cloned().unwrap_or_else(|| CompositeField::zero(self.n))
    }

    pub fn max_order(&self) -> u32 {
        self.poles.keys().next_back().copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        Value::Object(self.poles.iter().map(|(r, f)| (r.to_string(), f.to_json())).collect())
    }

    /// `A(z)B(w) \sim ...` in display style.
    pub fn to_latex(&self, lhs: &str) -> String {
        let mut parts = Vec::new();
        for (r, f) in self.poles.iter().rev() {
            let den = if *r == 1 { "(z-w)".to_string() } else { format!("(z-w)^{{{}}}", r) };
            parts.push(format!("\\frac{{{}}}{{{}}}", f.to_latex(), den));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        format!("{} &\\sim& {}", lhs, parts.join(" + "))
    }
}

type Acc = BTreeMap<u32, BTreeMap<Monomial, Coeff>>;

fn acc_add(acc: &mut Acc, r: u32, m: Monomial, c: Coeff) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(r).or_default();
    match e.get_mut(&m) {
        Some(x) => {
            *x = &*x + &c;
            if x.is_zero() {
                e.remove(&m);
            }
        }
        None => {
            e.insert(m, c);
        }
    }
}

fn acc_merge(mut a: Acc, b: Acc) -> Acc {
    for (r, terms) in b {
        for (m, c) in terms {
            acc_add(&mut a, r, m, c);
        }
    }
    a
}

/// All partial matchings between factor positions of `a` and `b` with equal
/// current index; each as a list of (i, j) pairs.
fn matchings(a: &[Factor], b: &[Factor]) -> Vec<Vec<(usize, usize)>> {
    fn rec(i: usize, a: &[Factor], b: &[Factor], used: &mut Vec<bool>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if i == a.len() {
            out.push(cur.clone());
            return;
        }
        rec(i + 1, a, b, used, cur, out);
        for j in 0..b.len() {
            if !used[j] && b[j].current == a[i].current {
                used[j] = true;
                cur.push((i, j));
                rec(i + 1, a, b, used, cur, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(0, a, b, &mut vec![false; b.len()], &mut Vec::new(), &mut out);
    out
}

fn derivative_of(cache: &mut HashMap<(Monomial, u32), CompositeField>, n_cur: usize, m: &Monomial, k: u32) -> CompositeField {
    if let Some(f) = cache.get(&(m.clone(), k)) {
        return f.clone();
    }
    let f = if k == 0 {
        CompositeField::monomial(n_cur, m.clone(), Coeff::one())
    } else {
        derivative_of(cache, n_cur, m, k - 1).derivative()
    };
    cache.insert((m.clone(), k), f.clone());
    f
}

/// Expansion of A(z)B(w) in powers of (z-w) down to order 0 when
/// `regular` is set, else only the poles.
fn expand(a: &CompositeField, b: &CompositeField, regular: bool) -> Acc {
    assert_eq!(a.n, b.n, "fields over different numbers of currents");
    let n_cur = a.n;
    let kappa = Coeff::kappa();
    let terms: Vec<(&Monomial, &Coeff)> = a.terms().iter().collect();
    terms
        .par_iter()
        .map(|(ma, ca)| {
            let mut acc = Acc::new();
            let mut cache = HashMap::new();
            for (mb, cb) in b.terms() {
                let cab = *ca * cb;
                let fa = ma.factors();
                let fb = mb.factors();
                for mt in matchings(fa, fb) {
                    if mt.is_empty() && !regular {
                        continue;
                    }
                    let mut num = BigRational::one();
                    let mut order = 0u32;
                    for &(i, j) in &mt {
                        let (x, y) = (fa[i].deriv as u32, fb[j].deriv as u32);
                        num *= factorial(x + y + 1);
                        if x % 2 == 1 {
                            num = -num;
                        }
                        order += x + y + 2;
                    }
                    let coef = (&cab * &kappa.pow(mt.len() as u32)).scale(&num);
                    let arest = Monomial::new(fa.iter().enumerate().filter(|(i, _)| !mt.iter().any(|p| p.0 == *i)).map(|(_, f)| *f).collect());
                    let brest = Monomial::new(fb.iter().enumerate().filter(|(j, _)| !mt.iter().any(|p| p.1 == *j)).map(|(_, f)| *f).collect());
                    let top = if arest.is_identity() { 0 } else { order };
                    for k in 0..=top {
                        let r = order - k;
                        if r == 0 && !regular {
                            continue;
                        }
                        let c = coef.scale(&factorial(k).recip());
                        let d = derivative_of(&mut cache, n_cur, &arest, k);
                        for (m, x) in d.terms() {
                            acc_add(&mut acc, r, m.times(&brest), x * &c);
                        }
                    }
                }
            }
            acc
        })
        .reduce(Acc::new, acc_merge)
}

/// Singular part of A(z)B(w) by Wick's theorem.
pub fn wick_ope(a: &CompositeField, b: &CompositeField) -> OpeResult {
    let acc = expand(a, b, false);
    OpeResult {
        n: a.n,
        poles: acc
            .into_iter()
            .filter(|(r, t)| *r > 0 && !t.is_empty())
            .map(|(r, t)| (r, CompositeField::from_terms(a.n, t)))
            .collect(),
    }
}

/// The order-zero term (AB)(w) of A(z)B(w). For a linear A this is the
/// mode normal-ordered product; otherwise it contains contraction
/// corrections.
pub fn regular_product(a: &CompositeField, b: &CompositeField) -> CompositeField {
    let mut acc = expand(a, b, true);
    CompositeField::from_terms(a.n, acc.remove(&0).unwrap_or_default())
}

/// Right-nested regular product (A (B (C ...))).
pub fn nested_product(fields: &[CompositeField]) -> CompositeField {
    let (last, rest) = fields.split_last().expect("at least one field");
    rest.iter().rev().fold(last.clone(), |acc, f| regular_product(f, &acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j(n: usize, i: usize, d: u8) -> CompositeField {
        CompositeField::current(n, i, d)
    }

    #[test]
    fn propagator() {
        let o = wick_ope(&j(2, 1, 0), &j(2, 1, 0));
        assert_eq!(o.max_order(), 2);
        assert_eq!(o.pole(2), CompositeField::constant(2, Coeff::kappa()));
        assert!(wick_ope(&j(2, 1, 0), &j(2, 2, 0)).poles.is_empty());
    }

    #[test]
    fn derivative_propagators() {
        // <J'(z) J(w)> = -2 kappa/(z-w)^3, <J(z) J'(w)> = 2 kappa/(z-w)^3
        let o = wick_ope(&j(1, 1, 1), &j(1, 1, 0));
        assert_eq!(o.pole(3).central(), Coeff::kappa().scale(&BigRational::from_integer((-2).into())));
        let o = wick_ope(&j(1, 1, 0), &j(1, 1, 1));
        assert_eq!(o.pole(3).central(), Coeff::kappa().scale(&BigRational::from_integer(2.into())));
    }

    #[test]
    fn square_of_current() {
        // :JJ:(z) :JJ:(w) ~ 2k^2/(z-w)^4 + 4k :JJ:/(z-w)^2 + 4k :J'J:/(z-w)
        let x = j(1, 1, 0);
        let xx = x.normal_product(&x);
        let o = wick_ope(&xx, &xx);
        let k = Coeff::kappa();
        assert_eq!(o.pole(4).central(), (&k * &k).scale(&BigRational::from_integer(2.into())));
        assert_eq!(o.pole(2), xx.scale(&k).scale_rat(&BigRational::from_integer(4.into())));
        assert_eq!(o.pole(1), xx.derivative().scale(&k).scale_rat(&BigRational::from_integer(2.into())));
        assert_eq!(o.max_order(), 4);
    }

    #[test]
    fn schur_point_central() {
        // at h1 = 1, h2 = -1 the quartic pole of :J1J1: x :J1J1: is 2
        let x = j(1, 1, 0);
        let xx = x.normal_product(&x);
        let one = BigRational::one();
        let o = wick_ope(&xx, &xx);
        let c = o.pole(4).central().specialize(&one, &-one.clone(), None).unwrap();
        assert_eq!(c, Coeff::from_i64(2));
    }

    #[test]
    fn regular_part_of_composites() {
        let x = j(1, 1, 0);
        assert_eq!(regular_product(&x, &x), x.normal_product(&x));
        // (JJ)(JJ) differs from :JJJJ: by contraction terms
        let xx = x.normal_product(&x);
        let r = regular_product(&xx, &xx);
        assert_ne!(r, xx.normal_product(&xx));
        assert_eq!(r.weight(), Some(4));
    }
}
