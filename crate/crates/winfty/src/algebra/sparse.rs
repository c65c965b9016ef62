//! Sparse square matrices over a coefficient ring, stored by column
//! (column = source basis vector).

use std::collections::BTreeMap;

use super::hifloat::{HiComplex, HiFloat};
use super::param::ParamRational;

pub trait Scalar: Clone + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_i64(n: i64) -> Self;
}

impl Scalar for ParamRational {
    fn zero() -> Self {
        ParamRational::zero()
    }
    fn is_zero(&self) -> bool {
        ParamRational::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_i64(n: i64) -> Self {
        ParamRational::from_i64(n)
    }
}

impl Scalar for HiComplex {
    fn zero() -> Self {
        HiComplex::zero()
    }
    fn is_zero(&self) -> bool {
        self.re == HiFloat::zero() && self.im == HiFloat::zero()
    }
    fn add(&self, o: &Self) -> Self {
        HiComplex::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        HiComplex::mul(self, o)
    }
    fn neg(&self) -> Self {
        HiComplex::zero().sub(self)
    }
    fn from_i64(n: i64) -> Self {
        HiComplex::real(HiFloat::from_i64(n))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SparseOp<T: Scalar> {
    pub dim: usize,
    pub cols: Vec<BTreeMap<usize, T>>,
}

impl<T: Scalar> SparseOp<T> {
    pub fn zero(dim: usize) -> Self {
        SparseOp { dim, cols: vec![BTreeMap::new(); dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.cols[i].insert(i, T::from_i64(1));
        }
        m
    }

    pub fn diagonal(d: Vec<T>) -> Self {
        let mut m = Self::zero(d.len());
        for (i, x) in d.into_iter().enumerate() {
            if !x.is_zero() {
                m.cols[i].insert(i, x);
            }
        }
        m
    }

    /// Add c at (row, col).
    pub fn push(&mut self, row: usize, col: usize, c: T) {
        if c.is_zero() {
            return;
        }
        let e = self.cols[col].entry(row).or_insert_with(T::zero);
        *e = e.add(&c);
        if e.is_zero() {
            self.cols[col].remove(&row);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.cols[col].get(&row).cloned().unwrap_or_else(T::zero)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.cols.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, x)| (*i, j, x)))
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut m = Self::zero(self.dim);
        for (i, j, x) in self.entries() {
            m.push(i, j, x.mul(c));
        }
        m
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut m = self.clone();
        for (i, j, x) in o.entries() {
            m.push(i, j, x.clone());
        }
        m
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut m = self.clone();
        for (i, j, x) in o.entries() {
            m.push(i, j, x.neg());
        }
        m
    }

    /// Composition self * o (o acts first).
    pub fn mul(&self, o: &Self) -> Self {
        let mut m = Self::zero(self.dim);
        for (j, col) in o.cols.iter().enumerate() {
            for (k, c) in col {
                for (i, d) in &self.cols[*k] {
                    m.push(*i, j, d.mul(c));
                }
            }
        }
        m
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn anticommutator(&self, o: &Self) -> Self {
        self.mul(o).add(&o.mul(self))
    }

    /// Keep only the columns selected by `keep`.
    pub fn restrict_sources(&self, keep: impl Fn(usize) -> bool) -> Self {
        let mut m = Self::zero(self.dim);
        for (j, c) in self.cols.iter().enumerate() {
            if keep(j) {
                m.cols[j] = c.clone();
            }
        }
        m
    }

    /// Apply to a sparse column vector.
    pub fn apply(&self, v: &BTreeMap<usize, T>) -> BTreeMap<usize, T> {
        let mut out: BTreeMap<usize, T> = BTreeMap::new();
        for (k, c) in v {
            for (i, d) in &self.cols[*k] {
                let e = out.entry(*i).or_insert_with(T::zero);
                *e = e.add(&d.mul(c));
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SparseOp<U> {
        let mut m = SparseOp::zero(self.dim);
        for (i, j, x) in self.entries() {
            m.push(i, j, f(x));
        }
        m
    }
}

impl SparseOp<HiComplex> {
    /// Largest entry in the max(|re|,|im|) norm.
    pub fn max_abs(&self) -> HiFloat {
        let mut best = HiFloat::zero();
        for (_, _, x) in self.entries() {
            let a = x.max_abs();
            if a > best {
                best = a;
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator_of_shift_ops() {
        let mut a: SparseOp<ParamRational> = SparseOp::zero(3);
        a.push(1, 0, ParamRational::one());
        a.push(2, 1, ParamRational::one());
        let b = SparseOp::diagonal(vec![ParamRational::from_i64(0), ParamRational::from_i64(1), ParamRational::from_i64(2)]);
        // [N, a] = a for a raising operator and N the counting operator
        assert_eq!(b.commutator(&a), a);
        assert!(SparseOp::<ParamRational>::identity(3).commutator(&a).is_zero());
    }
}
