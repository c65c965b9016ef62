use std::collections::HashMap;

use super::ad_tower;
use super::operator::DiagramOperator;
use crate::algebra::{ParamRational, SparseOp};
use crate::error::Result;
use crate::fock::{gamma_fermionic, FermionState, MayaDiagram, GAMMA_SIGN};
use crate::symfun::{partitions_up_to, Partition};

/// Charge-zero fermionic Fock space up to a fixed level, in the basis
/// |lambda> = GAMMA_SIGN^{|lambda|} |k(lambda)>. With this choice the
/// Schur images come out as S_lambda rather than (-1)^{|lambda|} S_lambda.
#[derive(Clone, Debug)]
pub struct SchurFock {
    pub basis: Vec<Partition>,
    index: HashMap<Partition, usize>,
    pub max_level: usize,
}

impl SchurFock {
    pub fn new(max_level: usize) -> Self {
        let basis = partitions_up_to(max_level as u32);
        let index = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        SchurFock { basis, index, max_level }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, l: &Partition) -> Option<usize> {
        self.index.get(l).copied()
    }

    fn sign(n: u32) -> i64 {
        GAMMA_SIGN.pow(n)
    }

    /// Matrix of gamma_m (create) or gamma*_m computed from the fermion
    /// bilinears.
    pub fn gamma_matrix(&self, m: i64, create: bool) -> SparseOp<ParamRational> {
        let mut op = SparseOp::zero(self.dim());
        for (j, lam) in self.basis.iter().enumerate() {
            let s = FermionState::basis(MayaDiagram::from_partition(lam));
            let out = gamma_fermionic(m, create, &s);
            for (d, c) in out.terms() {
                let mu = d.to_partition().expect("gamma preserves charge");
                if let Some(i) = self.index_of(&mu) {
                    let k = Self::sign(lam.size()) * Self::sign(mu.size());
                    op.push(i, j, c * &ParamRational::from_i64(k));
                }
            }
        }
        op
    }

    fn labels(&self) -> (Vec<String>, Vec<usize>) {
        (self.basis.iter().map(|l| l.to_string()).collect(), self.basis.iter().map(|l| l.size() as usize).collect())
    }

    /// f_j = -sum_m m^j gamma*_m on the truncated space.
    pub fn f(&self, j: u32) -> SparseOp<ParamRational> {
        let l = self.max_level as i64;
        let mut op = SparseOp::zero(self.dim());
        for m in -l..=l {
            let w = ParamRational::from_i64(-m.pow(j));
            op = op.add(&self.gamma_matrix(m, false).scale(&w));
        }
        op
    }

    /// H_1..H_nmax, H_n = -(1/(n-1)!) ad_{f1}^{n-1} f0.
    pub fn hamiltonians(&self, nmax: usize) -> Result<Vec<DiagramOperator>> {
        let (labels, levels) = self.labels();
        ad_tower(&self.f(1), &self.f(0), nmax, -1)
            .into_iter()
            .enumerate()
            .map(|(k, op)| DiagramOperator::new(labels.clone(), levels.clone(), op, -(k as i64 + 1)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_matrix_elements() {
        let fk = SchurFock::new(2);
        let h = fk.hamiltonians(2).unwrap();
        let e = fk.index_of(&Partition::empty()).unwrap();
        let one = fk.index_of(&Partition::new(vec![1])).unwrap();
        let two = fk.index_of(&Partition::new(vec![2])).unwrap();
        let oo = fk.index_of(&Partition::new(vec![1, 1])).unwrap();
        assert!(h[0].element(e, one).is_one());
        assert!(h[1].element(e, two).is_one());
        assert_eq!(h[1].element(e, oo), ParamRational::from_i64(-1));
    }

    #[test]
    fn hamiltonians_commute() {
        let fk = SchurFock::new(5);
        let h = fk.hamiltonians(4).unwrap();
        for a in 0..4 {
            for b in a + 1..4 {
                assert!(h[a].op.commutator(&h[b].op).is_zero(), "H{} H{}", a + 1, b + 1);
            }
        }
    }
}
