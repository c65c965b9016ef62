use std::collections::BTreeMap;

use super::ad_tower;
use super::operator::DiagramOperator;
use crate::algebra::{ParamRational, SparseOp};
use crate::error::{Error, Result};
use crate::yangian::{Gauge, YangianModule, YangianParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    /// height-one diagrams only
    TwoD,
    /// all plane partitions
    ThreeD,
}

/// The Yangian vacuum module (tree gauge) seen as a fermionic Fock space.
#[derive(Clone, Debug)]
pub struct DiagramFock {
    pub module: YangianModule,
    pub kind: ModuleKind,
}

impl DiagramFock {
    pub fn new(kind: ModuleKind, psi0: ParamRational, max_level: usize) -> Result<Self> {
        let params = YangianParams::symbolic(psi0);
        let module = match kind {
            ModuleKind::TwoD => YangianModule::new_2d(params, max_level)?,
            ModuleKind::ThreeD => YangianModule::new(params, max_level)?,
        };
        Ok(DiagramFock { module, kind })
    }

    /// 2D module at psi0 = -1/(h1 h2), where it is closed under f.
    pub fn jack(max_level: usize) -> Result<Self> {
        Self::new(ModuleKind::TwoD, ParamRational::psi0_jack(), max_level)
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn psi0(&self) -> &ParamRational {
        &self.module.params.psi0
    }

    fn labels(&self) -> (Vec<String>, Vec<usize>) {
        (
            self.module.states.iter().map(|p| p.to_string()).collect(),
            (0..self.dim()).map(|i| self.module.level(i)).collect(),
        )
    }

    fn wrap(&self, op: SparseOp<ParamRational>, degree: i64) -> Result<DiagramOperator> {
        let (l, v) = self.labels();
        DiagramOperator::new(l, v, op, degree)
    }

    /// Hamiltonians 1..=nmax, -(1/(n-1)!) ad_{f1}^{n-1} f0.
    pub fn hamiltonians(&self, nmax: usize) -> Result<Vec<DiagramOperator>> {
        let f0 = self.module.f(0, Gauge::Tree);
        let f1 = self.module.f(1, Gauge::Tree);
        ad_tower(&f1, &f0, nmax, -1)
            .into_iter()
            .enumerate()
            .map(|(k, op)| self.wrap(op, -(k as i64 + 1)))
            .collect()
    }

    /// Distinct box weights occurring on edges of the module.
    pub fn realized_weights(&self) -> Vec<ParamRational> {
        let mut seen: BTreeMap<String, ParamRational> = BTreeMap::new();
        for es in &self.module.edges {
            for e in es {
                seen.entry(e.weight.to_text()).or_insert_with(|| e.weight.clone());
            }
        }
        seen.into_values().collect()
    }

    /// Gamma_h (create) adds boxes of weight exactly h with the tree-gauge
    /// E coefficient; Gamma*_h removes them with minus the F coefficient,
    /// so that f_j = -sum h^j Gamma*_h.
    pub fn gamma_op(&self, h: &ParamRational, create: bool) -> SparseOp<ParamRational> {
        let mut m = SparseOp::zero(self.dim());
        for (i, es) in self.module.edges.iter().enumerate() {
            for e in es {
                if e.weight != *h {
                    continue;
                }
                if create {
                    m.push(e.target, i, e.e_tree.clone());
                } else {
                    let f = e.ef.checked_div(&e.e_tree).expect("tree E is nonzero");
                    m.push(i, e.target, -f);
                }
            }
        }
        m
    }

    pub fn gamma3d(&self, h: &ParamRational, create: bool) -> Result<DiagramOperator> {
        self.wrap(self.gamma_op(h, create), if create { 1 } else { -1 })
    }

    /// sum_h h^j Gamma_h (or Gamma*_h).
    fn gamma_sum(&self, j: u32, create: bool) -> SparseOp<ParamRational> {
        let mut s = SparseOp::zero(self.dim());
        for h in self.realized_weights() {
            s = s.add(&self.gamma_op(&h, create).scale(&h.pow(j as i32)));
        }
        s
    }

    /// b_{n,1} for n != 0 from the Gamma sums.
    fn b1(&self, n: i64) -> SparseOp<ParamRational> {
        let k = n.unsigned_abs() as usize;
        if n < 0 {
            let x = self.gamma_sum(1, true);
            let base = self.gamma_sum(0, true);
            ad_tower(&x, &base, k, 1).pop().unwrap()
        } else {
            // the base of the tower is read as -sum Gamma* (j = 0)
            let x = self.gamma_sum(1, false).scale(&ParamRational::from_i64(-1));
            let base = self.gamma_sum(0, false).scale(&ParamRational::from_i64(-1));
            ad_tower(&x, &base, k, -1).pop().unwrap()
        }
    }

    /// sum_{i+j=total} :b_{i,1} b_{j,1}: with annihilators to the right.
    /// b_{0,1} is taken to be zero; modes beyond the module level vanish.
    fn normal_square(&self, total: i64) -> SparseOp<ParamRational> {
        let l = self.module.max_level as i64;
        let mut cache: BTreeMap<i64, SparseOp<ParamRational>> = BTreeMap::new();
        let get = |k: i64, cache: &mut BTreeMap<i64, SparseOp<ParamRational>>| cache.entry(k).or_insert_with(|| self.b1(k)).clone();
        let mut s = SparseOp::zero(self.dim());
        for i in (total - l).max(-l)..=(total + l).min(l) {
            let j = total - i;
            if i == 0 || j == 0 || j.abs() > l {
                continue;
            }
            let (a, b) = if i > 0 && j < 0 { (j, i) } else { (i, j) };
            let (oa, ob) = (get(a, &mut cache), get(b, &mut cache));
            s = s.add(&oa.mul(&ob));
        }
        s
    }

    /// The 3D boson mode b_{n,j}, j = 1 or 2. Negative n creates.
    pub fn b_mode(&self, n: i64, j: u32) -> Result<DiagramOperator> {
        if n == 0 || !(1..=2).contains(&j) || (j == 2 && n.abs() < 2) {
            return Err(Error::Unsupported(format!("b_({},{}) is not defined", n, j)));
        }
        if n.unsigned_abs() as usize > self.module.max_level {
            return Err(Error::LevelOverflow { level: n.unsigned_abs() as usize, bound: self.module.max_level });
        }
        let op = if j == 1 {
            self.b1(n)
        } else {
            let k = n.unsigned_abs() as usize - 1;
            let s3 = self.module.params.sigma3.clone();
            let minus = ParamRational::from_i64(-1);
            let tower = if n < 0 {
                let g0 = self.gamma_sum(0, true);
                let g1 = self.gamma_sum(1, true);
                let g2 = self.gamma_sum(2, true);
                let seed = g2.commutator(&g0).sub(&g1.commutator(&g0).scale(&s3));
                ad_tower(&g1, &seed, k, 1).pop().unwrap()
            } else {
                let g0 = self.gamma_sum(0, false).scale(&minus);
                let g1 = self.gamma_sum(1, false).scale(&minus);
                // the m^2 sum enters without the minus sign, as displayed
                let g2 = self.gamma_sum(2, false);
                let seed = g2.commutator(&g0).sub(&g1.commutator(&g0).scale(&s3));
                ad_tower(&g1, &seed, k, -1).pop().unwrap()
            };
            tower.sub(&self.normal_square(n))
        };
        self.wrap(op, -n)
    }

    /// Reconstruct e_j (create) or f_j from the Gamma components.
    pub fn generator_from_gammas(&self, j: u32, create: bool) -> SparseOp<ParamRational> {
        let s = self.gamma_sum(j, create);
        if create {
            s
        } else {
            s.scale(&ParamRational::from_i64(-1))
        }
    }

    /// Diagonal of sum_h h^j [Gamma*_h, Gamma_h].
    pub fn psi_from_gammas(&self, j: u32) -> Vec<ParamRational> {
        let mut d = vec![ParamRational::zero(); self.dim()];
        for h in self.realized_weights() {
            let c = self.gamma_op(&h, false).commutator(&self.gamma_op(&h, true));
            let w = h.pow(j as i32);
            for (i, x) in d.iter_mut().enumerate() {
                *x = &*x + &(c.get(i, i) * &w);
            }
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{Box3, PlanePartition};

    fn q(n: i64) -> ParamRational {
        ParamRational::from_i64(n)
    }

    #[test]
    fn jack_hamiltonian_elements() {
        let fk = DiagramFock::jack(2).unwrap();
        let h = fk.hamiltonians(2).unwrap();
        let m = &fk.module;
        let e = m.index_of(&PlanePartition::empty()).unwrap();
        let two = m.index_of(&PlanePartition::from_partition(&crate::symfun::Partition::new(vec![2]))).unwrap();
        let (h1, h2) = (ParamRational::h1(), ParamRational::h2());
        let want = q(2) / (&h1 * &h2 * (&h2 - &h1));
        assert_eq!(h[1].element(e, two), want);
        let sq = h[0].op.mul(&h[0].op).get(e, two);
        assert_eq!(sq, q(2) / (&h1 * &h1 * &h2 * (&h2 - &h1)));
    }

    #[test]
    fn jack_hamiltonians_commute() {
        let fk = DiagramFock::jack(5).unwrap();
        let h = fk.hamiltonians(4).unwrap();
        for a in 0..4 {
            for b in a + 1..4 {
                if a + b + 2 <= 6 {
                    assert!(h[a].op.commutator(&h[b].op).is_zero());
                }
            }
        }
    }

    #[test]
    fn gammas_rebuild_generators() {
        let fk = DiagramFock::new(ModuleKind::ThreeD, ParamRational::psi0_sym(), 3).unwrap();
        for j in 0..3 {
            assert_eq!(fk.generator_from_gammas(j, true), fk.module.e(j, Gauge::Tree));
            assert_eq!(fk.generator_from_gammas(j, false), fk.module.f(j, Gauge::Tree));
        }
        // psi from the diagonal commutators, on states whose neighbours
        // all lie inside the truncation
        for j in 0..3 {
            let d = fk.psi_from_gammas(j);
            let want = fk.module.psi_eigen(j).unwrap();
            for i in 0..fk.dim() {
                if fk.module.level(i) < 3 {
                    assert_eq!(d[i], want[i], "psi_{} at {}", j, fk.module.states[i]);
                }
            }
        }
        let g = fk.gamma_op(&ParamRational::zero(), true);
        let o = fk.module.index_of(&PlanePartition::empty().add(&Box3::origin()).unwrap()).unwrap();
        assert!(g.get(o, 0).is_one());
    }

    #[test]
    fn boson_commutator_and_reduction() {
        let fk = DiagramFock::new(ModuleKind::ThreeD, ParamRational::psi0_sym(), 3).unwrap();
        let c = fk.b_mode(1, 1).unwrap().op.commutator(&fk.b_mode(-1, 1).unwrap().op);
        for i in 0..fk.dim() {
            if fk.module.level(i) < 3 {
                for (r, x) in &c.cols[i] {
                    if *r == i {
                        assert_eq!(*x, ParamRational::psi0_sym());
                    } else {
                        assert!(x.is_zero());
                    }
                }
            }
        }
        let bm = fk.b_mode(-1, 1).unwrap();
        let o = fk.module.index_of(&PlanePartition::empty().add(&Box3::origin()).unwrap()).unwrap();
        assert!(bm.element(o, 0).is_one());
        assert!(fk.b_mode(-2, 2).is_ok() && fk.b_mode(1, 2).is_err());
    }
}
