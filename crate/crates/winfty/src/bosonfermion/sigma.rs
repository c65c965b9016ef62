use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use serde_json::{json, Value};

use super::diagram::{DiagramFock, ModuleKind};
use super::operator::DiagramOperator;
use super::schur::SchurFock;
use crate::algebra::ParamRational;
use crate::error::{Error, Result};
use crate::fock::PlanePartition;
use crate::symfun::{partitions_of, Partition, PowerSumPolynomial, DEFAULT_DEGREE};

/// Sum over mu |- n of p_mu / (z_mu psi0^l(mu)) <0| H_mu |state>.
fn sigma_from(hams: &[DiagramOperator], vac: usize, state: usize, n: u32, psi0: &ParamRational) -> Result<PowerSumPolynomial> {
    let mut out = PowerSumPolynomial::zero(DEFAULT_DEGREE.max(n));
    for mu in partitions_of(n) {
        let mut v = BTreeMap::new();
        v.insert(state, ParamRational::one());
        for &k in mu.parts() {
            v = hams[k as usize - 1].op.apply(&v);
            if v.is_empty() {
                break;
            }
        }
        let Some(c) = v.get(&vac) else { continue };
        let norm = ParamRational::from_rat(BigRational::from_integer(mu.z())) * psi0.pow(mu.len() as i32);
        out.add_term(mu, &c.checked_div(&norm)?);
    }
    Ok(out)
}

/// The n-th Hamiltonian on the given module, truncated at `level` boxes.
pub fn hamiltonian_h(n: usize, kind: ModuleKind, psi0: ParamRational, level: usize) -> Result<DiagramOperator> {
    if n == 0 {
        return Err(Error::Unsupported("Hamiltonians start at n = 1".into()));
    }
    let fk = DiagramFock::new(kind, psi0, level.max(n))?;
    Ok(fk.hamiltonians(n)?.pop().unwrap())
}

/// Image of |lambda> under the free-fermion sigma map (psi0 = 1).
pub fn sigma_schur(lambda: &Partition) -> Result<PowerSumPolynomial> {
    let n = lambda.size();
    let fk = SchurFock::new(n as usize);
    let hams = fk.hamiltonians(n.max(1) as usize)?;
    let vac = fk.index_of(&Partition::empty()).unwrap();
    sigma_from(&hams, vac, fk.index_of(lambda).unwrap(), n, &ParamRational::one())
}

/// Image of the tree-gauge state |lambda> in the one-layer module.
pub fn sigma_jack(lambda: &Partition) -> Result<PowerSumPolynomial> {
    let n = lambda.size();
    let fk = DiagramFock::jack(n as usize)?;
    let hams = fk.hamiltonians(n.max(1) as usize)?;
    let st = fk.module.index_of(&PlanePartition::from_partition(lambda)).unwrap();
    sigma_from(&hams, 0, st, n, fk.psi0())
}

/// sigma_jack for every partition of n, sharing one module.
pub fn sigma_jack_all(n: u32) -> Result<Vec<(Partition, PowerSumPolynomial)>> {
    let fk = DiagramFock::jack(n as usize)?;
    let hams = fk.hamiltonians(n.max(1) as usize)?;
    partitions_of(n)
        .into_iter()
        .map(|l| {
            let st = fk.module.index_of(&PlanePartition::from_partition(&l)).unwrap();
            let y = sigma_from(&hams, 0, st, n, fk.psi0())?;
            Ok((l, y))
        })
        .collect()
}

/// Monomial in the 3D boson variables P_{n,j}: sorted list of (n, j).
pub type PMonomial = Vec<(u32, u32)>;

/// Polynomial in the P_{n,j} with parameter coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ThreeDPolynomial {
    pub terms: BTreeMap<PMonomial, ParamRational>,
}

impl ThreeDPolynomial {
    pub fn add_term(&mut self, m: PMonomial, c: &ParamRational) {
        let e = self.terms.entry(m.clone()).or_insert_with(ParamRational::zero);
        *e = &*e + c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.iter().map(|(n, _)| n).sum())
    }

    pub fn to_json(&self) -> Value {
        let mut o = serde_json::Map::new();
        for (m, c) in &self.terms {
            o.insert(mono_name(m), json!(c.to_text()));
        }
        Value::Object(o)
    }
}

fn mono_name(m: &PMonomial) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter().map(|(n, j)| format!("P[{},{}]", n, j)).collect::<Vec<_>>().join("*")
}

impl fmt::Display for ThreeDPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.terms.iter().map(|(m, c)| format!("({})*{}", c, mono_name(m))).collect();
        write!(f, "{}", s.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SigmaImage {
    TwoD(PowerSumPolynomial),
    ThreeD(ThreeDPolynomial),
}

impl DiagramFock {
    /// <0| exp(sum P_{n,j} b_{n,j} / <P_{n,j},P_{n,j}>) |pi>, with the
    /// norm taken as <0| b_{n,j} b_{-n,j} |0>. Only the modes j = 1, 2
    /// are included, so this is the restriction to the subspace they
    /// generate.
    pub fn sigma_3d(&self, pi: &PlanePartition) -> Result<ThreeDPolynomial> {
        let n = pi.size();
        let st = self.module.index_of(pi).ok_or_else(|| Error::LevelOverflow { level: n, bound: self.module.max_level })?;
        let mut modes: Vec<((u32, u32), DiagramOperator, ParamRational)> = Vec::new();
        for k in 1..=n as i64 {
            for j in 1..=2u32 {
                if j == 2 && k < 2 {
                    continue;
                }
                let ann = self.b_mode(k, j)?;
                let cre = self.b_mode(-k, j)?;
                let norm = ann.op.mul(&cre.op).get(0, 0);
                if norm.is_zero() {
                    continue;
                }
                modes.push(((k as u32, j), ann, norm));
            }
        }
        let mut out = ThreeDPolynomial::default();
        let mut v = BTreeMap::new();
        v.insert(st, ParamRational::one());
        // ordered words of annihilators, weighted by 1/k!
        let mut stack: Vec<(BTreeMap<usize, ParamRational>, Vec<usize>, usize)> = vec![(v, Vec::new(), n)];
        while let Some((v, word, left)) = stack.pop() {
            if left == 0 {
                if let Some(c) = v.get(&0) {
                    let mut coeff = c.clone();
                    let mut mono: PMonomial = Vec::new();
                    for &w in &word {
                        coeff = coeff.checked_div(&modes[w].2)?;
                        mono.push(modes[w].0);
                    }
                    let fact: i64 = (1..=word.len() as i64).product();
                    mono.sort();
                    out.add_term(mono, &(coeff * ParamRational::frac(1, fact)));
                }
                continue;
            }
            for (w, ((k, _), op, _)) in modes.iter().enumerate() {
                if *k as usize > left {
                    continue;
                }
                let nv = op.op.apply(&v);
                if nv.is_empty() {
                    continue;
                }
                let mut nw = word.clone();
                nw.push(w);
                stack.push((nv, nw, left - *k as usize));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Specialization;
    use crate::fock::Box3;
    use crate::symfun::{partitions_up_to, schur};

    fn q(n: i64) -> ParamRational {
        ParamRational::from_i64(n)
    }

    #[test]
    fn schur_images_small() {
        assert_eq!(sigma_schur(&Partition::empty()).unwrap(), PowerSumPolynomial::one(DEFAULT_DEGREE));
        for l in partitions_up_to(4) {
            assert_eq!(sigma_schur(&l).unwrap(), schur(&l, DEFAULT_DEGREE), "{}", l);
        }
    }

    #[test]
    fn jack_two() {
        let (h1, h2) = (ParamRational::h1(), ParamRational::h2());
        let d = &h1 - &h2;
        let want = PowerSumPolynomial::from_terms(
            [(Partition::new(vec![2]), q(1) / d.clone()), (Partition::new(vec![1, 1]), -(&h2 / d))],
            DEFAULT_DEGREE,
        );
        assert_eq!(sigma_jack(&Partition::new(vec![2])).unwrap(), want);
        assert_eq!(sigma_jack(&Partition::new(vec![1])).unwrap(), PowerSumPolynomial::p(1, DEFAULT_DEGREE));
    }

    #[test]
    fn jack_reduces_to_schur() {
        for n in 0..=4 {
            for (l, y) in sigma_jack_all(n).unwrap() {
                let s = y.specialize(&Specialization::schur_point()).unwrap();
                assert_eq!(s, sigma_schur(&l).unwrap(), "{}", l);
            }
        }
    }

    #[test]
    fn three_d_origin() {
        let fk = DiagramFock::new(ModuleKind::ThreeD, ParamRational::psi0_sym(), 2).unwrap();
        let o = PlanePartition::empty().add(&Box3::origin()).unwrap();
        let s = fk.sigma_3d(&o).unwrap();
        assert_eq!(s.terms.len(), 1);
        assert!(s.terms[&vec![(1, 1)]].is_one());
        let two = fk.sigma_3d(&PlanePartition::from_partition(&Partition::new(vec![2]))).unwrap();
        assert_eq!(two.degree(), Some(2));
    }
}
