use std::collections::HashMap;

use num_rational::BigRational;

use super::spectral::SpectralRational;
use crate::algebra::{HiComplex, HiFloat, ParamRational, SparseOp, Var};
use crate::error::{Error, Result};
use crate::fock::{plane_partitions_of, Box3, PlanePartition};

/// Values of h1, h2, h3 and psi0 used by a module. They are either
/// symbols or constants.
#[derive(Clone, Debug, PartialEq)]
pub struct YangianParams {
    pub h: [ParamRational; 3],
    pub psi0: ParamRational,
    pub sigma2: ParamRational,
    pub sigma3: ParamRational,
}

impl YangianParams {
    fn build(h1: ParamRational, h2: ParamRational, psi0: ParamRational) -> Self {
        let h3 = -(&h1 + &h2);
        let sigma2 = &h1 * &h2 + &h1 * &h3 + &h2 * &h3;
        let sigma3 = &h1 * &h2 * &h3;
        YangianParams { h: [h1, h2, h3], psi0, sigma2, sigma3 }
    }

    /// Symbolic h1, h2 with the given psi0 (a symbol or an expression).
    pub fn symbolic(psi0: ParamRational) -> Self {
        Self::build(ParamRational::h1(), ParamRational::h2(), psi0)
    }

    /// Generic symbolic module: psi0 is its own symbol.
    pub fn generic() -> Self {
        Self::symbolic(ParamRational::psi0_sym())
    }

    /// One-layer value psi0 = -1/(h1 h2).
    pub fn one_layer() -> Self {
        Self::symbolic(ParamRational::psi0_jack())
    }

    /// Rational point; `psi0` may be written in terms of h1, h2.
    pub fn at_point(h1: BigRational, h2: BigRational, psi0: &ParamRational) -> Result<Self> {
        let a = ParamRational::from_rat(h1);
        let b = ParamRational::from_rat(h2);
        let p = psi0.subs(Var::H1, &a)?.subs(Var::H2, &b)?;
        Ok(Self::build(a, b, p))
    }

    pub fn weight(&self, b: &Box3) -> ParamRational {
        let (i, j) = b.weight_ij();
        &self.h[0] * &ParamRational::from_i64(i) + &self.h[1] * &ParamRational::from_i64(j)
    }

    /// phi(w) = prod (w + h_i) / (w - h_i).
    pub fn phi_at(&self, w: &ParamRational) -> Result<ParamRational> {
        let mut n = ParamRational::one();
        let mut d = ParamRational::one();
        for hi in &self.h {
            n = n * (w + hi);
            d = d * (w - hi);
        }
        n.checked_div(&d)
    }

    pub fn is_numeric(&self) -> bool {
        self.h[0].is_constant() && self.h[1].is_constant() && self.psi0.is_constant()
    }
}

/// psi_pi(u) = psi_0(u) prod_{boxes} phi(u - h_box).
pub fn psi_pi(params: &YangianParams, pi: &PlanePartition) -> SpectralRational {
    let mut s = SpectralRational::vacuum(&params.sigma3, &params.psi0);
    for b in pi.boxes() {
        s = s.mul(&SpectralRational::phi_shifted(&params.h, &params.weight(&b)));
    }
    s
}

/// The gauge-invariant product F(pi+b -> pi) E(pi -> pi+b)
/// = -(1/sigma3) res_{u = h_b} psi_pi(u).
pub fn ef_product(params: &YangianParams, pi: &PlanePartition, b: &Box3) -> Result<ParamRational> {
    let r = psi_pi(params, pi).residue(&params.weight(b))?;
    (-r).checked_div(&params.sigma3)
}

/// Normalization of the transition coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gauge {
    /// E = 1 on the canonical growth tree, forced elsewhere by the e-e
    /// exchange relation; F = (EF product) / E. Exact.
    Tree,
    /// E = 1 on every edge and F = EF product. Exact but not a
    /// representation of the e-e relations.
    Literal,
    /// E = F = square root of the EF product, fixed along the tree and
    /// carried to all edges. Needs a numeric parameter point.
    Symmetric,
}

impl Gauge {
    pub fn name(&self) -> &'static str {
        match self {
            Gauge::Tree => "ef-tree",
            Gauge::Literal => "ef-literal",
            Gauge::Symmetric => "symmetric-numeric",
        }
    }
}

/// One addable-box edge pi -> pi + b inside the module.
#[derive(Clone, Debug)]
pub struct Edge {
    pub b: Box3,
    pub target: usize,
    pub weight: ParamRational,
    pub ef: ParamRational,
    pub e_tree: ParamRational,
}

/// The truncated vacuum module: all plane partitions (or only the
/// height-one ones) with at most `max_level` boxes.
#[derive(Clone, Debug)]
pub struct YangianModule {
    pub params: YangianParams,
    pub max_level: usize,
    pub two_d: bool,
    pub states: Vec<PlanePartition>,
    index: HashMap<PlanePartition, usize>,
    pub psi: Vec<SpectralRational>,
    /// edges[i] = addable boxes of state i whose result is in the module
    pub edges: Vec<Vec<Edge>>,
}

impl YangianModule {
    pub fn new(params: YangianParams, max_level: usize) -> Result<Self> {
        Self::build(params, max_level, false)
    }

    /// Height-one states only; closed under f at psi0 = -1/(h1 h2).
    pub fn new_2d(params: YangianParams, max_level: usize) -> Result<Self> {
        Self::build(params, max_level, true)
    }

    fn build(params: YangianParams, max_level: usize, two_d: bool) -> Result<Self> {
        let mut states = Vec::new();
        for n in 0..=max_level {
            for p in plane_partitions_of(n) {
                if !two_d || p.max_height() <= 1 {
                    states.push(p);
                }
            }
        }
        let index: HashMap<PlanePartition, usize> = states.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let psi: Vec<SpectralRational> = states.iter().map(|p| psi_pi(&params, p)).collect();
        let mut m = YangianModule { params, max_level, two_d, states, index, psi, edges: Vec::new() };
        for i in 0..m.states.len() {
            let mut es = Vec::new();
            for b in m.states[i].addable() {
                if two_d && b.z > 1 {
                    continue;
                }
                let t = m.states[i].add(&b).unwrap();
                let Some(&target) = m.index.get(&t) else { continue };
                let weight = m.params.weight(&b);
                let r = m.psi[i].residue(&weight)?;
                let ef = (-r).checked_div(&m.params.sigma3)?;
                let e_tree = m.tree_e(i, &b, &t)?;
                es.push(Edge { b, target, weight, ef, e_tree });
            }
            m.edges.push(es);
        }
        Ok(m)
    }

    /// E(pi -> pi + a) in the tree gauge. With c the canonical box of
    /// pi + a and pi' = pi - c, the exchange relation of e(z) e(w) gives
    /// E(pi -> pi+a) = E(pi' -> pi'+a) / phi(h_c - h_a).
    fn tree_e(&self, i: usize, a: &Box3, target: &PlanePartition) -> Result<ParamRational> {
        let c = target.canonical_box().unwrap();
        if c == *a {
            return Ok(ParamRational::one());
        }
        let pi = &self.states[i];
        let pi1 = pi.remove(&c).ok_or_else(|| Error::Unsupported(format!("canonical box {} not removable from {}", c, pi)))?;
        let j = self.index[&pi1];
        let prev = self.edges[j]
            .iter()
            .find(|e| e.b == *a)
            .ok_or_else(|| Error::Unsupported(format!("box {} not addable to {}", a, pi1)))?;
        let phi = self.params.phi_at(&(self.params.weight(&c) - self.params.weight(a)))?;
        prev.e_tree.checked_div(&phi)
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn index_of(&self, p: &PlanePartition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn level(&self, i: usize) -> usize {
        self.states[i].size()
    }

    pub fn edge(&self, i: usize, b: &Box3) -> Option<&Edge> {
        self.edges[i].iter().find(|e| e.b == *b)
    }

    fn e_coeff(&self, e: &Edge, gauge: Gauge) -> ParamRational {
        match gauge {
            Gauge::Tree => e.e_tree.clone(),
            _ => ParamRational::one(),
        }
    }

    fn f_coeff(&self, e: &Edge, gauge: Gauge) -> ParamRational {
        match gauge {
            Gauge::Tree => e.ef.checked_div(&e.e_tree).expect("tree E is nonzero"),
            _ => e.ef.clone(),
        }
    }

    /// e_j: adds a box with coefficient h^j E. Exact gauges only.
    pub fn e(&self, j: u32, gauge: Gauge) -> SparseOp<ParamRational> {
        assert!(gauge != Gauge::Symmetric, "use e_numeric for the symmetric gauge");
        let mut m = SparseOp::zero(self.dim());
        for (i, es) in self.edges.iter().enumerate() {
            for e in es {
                m.push(e.target, i, e.weight.pow(j as i32) * self.e_coeff(e, gauge));
            }
        }
        m
    }

    /// f_j: removes a box with coefficient h^j F.
    pub fn f(&self, j: u32, gauge: Gauge) -> SparseOp<ParamRational> {
        assert!(gauge != Gauge::Symmetric, "use f_numeric for the symmetric gauge");
        let mut m = SparseOp::zero(self.dim());
        for (i, es) in self.edges.iter().enumerate() {
            for e in es {
                m.push(i, e.target, e.weight.pow(j as i32) * self.f_coeff(e, gauge));
            }
        }
        m
    }

    /// Eigenvalues of psi_j: psi_pi(u) = 1 + sigma3 sum_j psi_j u^{-j-1}.
    pub fn psi_eigen(&self, j: u32) -> Result<Vec<ParamRational>> {
        self.psi
            .iter()
            .map(|s| {
                let c = s.expand_at_infinity(j as usize + 1);
                c[j as usize + 1].checked_div(&self.params.sigma3)
            })
            .collect()
    }

    pub fn psi_op(&self, j: u32) -> Result<SparseOp<ParamRational>> {
        Ok(SparseOp::diagonal(self.psi_eigen(j)?))
    }

    /// Per-state normalizations c_pi with c_empty = 1 and
    /// c_pi = c_parent sqrt(EF along the tree edge).
    fn symmetric_scales(&self) -> Result<Vec<HiComplex>> {
        if !self.params.is_numeric() {
            return Err(Error::Unsupported("the symmetric gauge needs numeric parameters".into()));
        }
        let mut c = vec![HiComplex::zero(); self.dim()];
        for i in 0..self.dim() {
            c[i] = match self.states[i].parent() {
                None => HiComplex::real(HiFloat::from_i64(1)),
                Some((p, b)) => {
                    let pi = self.index[&p];
                    let ef = self.edge(pi, &b).unwrap().ef.constant_value().unwrap();
                    if ef == BigRational::from_integer(0.into()) {
                        return Err(Error::DivisionByZero);
                    }
                    c[pi].mul(&HiComplex::sqrt_real(&HiFloat::from_rat(&ef)))
                }
            };
        }
        Ok(c)
    }

    fn hi(x: &ParamRational) -> HiComplex {
        HiComplex::from_rat(&x.constant_value().expect("numeric coefficient"))
    }

    /// e_j in the symmetric gauge, E = E_tree c_{pi+b} / c_pi.
    pub fn e_numeric(&self, j: u32) -> Result<SparseOp<HiComplex>> {
        let c = self.symmetric_scales()?;
        let mut m = SparseOp::zero(self.dim());
        for (i, es) in self.edges.iter().enumerate() {
            for e in es {
                let v = Self::hi(&(e.weight.pow(j as i32) * &e.e_tree)).mul(&c[e.target]).div(&c[i]);
                m.push(e.target, i, v);
            }
        }
        Ok(m)
    }

    /// f_j in the symmetric gauge, F = F_tree c_pi / c_{pi+b}.
    pub fn f_numeric(&self, j: u32) -> Result<SparseOp<HiComplex>> {
        let c = self.symmetric_scales()?;
        let mut m = SparseOp::zero(self.dim());
        for (i, es) in self.edges.iter().enumerate() {
            for e in es {
                let ft = e.ef.checked_div(&e.e_tree)?;
                let v = Self::hi(&(e.weight.pow(j as i32) * ft)).mul(&c[i]).div(&c[e.target]);
                m.push(i, e.target, v);
            }
        }
        Ok(m)
    }

    /// Symmetric-gauge E and F on one edge (they agree).
    pub fn symmetric_edge(&self, i: usize, b: &Box3) -> Result<(HiComplex, HiComplex)> {
        let c = self.symmetric_scales()?;
        let e = self.edge(i, b).ok_or_else(|| Error::Unsupported(format!("no edge {} at state {}", b, i)))?;
        let ev = Self::hi(&e.e_tree).mul(&c[e.target]).div(&c[i]);
        let fv = Self::hi(&e.ef.checked_div(&e.e_tree)?).mul(&c[i]).div(&c[e.target]);
        Ok((ev, fv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_ef_products() {
        let g = YangianParams::generic();
        let o = Box3::origin();
        assert_eq!(ef_product(&g, &PlanePartition::empty(), &o).unwrap(), -ParamRational::psi0_sym());
        let j = YangianParams::one_layer();
        let one = PlanePartition::empty().add(&o).unwrap();
        let want = ParamRational::from_i64(2) / (ParamRational::h1() * (ParamRational::h2() - ParamRational::h1()));
        assert_eq!(ef_product(&j, &one, &Box3::new(1, 2, 1)).unwrap(), want);
        assert!(ef_product(&j, &one, &Box3::new(1, 1, 2)).unwrap().is_zero());
    }

    #[test]
    fn psi_tends_to_one() {
        let g = YangianParams::generic();
        for p in crate::fock::plane_partitions_up_to(3) {
            let s = psi_pi(&g, &p);
            assert_eq!(s.zeros.len(), s.poles.len());
            assert!(s.scalar.is_one());
        }
        let j = YangianParams::one_layer();
        let s = psi_pi(&j, &PlanePartition::empty().add(&Box3::origin()).unwrap());
        assert_eq!(s.zeros.len(), 3);
        assert_eq!(s.poles.len(), 3);
    }

    #[test]
    fn e0_f0_on_vacuum() {
        let m = YangianModule::new(YangianParams::generic(), 2).unwrap();
        let c = m.e(0, Gauge::Tree).commutator(&m.f(0, Gauge::Tree));
        assert_eq!(c.get(0, 0), ParamRational::psi0_sym());
        assert!(m.psi_eigen(1).unwrap()[0].is_zero());
    }

    #[test]
    fn path_ratio_for_21() {
        // E along h2 h1 divided by E along h1 h2 equals phi(h1 - h2)
        let m = YangianModule::new_2d(YangianParams::one_layer(), 3).unwrap();
        let s11 = m.index_of(&PlanePartition::from_partition(&crate::symfun::Partition::new(vec![1, 1]))).unwrap();
        let e = m.edge(s11, &Box3::new(1, 2, 1)).unwrap();
        let want = m.params.phi_at(&(ParamRational::h1() - ParamRational::h2())).unwrap();
        assert_eq!(e.e_tree, want);
    }
}
