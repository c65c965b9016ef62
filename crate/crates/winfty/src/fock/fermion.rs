use std::collections::BTreeMap;

use super::maya::MayaDiagram;
use crate::algebra::ParamRational;

/// Formal linear combination of Maya diagrams.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct FermionState {
    terms: BTreeMap<MayaDiagram, ParamRational>,
}

/// psi_j removes a black stone, psi*_j inserts one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fermion {
    /// psi_j with j given doubled
    Psi(i64),
    /// psi*_j with j given doubled
    PsiStar(i64),
}

fn sign(n: usize) -> ParamRational {
    ParamRational::from_i64(if n % 2 == 0 { 1 } else { -1 })
}

impl FermionState {
    pub fn zero() -> Self {
        FermionState::default()
    }

    pub fn basis(m: MayaDiagram) -> Self {
        let mut s = FermionState::zero();
        s.add_term(m, &ParamRational::one());
        s
    }

    pub fn terms(&self) -> &BTreeMap<MayaDiagram, ParamRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &MayaDiagram) -> ParamRational {
        self.terms.get(m).cloned().unwrap_or_else(ParamRational::zero)
    }

    pub fn add_term(&mut self, m: MayaDiagram, c: &ParamRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(ParamRational::zero);
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

    pub fn scale(&self, c: &ParamRational) -> Self {
        let mut r = FermionState::zero();
        for (m, x) in &self.terms {
            r.add_term(m.clone(), &(x * c));
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&ParamRational::from_i64(-1)))
    }

    pub fn apply(&self, op: Fermion) -> Self {
        let mut r = FermionState::zero();
        for (m, c) in &self.terms {
            if let Some((s, m2)) = act(op, m) {
                r.add_term(m2, &(c * &s));
            }
        }
        r
    }

    /// Apply a word of fermions, rightmost first.
    pub fn apply_word(&self, word: &[Fermion]) -> Self {
        word.iter().rev().fold(self.clone(), |s, &op| s.apply(op))
    }
}

/// Action on one basis diagram: psi_j deletes the black at -j with sign
/// (-1)^{n-1} (n its 1-based index), psi*_j inserts a black at j with sign
/// (-1)^n (n the number of blacks to the left).
pub fn act(op: Fermion, m: &MayaDiagram) -> Option<(ParamRational, MayaDiagram)> {
    match op {
        Fermion::Psi(j2) => {
            let p = -j2;
            if !m.is_black(p) {
                return None;
            }
            let n = m.blacks_below(p) + 1;
            let mut r = m.clone();
            r.set(p, false);
            Some((sign(n - 1), r))
        }
        Fermion::PsiStar(j2) => {
            if m.is_black(j2) {
                return None;
            }
            let n = m.blacks_below(j2);
            let mut r = m.clone();
            r.set(j2, true);
            Some((sign(n), r))
        }
    }
}

/// Normal-ordered bilinear :psi_a psi*_b: on a state; the vacuum
/// expectation is subtracted when a + b = 0.
pub fn normal_bilinear(a2: i64, b2: i64, s: &FermionState) -> FermionState {
    let raw = s.apply_word(&[Fermion::Psi(a2), Fermion::PsiStar(b2)]);
    if a2 + b2 != 0 {
        return raw;
    }
    let vac = FermionState::basis(MayaDiagram::vacuum()).apply_word(&[Fermion::Psi(a2), Fermion::PsiStar(b2)]);
    let v = vac.coeff(&MayaDiagram::vacuum());
    raw.sub(&s.scale(&v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_state(rng: &mut ChaCha8Rng) -> FermionState {
        let mut s = FermionState::zero();
        for _ in 0..3 {
            let mut m = MayaDiagram::vacuum();
            for _ in 0..rng.gen_range(0..5) {
                let p = 2 * rng.gen_range(-5i64..5) + 1;
                m.set(p, rng.gen_bool(0.5));
            }
            s.add_term(m, &ParamRational::from_i64(rng.gen_range(1..5)));
        }
        s
    }

    #[test]
    fn anticommutators() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let s = random_state(&mut rng);
            let j = 2 * rng.gen_range(-4i64..4) + 1;
            let k = 2 * rng.gen_range(-4i64..4) + 1;
            let lhs = s.apply_word(&[Fermion::PsiStar(j), Fermion::Psi(k)]).add(&s.apply_word(&[Fermion::Psi(k), Fermion::PsiStar(j)]));
            let rhs = if j + k == 0 { s.clone() } else { FermionState::zero() };
            assert_eq!(lhs, rhs);
            let pp = s.apply_word(&[Fermion::Psi(j), Fermion::Psi(k)]).add(&s.apply_word(&[Fermion::Psi(k), Fermion::Psi(j)]));
            assert!(pp.is_zero());
            let ss = s
                .apply_word(&[Fermion::PsiStar(j), Fermion::PsiStar(k)])
                .add(&s.apply_word(&[Fermion::PsiStar(k), Fermion::PsiStar(j)]));
            assert!(ss.is_zero());
            assert!(s.apply_word(&[Fermion::Psi(j), Fermion::Psi(j)]).is_zero());
        }
    }

    #[test]
    fn removal_sign() {
        // vacuum with -1/2 added: blacks -1/2, 1/2, 3/2, ...; psi_{-1/2}
        // removes the stone at 1/2, which is the second one
        let mut m = MayaDiagram::vacuum();
        m.set(-1, true);
        let (s, r) = act(Fermion::Psi(-1), &m).unwrap();
        assert_eq!(s, ParamRational::from_i64(-1));
        assert!(!r.is_black(1));
        let (s, _) = act(Fermion::Psi(1), &m).unwrap();
        assert_eq!(s, ParamRational::one());
    }
}
