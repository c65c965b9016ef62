use num_rational::BigRational;

use super::partition::Partition;
use super::powersum::PowerSumPolynomial;
use crate::algebra::ParamRational;

/// Diagonal pairing <p_lambda, p_mu> = delta z_lambda beta^{l(lambda)}.
#[derive(Clone, Debug, PartialEq)]
pub struct InnerProductSpec {
    pub beta: ParamRational,
}

impl InnerProductSpec {
    pub fn new(beta: ParamRational) -> Self {
        assert!(!beta.is_zero(), "beta must be nonzero");
        InnerProductSpec { beta }
    }

    /// beta = 1.
    pub fn schur() -> Self {
        Self::new(ParamRational::one())
    }

    /// beta = psi0 = -1/(h1 h2).
    pub fn jack() -> Self {
        Self::new(ParamRational::psi0_jack())
    }

    pub fn norm_p(&self, mu: &Partition) -> ParamRational {
        ParamRational::from_rat(BigRational::from_integer(mu.z())) * self.beta.pow(mu.len() as i32)
    }
}

pub fn hall_inner(f: &PowerSumPolynomial, g: &PowerSumPolynomial, spec: &InnerProductSpec) -> ParamRational {
    let mut s = ParamRational::zero();
    for (mu, c) in f.terms() {
        let d = g.coeff(mu);
        if !d.is_zero() {
            s += &(c * &d * spec.norm_p(mu));
        }
    }
    s
}

/// p_n^perp = n beta d/dp_n applied to one monomial.
fn p_perp_mono(n: u32, mu: &Partition, c: &ParamRational, spec: &InnerProductSpec) -> Option<(Partition, ParamRational)> {
    let m = mu.multiplicity(n);
    if m == 0 {
        return None;
    }
    let rest = mu.without_part(n).unwrap();
    Some((rest, c * &spec.beta * ParamRational::from_i64((n as usize * m) as i64)))
}

/// Adjoint of multiplication by `f` with respect to `spec`, applied to `k`.
pub fn perp(f: &PowerSumPolynomial, k: &PowerSumPolynomial, spec: &InnerProductSpec) -> PowerSumPolynomial {
    let mut out = PowerSumPolynomial::zero(k.degree_bound());
    for (nu, a) in f.terms() {
        // apply prod_i p_{nu_i}^perp
        let mut cur: Vec<(Partition, ParamRational)> = k.terms().iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        for &n in nu.parts() {
            cur = cur.iter().filter_map(|(m, c)| p_perp_mono(n, m, c, spec)).collect();
        }
        for (m, c) in cur {
            out.add_term(m, &(&c * a));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::schur::schur;

    #[test]
    fn p1_norm_is_beta() {
        let spec = InnerProductSpec::jack();
        let p1 = PowerSumPolynomial::p(1, 6);
        assert_eq!(hall_inner(&p1, &p1, &spec), spec.beta);
    }

    #[test]
    fn schur_orthogonal_small() {
        let s = InnerProductSpec::schur();
        let a = schur(&Partition::new(vec![2]), 6);
        let b = schur(&Partition::new(vec![1, 1]), 6);
        assert!(hall_inner(&a, &b, &s).is_zero());
        assert!(hall_inner(&a, &a, &s).is_one());
    }

    #[test]
    fn perp_of_one_is_zero() {
        let s = InnerProductSpec::schur();
        let one = PowerSumPolynomial::one(6);
        assert!(perp(&PowerSumPolynomial::p(1, 6), &one, &s).is_zero());
    }
}
