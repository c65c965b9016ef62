//! Certifying N-dependent formulas from evaluations at concrete N.

use super::param::ParamRational;
use super::poly::Var;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityFailure {
    pub n: i64,
    pub computed: ParamRational,
    pub expected: ParamRational,
}

/// True iff `f(N) == g|_N` for N = 1..=degree_bound+1. When both sides are
/// polynomials in N of degree at most `degree_bound` this proves equality.
pub fn poly_identity_in_n<F>(f: F, g: &ParamRational, degree_bound: usize) -> Result<bool>
where
    F: Fn(i64) -> Result<ParamRational>,
{
    Ok(first_mismatch_in_n(f, g, degree_bound)?.is_none())
}

/// Like [`poly_identity_in_n`] but returns the first failing sample.
pub fn first_mismatch_in_n<F>(f: F, g: &ParamRational, degree_bound: usize) -> Result<Option<IdentityFailure>>
where
    F: Fn(i64) -> Result<ParamRational>,
{
    for n in 1..=(degree_bound as i64 + 1) {
        let computed = f(n).map_err(|e| Error::Evaluation { point: format!("N={}", n), reason: e.to_string() })?;
        let expected = g.subs_i64(Var::N, n)?;
        if computed != expected {
            return Ok(Some(IdentityFailure { n, computed, expected }));
        }
    }
    Ok(None)
}

/// Lagrange interpolation in N through the points (n_i, y_i).
pub fn interpolate_in_n(points: &[(i64, ParamRational)]) -> ParamRational {
    let nsym = ParamRational::n();
    let mut total = ParamRational::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut term = yi.clone();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                let num = &nsym - &ParamRational::from_i64(*xj);
                term = term * num * ParamRational::frac(1, xi - xj);
            }
        }
        total += &term;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_identity() {
        assert!(poly_identity_in_n(|_| Ok(ParamRational::zero()), &ParamRational::zero(), 3).unwrap());
    }

    #[test]
    fn detects_mismatch() {
        let g = ParamRational::parse("N^2").unwrap();
        let r = first_mismatch_in_n(|n| Ok(ParamRational::from_i64(n)), &g, 2).unwrap();
        assert_eq!(r.unwrap().n, 2);
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let g = ParamRational::parse("N^3 - a0*N + 1/(h1*h2)").unwrap();
        let pts: Vec<_> = (1..=4).map(|n| (n, g.subs_i64(Var::N, n).unwrap())).collect();
        assert_eq!(interpolate_in_n(&pts), g);
    }
}
