use std::fmt;

use crate::algebra::ParamRational;
use crate::error::{Error, Result};

/// Rational function of the spectral variable u kept in factored form
/// scalar * prod (u - zeros) / prod (u - poles). Equal zero/pole pairs are
/// cancelled on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralRational {
    pub scalar: ParamRational,
    pub zeros: Vec<ParamRational>,
    pub poles: Vec<ParamRational>,
}

impl SpectralRational {
    pub fn one() -> Self {
        SpectralRational { scalar: ParamRational::one(), zeros: Vec::new(), poles: Vec::new() }
    }

    pub fn new(scalar: ParamRational, zeros: Vec<ParamRational>, poles: Vec<ParamRational>) -> Self {
        let mut r = SpectralRational { scalar, zeros, poles };
        r.cancel();
        r
    }

    fn cancel(&mut self) {
        let mut i = 0;
        while i < self.zeros.len() {
            if let Some(j) = self.poles.iter().position(|p| *p == self.zeros[i]) {
                self.poles.swap_remove(j);
                self.zeros.swap_remove(i);
            } else {
                i += 1;
            }
        }
    }

    /// phi(u - shift) with phi(u) = prod_i (u + h_i) / (u - h_i), given the
    /// three values h1, h2, h3.
    pub fn phi_shifted(h: &[ParamRational; 3], shift: &ParamRational) -> Self {
        let zeros = h.iter().map(|hi| shift - hi).collect();
        let poles = h.iter().map(|hi| shift + hi).collect();
        SpectralRational::new(ParamRational::one(), zeros, poles)
    }

    /// psi_0(u) = (u + sigma3 psi0) / u.
    pub fn vacuum(sigma3: &ParamRational, psi0: &ParamRational) -> Self {
        SpectralRational::new(ParamRational::one(), vec![-(sigma3 * psi0)], vec![ParamRational::zero()])
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut z = self.zeros.clone();
        z.extend(o.zeros.iter().cloned());
        let mut p = self.poles.clone();
        p.extend(o.poles.iter().cloned());
        SpectralRational::new(&self.scalar * &o.scalar, z, p)
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(SpectralRational::new(self.scalar.inv()?, self.poles.clone(), self.zeros.clone()))
    }

    pub fn is_one(&self) -> bool {
        self.scalar.is_one() && self.zeros.is_empty() && self.poles.is_empty()
    }

    pub fn eval(&self, u: &ParamRational) -> Result<ParamRational> {
        let mut num = self.scalar.clone();
        for z in &self.zeros {
            num = num * (u - z);
        }
        let mut den = ParamRational::one();
        for p in &self.poles {
            den = den * (u - p);
        }
        num.checked_div(&den)
    }

    /// Residue at u = a, assuming at most a simple pole there.
    pub fn residue(&self, a: &ParamRational) -> Result<ParamRational> {
        let hits: Vec<usize> = self.poles.iter().enumerate().filter(|(_, p)| *p == a).map(|(i, _)| i).collect();
        match hits.len() {
            0 => Ok(ParamRational::zero()),
            1 => {
                let mut num = self.scalar.clone();
                for z in &self.zeros {
                    num = num * (a - z);
                }
                let mut den = ParamRational::one();
                for (i, p) in self.poles.iter().enumerate() {
                    if i != hits[0] {
                        den = den * (a - p);
                    }
                }
                num.checked_div(&den)
            }
            k => Err(Error::MultiplePole(format!("pole of order {} at u = {}", k, a))),
        }
    }

    /// Coefficients c_0..c_n of the expansion sum_k c_k u^{-k} at infinity.
    /// Only valid when the numerator and denominator degrees agree.
    pub fn expand_at_infinity(&self, n: usize) -> Vec<ParamRational> {
        assert_eq!(self.zeros.len(), self.poles.len(), "expansion needs a degree-zero function");
        // log = sum_k (P_poles(k) - P_zeros(k))/k u^{-k}; then exponentiate
        let mut g = vec![ParamRational::zero(); n + 1];
        let mut zp: Vec<ParamRational> = self.zeros.clone();
        let mut pp: Vec<ParamRational> = self.poles.clone();
        for k in 1..=n {
            let mut s = ParamRational::zero();
            for x in &pp {
                s += x;
            }
            for x in &zp {
                s -= x;
            }
            g[k] = s * ParamRational::frac(1, k as i64);
            for (x, b) in pp.iter_mut().zip(self.poles.iter()) {
                *x = &*x * b;
            }
            for (x, b) in zp.iter_mut().zip(self.zeros.iter()) {
                *x = &*x * b;
            }
        }
        let mut a = vec![ParamRational::zero(); n + 1];
        a[0] = ParamRational::one();
        for m in 1..=n {
            let mut s = ParamRational::zero();
            for k in 1..=m {
                if !g[k].is_zero() && !a[m - k].is_zero() {
                    s += &(&g[k] * &a[m - k] * ParamRational::from_i64(k as i64));
                }
            }
            a[m] = s * ParamRational::frac(1, m as i64);
        }
        a.into_iter().map(|x| x * &self.scalar).collect()
    }
}

impl fmt::Display for SpectralRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z: Vec<String> = self.zeros.iter().map(|r| format!("(u - ({}))", r)).collect();
        let p: Vec<String> = self.poles.iter().map(|r| format!("(u - ({}))", r)).collect();
        write!(f, "({})", self.scalar)?;
        if !z.is_empty() {
            write!(f, " * {}", z.join(" * "))?;
        }
        if !p.is_empty() {
            write!(f, " / ({})", p.join(" * "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hs() -> [ParamRational; 3] {
        [ParamRational::h1(), ParamRational::h2(), ParamRational::h3()]
    }

    #[test]
    fn phi_basics() {
        let phi = SpectralRational::phi_shifted(&hs(), &ParamRational::zero());
        let mut z = phi.zeros.clone();
        z.sort_by_key(|x| x.to_string());
        let mut want: Vec<ParamRational> = hs().iter().map(|h| -h).collect();
        want.sort_by_key(|x| x.to_string());
        assert_eq!(z, want);
        assert!(phi.mul(&phi.inv().unwrap()).is_one());
    }

    #[test]
    fn phi_trivial_at_schur_point() {
        let h = [ParamRational::one(), ParamRational::from_i64(-1), ParamRational::zero()];
        assert!(SpectralRational::phi_shifted(&h, &ParamRational::zero()).is_one());
    }

    #[test]
    fn expansion_of_vacuum() {
        let s3 = ParamRational::sigma3();
        let v = SpectralRational::vacuum(&s3, &ParamRational::psi0_sym());
        let c = v.expand_at_infinity(3);
        assert!(c[0].is_one());
        assert_eq!(c[1], &s3 * &ParamRational::psi0_sym());
        assert!(c[2].is_zero() && c[3].is_zero());
    }
}
