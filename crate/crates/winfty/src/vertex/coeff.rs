//! Coefficients of free-field composites. Every coefficient met in the
//! vertex computations is a polynomial in h1, h2, alpha0 divided by a power
//! of h1 h2, so we store a polynomial in h1, h2, a0 and k = 1/(h1 h2) with
//! h1 h2 k cancelled. That form is canonical and avoids gcd computations.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{Mono, ParamRational, Poly, Var, NVARS};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Coeff(Poly);

const H1: usize = 0;
const H2: usize = 1;
const A0: usize = 2;
const K: usize = 5;

impl Coeff {
    fn reduce(p: Poly) -> Coeff {
        if p.terms().iter().all(|(m, _)| m.0[K] == 0 || m.0[H1] == 0 || m.0[H2] == 0) {
            return Coeff(p);
        }
        Coeff(Poly::from_terms(p.terms().iter().map(|(m, c)| {
            let mut m = *m;
            let e = m.0[H1].min(m.0[H2]).min(m.0[K]);
            m.0[H1] -= e;
            m.0[H2] -= e;
            m.0[K] -= e;
            (m, c.clone())
        })))
    }

    pub fn zero() -> Coeff {
        Coeff(Poly::zero())
    }

    pub fn one() -> Coeff {
        Coeff(Poly::one())
    }

    pub fn from_i64(n: i64) -> Coeff {
        Coeff(Poly::from_i64(n))
    }

    pub fn frac(n: i64, d: i64) -> Coeff {
        Coeff(Poly::constant(BigRational::new(BigInt::from(n), BigInt::from(d))))
    }

    pub fn from_rat(r: BigRational) -> Coeff {
        Coeff(Poly::constant(r))
    }

    pub fn h1() -> Coeff {
        Coeff(Poly::var(Var::H1))
    }

    pub fn h2() -> Coeff {
        Coeff(Poly::var(Var::H2))
    }

    pub fn alpha0() -> Coeff {
        Coeff(Poly::var(Var::A0))
    }

    /// 1/(h1 h2).
    pub fn inv_h1h2() -> Coeff {
        Coeff(Poly::var(Var::K))
    }

    /// The current propagator -1/(h1 h2).
    pub fn kappa() -> Coeff {
        -&Coeff::inv_h1h2()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        self.0.constant_value()
    }

    pub fn scale(&self, c: &BigRational) -> Coeff {
        Coeff(self.0.scale(c))
    }

    pub fn pow(&self, e: u32) -> Coeff {
        Coeff::reduce(self.0.pow(e))
    }

    /// Divide by alpha0^k when every term carries that power.
    pub fn div_alpha0_pow(&self, k: u16) -> Option<Coeff> {
        if self.0.terms().iter().any(|(m, _)| m.0[A0] < k) {
            return None;
        }
        Some(Coeff(Poly::from_terms(self.0.terms().iter().map(|(m, c)| {
            let mut m = *m;
            m.0[A0] -= k;
            (m, c.clone())
        }))))
    }

    /// Convert from a rational function whose denominator is a constant
    /// times a monomial in h1, h2. N and psi0 must not occur.
    pub fn from_param(x: &ParamRational) -> Result<Coeff> {
        let den = x.denom();
        if den.len() != 1 {
            return Err(Error::Unsupported(format!("denominator {} is not a monomial in h1, h2", x)));
        }
        let (dm, dc) = &den.terms()[0];
        if (0..NVARS).any(|i| i != H1 && i != H2 && dm.0[i] != 0) {
            return Err(Error::Unsupported(format!("denominator of {} involves more than h1, h2", x)));
        }
        if x.uses(Var::N) || x.uses(Var::Psi0) || x.uses(Var::K) {
            return Err(Error::Unsupported(format!("{} depends on N or psi0", x)));
        }
        let inv = dc.recip();
        let (p, q) = (dm.0[H1] as i32, dm.0[H2] as i32);
        let terms = x.numer().terms().iter().map(|(m, c)| {
            let a = m.0[H1] as i32 - p;
            let b = m.0[H2] as i32 - q;
            let k = 0.max(-a).max(-b);
            let mut e = m.0;
            e[H1] = (a + k) as u16;
            e[H2] = (b + k) as u16;
            e[K] = k as u16;
            (Mono(e), c * &inv)
        });
        Ok(Coeff::reduce(Poly::from_terms(terms)))
    }

    pub fn parse(s: &str) -> Result<Coeff> {
        Coeff::from_param(&ParamRational::parse(s)?)
    }

    pub fn to_param(&self) -> ParamRational {
        let d = self.0.degree_in(Var::K);
        if d == 0 {
            return ParamRational::from_poly(self.0.clone());
        }
        let num = Poly::from_terms(self.0.terms().iter().map(|(m, c)| {
            let mut e = m.0;
            let k = e[K];
            e[K] = 0;
            e[H1] += d - k;
            e[H2] += d - k;
            (Mono(e), c.clone())
        }));
        let den = Poly::var(Var::H1).mul(&Poly::var(Var::H2)).pow(d as u32);
        ParamRational::new(num, den).expect("nonzero denominator")
    }

    /// Substitute numbers for h1, h2 and optionally alpha0.
    pub fn specialize(&self, h1: &BigRational, h2: &BigRational, a0: Option<&BigRational>) -> Result<Coeff> {
        let prod = h1 * h2;
        if prod.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let k = prod.recip();
        let mut out = Poly::zero();
        for (m, c) in self.0.terms() {
            let mut c = c.clone();
            let mut e = m.0;
            for (i, v) in [(H1, h1), (H2, h2), (K, &k)] {
                c *= num_traits::pow(v.clone(), e[i] as usize);
                e[i] = 0;
            }
            if let Some(a) = a0 {
                c *= num_traits::pow(a.clone(), e[A0] as usize);
                e[A0] = 0;
            }
            out = out.add(&Poly::monomial(Mono(e), c));
        }
        Ok(Coeff(out))
    }

    /// Replace alpha0 by another coefficient.
    pub fn subs_alpha0(&self, v: &Coeff) -> Coeff {
        let mut out = Coeff::zero();
        for (m, c) in self.0.terms() {
            let mut e = m.0;
            let k = e[A0];
            e[A0] = 0;
            let t = Coeff(Poly::monomial(Mono(e), c.clone()));
            out = &out + &(&t * &v.pow(k as u32));
        }
        out
    }

    pub fn to_text(&self) -> String {
        self.to_param().to_text()
    }

    pub fn to_latex(&self) -> String {
        self.to_param().to_latex()
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_param())
    }
}

impl<'a> Add<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn add(self, o: &Coeff) -> Coeff {
        Coeff(self.0.add(&o.0))
    }
}

impl<'a> Sub<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn sub(self, o: &Coeff) -> Coeff {
        Coeff(self.0.sub(&o.0))
    }
}

impl<'a> Mul<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn mul(self, o: &Coeff) -> Coeff {
        if self.0.is_constant() || o.0.is_constant() {
            return Coeff(self.0.mul(&o.0));
        }
        Coeff::reduce(self.0.mul(&o.0))
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff(self.0.neg())
    }
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Coeff {
        Coeff::from_i64(n)
    }
}

/// n! as a rational.
pub(crate) fn factorial(n: u32) -> BigRational {
    let mut f = BigInt::one();
    for i in 2..=n {
        f *= i;
    }
    BigRational::from_integer(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancels_h1h2() {
        let x = &Coeff::h1() * &Coeff::inv_h1h2();
        let y = &x * &Coeff::h2();
        assert!(y.is_one());
        assert_eq!(x.to_param(), ParamRational::parse("1/h2").unwrap());
    }

    #[test]
    fn round_trip() {
        for s in ["3/(20*h1*h2) - a0^2*h2/h1", "(2*h1*h2*a0^2 - 1)/(10*h1^2*h2)", "h1^3*h2^3", "-h3/(h1*h2)"] {
            let p = ParamRational::parse(s).unwrap();
            assert_eq!(Coeff::from_param(&p).unwrap().to_param(), p, "{}", s);
        }
        assert!(Coeff::parse("1/(h1-h2)").is_err());
    }

    #[test]
    fn alpha0_division() {
        let x = Coeff::parse("a0^2*h1 + a0^3").unwrap();
        assert_eq!(x.div_alpha0_pow(2).unwrap(), Coeff::parse("h1 + a0").unwrap());
        assert!(x.div_alpha0_pow(3).is_none());
    }
}
