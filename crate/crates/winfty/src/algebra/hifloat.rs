//! Binary fixed-point reals with 256 fractional bits and complex numbers
//! over them. Used where square roots of parameter values are unavoidable.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub const FRAC_BITS: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HiFloat {
    m: BigInt,
}

impl HiFloat {
    pub fn zero() -> Self {
        HiFloat { m: BigInt::zero() }
    }

    pub fn from_rat(r: &BigRational) -> Self {
        let n: BigInt = r.numer() << FRAC_BITS;
        HiFloat { m: n / r.denom() }
    }

    pub fn from_i64(n: i64) -> Self {
        HiFloat { m: BigInt::from(n) << FRAC_BITS }
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    pub fn abs(&self) -> Self {
        HiFloat { m: self.m.abs() }
    }

    /// Square root of a nonnegative value.
    pub fn sqrt(&self) -> Self {
        assert!(!self.m.is_negative(), "sqrt of negative HiFloat");
        let s: BigInt = &self.m << FRAC_BITS;
        HiFloat { m: s.sqrt() }
    }

    pub fn div(&self, o: &Self) -> Self {
        let n: BigInt = &self.m << FRAC_BITS;
        HiFloat { m: n / &o.m }
    }

    pub fn to_f64(&self) -> f64 {
        let (sign, mag) = (self.m.sign(), self.m.magnitude().clone());
        let bits = mag.bits() as i64;
        let shift = (bits - 60).max(0);
        let top = (mag >> shift as usize).to_f64().unwrap_or(0.0);
        let v = top * 2f64.powi((shift - FRAC_BITS as i64) as i32);
        if sign == Sign::Minus {
            -v
        } else {
            v
        }
    }

    /// True iff |self| < 10^-digits.
    pub fn is_below_decimal(&self, digits: u32) -> bool {
        let bound: BigInt = (BigInt::from(1) << FRAC_BITS) / BigInt::from(10).pow(digits);
        self.m.abs() < bound
    }
}

impl PartialOrd for HiFloat {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.m.cmp(&o.m))
    }
}

impl Add for &HiFloat {
    type Output = HiFloat;
    fn add(self, o: &HiFloat) -> HiFloat {
        HiFloat { m: &self.m + &o.m }
    }
}

impl Sub for &HiFloat {
    type Output = HiFloat;
    fn sub(self, o: &HiFloat) -> HiFloat {
        HiFloat { m: &self.m - &o.m }
    }
}

impl Mul for &HiFloat {
    type Output = HiFloat;
    fn mul(self, o: &HiFloat) -> HiFloat {
        HiFloat { m: (&self.m * &o.m) >> FRAC_BITS }
    }
}

impl Neg for &HiFloat {
    type Output = HiFloat;
    fn neg(self) -> HiFloat {
        HiFloat { m: -&self.m }
    }
}

impl fmt::Display for HiFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HiComplex {
    pub re: HiFloat,
    pub im: HiFloat,
}

impl HiComplex {
    pub fn zero() -> Self {
        HiComplex { re: HiFloat::zero(), im: HiFloat::zero() }
    }

    pub fn real(x: HiFloat) -> Self {
        HiComplex { re: x, im: HiFloat::zero() }
    }

    pub fn from_rat(r: &BigRational) -> Self {
        Self::real(HiFloat::from_rat(r))
    }

    /// Principal square root of a real number.
    pub fn sqrt_real(x: &HiFloat) -> Self {
        if x.is_negative() {
            HiComplex { re: HiFloat::zero(), im: x.abs().sqrt() }
        } else {
            HiComplex { re: x.sqrt(), im: HiFloat::zero() }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        HiComplex { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &Self) -> Self {
        HiComplex { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul(&self, o: &Self) -> Self {
        HiComplex {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }

    pub fn scale(&self, r: &HiFloat) -> Self {
        HiComplex { re: &self.re * r, im: &self.im * r }
    }

    pub fn div(&self, o: &Self) -> Self {
        let d = &(&o.re * &o.re) + &(&o.im * &o.im);
        let n = self.mul(&HiComplex { re: o.re.clone(), im: -&o.im });
        HiComplex { re: n.re.div(&d), im: n.im.div(&d) }
    }

    /// max(|re|, |im|), a norm equivalent to the modulus.
    pub fn max_abs(&self) -> HiFloat {
        let a = self.re.abs();
        let b = self.im.abs();
        if a > b {
            a
        } else {
            b
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn sqrt_two_squared() {
        let two = HiFloat::from_i64(2);
        let s = two.sqrt();
        let back = &s * &s;
        assert!((&back - &two).is_below_decimal(70));
    }

    #[test]
    fn complex_sqrt_of_negative() {
        let x = HiFloat::from_rat(&BigRational::new(BigInt::from(-9), BigInt::from(4)));
        let s = HiComplex::sqrt_real(&x);
        let sq = s.mul(&s);
        assert!((&sq.re - &x).is_below_decimal(70));
        assert!(sq.im.is_below_decimal(70));
    }
}
