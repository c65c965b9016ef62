//! Rational functions in the deformation parameters, kept in a canonical
//! reduced form so that structural equality is mathematical equality.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{Poly, Var, NVARS};
use crate::error::{Error, Result};

/// `num / den` with gcd(num, den) = 1 and den monic in the graded-lex order.
/// h3 never appears: it is replaced by -h1-h2 whenever it is constructed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamRational {
    num: Poly,
    den: Poly,
}

impl Default for ParamRational {
    fn default() -> Self {
        ParamRational::zero()
    }
}

impl ParamRational {
    pub fn zero() -> Self {
        ParamRational { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        ParamRational { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_i64(n: i64) -> Self {
        ParamRational { num: Poly::from_i64(n), den: Poly::one() }
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rat(r: BigRational) -> Self {
        ParamRational { num: Poly::constant(r), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        ParamRational { num: p, den: Poly::one() }
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Poly::var(v))
    }

    pub fn h1() -> Self {
        Self::var(Var::H1)
    }

    pub fn h2() -> Self {
        Self::var(Var::H2)
    }

    /// h3 = -h1 - h2.
    pub fn h3() -> Self {
        -(Self::h1() + Self::h2())
    }

    pub fn alpha0() -> Self {
        Self::var(Var::A0)
    }

    pub fn n() -> Self {
        Self::var(Var::N)
    }

    pub fn psi0_sym() -> Self {
        Self::var(Var::Psi0)
    }

    /// sigma2 = h1 h2 + h1 h3 + h2 h3.
    pub fn sigma2() -> Self {
        let (a, b, c) = (Self::h1(), Self::h2(), Self::h3());
        &(&a * &b) + &(&(&a * &c) + &(&b * &c))
    }

    /// sigma3 = h1 h2 h3.
    pub fn sigma3() -> Self {
        &(&Self::h1() * &Self::h2()) * &Self::h3()
    }

    /// The one-layer value psi0 = -1/(h1 h2).
    pub fn psi0_jack() -> Self {
        -(Self::one() / (Self::h1() * Self::h2()))
    }

    /// alpha0 = -h3/(h1 h2).
    pub fn alpha0_miura() -> Self {
        -(Self::h3() / (Self::h1() * Self::h2()))
    }

    /// Construct and reduce; fails on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
            }
        };
        Self::normalize(num, den)
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            ParamRational { num, den }
        } else {
            let inv = lc.recip();
            ParamRational { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    /// Re-establish the canonical form. A no-op on values built through the
    /// public API, which are always canonical.
    pub fn simplify(&self) -> Result<Self> {
        Self::new(self.num.clone(), self.den.clone())
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_constant() {
            Some(self.num.constant_value().unwrap() / self.den.constant_value().unwrap())
        } else {
            None
        }
    }

    pub fn uses(&self, v: Var) -> bool {
        self.num.uses(v) || self.den.uses(v)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i32) -> Self {
        if e >= 0 {
            ParamRational { num: self.num.pow(e as u32), den: self.den.pow(e as u32) }
        } else {
            let i = self.inv().expect("negative power of zero");
            i.pow(-e)
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ParamRational { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Substitute a rational function for a symbol.
    pub fn subs(&self, v: Var, val: &ParamRational) -> Result<Self> {
        if !self.uses(v) {
            return Ok(self.clone());
        }
        let d = self.num.degree_in(v).max(self.den.degree_in(v));
        let homog = |p: &Poly| -> Poly {
            let mut out = Poly::zero();
            for (k, c) in p.coeffs_in(v) {
                let t = c.mul(&val.num.pow(k as u32)).mul(&val.den.pow((d - k) as u32));
                out = out.add(&t);
            }
            out
        };
        let n = homog(&self.num);
        let m = homog(&self.den);
        Self::new(n, m)
    }

    pub fn subs_i64(&self, v: Var, x: i64) -> Result<Self> {
        self.subs(v, &Self::from_i64(x))
    }

    /// Evaluate at a full rational point.
    pub fn eval(&self, point: &[BigRational; NVARS]) -> Result<BigRational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::Evaluation {
                point: format!("{:?}", point.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
                reason: format!("denominator {} vanishes", self.den),
            });
        }
        Ok(self.num.eval(point) / d)
    }

    /// Degrees of numerator and denominator in `v`.
    pub fn degree_in(&self, v: Var) -> (u16, u16) {
        (self.num.degree_in(v), self.den.degree_in(v))
    }

    /// Plain-text rendering in the symbols h1, h2, a0, N, psi0, k.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(s: &str) -> Result<Self> {
        super::parse::parse_param(s)
    }

    pub fn to_latex(&self) -> String {
        let (neg, body) = self.latex_signed();
        if neg {
            format!("-{}", body)
        } else {
            body
        }
    }

    /// Sign and magnitude for LaTeX: `(true, "\\frac{1}{2}")` for -1/2.
    pub fn latex_signed(&self) -> (bool, String) {
        if let Some(c) = self.constant_value() {
            return (c.is_negative(), latex_rat(&c.abs()));
        }
        if self.den.is_one() {
            if self.num.len() == 1 {
                let (m, c) = &self.num.terms()[0];
                let mono = latex_poly(&Poly::monomial(*m, BigRational::one()));
                let cs = if c.abs().is_one() { String::new() } else { latex_rat(&c.abs()) };
                return (c.is_negative(), format!("{}{}", cs, mono));
            }
            return (false, format!("({})", latex_poly(&self.num)));
        }
        (false, format!("\\frac{{{}}}{{{}}}", latex_poly(&self.num), latex_poly(&self.den)))
    }
}

fn latex_rat(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

fn latex_poly(p: &Poly) -> String {
    let s = p.to_string();
    s.replace("h1", "h_1")
        .replace("h2", "h_2")
        .replace("a0", "\\alpha_0")
        .replace("psi0", "\\psi_0")
        .replace('*', " ")
}

impl fmt::Display for ParamRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Poly| {
            if p.len() > 1 {
                format!("({})", p)
            } else {
                p.to_string()
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.den.is_constant() && self.num.len() == 1 {
            // c*m/d printed as (c/d)*m keeps single terms compact
            let c = self.den.constant_value().unwrap();
            write!(f, "{}", self.num.scale(&c.recip()))
        } else {
            let d = if self.den.len() == 1 && !self.den.to_string().contains('*') {
                self.den.to_string()
            } else {
                format!("({})", self.den)
            };
            write!(f, "{}/{}", wrap(&self.num), d)
        }
    }
}

impl Serialize for ParamRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ParamRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        ParamRational::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl<'a> Add<&'a ParamRational> for &'a ParamRational {
    type Output = ParamRational;
    fn add(self, o: &ParamRational) -> ParamRational {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let num = self.num.add(&o.num);
            return ParamRational::reduce(num, self.den.clone());
        }
        if self.den.is_constant() && o.den.is_constant() {
            let a = self.den.constant_value().unwrap();
            let b = o.den.constant_value().unwrap();
            let num = self.num.scale(&b).add(&o.num.scale(&a));
            return ParamRational::normalize(num, Poly::constant(a * b));
        }
        let g = self.den.gcd(&o.den);
        let da = self.den.div_exact(&g).unwrap();
        let db = o.den.div_exact(&g).unwrap();
        let num = self.num.mul(&db).add(&o.num.mul(&da));
        if num.is_zero() {
            return ParamRational::zero();
        }
        // only factors of g can cancel against the new numerator
        let h = num.gcd(&g);
        if h.is_one() {
            ParamRational::normalize(num, self.den.mul(&db))
        } else {
            let num = num.div_exact(&h).unwrap();
            let den = g.div_exact(&h).unwrap().mul(&da).mul(&db);
            ParamRational::normalize(num, den)
        }
    }
}

impl<'a> Sub<&'a ParamRational> for &'a ParamRational {
    type Output = ParamRational;
    fn sub(self, o: &ParamRational) -> ParamRational {
        self + &(-o)
    }
}

impl<'a> Mul<&'a ParamRational> for &'a ParamRational {
    type Output = ParamRational;
    fn mul(self, o: &ParamRational) -> ParamRational {
        if self.is_zero() || o.is_zero() {
            return ParamRational::zero();
        }
        if self.den.is_constant() && o.den.is_constant() {
            let num = self.num.mul(&o.num);
            let den = self.den.mul(&o.den);
            return ParamRational::normalize(num, den);
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let (n1, d2) = if g1.is_one() {
            (self.num.clone(), o.den.clone())
        } else {
            (self.num.div_exact(&g1).unwrap(), o.den.div_exact(&g1).unwrap())
        };
        let (n2, d1) = if g2.is_one() {
            (o.num.clone(), self.den.clone())
        } else {
            (o.num.div_exact(&g2).unwrap(), self.den.div_exact(&g2).unwrap())
        };
        ParamRational::normalize(n1.mul(&n2), d1.mul(&d2))
    }
}

impl<'a> Div<&'a ParamRational> for &'a ParamRational {
    type Output = ParamRational;
    fn div(self, o: &ParamRational) -> ParamRational {
        self.checked_div(o).expect("division by zero ParamRational")
    }
}

impl Neg for &ParamRational {
    type Output = ParamRational;
    fn neg(self) -> ParamRational {
        ParamRational { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for ParamRational {
    type Output = ParamRational;
    fn neg(self) -> ParamRational {
        -&self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<ParamRational> for ParamRational {
            type Output = ParamRational;
            fn $m(self, o: ParamRational) -> ParamRational {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a ParamRational> for ParamRational {
            type Output = ParamRational;
            fn $m(self, o: &ParamRational) -> ParamRational {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<ParamRational> for &'a ParamRational {
            type Output = ParamRational;
            fn $m(self, o: ParamRational) -> ParamRational {
                self.$m(&o)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl AddAssign<&ParamRational> for ParamRational {
    fn add_assign(&mut self, o: &ParamRational) {
        *self = &*self + o;
    }
}

impl AddAssign<ParamRational> for ParamRational {
    fn add_assign(&mut self, o: ParamRational) {
        *self = &*self + &o;
    }
}

impl SubAssign<&ParamRational> for ParamRational {
    fn sub_assign(&mut self, o: &ParamRational) {
        *self = &*self - o;
    }
}

impl MulAssign<&ParamRational> for ParamRational {
    fn mul_assign(&mut self, o: &ParamRational) {
        *self = &*self * o;
    }
}

impl From<i64> for ParamRational {
    fn from(n: i64) -> Self {
        ParamRational::from_i64(n)
    }
}

impl From<BigRational> for ParamRational {
    fn from(r: BigRational) -> Self {
        ParamRational::from_rat(r)
    }
}

impl num_traits::Zero for ParamRational {
    fn zero() -> Self {
        ParamRational::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

/// Sign of the leading numerator coefficient, used for display decisions.
pub fn leading_negative(x: &ParamRational) -> bool {
    x.num.leading_coeff().is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> ParamRational {
        ParamRational::parse(s).unwrap()
    }

    #[test]
    fn h3_is_eliminated() {
        assert!((ParamRational::h1() + ParamRational::h2() + ParamRational::h3()).is_zero());
        let x = (ParamRational::h1() + ParamRational::h2()) / ParamRational::h3();
        assert_eq!(x, ParamRational::from_i64(-1));
    }

    #[test]
    fn sigma3_psi0() {
        let x = ParamRational::sigma3() * ParamRational::psi0_jack();
        assert_eq!(x, ParamRational::h1() + ParamRational::h2());
    }

    #[test]
    fn canonical_after_cancellation() {
        let a = p("(h1^2 - h2^2)/(h1 + h2)");
        assert_eq!(a, p("h1 - h2"));
        let b = p("1/(h1 - h2) - 1/(h1 + h2)");
        assert_eq!(b, p("2*h2/(h1^2 - h2^2)"));
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert_eq!(ParamRational::one().checked_div(&ParamRational::zero()), Err(Error::DivisionByZero));
        assert!(ParamRational::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn substitution() {
        let x = p("N^2 + a0/(h1*h2)");
        let y = x.subs(Var::A0, &ParamRational::alpha0_miura()).unwrap();
        assert_eq!(y, p("N^2 + (h1 + h2)/(h1^2*h2^2)"));
        let z = x.subs_i64(Var::N, 2).unwrap();
        assert_eq!(z, p("4 + a0/(h1*h2)"));
    }
}
