//! Names of composite fields as written in OPE tables: juxtaposed atoms
//! like `U1'U1U1`, `V2''`, `J1'J1` or `1`, read as right-nested regular
//! products.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::coeff::Coeff;
use super::field::CompositeField;
use super::miura::VFields;
use super::ope::nested_product;
use crate::algebra::{ParamRational, Var};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Atom {
    U(usize, u32),
    V(usize, u32),
    J(usize, u32),
}

fn parse_atoms(s: &str) -> Result<Vec<Atom>> {
    let bad = || Error::Parse(format!("bad field name {:?}", s));
    if s.trim() == "1" {
        return Ok(Vec::new());
    }
    let cs: Vec<char> = s.trim().chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < cs.len() {
        let kind = cs[i];
        i += 1;
        let st = i;
        while i < cs.len() && cs[i].is_ascii_digit() {
            i += 1;
        }
        let idx: usize = cs[st..i].iter().collect::<String>().parse().map_err(|_| bad())?;
        let mut d = 0;
        while i < cs.len() && cs[i] == '\'' {
            d += 1;
            i += 1;
        }
        out.push(match kind {
            'U' => Atom::U(idx, d),
            'V' => Atom::V(idx, d),
            'J' => Atom::J(idx, d),
            _ => return Err(bad()),
        });
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

/// Parameter specialization applied to fields and formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AlphaChoice {
    Symbolic,
    /// alpha0 = -h3/(h1 h2)
    Miura,
    Zero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Regime {
    pub alpha: AlphaChoice,
    /// Concrete integer (h1, h2), or symbolic when None.
    pub h: Option<(i64, i64)>,
}

impl Regime {
    pub const GENERIC: Regime = Regime { alpha: AlphaChoice::Symbolic, h: None };
    pub const MIURA: Regime = Regime { alpha: AlphaChoice::Miura, h: None };
    pub const BOSON: Regime = Regime { alpha: AlphaChoice::Zero, h: Some((1, -1)) };

    pub fn coeff(&self, c: &Coeff) -> Result<Coeff> {
        let c = match self.alpha {
            AlphaChoice::Symbolic => c.clone(),
            AlphaChoice::Miura => c.subs_alpha0(&Coeff::from_param(&ParamRational::alpha0_miura())?),
            AlphaChoice::Zero => c.subs_alpha0(&Coeff::zero()),
        };
        match self.h {
            None => Ok(c),
            Some((a, b)) => c.specialize(&int(a), &int(b), None),
        }
    }

    pub fn field(&self, f: &CompositeField) -> Result<CompositeField> {
        if *self == Regime::GENERIC {
            return Ok(f.clone());
        }
        f.map_coeffs(|c| self.coeff(c))
    }

    /// Specialize a formula that may still contain N.
    pub fn param(&self, x: &ParamRational) -> Result<ParamRational> {
        let x = match self.alpha {
            AlphaChoice::Symbolic => x.clone(),
            AlphaChoice::Miura => x.subs(Var::A0, &ParamRational::alpha0_miura())?,
            AlphaChoice::Zero => x.subs_i64(Var::A0, 0)?,
        };
        match self.h {
            None => Ok(x),
            Some((a, b)) => x.subs_i64(Var::H1, a)?.subs_i64(Var::H2, b),
        }
    }

    pub fn describe(&self) -> String {
        let a = match self.alpha {
            AlphaChoice::Symbolic => "alpha0 symbolic",
            AlphaChoice::Miura => "alpha0 = -h3/(h1 h2)",
            AlphaChoice::Zero => "alpha0 = 0",
        };
        match self.h {
            None => a.to_string(),
            Some((x, y)) => format!("{}, h1 = {}, h2 = {}", a, x, y),
        }
    }
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Evaluates field names at one N, caching products.
pub struct FieldContext {
    pub vf: VFields,
    cache: HashMap<Vec<Atom>, CompositeField>,
}

impl FieldContext {
    pub fn new(n: usize) -> Result<Self> {
        Ok(FieldContext { vf: VFields::new(n)?, cache: HashMap::new() })
    }

    pub fn n(&self) -> usize {
        self.vf.n
    }

    fn atom(&self, a: Atom) -> Result<CompositeField> {
        let n = self.n();
        Ok(match a {
            Atom::U(k, d) if k <= 4 => self.vf.miura.ud(k, d),
            Atom::V(k, d) if (1..=4).contains(&k) => self.vf.get(k).derivative_n(d),
            Atom::J(k, d) if (1..=n).contains(&k) => CompositeField::current(n, k, d as u8),
            _ => return Err(Error::Parse(format!("field {:?} not available at N = {}", a, n))),
        })
    }

    pub fn field(&mut self, name: &str) -> Result<CompositeField> {
        let atoms = parse_atoms(name)?;
        if let Some(f) = self.cache.get(&atoms) {
            return Ok(f.clone());
        }
        let f = if atoms.is_empty() {
            CompositeField::identity(self.n())
        } else {
            let parts = atoms.iter().map(|a| self.atom(*a)).collect::<Result<Vec<_>>>()?;
            nested_product(&parts)
        };
        self.cache.insert(atoms, f.clone());
        Ok(f)
    }

    /// Sum of coefficient * field with coefficients given as formulas in
    /// N, h1, h2, a0, psi0 (psi0 = -N/(h1 h2)), h3, sigma2, sigma3.
    pub fn combination(&mut self, terms: &[(&str, &str)]) -> Result<CompositeField> {
        let mut f = CompositeField::zero(self.n());
        for (c, name) in terms {
            let c = formula_at(c, self.n())?;
            f = f.add(&self.field(name)?.scale(&c));
        }
        Ok(f)
    }
}

/// Parse a coefficient formula, substituting psi0 = -N/(h1 h2).
pub fn formula(s: &str) -> Result<ParamRational> {
    let x = ParamRational::parse(s)?;
    if x.uses(Var::Psi0) {
        let psi = -(ParamRational::n() / (ParamRational::h1() * ParamRational::h2()));
        x.subs(Var::Psi0, &psi)
    } else {
        Ok(x)
    }
}

pub fn formula_at(s: &str, n: usize) -> Result<Coeff> {
    Coeff::from_param(&formula(s)?.subs_i64(Var::N, n as i64)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_names() {
        assert_eq!(parse_atoms("U1'U1U1").unwrap(), vec![Atom::U(1, 1), Atom::U(1, 0), Atom::U(1, 0)]);
        assert_eq!(parse_atoms("V4''").unwrap(), vec![Atom::V(4, 2)]);
        assert!(parse_atoms("1").unwrap().is_empty());
        assert!(parse_atoms("X1").is_err());
    }

    #[test]
    fn nested_names_are_symmetric() {
        let mut c = FieldContext::new(3).unwrap();
        let a = c.field("U1'U1U1").unwrap();
        let b = c.field("U1U1'U1").unwrap();
        let d = c.field("U1U1U1'").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, d);
    }
}
