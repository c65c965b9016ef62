//! Small recursive-descent reader for parameter expressions such as
//! `(2*h1 - h2)/(h1*h2)` or `-h3^2/4`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::param::ParamRational;
use super::poly::Var;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Num(t.parse().unwrap()));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{}' in {:?}", c, s)));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<ParamRational> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ParamRational> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc * self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.checked_div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<ParamRational> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<ParamRational> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: i32 = n.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
                    let e = if neg { -e } else { e };
                    if e < 0 && base.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse("expected integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<ParamRational> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(ParamRational::from_rat(BigRational::from_integer(n)))
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                match id.as_str() {
                    "h3" => Ok(ParamRational::h3()),
                    "sigma2" => Ok(ParamRational::sigma2()),
                    "sigma3" => Ok(ParamRational::sigma3()),
                    other => Var::from_name(other)
                        .map(ParamRational::var)
                        .ok_or_else(|| Error::Parse(format!("unknown symbol {}", other))),
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            t => Err(Error::Parse(format!("unexpected token {:?}", t))),
        }
    }
}

pub fn parse_param(s: &str) -> Result<ParamRational> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {:?}", s)));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints_round_trip() {
        for s in ["0", "1", "-3/4", "h1 + h2", "(h1 - 2*h2)/(h1*h2)", "a0^2*N - 1/(h1^2)"] {
            let x = parse_param(s).unwrap();
            let y = parse_param(&x.to_string()).unwrap();
            assert_eq!(x, y, "{}", s);
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_param("h1 +").is_err());
        assert!(parse_param("q7").is_err());
        assert!(parse_param("1/(h1-h1)").is_err());
    }
}
