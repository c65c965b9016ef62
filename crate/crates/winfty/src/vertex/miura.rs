//! The Miura fields U_k and the W generators V_1..V_4 built from them.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::coeff::Coeff;
use super::field::CompositeField;
use super::ope::nested_product;
use crate::algebra::{ParamRational, Var};
use crate::error::{Error, Result};

fn binom(n: u32, k: u32) -> BigRational {
    let mut r = BigInt::from(1);
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    BigRational::from_integer(r)
}

/// Expand :(a0 d + J_1)...(a0 d + J_N): = sum_m D_m d^m and return the
/// field coefficients D_m (index m).
pub fn miura_operator(n: usize) -> Vec<CompositeField> {
    let a0 = Coeff::alpha0();
    let mut op = vec![CompositeField::identity(n)];
    for i in 1..=n {
        let mut next = vec![CompositeField::zero(n); op.len() + 1];
        for (m, f) in op.iter().enumerate() {
            // F d^m a0 d
            next[m + 1] = next[m + 1].add(&f.scale(&a0));
            // F d^m J_i = sum_k C(m,k) F (d^k J_i) d^(m-k)
            for k in 0..=m {
                let jk = CompositeField::current(n, i, k as u8);
                let t = f.normal_product(&jk).scale_rat(&binom(m as u32, k as u32));
                next[m - k] = next[m - k].add(&t);
            }
        }
        op = next;
    }
    op
}

/// U_k from the Miura expansion; zero for k > N.
pub fn miura_u(n: usize, k: usize) -> Result<CompositeField> {
    if n == 0 {
        return Err(Error::Unsupported("N must be at least 1".into()));
    }
    if k > n {
        return Ok(CompositeField::zero(n));
    }
    let op = miura_operator(n);
    let p = (n - k) as u16;
    op[n - k].map_coeffs(|c| {
        c.div_alpha0_pow(p).ok_or_else(|| Error::Unsupported(format!("coefficient {} not divisible by a0^{}", c, p)))
    })
}

/// The displayed closed forms for U_0..U_4, with the sums expanded over
/// concrete index ranges. Used as an independent check of `miura_u`.
pub fn miura_u_listed(n: usize, k: usize) -> Result<CompositeField> {
    let a0 = Coeff::alpha0();
    let j = |i: usize, d: u8| CompositeField::current(n, i, d);
    let c = |x: i64| Coeff::from_i64(x);
    let prod = |fs: &[CompositeField]| fs.iter().skip(1).fold(fs[0].clone(), |acc, f| acc.normal_product(f));
    let mut f = CompositeField::zero(n);
    match k {
        0 => f = CompositeField::identity(n),
        1 => {
            for a in 1..=n {
                f = f.add(&j(a, 0));
            }
        }
        2 => {
            for a in 1..=n {
                for b in a + 1..=n {
                    f = f.add(&prod(&[j(a, 0), j(b, 0)]));
                }
                f = f.add(&j(a, 1).scale(&(&a0 * &c(a as i64 - 1))));
            }
        }
        3 => {
            let a2 = &a0 * &a0;
            for a in 1..=n {
                for b in a + 1..=n {
                    for l in b + 1..=n {
                        f = f.add(&prod(&[j(a, 0), j(b, 0), j(l, 0)]));
                    }
                    f = f.add(&prod(&[j(a, 1), j(b, 0)]).scale(&(&a0 * &c(a as i64 - 1))));
                    f = f.add(&prod(&[j(a, 0), j(b, 1)]).scale(&(&a0 * &c(b as i64 - 2))));
                }
                let w = (a as i64 - 1) * (a as i64 - 2);
                f = f.add(&j(a, 2).scale(&(&a2 * &Coeff::frac(w, 2))));
            }
        }
        4 => {
            let a2 = &a0 * &a0;
            let a3 = &a2 * &a0;
            for a in 1..=n {
                let (ai, w) = (a as i64, ((a as i64) - 1) * ((a as i64) - 2) * ((a as i64) - 3));
                f = f.add(&j(a, 3).scale(&(&a3 * &Coeff::frac(w, 6))));
                for b in a + 1..=n {
                    let bi = b as i64;
                    for l in b + 1..=n {
                        let li = l as i64;
                        for m in l + 1..=n {
                            f = f.add(&prod(&[j(a, 0), j(b, 0), j(l, 0), j(m, 0)]));
                        }
                        f = f.add(&prod(&[j(a, 1), j(b, 0), j(l, 0)]).scale(&(&a0 * &c(ai - 1))));
                        f = f.add(&prod(&[j(a, 0), j(b, 1), j(l, 0)]).scale(&(&a0 * &c(bi - 2))));
                        f = f.add(&prod(&[j(a, 0), j(b, 0), j(l, 1)]).scale(&(&a0 * &c(li - 3))));
                    }
                    let half = &a2 * &Coeff::frac(1, 2);
                    f = f.add(&prod(&[j(a, 2), j(b, 0)]).scale(&(&half * &c((ai - 1) * (ai - 2)))));
                    f = f.add(&prod(&[j(a, 1), j(b, 1)]).scale(&(&half * &c(2 * (ai - 1) * (bi - 3)))));
                    f = f.add(&prod(&[j(a, 0), j(b, 2)]).scale(&(&half * &c((bi - 2) * (bi - 3)))));
                }
            }
        }
        _ => return Err(Error::Unsupported(format!("no listed form for U_{}", k))),
    }
    if k > n {
        return Ok(CompositeField::zero(n));
    }
    Ok(f)
}

/// Substitute a concrete N into a parameter expression and convert.
pub fn coeff_at(x: &ParamRational, n: usize) -> Result<Coeff> {
    Coeff::from_param(&x.subs_i64(Var::N, n as i64)?)
}

pub(crate) fn pc(s: &str, n: usize) -> Coeff {
    coeff_at(&ParamRational::parse(s).expect("valid expression"), n).expect("h1 h2 monomial denominator")
}

/// Cached U_0..U_4 for one N.
#[derive(Clone, Debug)]
pub struct MiuraFields {
    pub n: usize,
    pub u: Vec<CompositeField>,
}

impl MiuraFields {
    pub fn new(n: usize) -> Result<Self> {
        let op = miura_operator(n);
        let mut u = Vec::new();
        for k in 0..=4 {
            if k > n {
                u.push(CompositeField::zero(n));
                continue;
            }
            let p = (n - k) as u16;
            u.push(op[n - k].map_coeffs(|c| c.div_alpha0_pow(p).ok_or_else(|| Error::Unsupported("a0 power".into())))?);
        }
        Ok(MiuraFields { n, u })
    }

    /// U_k differentiated d times.
    pub fn ud(&self, k: usize, d: u32) -> CompositeField {
        self.u[k].derivative_n(d)
    }
}

/// The 13 composites of the V_4 ansatz, in the order a_1..a_13.
pub const ANSATZ_LABELS: [&str; 13] =
    ["U1'U1U1", "U1'U1'", "U1U1U1U1", "U1''U1", "U1'''", "U1'U2", "U1U2'", "U1U1U2", "U2U2", "U2''", "U3'", "U1U3", "U4"];

pub fn ansatz_terms(m: &MiuraFields) -> Vec<CompositeField> {
    let u = |k: usize, d: u32| m.ud(k, d);
    let np = |fs: &[CompositeField]| nested_product(fs);
    vec![
        np(&[u(1, 1), u(1, 0), u(1, 0)]),
        np(&[u(1, 1), u(1, 1)]),
        np(&[u(1, 0), u(1, 0), u(1, 0), u(1, 0)]),
        np(&[u(1, 2), u(1, 0)]),
        u(1, 3),
        np(&[u(1, 1), u(2, 0)]),
        np(&[u(1, 0), u(2, 1)]),
        np(&[u(1, 0), u(1, 0), u(2, 0)]),
        np(&[u(2, 0), u(2, 0)]),
        u(2, 2),
        u(3, 1),
        np(&[u(1, 0), u(3, 0)]),
        u(4, 0),
    ]
}

/// The printed solution a_1..a_13 as functions of N, h1, h2, a0 (with the
/// stray "a" in a_5 read as alpha0).
pub fn a_solution_printed() -> Vec<ParamRational> {
    [
        "(N-1)*a0/2",
        "(3 + a0^2*h1*h2*(N-3)*(2*N+1))/(20*h1*h2)",
        "1/4",
        "(2*h1*h2*N^2*a0^2 - 5*h1*h2*N*a0^2 + 7*h1*h2*a0^2 + 5*N - 7)/(20*h1*h2)",
        "(a0^2*h1*h2*(N-2)*(N-3) + 10*N - 1)*a0*(N-1)/(120*h1*h2)",
        "-(N-1)*a0/2",
        "-(N-2)*a0/2",
        "-1",
        "1/2",
        "-(2*h1*h2*N^2*a0^2 - 10*h1*h2*N*a0^2 + 12*h1*h2*a0^2 + 3)/(20*h1*h2)",
        "a0*(N-3)/2",
        "1",
        "-1",
    ]
    .iter()
    .map(|s| ParamRational::parse(s).expect("valid"))
    .collect()
}

/// V_4 = -h1^3 h2^3 sum a_i T_i for given coefficients.
pub fn v4_from(terms: &[CompositeField], a: &[Coeff]) -> CompositeField {
    let n = terms[0].n;
    let mut f = CompositeField::zero(n);
    for (t, c) in terms.iter().zip(a) {
        f = f.add(&t.scale(c));
    }
    f.scale(&pc("-h1^3*h2^3", n))
}

/// V_1..V_4 for one N.
#[derive(Clone, Debug)]
pub struct VFields {
    pub n: usize,
    pub miura: MiuraFields,
    pub v: [CompositeField; 4],
}

impl VFields {
    pub fn new(n: usize) -> Result<Self> {
        let m = MiuraFields::new(n)?;
        let u = |k: usize, d: u32| m.ud(k, d);
        let np = |fs: &[CompositeField]| nested_product(fs);
        let c = |s: &str| pc(s, n);
        let v1 = u(1, 0);
        let v2 = u(2, 0)
            .neg()
            .add(&u(1, 1).scale(&c("(N-1)*a0/2")))
            .add(&np(&[u(1, 0), u(1, 0)]).scale(&c("1/2")))
            .scale(&c("-h1*h2"));
        let v3 = u(3, 0)
            .sub(&np(&[u(1, 0), u(2, 0)]))
            .add(&np(&[u(1, 0), u(1, 0), u(1, 0)]).scale(&c("1/3")))
            .sub(&u(2, 1).scale(&c("(N-2)*a0/2")))
            .add(&u(1, 2).scale(&c("a0^2*(N-1)*(N-2)/12")))
            .add(&np(&[u(1, 1), u(1, 0)]).scale(&c("(N-1)*a0/2")))
            .scale(&c("h1^2*h2^2"));
        let a: Vec<Coeff> = a_solution_printed().iter().map(|x| coeff_at(x, n)).collect::<Result<_>>()?;
        let v4 = v4_from(&ansatz_terms(&m), &a);
        Ok(VFields { n, miura: m, v: [v1, v2, v3, v4] })
    }

    /// V_j for j in 1..=4.
    pub fn get(&self, j: usize) -> &CompositeField {
        &self.v[j - 1]
    }
}

/// V_j at the given N, j in 1..=4.
pub fn v_field(j: usize, n: usize) -> Result<CompositeField> {
    if !(1..=4).contains(&j) {
        return Err(Error::Unsupported(format!("V_{} is not constructed", j)));
    }
    Ok(VFields::new(n)?.get(j).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex::field::{Factor, Monomial};
    use num_traits::One;

    #[test]
    fn miura_matches_listed_forms() {
        for n in 1..=5 {
            for k in 0..=4 {
                assert_eq!(miura_u(n, k).unwrap(), miura_u_listed(n, k).unwrap(), "N={} k={}", n, k);
            }
        }
    }

    #[test]
    fn small_cases() {
        let u = miura_u(2, 2).unwrap();
        let want = CompositeField::current(2, 1, 0)
            .normal_product(&CompositeField::current(2, 2, 0))
            .add(&CompositeField::current(2, 2, 1).scale(&Coeff::alpha0()));
        assert_eq!(u, want);
        assert_eq!(miura_u(3, 0).unwrap(), CompositeField::identity(3));
        assert_eq!(miura_u(1, 1).unwrap(), CompositeField::current(1, 1, 0));
        assert!(miura_u(2, 3).unwrap().is_zero());
    }

    #[test]
    fn one_layer_fields() {
        let v = VFields::new(1).unwrap();
        let j = CompositeField::current(1, 1, 0);
        assert_eq!(v.get(1), &j);
        assert_eq!(v.get(2), &j.normal_product(&j).scale(&pc("-h1*h2/2", 1)));
        assert_eq!(v.get(3), &j.normal_product(&j).normal_product(&j).scale(&pc("h1^2*h2^2/3", 1)));
        for (j, w) in (1..=4).zip(1..) {
            assert_eq!(v.get(j).weight(), Some(w));
        }
    }

    #[test]
    fn v4_boson_point() {
        let v4 = v_field(4, 1).unwrap();
        let one = BigRational::one();
        let got = v4.specialize(&one, &-one.clone(), Some(&BigRational::from_integer(0.into()))).unwrap();
        let f = |d: &[u8]| Monomial::new(d.iter().map(|&x| Factor { current: 1, deriv: x }).collect());
        let want = CompositeField::from_terms(
            1,
            [(f(&[0, 0, 0, 0]), Coeff::frac(1, 4)), (f(&[1, 1]), Coeff::frac(-3, 20)), (f(&[0, 2]), Coeff::frac(1, 10))],
        );
        assert_eq!(got, want);
    }
}
