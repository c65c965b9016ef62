//! The displayed OPEs, as data, and their verification against Wick
//! contraction.

use std::collections::HashMap;

use serde::Serialize;

use super::expr::{formula, FieldContext, Regime};
use super::field::CompositeField;
use super::ope::{wick_ope, OpeResult};
use crate::algebra::{interpolate_in_n, solve_linear, LinearEquation, ParamRational, Var};
use crate::error::{Error, Result};

/// Pole order with its coefficient as (formula, field name) pairs.
pub type Pole = (u32, Vec<(&'static str, &'static str)>);

#[derive(Clone, Debug)]
pub struct OpeSpec {
    pub id: &'static str,
    pub anchor: &'static str,
    pub lhs: &'static str,
    pub rhs: &'static str,
    pub regime: Regime,
    /// Formula valid for every N (checked on N = 1..=8) or for N = 1 only.
    pub general_n: bool,
    pub poles: Vec<Pole>,
    /// Orders compared; all orders when None.
    pub orders: Option<Vec<u32>>,
    /// A corrected reading of a misprinted display.
    pub correction: Option<(&'static str, Vec<Pole>)>,
}

fn spec(id: &'static str, anchor: &'static str, lhs: &'static str, rhs: &'static str, regime: Regime, general_n: bool, poles: Vec<Pole>) -> OpeSpec {
    OpeSpec { id, anchor, lhs, rhs, regime, general_n, poles, orders: None, correction: None }
}

impl OpeSpec {
    fn fix(mut self, note: &'static str, poles: Vec<Pole>) -> Self {
        self.correction = Some((note, poles));
        self
    }

    fn only(mut self, orders: &[u32]) -> Self {
        self.orders = Some(orders.to_vec());
        self
    }

    pub fn ns(&self) -> Vec<usize> {
        if self.general_n {
            (1..=GENERAL_N_MAX).collect()
        } else {
            vec![1]
        }
    }
}

pub const GENERAL_N_MAX: usize = 8;

const G: Regime = Regime::GENERIC;
const M: Regime = Regime::MIURA;
const B: Regime = Regime::BOSON;

/// Every displayed OPE among V_1..V_4 and the Miura composites.
pub fn catalog() -> Vec<OpeSpec> {
    let c14 = "3*h1*h2*(-1+a0^2*h1*h2*(N^2+1))/5";
    let mc14 = "-3*h1*h2*(-1+a0^2*h1*h2*(N^2+1))/5";
    let d14 = "h1*h2*(-1+a0^2*h1*h2*(N^2+1))/10";
    let c3 = "(-h1*h2/N*(N+(N+1)*N*(N-1)*a0^2*h1*h2)*(4*N+(N+2)*N*(N-2)*a0^2*h1*h2) - 3*N^2*a0^2*h1^2*h2^2)/6";
    let v33_4 = "-h1*h2*(4+(N+2)*(N-2)*a0^2*h1*h2)";
    let v33_3 = "-h1*h2*(4+(N+2)*(N-2)*a0^2*h1*h2)/2";
    vec![
        // general N
        spec("v1v1", "V1 V1, general N", "V1", "V1", G, true, vec![(2, vec![("-N/(h1*h2)", "1")])]),
        spec("v1v2", "V1 V2, general N", "V1", "V2", G, true, vec![(2, vec![("1", "V1")])]),
        spec(
            "v2v2",
            "V2 V2, general N, c2 = N + h1 h2 a0^2 N (N+1)(N-1)",
            "V2",
            "V2",
            G,
            true,
            vec![(4, vec![("(N+h1*h2*a0^2*N*(N+1)*(N-1))/2", "1")]), (2, vec![("2", "V2")]), (1, vec![("1", "V2'")])],
        ),
        spec("v1v3", "V1 V3, general N", "V1", "V3", G, true, vec![(2, vec![("2", "V2")])]),
        spec(
            "v2v3",
            "V2 V3, general N",
            "V2",
            "V3",
            G,
            true,
            vec![(4, vec![("-h1*h2*(1+(N+1)*(N-1)*a0^2*h1*h2)", "V1")]), (2, vec![("3", "V3")]), (1, vec![("1", "V3'")])],
        ),
        spec(
            "v3v3",
            "V3 V3 leading poles, general N, with c3",
            "V3",
            "V3",
            M,
            true,
            vec![
                (3, vec![(c3, "1"), (v33_3, "V2'"), ("3*N*h3*sigma3/2", "U1'U1")]),
                (4, vec![(v33_4, "V2"), ("3*N*h3*sigma3/2", "U1U1")]),
            ],
        )
        .only(&[6, 5, 4, 3])
        .fix(
            "the central term c3/6 sits at (z-w)^-6, not (z-w)^-3",
            vec![
                (6, vec![(c3, "1")]),
                (4, vec![(v33_4, "V2"), ("3*N*h3*sigma3/2", "U1U1")]),
                (3, vec![(v33_3, "V2'"), ("3*N*h3*sigma3/2", "U1'U1")]),
            ],
        ),
        spec(
            "v1v4",
            "V1 V4, general N",
            "V1",
            "V4",
            G,
            true,
            vec![(4, vec![(c14, "V1")]), (3, vec![(mc14, "V1'")]), (2, vec![("3", "V3"), (d14, "V1''")])],
        ),
        spec(
            "v2v4",
            "V2 V4, general N",
            "V2",
            "V4",
            G,
            true,
            vec![(4, vec![("-h1*h2*(21+a0^2*h1*h2*(9*N^2-21))/5", "V2")]), (2, vec![("4", "V4")]), (1, vec![("1", "V4'")])],
        ),
        // one free boson
        spec("boson.v2v1", "V2 V1, one free boson", "V2", "V1", B, false, vec![(2, vec![("1", "V1")]), (1, vec![("1", "V1'")])]),
        spec(
            "boson.v2v2",
            "V2 V2, one free boson",
            "V2",
            "V2",
            B,
            false,
            vec![(4, vec![("1/2", "1")]), (2, vec![("2", "V2")]), (1, vec![("1", "V2'")])],
        ),
        spec(
            "boson.v2v3",
            "V2 V3, one free boson",
            "V2",
            "V3",
            B,
            false,
            vec![(4, vec![("1", "V1")]), (2, vec![("3", "V3")]), (1, vec![("1", "V3'")])],
        ),
        spec(
            "boson.v2v4",
            "V2 V4, one free boson",
            "V2",
            "V4",
            B,
            false,
            vec![(4, vec![("21/5", "V2")]), (2, vec![("4", "V4")]), (1, vec![("1", "V4'")])],
        ),
        // one layer
        spec("jack.v1v2", "V1 V2, N = 1", "V1", "V2", G, false, vec![(2, vec![("1", "V1")])]),
        spec("jack.v1v3", "V1 V3, N = 1", "V1", "V3", G, false, vec![(2, vec![("2", "V2")])]),
        spec(
            "jack.v1v4",
            "V1 V4, N = 1",
            "V1",
            "V4",
            G,
            false,
            vec![
                (4, vec![("-3*h1*h2/5+6*a0^2*h1^2*h2^2/5", "V1")]),
                (3, vec![("3*h1*h2/5-6*a0^2*h1^2*h2^2/5", "V1'")]),
                (2, vec![("3", "V3"), ("-h1*h2/10+a0^2*h1^2*h2^2/5", "V1''")]),
            ],
        ),
        spec("jack.v2v1", "V2 V1, N = 1", "V2", "V1", G, false, vec![(2, vec![("1", "V1")]), (1, vec![("1", "V1'")])]),
        spec(
            "jack.v2v2",
            "V2 V2, N = 1",
            "V2",
            "V2",
            G,
            false,
            vec![(4, vec![("1/2", "1")]), (2, vec![("2", "V2")]), (1, vec![("1", "V2'")])],
        ),
        spec(
            "jack.v2v3",
            "V2 V3, N = 1",
            "V2",
            "V3",
            G,
            false,
            vec![(4, vec![("-h1*h2", "V1")]), (3, vec![("3", "V3"), ("1", "V3'")])],
        )
        .fix(
            "the V3 and V3' terms belong to (z-w)^-2 and (z-w)^-1",
            vec![(4, vec![("-h1*h2", "V1")]), (2, vec![("3", "V3")]), (1, vec![("1", "V3'")])],
        ),
        spec(
            "jack.v2v4",
            "V2 V4, N = 1",
            "V2",
            "V4",
            G,
            false,
            vec![(4, vec![("-21*h1*h2/5+12*a0^2*h1^2*h2^2/5", "V2")]), (2, vec![("4", "V4")]), (1, vec![("1", "V4'")])],
        ),
        spec(
            "jack.v3v3",
            "V3 V3, N = 1, alpha0 = -h3/(h1 h2)",
            "V3",
            "V3",
            M,
            false,
            vec![
                (6, vec![("-2*h1*h2/3", "1")]),
                (4, vec![("-4*h1*h2", "V2")]),
                (3, vec![("-2*h1*h2", "V2'")]),
                (
                    2,
                    vec![
                        ("4", "V4"),
                        ("-3*h1*h2/5", "V2''"),
                        ("-6*a0^2*h1^3*h2^3/5", "J1'J1'"),
                        ("4*a0^2*h1^3*h2^3/5", "J1''J1"),
                        ("2", "V4'"),
                        ("-2*h1*h2/15", "V2'''"),
                        ("-4*a0^2*h1^3*h2^3/5", "J1''J1'"),
                        ("2*a0^2*h1^3*h2^3/5", "J1'''J1"),
                    ],
                ),
            ],
        )
        .fix(
            "the second (z-w)^-2 line is the (z-w)^-1 pole",
            vec![
                (6, vec![("-2*h1*h2/3", "1")]),
                (4, vec![("-4*h1*h2", "V2")]),
                (3, vec![("-2*h1*h2", "V2'")]),
                (
                    2,
                    vec![("4", "V4"), ("-3*h1*h2/5", "V2''"), ("-6*a0^2*h1^3*h2^3/5", "J1'J1'"), ("4*a0^2*h1^3*h2^3/5", "J1''J1")],
                ),
                (
                    1,
                    vec![("2", "V4'"), ("-2*h1*h2/15", "V2'''"), ("-4*a0^2*h1^3*h2^3/5", "J1''J1'"), ("2*a0^2*h1^3*h2^3/5", "J1'''J1")],
                ),
            ],
        ),
        // symmetric in h1, h2, h3
        spec("sym.v1v1", "V1 V1, symmetric form", "V1", "V1", M, true, vec![(2, vec![("psi0", "1")])]),
        spec(
            "sym.v2v2",
            "V2 V2, symmetric form",
            "V2",
            "V2",
            M,
            true,
            vec![(4, vec![("-(psi0*sigma2+psi0^3*sigma3^2)/2", "1")]), (2, vec![("2", "V2")]), (1, vec![("1", "V2'")])],
        ),
        spec(
            "sym.v2v3",
            "V2 V3, symmetric form",
            "V2",
            "V3",
            M,
            true,
            vec![(4, vec![("-(sigma2+psi0^2*sigma3^2)", "V1")]), (2, vec![("3", "V3")]), (1, vec![("1", "V3'")])],
        ),
        spec(
            "sym.v1v4",
            "V1 V4, symmetric form",
            "V1",
            "V4",
            M,
            true,
            vec![
                (4, vec![("(-3*sigma2+3*psi0^2*sigma3^2)/5", "V1")]),
                (3, vec![("(3*sigma2-3*psi0^2*sigma3^2)/5", "V1'")]),
                (2, vec![("3", "V3"), ("(-sigma2+psi0^2*sigma3^2)/10", "V1''")]),
            ],
        ),
        spec(
            "sym.v2v4",
            "V2 V4, symmetric form",
            "V2",
            "V4",
            M,
            true,
            vec![(4, vec![("(21*sigma2-9*psi0^2*sigma3^2)/5", "V2")]), (2, vec![("4", "V4")]), (1, vec![("1", "V4'")])],
        )
        .fix(
            "the sigma2 term enters with a minus sign, -(21 sigma2 + 9 psi0^2 sigma3^2)/5",
            vec![(4, vec![("-(21*sigma2+9*psi0^2*sigma3^2)/5", "V2")]), (2, vec![("4", "V4")]), (1, vec![("1", "V4'")])],
        ),
        // Miura composites
        spec("u.u1u1", "U1 U1", "U1", "U1", G, true, vec![(2, vec![("-N/(h1*h2)", "1")])]),
        spec(
            "u.v1.u1'u1u1",
            "V1 with U1'U1U1",
            "V1",
            "U1'U1U1",
            G,
            true,
            vec![(3, vec![("-2*N/(h1*h2)", "U1U1")]), (2, vec![("-2*N/(h1*h2)", "U1'U1")])],
        ),
        spec("u.v1.u1'u1'", "V1 with U1'U1'", "V1", "U1'U1'", G, true, vec![(3, vec![("-4*N/(h1*h2)", "U1'")])]),
        spec("u.v1.u1^4", "V1 with U1U1U1U1", "V1", "U1U1U1U1", G, true, vec![(2, vec![("-4*N/(h1*h2)", "U1U1U1")])]),
        spec(
            "u.v1.u1''u1",
            "V1 with U1''U1",
            "V1",
            "U1''U1",
            G,
            true,
            vec![(4, vec![("-6*N/(h1*h2)", "U1")]), (2, vec![("-N/(h1*h2)", "U1''")])],
        ),
        spec("u.v1.u1'''", "V1 with U1'''", "V1", "U1'''", G, true, vec![(5, vec![("-24*N/(h1*h2)", "1")])]),
        spec(
            "u.u1u2",
            "U1 U2",
            "U1",
            "U2",
            G,
            true,
            vec![(3, vec![("-N*(N-1)*a0/(h1*h2)", "1")]), (2, vec![("-(N-1)/(h1*h2)", "U1")])],
        ),
        spec(
            "u.u2u2",
            "U2 U2",
            "U2",
            "U2",
            G,
            true,
            vec![
                (4, vec![("N*(N-1)*(1+2*(2*N-1)*a0*h1*h2)/(2*h1^2*h2^2)", "1")]),
                (2, vec![("2/(h1*h2)", "U2"), ("-(N-1)/(h1*h2)", "U1U1"), ("-N*(N-1)*a0/(h1*h2)", "U1'")]),
                (1, vec![("1/(h1*h2)", "U2'"), ("-(N-1)/(h1*h2)", "U1'U1"), ("-N*(N-1)*a0/(2*h1*h2)", "U1''")]),
            ],
        )
        .fix(
            "alpha0 enters the quartic pole squared, 1 + 2(2N-1) a0^2 h1 h2",
            vec![
                (4, vec![("N*(N-1)*(1+2*(2*N-1)*a0^2*h1*h2)/(2*h1^2*h2^2)", "1")]),
                (2, vec![("2/(h1*h2)", "U2"), ("-(N-1)/(h1*h2)", "U1U1"), ("-N*(N-1)*a0/(h1*h2)", "U1'")]),
                (1, vec![("1/(h1*h2)", "U2'"), ("-(N-1)/(h1*h2)", "U1'U1"), ("-N*(N-1)*a0/(2*h1*h2)", "U1''")]),
            ],
        ),
        spec(
            "u.v1.u1'u2",
            "V1 with U1'U2",
            "V1",
            "U1'U2",
            G,
            true,
            vec![(3, vec![("-2*N/(h1*h2)", "U2"), ("-(N-1)*N*a0/(h1*h2)", "U1'")]), (2, vec![("-(N-1)/(h1*h2)", "U1'U1")])],
        ),
        spec(
            "u.v1.u1u2'",
            "V1 with U1U2'",
            "V1",
            "U1U2'",
            G,
            true,
            vec![
                (4, vec![("-3*(N-1)*N*a0/(h1*h2)", "U1")]),
                (3, vec![("-2*(N-1)/(h1*h2)", "U1U1")]),
                (2, vec![("-(N-1)/(h1*h2)", "U1'U1"), ("-N/(h1*h2)", "U2'")]),
            ],
        ),
        spec(
            "u.v1.u1u1u2",
            "V1 with U1U1U2",
            "V1",
            "U1U1U2",
            G,
            true,
            vec![(3, vec![("-N*(N-1)*a0/(h1*h2)", "U1U1")]), (2, vec![("-2*N/(h1*h2)", "U1U2"), ("-(N-1)/(h1*h2)", "U1U1U1")])],
        ),
        spec(
            "u.v1.u2u2",
            "V1 with U2U2",
            "V1",
            "U2U2",
            G,
            true,
            vec![
                (5, vec![("4*N*(N-1)^2*a0/(h1^2*h2^2)", "1")]),
                (4, vec![("3*(N-1)^2/(h1^2*h2^2)", "U1")]),
                (3, vec![("-2*(N-1)*N*a0/(h1*h2)", "U2")]),
                (2, vec![("-2*(N-1)/(h1*h2)", "U1U2"), ("(N-1)^2/(2*h1^2*h2^2)", "U1''")]),
            ],
        ),
        spec(
            "u.v1.u2''",
            "V1 with U2''",
            "V1",
            "U2''",
            G,
            true,
            vec![
                (5, vec![("-12*(N-1)*N*a0/(h1*h2)", "1")]),
                (4, vec![("-6*(N-1)/(h1*h2)", "U1")]),
                (3, vec![("-4*(N-1)/(h1*h2)", "U1'")]),
                (2, vec![("-(N-1)/(h1*h2)", "U1''")]),
            ],
        ),
        spec(
            "u.u1u3",
            "U1 U3",
            "U1",
            "U3",
            G,
            true,
            vec![
                (4, vec![("-N*(N-1)*(N-2)*a0^2/(h1*h2)", "1")]),
                (3, vec![("-(N-1)*(N-2)*a0/(h1*h2)", "U1")]),
                (2, vec![("-(N-2)/(h1*h2)", "U2")]),
            ],
        ),
        spec(
            "u.v1.u3'",
            "V1 with U3'",
            "V1",
            "U3'",
            G,
            true,
            vec![
                (5, vec![("-4*N*(N-1)*(N-2)*a0^2/(h1*h2)", "1")]),
                (4, vec![("-3*(N-1)*(N-2)*a0/(h1*h2)", "U1")]),
                (3, vec![("-2*(N-2)/(h1*h2)", "U2"), ("-(N-1)*(N-2)*a0/(h1*h2)", "U1'")]),
                (2, vec![("-(N-2)/(h1*h2)", "U2'")]),
            ],
        ),
        spec(
            "u.v1.u1u3",
            "V1 with U1U3",
            "V1",
            "U1U3",
            G,
            true,
            vec![
                (4, vec![("-N*(N-1)*(N-2)*a0^2/(h1*h2)", "U1")]),
                (3, vec![("-(N-1)*(N-2)*a0/(h1*h2)", "U1U1")]),
                (2, vec![("-N/(h1*h2)", "U3"), ("-(N-2)/(h1*h2)", "U1U2")]),
            ],
        ),
        spec(
            "u.v1.u4",
            "V1 with U4",
            "V1",
            "U4",
            G,
            true,
            vec![
                (5, vec![("-N*(N-1)*(N-2)*(N-3)*a0^3/(h1*h2)", "1")]),
                (4, vec![("-(N-1)*(N-2)*(N-3)*a0^2/(h1*h2)", "U1")]),
                (3, vec![("-(N-2)*(N-3)*a0/(h1*h2)", "U2")]),
                (2, vec![("-(N-3)/(h1*h2)", "U3")]),
            ],
        ),
        spec("u.v2.u1", "V2 with U1", "V2", "U1", G, true, vec![(2, vec![("1", "U1")]), (1, vec![("1", "U1'")])]),
        spec(
            "u.v2.u1'u1u1",
            "V2 with U1'U1U1",
            "V2",
            "U1'U1U1",
            G,
            true,
            vec![
                (5, vec![("-4*N/(h1*h2)", "U1")]),
                (4, vec![("-N/(h1*h2)", "U1'")]),
                (3, vec![("2", "U1U1U1")]),
                (2, vec![("4", "U1'U1U1")]),
                (1, vec![("2", "U1'U1'U1"), ("1", "U1''U1U1")]),
            ],
        ),
        spec(
            "u.v2.u1'u1'",
            "V2 with U1'U1'",
            "V2",
            "U1'U1'",
            G,
            true,
            vec![(6, vec![("-4*N/(h1*h2)", "1")]), (3, vec![("4", "U1'U1")]), (2, vec![("4", "U1'U1'")]), (1, vec![("2", "U1''U1'")])],
        ),
        spec(
            "u.v2.u1^4",
            "V2 with U1U1U1U1",
            "V2",
            "U1U1U1U1",
            G,
            true,
            vec![(4, vec![("-6*N/(h1*h2)", "U1U1")]), (2, vec![("4", "U1U1U1U1")]), (1, vec![("4", "U1'U1U1U1")])],
        ),
        spec(
            "u.v2.u1''u1",
            "V2 with U1''U1",
            "V2",
            "U1''U1",
            G,
            true,
            vec![
                (6, vec![("-6*N/(h1*h2)", "1")]),
                (4, vec![("6", "U1U1")]),
                (3, vec![("6", "U1'U1")]),
                (2, vec![("4", "U1''U1")]),
                (1, vec![("1", "U1'''U1"), ("1", "U1''U1'")]),
            ],
        ),
        spec(
            "u.v2.u1'''",
            "V2 with U1'''",
            "V2",
            "U1'''",
            G,
            true,
            vec![
                (5, vec![("24", "U1")]),
                (4, vec![("24", "U1'")]),
                (3, vec![("12", "U1''")]),
                (2, vec![("4", "U1'''")]),
                (1, vec![("1", "U1''''")]),
            ],
        ),
        spec(
            "u.v2.u2",
            "V2 with U2",
            "V2",
            "U2",
            G,
            true,
            vec![
                (4, vec![("(N^3-N)*a0^2/2", "1")]),
                (3, vec![("(N-1)*a0", "U1")]),
                (2, vec![("2", "U2")]),
                (1, vec![("1", "U2'")]),
            ],
        ),
        spec(
            "u.v2.u1'u2",
            "V2 with U1'U2",
            "V2",
            "U1'U2",
            G,
            true,
            vec![
                (6, vec![("-2*N*(N-1)*a0/(h1*h2)", "1")]),
                (5, vec![("-2*(N-1)/(h1*h2)", "U1")]),
                (4, vec![("(N^3-N)*a0^2/2", "U1'")]),
                (3, vec![("2", "U1U2"), ("a0*(N-1)", "U1'U1")]),
                (2, vec![("4", "U1'U2")]),
                (1, vec![("1", "U1'U2'"), ("1", "U1''U2")]),
            ],
        ),
        spec(
            "u.v2.u1u2'",
            "V2 with U1U2'",
            "V2",
            "U1U2'",
            G,
            true,
            vec![
                (6, vec![("-3*N*(N-1)*a0/(h1*h2)", "1")]),
                (5, vec![("2*(N^3-N)*a0^2-2*(N-1)/(h1*h2)", "U1")]),
                (4, vec![("3*a0*(N-1)", "U1U1"), ("-(N-1)/(h1*h2)", "U1'")]),
                (3, vec![("4", "U1U2"), ("a0*(N-1)", "U1'U1")]),
                (2, vec![("4", "U1U2'")]),
                (1, vec![("1", "U1U2''"), ("1", "U1'U2'")]),
            ],
        ),
        spec(
            "u.v2.u1u1u2",
            "V2 with U1U1U2",
            "V2",
            "U1U1U2",
            G,
            true,
            vec![
                (5, vec![("-2*a0*N*(N-1)/(h1*h2)", "U1")]),
                (4, vec![("((N^3-N)*a0^2-4*(N-1)/(h1*h2))/2", "U1U1"), ("-N/(h1*h2)", "U2")]),
                (3, vec![("a0*(N-1)", "U1U1U1")]),
                (2, vec![("4", "U1U1U2")]),
                (1, vec![("1", "U1U1U2"), ("2", "U1'U1U2")]),
            ],
        )
        .fix(
            "the first-order pole reads U1U1U2' + 2 U1'U1U2",
            vec![
                (5, vec![("-2*a0*N*(N-1)/(h1*h2)", "U1")]),
                (4, vec![("((N^3-N)*a0^2-4*(N-1)/(h1*h2))/2", "U1U1"), ("-N/(h1*h2)", "U2")]),
                (3, vec![("a0*(N-1)", "U1U1U1")]),
                (2, vec![("4", "U1U1U2")]),
                (1, vec![("1", "U1U1U2'"), ("2", "U1'U1U2")]),
            ],
        ),
        spec(
            "u.v2.u2u2",
            "V2 with U2U2",
            "V2",
            "U2U2",
            G,
            true,
            vec![
                (6, vec![("3*N*(N-1)/(h1^2*h2^2)+2*a0^2*N*(N-1)*(N+2)/(h1*h2)", "1")]),
                (5, vec![("-6*a0*(N-1)^2/(h1*h2)", "U1")]),
                (4, vec![("(N^3-N)*a0^2+8/(h1*h2)", "U2"), ("-4*a0*N*(N-1)/(h1*h2)", "U1'"), ("-4*(N-1)/(h1*h2)", "U1U1")]),
                (
                    3,
                    vec![
                        ("2*a0*(N-1)", "U1U2"),
                        ("-3*(N-1)/(h1*h2)", "U1'U1"),
                        ("3/(h1*h2)", "U2'"),
                        ("-a0*(N-1)*(4*N-1)/(2*h1*h2)", "U1''"),
                    ],
                ),
                (2, vec![("4", "U2U2")]),
                (
                    1,
                    vec![
                        ("2", "U2'U2"),
                        ("-(N-1)/(2*h1*h2)", "U1''U1'"),
                        ("-(N-1)/(6*h1*h2)", "U1'''U1"),
                        ("1/(6*h1*h2)", "U2'''"),
                        ("-a0*N*(N-1)/(12*h1*h2)", "U1''''"),
                    ],
                ),
            ],
        ),
        spec(
            "u.v2.u2''",
            "V2 with U2''",
            "V2",
            "U2''",
            G,
            true,
            vec![
                (6, vec![("10*a0^2*(N^3-N)", "1")]),
                (5, vec![("12*a0*(N-1)", "U1")]),
                (4, vec![("12", "U2"), ("6*a0*(N-1)", "U1'")]),
                (3, vec![("10", "U2'"), ("a0*(N-1)", "U1''")]),
                (2, vec![("4", "U2''")]),
                (1, vec![("1", "U2'''")]),
            ],
        ),
        spec(
            "u.v2.u3",
            "V2 with U3",
            "V2",
            "U3",
            G,
            true,
            vec![
                (5, vec![("(N+1)*N*(N-1)*(N-2)*a0^3", "1")]),
                (4, vec![("(N+3)*(N-1)*(N-2)*a0^2/2", "U1")]),
                (3, vec![("2*(N-2)*a0", "U2")]),
                (2, vec![("3", "U3")]),
                (1, vec![("1", "U3'")]),
            ],
        ),
        spec(
            "u.v2.u3'",
            "V2 with U3'",
            "V2",
            "U3'",
            G,
            true,
            vec![
                (6, vec![("5*a0^3*(N+1)*N*(N-1)*(N-2)", "1")]),
                (5, vec![("2*a0^2*(N+3)*(N-1)*(N-2)", "U1")]),
                (4, vec![("6*(N-2)*a0", "U2"), ("a0^2*(N+3)*(N-1)*(N-2)/2", "U1'")]),
                (3, vec![("6", "U3"), ("2*a0*(N-2)", "U2'")]),
                (2, vec![("4", "U3'")]),
                (1, vec![("1", "U3''")]),
            ],
        ),
        spec(
            "u.v2.u1u3",
            "V2 with U1U3",
            "V2",
            "U1U3",
            G,
            true,
            vec![
                (6, vec![("-N*(N-1)*(N-2)*a0^2/(h1*h2)", "1")]),
                (5, vec![("a0^3*(N+1)*N*(N-1)*(N-2)-(N-1)*(N-2)*a0/(h1*h2)", "U1")]),
                (4, vec![("a0^2*(N+3)*(N-1)*(N-2)/2", "U1U1"), ("-(N-2)/(h1*h2)", "U2")]),
                (3, vec![("2*a0*(N-2)", "U1U2")]),
                (2, vec![("4", "U1U3")]),
                (1, vec![("1", "U1U3'"), ("1", "U1'U3")]),
            ],
        ),
        spec(
            "u.v2.u4",
            "V2 with U4",
            "V2",
            "U4",
            G,
            true,
            vec![
                (6, vec![("3*a0^4*(N+1)*N*(N-1)*(N-2)*(N-3)/2", "1")]),
                (5, vec![("a0^3*(N+2)*(N-1)*(N-2)*(N-3)", "U1")]),
                (4, vec![("a0^2*(N+5)*(N-2)*(N-3)/2", "U2")]),
                (3, vec![("3*a0*(N-3)", "U3")]),
                (2, vec![("4", "U4")]),
                (1, vec![("1", "U4'")]),
            ],
        ),
    ]
}

/// Outcome of checking one display.
#[derive(Clone, Debug, Serialize)]
pub struct OpeCheck {
    pub id: String,
    pub anchor: String,
    pub regime: String,
    pub ns: Vec<usize>,
    /// The display holds as printed.
    pub printed_holds: bool,
    /// The display holds as printed or in its corrected reading.
    pub holds: bool,
    pub correction: Option<String>,
    /// Every scalar coefficient recovered by interpolation in N.
    pub certified: Option<bool>,
    pub detail: String,
}

/// Shared per-N field caches.
pub struct Workspace {
    ctx: HashMap<usize, FieldContext>,
}

impl Default for Workspace {
    fn default() -> Self {
        Workspace::new()
    }
}

impl Workspace {
    pub fn new() -> Self {
        Workspace { ctx: HashMap::new() }
    }

    pub fn ctx(&mut self, n: usize) -> Result<&mut FieldContext> {
        if !self.ctx.contains_key(&n) {
            self.ctx.insert(n, FieldContext::new(n)?);
        }
        Ok(self.ctx.get_mut(&n).unwrap())
    }

    pub fn ope(&mut self, lhs: &str, rhs: &str, regime: Regime, n: usize) -> Result<OpeResult> {
        let c = self.ctx(n)?;
        let a = regime.field(&c.field(lhs)?)?;
        let b = regime.field(&c.field(rhs)?)?;
        let mut o = wick_ope(&a, &b);
        if regime.h.is_some() {
            for f in o.poles.values_mut() {
                *f = regime.field(f)?;
            }
            o.poles.retain(|_, f| !f.is_zero());
        }
        Ok(o)
    }

    fn expected(&mut self, terms: &[(&str, &str)], regime: Regime, n: usize) -> Result<CompositeField> {
        let c = self.ctx(n)?;
        regime.field(&c.combination(terms)?)
    }
}

fn mismatch(ws: &mut Workspace, s: &OpeSpec, poles: &[Pole], opes: &[(usize, OpeResult)]) -> Result<Option<String>> {
    for (n, o) in opes {
        let mut orders: Vec<u32> = o.poles.keys().copied().chain(poles.iter().map(|p| p.0)).collect();
        orders.sort_unstable();
        orders.dedup();
        if let Some(only) = &s.orders {
            orders.retain(|r| only.contains(r));
        }
        for r in orders.into_iter().rev() {
            let want = match poles.iter().find(|p| p.0 == r) {
                Some(p) => ws.expected(&p.1, s.regime, *n)?,
                None => CompositeField::zero(*n),
            };
            let got = o.pole(r);
            if got != want {
                return Ok(Some(format!("N={} order {}: computed {} expected {}", n, r, short(&got), short(&want))));
            }
        }
    }
    Ok(None)
}

fn short(f: &CompositeField) -> String {
    let s = f.to_string();
    if s.len() > 400 {
        format!("{}... ({} terms)", &s[..400], f.len())
    } else {
        s
    }
}

/// Coordinates of `f` in `basis`, None when not unique.
pub fn decompose(f: &CompositeField, basis: &[CompositeField], order: usize) -> Result<Option<Vec<ParamRational>>> {
    let mut monos: Vec<_> = f.terms().keys().cloned().collect();
    for b in basis {
        monos.extend(b.terms().keys().cloned());
    }
    monos.sort();
    monos.dedup();
    let sys: Vec<LinearEquation> = monos
        .iter()
        .map(|m| LinearEquation::new(basis.iter().map(|b| b.coeff(m).to_param()).collect(), f.coeff(m).to_param()))
        .collect();
    match solve_linear(&sys, basis.len()) {
        Ok(s) if s.dimension() == 0 => Ok(Some(s.particular)),
        Ok(_) => Ok(None),
        Err(Error::NoSolution { .. }) => Err(Error::BasisMismatch { order, detail: format!("{} outside the span", short(f)) }),
        Err(e) => Err(e),
    }
}

/// Interpolate every scalar coefficient of `poles` over the N where it is
/// determined, and compare with its formula.
fn certify(ws: &mut Workspace, s: &OpeSpec, poles: &[Pole], opes: &[(usize, OpeResult)]) -> Result<(bool, String)> {
    let mut notes = Vec::new();
    let mut ok = true;
    for (r, terms) in poles {
        let mut pts: Vec<Vec<(i64, ParamRational)>> = vec![Vec::new(); terms.len()];
        for (n, o) in opes {
            let c = ws.ctx(*n)?;
            let basis = terms.iter().map(|t| c.field(t.1).and_then(|f| s.regime.field(&f))).collect::<Result<Vec<_>>>()?;
            if basis.iter().any(|b| b.is_zero()) {
                continue;
            }
            if let Some(x) = decompose(&o.pole(*r), &basis, *r as usize)? {
                for (i, v) in x.into_iter().enumerate() {
                    pts[i].push((*n as i64, v));
                }
            }
        }
        for (i, (c, name)) in terms.iter().enumerate() {
            let want = s.regime.param(&formula(c)?)?;
            let (dn, dd) = want.degree_in(Var::N);
            let bound = 4.max(dn as usize);
            if dd > 0 && pts[i].len() < bound + 1 {
                ok = false;
                notes.push(format!("order {} {}: too few samples", r, name));
                continue;
            }
            if pts[i].len() < bound + 1 {
                ok = false;
                notes.push(format!("order {} {}: {} samples for degree {}", r, name, pts[i].len(), bound));
                continue;
            }
            let got = interpolate_in_n(&pts[i]);
            if got != want {
                ok = false;
                notes.push(format!("order {} {}: interpolated {} vs {}", r, name, got, want));
            }
        }
    }
    Ok((ok, notes.join("; ")))
}

pub fn verify_spec(ws: &mut Workspace, s: &OpeSpec) -> Result<OpeCheck> {
    verify_spec_at(ws, s, None)
}

/// As `verify_spec`, with the display compared exactly at the given N
/// (N = 1 only for one-layer displays). Interpolation in N always uses the
/// full default sample.
pub fn verify_spec_at(ws: &mut Workspace, s: &OpeSpec, only: Option<&[usize]>) -> Result<OpeCheck> {
    let ns: Vec<usize> = match only {
        Some(v) if s.general_n => v.to_vec(),
        _ => s.ns(),
    };
    let mut opes = Vec::new();
    for &n in &ns {
        opes.push((n, ws.ope(s.lhs, s.rhs, s.regime, n)?));
    }
    let full: Vec<(usize, OpeResult)> = if ns == s.ns() {
        opes.clone()
    } else {
        s.ns().into_iter().map(|n| Ok((n, ws.ope(s.lhs, s.rhs, s.regime, n)?))).collect::<Result<_>>()?
    };
    let printed = mismatch(ws, s, &s.poles, &opes)?;
    let (holds, used, detail, correction) = match (&printed, &s.correction) {
        (None, _) => (true, &s.poles, "matches as printed".to_string(), None),
        (Some(m), Some((note, poles))) => match mismatch(ws, s, poles, &opes)? {
            None => (true, poles, format!("printed reading fails ({}); corrected reading holds", m), Some(note.to_string())),
            Some(m2) => (false, poles, format!("printed: {}; corrected: {}", m, m2), Some(note.to_string())),
        },
        (Some(m), None) => (false, &s.poles, m.clone(), None),
    };
    let certified = if s.general_n && holds {
        let (ok, notes) = certify(ws, s, used, &full)?;
        Some((ok, notes))
    } else {
        None
    };
    let detail = match &certified {
        Some((true, _)) => format!("{}; coefficients certified in N", detail),
        Some((false, n)) => format!("{}; certification: {}", detail, n),
        None => detail,
    };
    Ok(OpeCheck {
        id: s.id.to_string(),
        anchor: s.anchor.to_string(),
        regime: s.regime.describe(),
        ns,
        printed_holds: printed.is_none(),
        holds,
        correction,
        certified: certified.map(|c| c.0),
        detail,
    })
}

/// Check every catalog entry.
pub fn verify_catalog() -> Result<Vec<OpeCheck>> {
    let mut ws = Workspace::new();
    catalog().iter().map(|s| verify_spec(&mut ws, s)).collect()
}
