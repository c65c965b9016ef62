//! Hamiltonians from the Lax operator, the evolution equations and the
//! elimination of v_1, v_2 that leaves the KP equation for v_0.

use serde::Serialize;

use super::bracket::{BracketTable, Variant};
use super::diffpoly::{DiffPoly, Dir, Jet};
use super::psdo::PseudoDiffOp;
use crate::algebra::ParamRational;
use crate::error::{Error, Result};

/// Integrand of H_n = 1/(n+1) int Res L^{n+1}, in canonical form modulo
/// total x-derivatives.
pub fn hamiltonian(n: u32) -> Result<DiffPoly> {
    let l = PseudoDiffOp::lax(n as u8 + 1);
    let r = l.pow(n + 1)?.residue()?;
    r.scale(&ParamRational::frac(1, n as i64 + 1)).canonical()
}

pub fn printed_hamiltonian(n: u32) -> Result<DiffPoly> {
    let t: &[(&str, &str)] = match n {
        0 => &[("1", "v0")],
        1 => &[("1", "v1")],
        2 => &[("1", "v2"), ("1", "v0 v0")],
        3 => &[("1", "v3"), ("3", "v0 v1")],
        _ => return Err(Error::Unsupported(format!("no printed H_{}", n))),
    };
    DiffPoly::from_terms(t)
}

/// One evolution equation dv_field/dt_time = rhs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Evolution {
    pub field: u8,
    pub time: u32,
    pub rhs: DiffPoly,
}

impl Evolution {
    pub fn label(&self) -> String {
        format!("v{}t{}", self.field, self.time)
    }
}

/// dv_i/dt_n for the three flows used by the KP equation.
pub fn kp_flows(table: &BracketTable) -> Result<Vec<Evolution>> {
    let mut out = Vec::new();
    for (field, time) in [(0u8, 3u32), (1, 2), (0, 2)] {
        let h = hamiltonian(time)?;
        out.push(Evolution { field, time, rhs: table.evolve(field, &h)? });
    }
    Ok(out)
}

fn fill(variant: Variant, terms: &[(String, &str)]) -> Result<DiffPoly> {
    let mut p = DiffPoly::zero();
    for (c, m) in terms {
        let c = variant.specialize(&ParamRational::parse(c)?)?;
        p = p.add(&DiffPoly::from_terms(&[("1", m)])?.scale(&c));
    }
    Ok(p)
}

/// Coefficients (a, b, c, d) of the printed flows
/// v0_t2 = 2 v1_x + a v0_x, v1_t2 = 2 v2_x + b v0_xxx + 2 v0 v0_x,
/// v0_t3 = c v0_xxx + 3 v2_x + 6 v0 v0_x + d v1_x.
fn printed_flow_coeffs(variant: Variant) -> [&'static str; 4] {
    match variant {
        Variant::Schur => ["2", "-1/6", "-1/2", "3"],
        Variant::Jack => ["-2/(h1*h2)", "h1*h2/6", "h1*h2/2-a0^2*h1^2*h2^2", "-3/(h1*h2)"],
        Variant::ThreeD(_) => [
            "-2*N/(h1*h2)",
            "h1*h2*(1+(N+1)*(N-1)*a0^2*h1*h2)/6",
            "h1*h2*(1-a0^2*h1*h2*(N^2+1))/2",
            "-3*N/(h1*h2)",
        ],
    }
}

/// The printed v0t3, v1t2, v0t2 equations of a variant.
pub fn printed_flows(variant: Variant) -> Result<Vec<Evolution>> {
    let [a, b, c, d] = printed_flow_coeffs(variant).map(|s| s.to_string());
    let s = |x: &str| x.to_string();
    Ok(vec![
        Evolution { field: 0, time: 3, rhs: fill(variant, &[(c, "v0_xxx"), (s("3"), "v2_x"), (s("6"), "v0 v0_x"), (d, "v1_x")])? },
        Evolution { field: 1, time: 2, rhs: fill(variant, &[(s("2"), "v2_x"), (b, "v0_xxx"), (s("2"), "v0 v0_x")])? },
        Evolution { field: 0, time: 2, rhs: fill(variant, &[(s("2"), "v1_x"), (a, "v0_x")])? },
    ])
}

/// Diagonal change v0 -> alpha v0, x -> beta x, y -> gamma y, t -> delta t.
/// Only gamma^2 enters, so it is stored; a negative value means y is
/// scaled by an imaginary factor.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Rescaling {
    pub alpha: ParamRational,
    pub beta: ParamRational,
    pub gamma_sq: ParamRational,
    pub delta: ParamRational,
}

impl Rescaling {
    /// The equation in the new variables (before dividing out a common
    /// factor): each jet of v0 gives alpha beta^-kx gamma^-ky delta^-kt.
    pub fn apply(&self, eq: &DiffPoly) -> Result<DiffPoly> {
        let mut out = DiffPoly::zero();
        for (m, c) in eq.terms() {
            let ky: u32 = m.iter().map(|j| j.y).sum();
            if ky % 2 == 1 {
                return Err(Error::Unsupported("odd number of y derivatives under a gamma^2 rescaling".into()));
            }
            let mut f = c.clone();
            for j in m {
                if j.x < 0 {
                    return Err(Error::Unsupported("rescaling through d_x^-1".into()));
                }
                f = &f * &self.alpha;
                f = f.checked_div(&self.beta.pow(j.x))?;
                f = f.checked_div(&self.delta.pow(j.t as i32))?;
            }
            f = f.checked_div(&self.gamma_sq.pow(ky as i32 / 2))?;
            out = out.add(&DiffPoly::monomial(m.clone(), f));
        }
        Ok(out)
    }

    pub fn is_real(&self) -> bool {
        let neg = |x: &ParamRational| x.constant_value().is_some_and(|v| v < num_rational::BigRational::from_integer(0.into()));
        !neg(&self.gamma_sq)
    }
}

/// Everything the elimination produced for one variant.
#[derive(Clone, Debug, Serialize)]
pub struct Elimination {
    pub variant: Variant,
    pub v1: DiffPoly,
    pub v2: DiffPoly,
    /// v0_t3 after substituting v1, v2 (y = t2).
    pub v0t3: DiffPoly,
    /// d/dt = d/dt3 + shift d/dx removes the v0_x term.
    pub shift: ParamRational,
    /// The KP equation written as 3/4 v0_yy - (v0_t - ...)_x, set to zero.
    pub kp: DiffPoly,
    pub rescaling: Rescaling,
    /// The rescaled equation, normalized to the same v0_yy coefficient.
    pub kp_rescaled: DiffPoly,
}

fn jet(s: &str) -> Jet {
    Jet::parse(s).expect("static jet")
}

/// Solve dv_field/dy = rhs for the field whose x-derivative appears
/// linearly with a constant coefficient.
fn solve_for(rhs: &DiffPoly, unknown: u8, lhs: &DiffPoly) -> Result<DiffPoly> {
    let key = Jet::dx(unknown, 1);
    let c = rhs.coeff(&[key]);
    if c.is_zero() {
        return Err(Error::Unsupported(format!("v{}_x does not appear", unknown)));
    }
    let rest = rhs.sub(&DiffPoly::jet(key).scale(&c));
    if rest.jets().iter().any(|j| j.field == unknown) {
        return Err(Error::Unsupported(format!("v{} enters nonlinearly", unknown)));
    }
    lhs.sub(&rest).integrate_x().map(|p| p.scale(&ParamRational::one().checked_div(&c).unwrap()))
}

/// Coefficient a of the source form and t of the target form, read off
/// the monomial `m`.
fn ratio_at(source: &DiffPoly, target: &DiffPoly, m: &[&str]) -> Result<(ParamRational, ParamRational)> {
    let m: Vec<Jet> = m.iter().map(|s| jet(s)).collect();
    let (a, t) = (source.coeff(&m), target.coeff(&m));
    if a.is_zero() || t.is_zero() {
        return Err(Error::Unsupported(format!("rescaling needs a nonzero {:?} term", m)));
    }
    Ok((a, t))
}

/// The diagonal rescaling with beta = 1 taking `source` to a multiple of
/// `target`; both are combinations of v0_yy, v0_xt, v0_xxxx, (v0 v0_x)_x.
pub fn solve_rescaling(source: &DiffPoly, target: &DiffPoly) -> Result<Rescaling> {
    let (ay, ty) = ratio_at(source, target, &["v0_yy"])?;
    let (atx, ttx) = ratio_at(source, target, &["v0_xt"])?;
    let (a4, t4) = ratio_at(source, target, &["v0_xxxx"])?;
    let (an, tn) = ratio_at(source, target, &["v0", "v0_xx"])?;
    // after the map: ay alpha/g, atx alpha/delta, a4 alpha, an alpha^2,
    // all equal to lambda times the target coefficients
    let alpha = (&a4 * &tn).checked_div(&(&t4 * &an))?;
    let gamma_sq = (&ay * &t4).checked_div(&(&a4 * &ty))?;
    let delta = (&atx * &t4).checked_div(&(&a4 * &ttx))?;
    Ok(Rescaling { alpha, beta: ParamRational::one(), gamma_sq, delta })
}

/// The printed KP equation before (`rescaled = false`) and after the
/// rescaling, as 3/4 v0_yy - (v0_t + k v0_xxx + n v0 v0_x)_x.
pub fn printed_kp(variant: Variant, rescaled: bool) -> Result<DiffPoly> {
    let k = match variant {
        Variant::Schur => "-1/4",
        Variant::Jack => "h1*h2/4-a0^2*h1^2*h2^2",
        Variant::ThreeD(_) => "(h1*h2-a0^2*h1^2*h2^2*(3*N^2+1))/4",
    };
    let k = variant.specialize(&ParamRational::parse(k)?)?;
    let (k, n) = if rescaled { (k, ParamRational::frac(-3, 2)) } else { (-k, ParamRational::from_i64(-3)) };
    let inner = DiffPoly::jet(jet("v0_t")).add(&DiffPoly::jet(jet("v0_xxx")).scale(&k)).add(&DiffPoly::from_terms(&[("1", "v0 v0_x")])?.scale(&n));
    Ok(DiffPoly::jet(jet("v0_yy")).scale(&ParamRational::frac(3, 4)).sub(&inner.dx()))
}

/// Printed v1, v2, v0_t3 and the time shift after the elimination.
pub fn printed_elimination(variant: Variant) -> Result<(DiffPoly, DiffPoly, DiffPoly, ParamRational)> {
    let (a1, a2, b2, k, sh) = match variant {
        Variant::Schur => ("-1", "-1/2", "1/12", "-1/4", "3"),
        Variant::Jack => ("1/(h1*h2)", "1/(2*h1*h2)", "-h1*h2/12", "h1*h2/4-a0^2*h1^2*h2^2", "3/(h1^2*h2^2)"),
        Variant::ThreeD(_) => (
            "N/(h1*h2)",
            "N/(2*h1*h2)",
            "-h1*h2*(1+(N+1)*(N-1)*a0^2*h1*h2)/12",
            "(h1*h2-a0^2*h1^2*h2^2*(3*N^2+1))/4",
            "3*N^2/(h1^2*h2^2)",
        ),
    };
    let s = |x: &str| x.to_string();
    let v1 = fill(variant, &[(s("1/2"), "v0_Xy"), (s(a1), "v0")])?;
    let v2 = fill(variant, &[(s("1/4"), "v0_XXyy"), (s(a2), "v0_Xy"), (s(b2), "v0_xx"), (s("-1/2"), "v0 v0")])?;
    let v0t3 = fill(variant, &[(s(k), "v0_xxx"), (s("3/4"), "v0_Xyy"), (s("3"), "v0 v0_x"), (format!("-({})", sh), "v0_x")])?;
    Ok((v1, v2, v0t3, variant.specialize(&ParamRational::parse(sh)?)?))
}

/// Eliminate v1 and v2 from the three flows (v0t3, v1t2, v0t2, as
/// returned by [`kp_flows`]), with y = t2.
pub fn eliminate(variant: Variant, flows: &[Evolution]) -> Result<Elimination> {
    let find = |f: u8, t: u32| {
        flows.iter().find(|e| e.field == f && e.time == t).map(|e| e.rhs.clone()).ok_or_else(|| Error::Unsupported(format!("missing v{}t{}", f, t)))
    };
    let (e03, e12, e02) = (find(0, 3)?, find(1, 2)?, find(0, 2)?);
    let v1 = solve_for(&e02, 1, &DiffPoly::jet(jet("v0_y")))?;
    let v2 = solve_for(&e12, 2, &v1.d(Dir::Y))?;
    let v0t3 = e03.subs(1, &v1)?.subs(2, &v2)?;
    if v0t3.jets().iter().any(|j| j.field != 0) {
        return Err(Error::Unsupported(format!("elimination left other fields: {}", v0t3)));
    }
    let shift = -v0t3.coeff(&[jet("v0_x")]);
    let v0t = v0t3.add(&DiffPoly::jet(jet("v0_x")).scale(&shift));
    // v0_t = rhs  =>  3/4 v0_yy - (v0_t - (rhs - 3/4 d^-1 v0_yy))_x = 0
    let nonlocal = DiffPoly::jet(jet("v0_Xyy")).scale(&v0t.coeff(&[jet("v0_Xyy")]));
    let local = v0t.sub(&nonlocal);
    let kp = nonlocal.dx().sub(&DiffPoly::jet(jet("v0_t")).sub(&local).dx());
    let target = printed_kp(variant, true)?;
    let rescaling = solve_rescaling(&kp, &target)?;
    let mapped = rescaling.apply(&kp)?;
    let y = jet("v0_yy");
    let norm = target.coeff(&[y]).checked_div(&mapped.coeff(&[y]))?;
    let kp_rescaled = mapped.scale(&norm);
    Ok(Elimination { variant, v1, v2, v0t3, shift, kp, rescaling, kp_rescaled })
}
