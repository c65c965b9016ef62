//! Exact Gauss-Jordan elimination over the parameter field.

use serde::Serialize;

use super::param::ParamRational;
use crate::error::{Error, Result};

/// One equation `sum coeffs[i] * x_i = rhs`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinearEquation {
    pub coeffs: Vec<ParamRational>,
    pub rhs: ParamRational,
}

impl LinearEquation {
    pub fn new(coeffs: Vec<ParamRational>, rhs: ParamRational) -> Self {
        LinearEquation { coeffs, rhs }
    }

    /// `lhs - rhs` at the given assignment.
    pub fn residual(&self, x: &[ParamRational]) -> ParamRational {
        let mut s = -&self.rhs;
        for (c, v) in self.coeffs.iter().zip(x) {
            if !c.is_zero() {
                s += &(c * v);
            }
        }
        s
    }
}

/// Solution set `particular + span(basis)`. `free` lists the unknowns left
/// as parameters, in the same order as `basis`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AffineSolution {
    pub particular: Vec<ParamRational>,
    pub free: Vec<usize>,
    pub basis: Vec<Vec<ParamRational>>,
}

impl AffineSolution {
    pub fn dimension(&self) -> usize {
        self.free.len()
    }

    /// Evaluate with explicit values for the free unknowns.
    pub fn at(&self, free_values: &[ParamRational]) -> Vec<ParamRational> {
        let mut x = self.particular.clone();
        for (b, t) in self.basis.iter().zip(free_values) {
            for (xi, bi) in x.iter_mut().zip(b) {
                if !bi.is_zero() {
                    *xi += &(bi * t);
                }
            }
        }
        x
    }
}

/// Solve `system` in `n` unknowns. An inconsistent system yields
/// `Error::NoSolution` naming the original row whose reduction became `0 = c`.
pub fn solve_linear(system: &[LinearEquation], n: usize) -> Result<AffineSolution> {
    let m = system.len();
    // rows: [coeffs | rhs], plus a provenance vector tracking row combinations
    let mut rows: Vec<Vec<ParamRational>> = system
        .iter()
        .map(|e| {
            let mut r = e.coeffs.clone();
            r.resize(n, ParamRational::zero());
            r.push(e.rhs.clone());
            r
        })
        .collect();
    let mut origin: Vec<usize> = (0..m).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..m).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        origin.swap(r, p);
        let inv = rows[r][col].inv()?;
        let pivot_row: Vec<ParamRational> = rows[r].iter().map(|x| x * &inv).collect();
        rows[r] = pivot_row.clone();
        for i in 0..m {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for j in col..=n {
                if !pivot_row[j].is_zero() {
                    let t = &f * &pivot_row[j];
                    rows[i][j] -= &t;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m {
            break;
        }
    }
    for i in r..m {
        if !rows[i][n].is_zero() {
            return Err(Error::NoSolution { row: origin[i], rhs: rows[i][n].to_string() });
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut particular = vec![ParamRational::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = rows[i][n].clone();
    }
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![ParamRational::zero(); n];
        v[f] = ParamRational::one();
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = -&rows[i][f];
        }
        basis.push(v);
    }
    Ok(AffineSolution { particular, free, basis })
}

/// Rank of the coefficient matrix (right-hand sides ignored).
pub fn rank(system: &[LinearEquation], n: usize) -> usize {
    let homog: Vec<LinearEquation> =
        system.iter().map(|e| LinearEquation::new(e.coeffs.clone(), ParamRational::zero())).collect();
    match solve_linear(&homog, n) {
        Ok(s) => n - s.dimension(),
        Err(_) => unreachable!("homogeneous systems are consistent"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> ParamRational {
        ParamRational::parse(s).unwrap()
    }

    #[test]
    fn empty_system_all_free() {
        let s = solve_linear(&[], 3).unwrap();
        assert_eq!(s.free, vec![0, 1, 2]);
    }

    #[test]
    fn symbolic_two_by_two() {
        let sys = vec![
            LinearEquation::new(vec![p("h1"), p("1")], p("h1 + h2")),
            LinearEquation::new(vec![p("1"), p("-1")], p("0")),
        ];
        let s = solve_linear(&sys, 2).unwrap();
        assert_eq!(s.dimension(), 0);
        for e in &sys {
            assert!(e.residual(&s.particular).is_zero());
        }
        assert_eq!(s.particular[0], p("(h1 + h2)/(h1 + 1)"));
    }

    #[test]
    fn inconsistent_reports_row() {
        let sys = vec![
            LinearEquation::new(vec![p("1"), p("h1")], p("1")),
            LinearEquation::new(vec![p("2"), p("2*h1")], p("3")),
        ];
        match solve_linear(&sys, 2) {
            Err(Error::NoSolution { row, .. }) => assert_eq!(row, 1),
            other => panic!("{:?}", other),
        }
    }
}
