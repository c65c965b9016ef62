//! Grassmannian tau functions: Pluecker coordinates of a matrix as Schur
//! coefficients, checked against the Hirota form of the KP equation.

use num_rational::BigRational;
use winfty::kp::{plucker_tau, random_tau_checks, BilinearOp};
use winfty::ParamRational;

fn main() -> winfty::Result<()> {
    let m: Vec<Vec<BigRational>> = [["1", "0", "2", "3"], ["0", "1", "1/2", "-1"]]
        .iter()
        .map(|r| r.iter().map(|x| x.parse().unwrap()).collect())
        .collect();
    let t = plucker_tau(&m)?;
    for (l, c) in &t.coeffs {
        println!("S{}: {}", l, c);
    }
    println!("tau = {}", t.tau);
    let h = BilinearOp::tau_form(&ParamRational::one()).apply(&t.tau);
    println!("Hirota residual is zero: {}", h.is_zero());

    let checks = random_tau_checks(&[(2, 5), (3, 6)], 5, 7)?;
    let ok = checks.iter().filter(|c| c.hirota_zero && c.first_plucker_zero).count();
    println!("{}/{} random tau functions pass", ok, checks.len());
    Ok(())
}
