//! The boson-fermion maps: fermionic states sent to symmetric functions
//! by the Hamiltonians, reproducing Schur and Jack polynomials.

use winfty::bosonfermion::{sigma_jack, sigma_schur, DiagramFock};
use winfty::symfun::{jack, schur, Partition};

fn main() -> winfty::Result<()> {
    for s in ["1", "2", "1,1", "3", "2,1"] {
        let l = Partition::parse(s)?;
        let ss = sigma_schur(&l)?;
        let sj = sigma_jack(&l)?;
        println!("sigma_S{} = {}  (equals S: {})", l, ss, ss.with_degree(l.size()) == schur(&l, l.size()));
        println!("sigma_Y{} = {}  (equals Y: {})", l, sj, sj.with_degree(l.size()) == jack(&l, None)?.with_degree(l.size()));
    }

    let fock = DiagramFock::jack(3)?;
    println!("Young diagrams up to level 3: {}", fock.dim());
    for (n, h) in fock.hamiltonians(2)?.iter().enumerate() {
        println!("H{} has {} rows", n + 1, h.dim());
    }
    Ok(())
}
