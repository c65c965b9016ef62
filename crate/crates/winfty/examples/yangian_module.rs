//! The affine Yangian of gl(1) on plane partitions: the module at low
//! level, its psi eigenvalues, and exact checks of the defining relations.

use winfty::fock::plane_partitions_up_to;
use winfty::yangian::{check_relation_exact, Gauge, Relation, YangianModule, YangianParams};

fn main() -> winfty::Result<()> {
    let params = YangianParams::generic();
    let m = YangianModule::new(params.clone(), 3)?;
    println!("states up to level 3: {}", m.dim());

    let psi1 = m.psi_eigen(1)?;
    let psi2 = m.psi_eigen(2)?;
    for p in plane_partitions_up_to(2) {
        let i = m.index_of(&p).expect("state in module");
        println!("{}: psi1 = {}, psi2 = {}", p, psi1[i], psi2[i]);
    }

    for rel in [Relation::Y3, Relation::Y4, Relation::Y5, Relation::Y6, Relation::Y7] {
        let r = check_relation_exact(rel, 3, Gauge::Tree, &params)?;
        println!("{}: {} ({} index tuples)", rel.anchor(), r.status, r.checked);
    }
    Ok(())
}
