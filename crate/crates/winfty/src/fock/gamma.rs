use super::fermion::{normal_bilinear, FermionState};
use super::maya::MayaDiagram;
use crate::algebra::ParamRational;
use crate::symfun::Partition;

/// Sign carried by every gamma and gamma* on basis diagrams. Both are
/// adjacent moves of one black stone; the psi* insertion and the psi
/// deletion then sit at neighbouring indices, so their signs always
/// multiply to -1.
pub const GAMMA_SIGN: i64 = -1;

/// gamma_m = :psi_{-(m+1/2)} psi*_{m-1/2}: and
/// gamma*_m = :psi_{-m+1/2} psi*_{m+1/2}: acting on a fermionic state.
pub fn gamma_fermionic(m: i64, create: bool, s: &FermionState) -> FermionState {
    if create {
        normal_bilinear(-(2 * m + 1), 2 * m - 1, s)
    } else {
        normal_bilinear(-2 * m + 1, 2 * m + 1, s)
    }
}

/// Add (or remove) the box on the diagonal y - x = m. Returns the
/// coefficient (GAMMA_SIGN, or 0 when no such box) and the new shape.
pub fn gamma_action(m: i64, create: bool, lambda: &Partition) -> (i64, Partition) {
    if create {
        for row in lambda.addable_rows() {
            if lambda.part(row) as i64 - row as i64 == m {
                return (GAMMA_SIGN, lambda.add_box(row));
            }
        }
    } else {
        for row in lambda.removable_rows() {
            if lambda.part(row) as i64 - 1 - row as i64 == m {
                return (GAMMA_SIGN, lambda.remove_box(row));
            }
        }
    }
    (0, lambda.clone())
}

/// Combinatorial gamma lifted to fermionic states through the bijection.
pub fn gamma_combinatorial_state(m: i64, create: bool, s: &FermionState) -> FermionState {
    let mut out = FermionState::zero();
    for (d, c) in s.terms() {
        let lam = d.to_partition().expect("charge zero state");
        let (k, mu) = gamma_action(m, create, &lam);
        if k != 0 {
            out.add_term(MayaDiagram::from_partition(&mu), &(c * &ParamRational::from_i64(k)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::partitions_up_to;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fermionic_matches_combinatorial() {
        for lam in partitions_up_to(6) {
            let s = FermionState::basis(MayaDiagram::from_partition(&lam));
            for m in -6..=6 {
                for create in [true, false] {
                    assert_eq!(gamma_fermionic(m, create, &s), gamma_combinatorial_state(m, create, &s), "{} {} {}", lam, m, create);
                }
            }
        }
    }

    #[test]
    fn gamma0_on_vacuum() {
        assert_eq!(gamma_action(0, true, &Partition::empty()), (GAMMA_SIGN, Partition::new(vec![1])));
        assert_eq!(gamma_action(1, true, &Partition::empty()).0, 0);
    }

    #[test]
    fn nilpotent_and_commuting() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let all = partitions_up_to(6);
        for _ in 0..40 {
            let lam = all[rng.gen_range(0..all.len())].clone();
            let s = FermionState::basis(MayaDiagram::from_partition(&lam));
            let i = rng.gen_range(-4i64..=4);
            let j = rng.gen_range(-4i64..=4);
            for create in [true, false] {
                assert!(gamma_fermionic(i, create, &gamma_fermionic(i, create, &s)).is_zero());
                if (i - j).abs() > 1 {
                    let a = gamma_fermionic(i, create, &gamma_fermionic(j, create, &s));
                    let b = gamma_fermionic(j, create, &gamma_fermionic(i, create, &s));
                    assert_eq!(a, b);
                }
            }
        }
    }
}
