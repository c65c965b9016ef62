use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use winfty::kp::{plucker_tau, BilinearOp};
use winfty::symfun::{hall_inner, partitions_of, schur, InnerProductSpec};
use winfty::ParamRational;

fn small() -> impl Strategy<Value = ParamRational> {
    (-4i64..=4, -4i64..=4, -3i64..=3, 1i64..=5).prop_map(|(a, b, c, d)| {
        let h = ParamRational::h1().scale(&BigRational::from_integer(a.into()));
        let k = ParamRational::h2().scale(&BigRational::from_integer(b.into()));
        &(&(&h + &k) + &ParamRational::from_i64(c)) / &ParamRational::from_i64(d)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(a in small(), b in small(), c in small()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
    }

    #[test]
    fn schur_orthonormal(n in 1u32..=5, i in 0usize..7, j in 0usize..7) {
        let ps = partitions_of(n);
        let (l, m) = (&ps[i % ps.len()], &ps[j % ps.len()]);
        let g = hall_inner(&schur(l, n), &schur(m, n), &InnerProductSpec::schur());
        let want = if l == m { ParamRational::one() } else { ParamRational::zero() };
        prop_assert_eq!(g, want);
    }

    #[test]
    fn grassmannian_taus_solve_kp(entries in proptest::collection::vec((-6i64..=6, 1i64..=3), 8)) {
        let m: Vec<Vec<BigRational>> = entries.chunks(4).map(|r| r.iter().map(|&(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b))).collect()).collect();
        // Rank-deficient draws are rejected by construction.
        if let Ok(t) = plucker_tau(&m) {
            let h = BilinearOp::tau_form(&ParamRational::one()).apply(&t.tau);
            prop_assert!(h.is_zero());
        }
    }
}
