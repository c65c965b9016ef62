use num_rational::BigRational;

use super::partition::{partitions_of, Partition};
use super::powersum::PowerSumPolynomial;
use crate::algebra::ParamRational;

/// Complete homogeneous function h_n as a power-sum polynomial: the
/// coefficient of k^n in exp(sum_m p_m k^m / m), computed with the
/// recursion n h_n = sum_{m=1}^n p_m h_{n-m} obtained by differentiating
/// the generating function in k.
pub fn complete_homogeneous(n: i64, degree: u32) -> PowerSumPolynomial {
    if n < 0 {
        return PowerSumPolynomial::zero(degree);
    }
    let n = n as u32;
    let mut h = vec![PowerSumPolynomial::one(degree)];
    for k in 1..=n {
        let mut acc = PowerSumPolynomial::zero(degree);
        for m in 1..=k {
            acc = acc.add(&PowerSumPolynomial::p(m, degree).mul(&h[(k - m) as usize]));
        }
        h.push(acc.scale(&ParamRational::frac(1, k as i64)));
    }
    h.pop().unwrap()
}

/// Schur function by the Jacobi-Trudi determinant det(h_{lambda_i - i + j}).
pub fn schur(lambda: &Partition, degree: u32) -> PowerSumPolynomial {
    let l = lambda.len();
    if l == 0 {
        return PowerSumPolynomial::one(degree);
    }
    let maxh = lambda.part(0) as i64 + l as i64;
    let hs: Vec<PowerSumPolynomial> = (0..=maxh).map(|n| complete_homogeneous(n, degree)).collect();
    let entry = |i: usize, j: usize| -> Option<&PowerSumPolynomial> {
        let idx = lambda.part(i) as i64 - i as i64 + j as i64;
        if idx < 0 {
            None
        } else {
            Some(&hs[idx as usize])
        }
    };
    // cofactor expansion along the first row of the remaining rows
    fn det<'a>(
        row: usize,
        cols: &mut Vec<usize>,
        l: usize,
        entry: &dyn Fn(usize, usize) -> Option<&'a PowerSumPolynomial>,
        degree: u32,
    ) -> PowerSumPolynomial {
        if row == l {
            return PowerSumPolynomial::one(degree);
        }
        let mut acc = PowerSumPolynomial::zero(degree);
        for k in 0..cols.len() {
            let c = cols[k];
            let Some(e) = entry(row, c) else { continue };
            cols.remove(k);
            let minor = det(row + 1, cols, l, entry, degree);
            cols.insert(k, c);
            let t = e.mul(&minor);
            acc = if k % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        acc
    }
    let mut cols: Vec<usize> = (0..l).collect();
    det(0, &mut cols, l, &entry, degree)
}

/// Independent oracle: h_n = sum_{mu |- n} p_mu / z_mu.
pub fn complete_homogeneous_by_z(n: u32, degree: u32) -> PowerSumPolynomial {
    PowerSumPolynomial::from_terms(
        partitions_of(n).into_iter().map(|mu| {
            let z = mu.z();
            (mu, ParamRational::from_rat(BigRational::new(1.into(), z)))
        }),
        degree,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::powersum::q;

    fn pp(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn h_matches_z_formula() {
        for n in 0..7 {
            assert_eq!(complete_homogeneous(n as i64, 12), complete_homogeneous_by_z(n, 12));
        }
        assert!(complete_homogeneous(-1, 12).is_zero());
    }

    #[test]
    fn h3_expansion() {
        let h3 = complete_homogeneous(3, 12);
        assert_eq!(h3.coeff(&pp(&[1, 1, 1])), q(1, 6));
        assert_eq!(h3.coeff(&pp(&[2, 1])), q(1, 2));
        assert_eq!(h3.coeff(&pp(&[3])), q(1, 3));
    }

    #[test]
    fn schur_21_and_22() {
        let s21 = schur(&pp(&[2, 1]), 12);
        assert_eq!(s21.coeff(&pp(&[1, 1, 1])), q(1, 3));
        assert_eq!(s21.coeff(&pp(&[3])), q(-1, 3));
        assert_eq!(s21.len(), 2);
        let s22 = schur(&pp(&[2, 2]), 12);
        assert_eq!(s22.coeff(&pp(&[1, 1, 1, 1])), q(1, 12));
        assert_eq!(s22.coeff(&pp(&[2, 2])), q(1, 4));
        assert_eq!(s22.coeff(&pp(&[3, 1])), q(-1, 3));
        assert_eq!(s22.len(), 3);
        assert_eq!(schur(&Partition::empty(), 12), PowerSumPolynomial::one(12));
    }
}
