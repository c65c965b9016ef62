use std::fmt;

use super::inner::{hall_inner, InnerProductSpec};
use super::partition::{partitions_of, Partition};
use super::powersum::{PowerSumPolynomial, DEFAULT_DEGREE};
use crate::algebra::{solve_linear, LinearEquation, ParamRational};
use crate::bosonfermion::{sigma_jack, DiagramFock};
use crate::error::{Error, Result};
use crate::fock::{Box3, PlanePartition};

/// Order in which boxes are added, as the weights h of the added boxes.
/// The origin box (weight 0) may be left out.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthPath {
    pub labels: Vec<ParamRational>,
}

impl GrowthPath {
    pub fn new(labels: Vec<ParamRational>) -> Self {
        GrowthPath { labels }
    }

    /// Comma separated weights, e.g. "h1,2h1,h2" or "h1, h2, h1+h2".
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(GrowthPath::new(Vec::new()));
        }
        let labels = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                // allow juxtaposition like 2h1
                let t = insert_products(t);
                ParamRational::parse(&t).map_err(|e| Error::InvalidGrowthPath(format!("{}: {}", t, e)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GrowthPath::new(labels))
    }

    /// The path of the canonical growth tree, origin excluded.
    pub fn canonical(lambda: &Partition) -> Self {
        let p = PlanePartition::from_partition(lambda);
        GrowthPath::new(p.canonical_path().iter().skip(1).map(|b| b.weight()).collect())
    }

    /// Replay the path, returning the boxes in the order added (origin
    /// first). Errors unless every step adds an addable box and the end
    /// shape is `lambda`.
    pub fn boxes(&self, lambda: &Partition) -> Result<Vec<Box3>> {
        let n = lambda.size() as usize;
        let mut labels = self.labels.clone();
        if labels.len() + 1 == n || (n == 0 && labels.is_empty()) {
            if n > 0 {
                labels.insert(0, ParamRational::zero());
            }
        } else if labels.len() != n {
            return Err(Error::InvalidGrowthPath(format!("{} steps for a diagram with {} boxes", self.labels.len(), n)));
        }
        let mut cur = PlanePartition::empty();
        let mut out = Vec::new();
        for h in &labels {
            let b = cur
                .addable()
                .into_iter()
                .find(|b| b.z == 1 && b.weight() == *h)
                .ok_or_else(|| Error::InvalidGrowthPath(format!("no addable box of weight {} on {}", h, cur)))?;
            cur = cur.add(&b).unwrap();
            out.push(b);
        }
        if cur != PlanePartition::from_partition(lambda) {
            return Err(Error::InvalidGrowthPath(format!("path ends at {}, not {}", cur, lambda)));
        }
        Ok(out)
    }
}

fn insert_products(t: &str) -> String {
    let mut s = String::new();
    let mut prev_digit = false;
    for ch in t.chars() {
        if ch.is_ascii_alphabetic() && prev_digit {
            s.push('*');
        }
        prev_digit = ch.is_ascii_digit();
        s.push(ch);
    }
    s
}

impl fmt::Display for GrowthPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.labels.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", v.join(","))
    }
}

/// The Jack function Y_lambda for the given growth path (canonical when
/// `None`). The canonical one is the sigma image of the diagram state;
/// another path multiplies it by the product of tree-gauge E
/// coefficients along that path.
pub fn jack(lambda: &Partition, path: Option<&GrowthPath>) -> Result<PowerSumPolynomial> {
    let base = sigma_jack(lambda)?;
    let Some(path) = path else { return Ok(base) };
    let boxes = path.boxes(lambda)?;
    let fk = DiagramFock::jack(lambda.size() as usize)?;
    let m = &fk.module;
    let mut cur = PlanePartition::empty();
    let mut factor = ParamRational::one();
    for b in boxes {
        let i = m.index_of(&cur).unwrap();
        let e = m.edge(i, &b).expect("2D edge present");
        factor = factor * &e.e_tree;
        cur = cur.add(&b).unwrap();
    }
    Ok(base.scale(&factor))
}

/// Number of ways to pour the parts of mu into the rows of lambda so that
/// each row is filled exactly. These are the coefficients of p_mu in the
/// monomial basis.
fn pour_count(mu: &[u32], slots: &mut [u32]) -> i64 {
    let Some((&first, rest)) = mu.split_first() else {
        return slots.iter().all(|&s| s == 0) as i64;
    };
    let mut total = 0;
    for i in 0..slots.len() {
        if slots[i] >= first {
            slots[i] -= first;
            total += pour_count(rest, slots);
            slots[i] += first;
        }
    }
    total
}

/// Monomial symmetric functions m_lambda, lambda |- n, in power sums.
pub fn monomials(n: u32) -> Result<Vec<(Partition, PowerSumPolynomial)>> {
    let parts = partitions_of(n);
    let k = parts.len();
    // p_mu = sum_lambda R[mu][lambda] m_lambda
    let r: Vec<Vec<ParamRational>> = parts
        .iter()
        .map(|mu| parts.iter().map(|l| ParamRational::from_i64(pour_count(mu.parts(), &mut l.parts().to_vec()))).collect())
        .collect();
    let mut cols = Vec::new();
    for a in 0..k {
        let sys: Vec<LinearEquation> = (0..k)
            .map(|row| LinearEquation::new(r[row].clone(), ParamRational::from_i64((row == a) as i64)))
            .collect();
        cols.push(solve_linear(&sys, k)?.particular);
    }
    Ok(parts
        .iter()
        .enumerate()
        .map(|(li, l)| {
            let terms = parts.iter().enumerate().map(|(mi, mu)| (mu.clone(), cols[mi][li].clone()));
            (l.clone(), PowerSumPolynomial::from_terms(terms, DEFAULT_DEGREE.max(n)))
        })
        .collect())
}

/// Independent construction: Gram-Schmidt of m_lambda(p_n -> h1 p_n)
/// along increasing dominance, with beta = -1/(h1 h2). Agrees with
/// `jack` up to a scalar per partition.
pub fn jack_gram_schmidt(n: u32) -> Result<Vec<(Partition, PowerSumPolynomial)>> {
    let spec = InnerProductSpec::jack();
    let h1 = ParamRational::h1();
    let mut done: Vec<(Partition, PowerSumPolynomial, ParamRational)> = Vec::new();
    for (l, m) in monomials(n)?.into_iter().rev() {
        let m = m.rescale_length(&h1);
        let mut v = m.clone();
        for (_, p, norm) in &done {
            let c = hall_inner(&m, p, &spec).checked_div(norm)?;
            if !c.is_zero() {
                v = v.sub(&p.scale(&c));
            }
        }
        let norm = hall_inner(&v, &v, &spec);
        done.push((l, v, norm));
    }
    done.reverse();
    Ok(done.into_iter().map(|(l, p, _)| (l, p)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Specialization;
    use crate::symfun::{partitions_up_to, schur};

    fn pr(s: &str) -> ParamRational {
        ParamRational::parse(s).unwrap()
    }

    fn poly(terms: &[(&[u32], &str)]) -> PowerSumPolynomial {
        PowerSumPolynomial::from_terms(terms.iter().map(|(m, c)| (Partition::new(m.to_vec()), pr(c))), DEFAULT_DEGREE)
    }

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec())
    }

    #[test]
    fn table_entries() {
        let d3 = "(2*h1-h2)*(h1-h2)";
        let cases: Vec<(Partition, Option<&str>, PowerSumPolynomial)> = vec![
            (part(&[1]), None, poly(&[(&[1], "1")])),
            (part(&[2]), None, poly(&[(&[2], "1/(h1-h2)"), (&[1, 1], "-h2/(h1-h2)")])),
            (part(&[1, 1]), None, poly(&[(&[2], "1/(h2-h1)"), (&[1, 1], "-h1/(h2-h1)")])),
            (
                part(&[3]),
                None,
                poly(&[(&[3], &format!("2/({})", d3)), (&[2, 1], &format!("-3*h2/({})", d3)), (&[1, 1, 1], &format!("h2^2/({})", d3))]),
            ),
            (
                part(&[2, 1]),
                Some("h1,h2"),
                poly(&[
                    (&[3], "2/((h2-2*h1)*(h1-h2))"),
                    (&[2, 1], "-2*(h1+h2)/((h2-2*h1)*(h1-h2))"),
                    (&[1, 1, 1], "2*h1*h2/((h2-2*h1)*(h1-h2))"),
                ]),
            ),
            (
                part(&[2, 1]),
                Some("h2,h1"),
                poly(&[
                    (&[3], "2/((h1-2*h2)*(h2-h1))"),
                    (&[2, 1], "-2*(h1+h2)/((h1-2*h2)*(h2-h1))"),
                    (&[1, 1, 1], "2*h1*h2/((h1-2*h2)*(h2-h1))"),
                ]),
            ),
        ];
        for (l, p, want) in cases {
            let path = p.map(|s| GrowthPath::parse(s).unwrap());
            assert_eq!(jack(&l, path.as_ref()).unwrap(), want, "{} {:?}", l, p);
        }
    }

    #[test]
    fn canonical_paths() {
        assert_eq!(GrowthPath::canonical(&part(&[2, 1])), GrowthPath::parse("h1,h2").unwrap());
        assert_eq!(GrowthPath::canonical(&part(&[2, 2])), GrowthPath::parse("h1,h2,h1+h2").unwrap());
        assert_eq!(GrowthPath::canonical(&part(&[3, 1])), GrowthPath::parse("h1,2h1,h2").unwrap());
    }

    #[test]
    fn bad_paths() {
        let l = part(&[2, 1]);
        for p in ["h1,h1", "h1", "h2,2h2", "h1,h2,h1+h2"] {
            let g = GrowthPath::parse(p).unwrap();
            assert!(matches!(jack(&l, Some(&g)), Err(Error::InvalidGrowthPath(_))), "{}", p);
        }
    }

    #[test]
    fn monomials_invert_powersums() {
        // m_(2) = p2, m_(1,1) = (p1^2 - p2)/2
        let m = monomials(2).unwrap();
        assert_eq!(m[0].1, poly(&[(&[2], "1")]));
        assert_eq!(m[1].1, poly(&[(&[1, 1], "1/2"), (&[2], "-1/2")]));
    }

    #[test]
    fn gram_schmidt_is_proportional() {
        for n in 1..=4 {
            let gs = jack_gram_schmidt(n).unwrap();
            for (l, g) in gs {
                let y = jack(&l, None).unwrap();
                let (mu, c) = g.terms().iter().next().unwrap();
                let ratio = y.coeff(mu).checked_div(c).unwrap();
                assert_eq!(g.scale(&ratio), y, "{}", l);
            }
        }
    }

    #[test]
    fn schur_limit_and_swap() {
        let swap = |x: &ParamRational| -> Result<ParamRational> {
            x.subs(crate::Var::H1, &ParamRational::var(crate::Var::K))?
                .subs(crate::Var::H2, &ParamRational::h1())?
                .subs(crate::Var::K, &ParamRational::h2())
        };
        for l in partitions_up_to(4) {
            let y = jack(&l, None).unwrap();
            assert_eq!(y.specialize(&Specialization::schur_point()).unwrap(), schur(&l, DEFAULT_DEGREE));
            // swapping h1 and h2 transposes the diagram, along the mirrored path
            let mirrored: Vec<ParamRational> = GrowthPath::canonical(&l).labels.iter().map(|h| swap(h).unwrap()).collect();
            let yt = jack(&l.conjugate(), Some(&GrowthPath::new(mirrored))).unwrap();
            assert_eq!(y.map_coeffs(swap).unwrap(), yt, "{}", l);
        }
    }
}
