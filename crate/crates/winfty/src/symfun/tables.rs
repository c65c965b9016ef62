//! Reference expansions of the Schur functions and the Jack polynomials
//! Y_lambda up to four boxes, as closed forms in the power sums. Jack
//! entries whose normalization depends on the growth path carry it.

use super::partition::Partition;
use super::powersum::{PowerSumPolynomial, DEFAULT_DEGREE};
use crate::algebra::ParamRational;
use crate::error::Result;

pub struct TableEntry {
    pub shape: Partition,
    pub path: Option<&'static str>,
    pub value: PowerSumPolynomial,
}

fn entry(shape: &[u32], path: Option<&'static str>, scale: &str, terms: &[(&[u32], &str)]) -> Result<TableEntry> {
    let s = ParamRational::parse(scale)?;
    let mut value = PowerSumPolynomial::zero(DEFAULT_DEGREE);
    for (mu, c) in terms {
        value.add_term(Partition::new(mu.to_vec()), &(&s * &ParamRational::parse(c)?));
    }
    Ok(TableEntry { shape: Partition::new(shape.to_vec()), path, value })
}

/// The eleven Schur functions with 1 to 4 boxes.
pub fn schur_table() -> Result<Vec<TableEntry>> {
    vec![
        entry(&[1], None, "1", &[(&[1], "1")]),
        entry(&[2], None, "1/2", &[(&[1, 1], "1"), (&[2], "1")]),
        entry(&[1, 1], None, "1/2", &[(&[1, 1], "1"), (&[2], "-1")]),
        entry(&[3], None, "1/12", &[(&[1, 1, 1], "2"), (&[2, 1], "6"), (&[3], "4")]),
        entry(&[2, 1], None, "1/6", &[(&[1, 1, 1], "2"), (&[3], "-2")]),
        entry(&[1, 1, 1], None, "1/12", &[(&[1, 1, 1], "2"), (&[2, 1], "-6"), (&[3], "4")]),
        entry(&[4], None, "1/24", &[(&[1, 1, 1, 1], "1"), (&[2, 1, 1], "6"), (&[2, 2], "3"), (&[3, 1], "8"), (&[4], "6")]),
        entry(&[3, 1], None, "1/8", &[(&[1, 1, 1, 1], "1"), (&[2, 1, 1], "2"), (&[2, 2], "-1"), (&[4], "-2")]),
        entry(&[2, 2], None, "1/12", &[(&[1, 1, 1, 1], "1"), (&[2, 2], "3"), (&[3, 1], "-4")]),
        entry(&[2, 1, 1], None, "1/8", &[(&[1, 1, 1, 1], "1"), (&[2, 1, 1], "-2"), (&[2, 2], "-1"), (&[4], "2")]),
        entry(&[1, 1, 1, 1], None, "1/24", &[(&[1, 1, 1, 1], "1"), (&[2, 1, 1], "-6"), (&[2, 2], "3"), (&[3, 1], "8"), (&[4], "-6")]),
    ]
    .into_iter()
    .collect()
}

/// The twelve Jack polynomials Y_lambda with 1 to 4 boxes.
pub fn jack_table() -> Result<Vec<TableEntry>> {
    vec![
        entry(&[1], None, "1", &[(&[1], "1")]),
        entry(&[2], None, "1/(h1-h2)", &[(&[2], "1"), (&[1, 1], "-h2")]),
        entry(&[1, 1], None, "1/(h2-h1)", &[(&[2], "1"), (&[1, 1], "-h1")]),
        entry(&[3], None, "1/((2*h1-h2)*(h1-h2))", &[(&[3], "2"), (&[2, 1], "-3*h2"), (&[1, 1, 1], "h2^2")]),
        entry(&[2, 1], Some("h1,h2"), "1/((h2-2*h1)*(h1-h2))", &[(&[3], "2"), (&[2, 1], "-2*(h1+h2)"), (&[1, 1, 1], "2*h1*h2")]),
        entry(&[2, 1], Some("h2,h1"), "1/((h1-2*h2)*(h2-h1))", &[(&[3], "2"), (&[2, 1], "-2*(h1+h2)"), (&[1, 1, 1], "2*h1*h2")]),
        entry(&[1, 1, 1], None, "1/((2*h2-h1)*(h2-h1))", &[(&[3], "2"), (&[2, 1], "-3*h1"), (&[1, 1, 1], "h1^2")]),
        entry(
            &[4],
            None,
            "1/((3*h1-h2)*(2*h1-h2)*(h1-h2))",
            &[(&[4], "6"), (&[2, 2], "-3*h2"), (&[3, 1], "-8*h2"), (&[2, 1, 1], "6*h2^2"), (&[1, 1, 1, 1], "-h2^3")],
        ),
        entry(
            &[3, 1],
            Some("h1,2h1,h2"),
            "1/((3*h1-h2)*(2*h1-h2)*(h1-h2))",
            &[(&[4], "-6"), (&[2, 2], "3*h2"), (&[3, 1], "6*(h1+h2)"), (&[2, 1, 1], "-(9*h1*h2+3*h2^2)"), (&[1, 1, 1, 1], "3*h1*h2^2")],
        ),
        entry(
            &[2, 1, 1],
            Some("h2,2h2,h1"),
            "1/((3*h2-h1)*(2*h2-h1)*(h2-h1))",
            &[(&[4], "-6"), (&[2, 2], "3*h1"), (&[3, 1], "6*(h1+h2)"), (&[2, 1, 1], "-(9*h1*h2+3*h1^2)"), (&[1, 1, 1, 1], "3*h2*h1^2")],
        ),
        entry(
            &[2, 2],
            Some("h1,h2,h1+h2"),
            "1/((h2-2*h1)*(h2-h1)^3)",
            &[
                (&[4], "-2*(h1+h2)"),
                (&[2, 2], "2*(h1^2-h1*h2+h2^2)"),
                (&[3, 1], "8*h1*h2"),
                (&[2, 1, 1], "-4*h1*h2*(h1+h2)"),
                (&[1, 1, 1, 1], "2*h1^2*h2^2"),
            ],
        ),
        entry(
            &[1, 1, 1, 1],
            None,
            "1/((3*h2-h1)*(2*h2-h1)*(h2-h1))",
            &[(&[4], "6"), (&[2, 2], "-3*h1"), (&[3, 1], "-8*h1"), (&[2, 1, 1], "6*h1^2"), (&[1, 1, 1, 1], "-h1^3")],
        ),
    ]
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::{jack, schur, GrowthPath};

    #[test]
    fn tables_match() {
        for e in schur_table().unwrap() {
            assert_eq!(schur(&e.shape, DEFAULT_DEGREE), e.value, "{}", e.shape);
        }
        for e in jack_table().unwrap() {
            let path = e.path.map(|p| GrowthPath::parse(p).unwrap());
            assert_eq!(jack(&e.shape, path.as_ref()).unwrap(), e.value, "{} {:?}", e.shape, e.path);
        }
    }
}
