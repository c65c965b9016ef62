use serde_json::{json, Value};

use crate::algebra::{ParamRational, SparseOp};
use crate::error::{Error, Result};

/// A linear operator on diagram states that shifts the box count by a
/// fixed `degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagramOperator {
    pub labels: Vec<String>,
    pub levels: Vec<usize>,
    pub op: SparseOp<ParamRational>,
    pub degree: i64,
}

impl DiagramOperator {
    /// Checks that every nonzero entry moves level by exactly `degree`.
    pub fn new(labels: Vec<String>, levels: Vec<usize>, op: SparseOp<ParamRational>, degree: i64) -> Result<Self> {
        for (r, c, _) in op.entries() {
            if levels[r] as i64 - levels[c] as i64 != degree {
                return Err(Error::Unsupported(format!(
                    "entry {} <- {} breaks declared degree {}",
                    labels[r], labels[c], degree
                )));
            }
        }
        Ok(DiagramOperator { labels, levels, op, degree })
    }

    pub fn dim(&self) -> usize {
        self.op.dim
    }

    /// <row| O |col>.
    pub fn element(&self, row: usize, col: usize) -> ParamRational {
        self.op.get(row, col)
    }

    pub fn compose(&self, o: &DiagramOperator) -> Result<DiagramOperator> {
        DiagramOperator::new(self.labels.clone(), self.levels.clone(), self.op.mul(&o.op), self.degree + o.degree)
    }

    pub fn commutator(&self, o: &DiagramOperator) -> Result<DiagramOperator> {
        DiagramOperator::new(self.labels.clone(), self.levels.clone(), self.op.commutator(&o.op), self.degree + o.degree)
    }

    /// Drop entries whose source lies above `level`, where truncation
    /// effects could enter.
    pub fn truncate_sources(&self, level: usize) -> DiagramOperator {
        let op = self.op.restrict_sources(|j| self.levels[j] <= level);
        DiagramOperator { labels: self.labels.clone(), levels: self.levels.clone(), op, degree: self.degree }
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .op
            .entries()
            .map(|(r, c, x)| json!({"row": self.labels[r], "col": self.labels[c], "coeff": x.to_text()}))
            .collect();
        json!({"degree": self.degree, "dim": self.dim(), "entries": entries})
    }
}
