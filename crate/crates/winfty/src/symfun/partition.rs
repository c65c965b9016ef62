use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer partition, parts weakly decreasing and positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Accepts only already-valid part lists.
    pub fn try_from_parts(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("not a partition: {:?}", parts)));
        }
        Ok(Partition(parts))
    }

    /// Parse "2,1,1" (empty string or "0" is the empty partition).
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim_start_matches('[').trim_end_matches(']');
        if t.is_empty() || t == "0" {
            return Ok(Partition::empty());
        }
        let parts: std::result::Result<Vec<u32>, _> = t.split(',').map(|x| x.trim().parse::<u32>()).collect();
        let parts = parts.map_err(|e| Error::Parse(format!("bad partition {:?}: {}", s, e)))?;
        Self::try_from_parts(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part i (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let m = self.part(0) as usize;
        let mut c = Vec::with_capacity(m);
        for j in 0..m {
            c.push(self.0.iter().filter(|&&p| p as usize > j).count() as u32);
        }
        Partition(c)
    }

    /// Multiplicity of part value n.
    pub fn multiplicity(&self, n: u32) -> usize {
        self.0.iter().filter(|&&p| p == n).count()
    }

    /// z_lambda = prod_i i^{m_i} m_i!.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::one();
        let mut i = 0;
        while i < self.0.len() {
            let v = self.0[i];
            let mut m = 0u32;
            while i < self.0.len() && self.0[i] == v {
                m += 1;
                i += 1;
                z *= BigInt::from(v) * BigInt::from(m);
            }
        }
        z
    }

    /// Remove one part equal to n.
    pub fn without_part(&self, n: u32) -> Option<Partition> {
        let pos = self.0.iter().position(|&p| p == n)?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some(Partition(v))
    }

    pub fn with_part(&self, n: u32) -> Partition {
        let mut v = self.0.clone();
        v.push(n);
        Partition::new(v)
    }

    /// Union of parts (product of power sums).
    pub fn union(&self, o: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Partition::new(v)
    }

    /// Boxes as (row, column), both 1-based.
    pub fn boxes(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (i, &p) in self.0.iter().enumerate() {
            for j in 1..=p {
                out.push((i as u32 + 1, j));
            }
        }
        out
    }

    /// Rows (0-based) where a box can be added.
    pub fn addable_rows(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for i in 0..=self.0.len() {
            if i == 0 || self.part(i) < self.part(i - 1) {
                out.push(i);
            }
        }
        out
    }

    /// Rows (0-based) whose last box can be removed.
    pub fn removable_rows(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.part(i) > self.part(i + 1)).collect()
    }

    pub fn add_box(&self, row: usize) -> Partition {
        let mut v = self.0.clone();
        if row == v.len() {
            v.push(1);
        } else {
            v[row] += 1;
        }
        Partition(v)
    }

    pub fn remove_box(&self, row: usize) -> Partition {
        let mut v = self.0.clone();
        v[row] -= 1;
        if v[row] == 0 {
            v.pop();
        }
        Partition(v)
    }

    /// Dominance order: self >= o.
    pub fn dominates(&self, o: &Partition) -> bool {
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..self.len().max(o.len()) {
            a += self.part(i);
            b += o.part(i);
            if a < b {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of n in reverse lexicographic order, (n) first.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions with size at most n, by size then reverse lex.
pub fn partitions_up_to(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let c: Vec<usize> = (0..8).map(|n| partitions_of(n).len()).collect();
        assert_eq!(c, vec![1, 1, 2, 3, 5, 7, 11, 15]);
    }

    #[test]
    fn conjugation_involutive() {
        for p in partitions_up_to(8) {
            assert_eq!(p.conjugate().conjugate(), p);
            assert_eq!(p.conjugate().size(), p.size());
        }
    }

    #[test]
    fn z_values() {
        assert_eq!(Partition::new(vec![1, 1]).z(), BigInt::from(2));
        assert_eq!(Partition::new(vec![2, 1, 1]).z(), BigInt::from(4));
        assert_eq!(Partition::new(vec![3]).z(), BigInt::from(3));
        assert_eq!(Partition::empty().z(), BigInt::from(1));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Partition::parse("2,1").unwrap(), Partition::new(vec![2, 1]));
        assert_eq!(Partition::parse("").unwrap(), Partition::empty());
        assert!(Partition::parse("1,2").is_err());
    }
}
