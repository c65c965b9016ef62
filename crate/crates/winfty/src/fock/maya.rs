use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::symfun::Partition;

/// A Maya diagram stored as its finite difference from the vacuum, in
/// doubled coordinates (the half-integer k is stored as the odd integer 2k).
/// `white_pos` holds positive positions that are white, `black_neg` the
/// negative positions that are black.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MayaDiagram {
    white_pos: BTreeSet<i64>,
    black_neg: BTreeSet<i64>,
}

fn check_odd(p: i64) {
    assert!(p % 2 != 0, "doubled Maya position must be odd, got {}", p);
}

impl MayaDiagram {
    pub fn vacuum() -> Self {
        MayaDiagram::default()
    }

    /// Build from black positions given in doubled units; every position
    /// above the largest listed one is black.
    pub fn from_blacks(blacks2: &[i64]) -> Self {
        let mut m = MayaDiagram::vacuum();
        let top = blacks2.iter().copied().max().unwrap_or(-1);
        for &b in blacks2 {
            check_odd(b);
            if b < 0 {
                m.black_neg.insert(b);
            }
        }
        let mut p = 1;
        while p < top {
            if !blacks2.contains(&p) {
                m.white_pos.insert(p);
            }
            p += 2;
        }
        m
    }

    pub fn is_black(&self, p2: i64) -> bool {
        check_odd(p2);
        if p2 > 0 {
            !self.white_pos.contains(&p2)
        } else {
            self.black_neg.contains(&p2)
        }
    }

    /// White stones on the right minus black stones on the left.
    pub fn charge(&self) -> i64 {
        self.white_pos.len() as i64 - self.black_neg.len() as i64
    }

    /// Number of black stones strictly left of `p2`.
    pub fn blacks_below(&self, p2: i64) -> usize {
        if p2 <= 0 {
            self.black_neg.range(..p2).count()
        } else {
            let positives = ((p2 - 1) / 2) as usize;
            let whites = self.white_pos.range(..p2).count();
            self.black_neg.len() + positives - whites
        }
    }

    pub(crate) fn set(&mut self, p2: i64, black: bool) {
        check_odd(p2);
        if p2 > 0 {
            if black {
                self.white_pos.remove(&p2);
            } else {
                self.white_pos.insert(p2);
            }
        } else if black {
            self.black_neg.insert(p2);
        } else {
            self.black_neg.remove(&p2);
        }
    }

    /// The first `count` black positions k_1 < k_2 < ..., doubled.
    pub fn blacks(&self, count: usize) -> Vec<i64> {
        let mut out: Vec<i64> = self.black_neg.iter().copied().collect();
        let mut p = 1;
        while out.len() < count {
            if !self.white_pos.contains(&p) {
                out.push(p);
            }
            p += 2;
        }
        out.truncate(count);
        out
    }

    /// Number of leading blacks that differ from the far-right pattern;
    /// beyond it every black k_n sits at n - 1/2 - charge.
    fn significant(&self) -> usize {
        let top = self.white_pos.iter().next_back().copied().unwrap_or(-1);
        self.blacks_below(top.max(1))
    }

    /// The charge-zero diagram of a partition. The n-th black stone sits
    /// at k_n = n - 1/2 - lambda'_n, with lambda' the conjugate; with this
    /// reading gamma_m adds a box on the diagonal y - x = m.
    pub fn from_partition(lambda: &Partition) -> Self {
        let c = lambda.conjugate();
        let n = c.len();
        let blacks: Vec<i64> = (1..=n as i64 + 1).map(|k| 2 * k - 1 - 2 * c.part(k as usize - 1) as i64).collect();
        MayaDiagram::from_blacks(&blacks)
    }

    pub fn to_partition(&self) -> Result<Partition> {
        let q = self.charge();
        if q != 0 {
            return Err(Error::ChargeMismatch(q));
        }
        let n = self.significant();
        let ks = self.blacks(n + 1);
        let cols: Vec<u32> = ks.iter().enumerate().map(|(i, &k2)| ((2 * (i as i64 + 1) - 1 - k2) / 2) as u32).collect();
        Ok(Partition::new(cols).conjugate())
    }

    /// Stones from `lo` to `hi` (doubled, inclusive) as a string of
    /// filled and open circles.
    pub fn render(&self, lo: i64, hi: i64) -> String {
        let mut s = String::new();
        let mut p = if lo % 2 == 0 { lo + 1 } else { lo };
        while p <= hi {
            s.push(if self.is_black(p) { '\u{25cf}' } else { '\u{25cb}' });
            p += 2;
        }
        s
    }
}

impl fmt::Display for MayaDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.significant() + 2;
        let ks: Vec<String> = self.blacks(n).iter().map(|k| format!("{}/2", k)).collect();
        write!(f, "|{},...>", ks.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::partitions_up_to;

    #[test]
    fn charges() {
        assert_eq!(MayaDiagram::vacuum().charge(), 0);
        let ex = MayaDiagram::from_blacks(&[-3, -1, 3, 7, 9]);
        assert_eq!(ex.charge(), 0);
        let mut shifted = MayaDiagram::vacuum();
        shifted.set(-1, true);
        assert_eq!(shifted.charge(), -1);
        assert!(shifted.to_partition().is_err());
    }

    #[test]
    fn bijection_round_trip() {
        for lam in partitions_up_to(8) {
            let m = MayaDiagram::from_partition(&lam);
            assert_eq!(m.charge(), 0);
            assert_eq!(m.to_partition().unwrap(), lam);
        }
        assert_eq!(MayaDiagram::from_partition(&Partition::empty()), MayaDiagram::vacuum());
        assert_eq!(MayaDiagram::from_partition(&Partition::new(vec![1])), MayaDiagram::from_blacks(&[-1, 3]));
    }

    #[test]
    fn example_diagram() {
        let ex = MayaDiagram::from_blacks(&[-3, -1, 3, 7, 9]);
        let lam = ex.to_partition().unwrap();
        assert_eq!(lam, Partition::new(vec![3, 2]));
        assert_eq!(MayaDiagram::from_partition(&lam), ex);
        // brute force: the only partition of 5 mapping to it
        let hits: Vec<_> =
            crate::symfun::partitions_of(5).into_iter().filter(|l| MayaDiagram::from_partition(l) == ex).collect();
        assert_eq!(hits, vec![lam]);
        assert_eq!(ex.render(-7, 9), "\u{25cb}\u{25cb}\u{25cf}\u{25cf}\u{25cb}\u{25cf}\u{25cb}\u{25cf}\u{25cf}");
    }
}
