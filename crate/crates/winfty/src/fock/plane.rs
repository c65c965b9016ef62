use std::fmt;

use serde_json::{json, Value};

use crate::algebra::ParamRational;
use crate::error::{Error, Result};
use crate::symfun::Partition;

/// A unit cube at 1-based coordinates. `y` runs along rows of a 2D
/// diagram, `x` indexes the rows and `z` the layers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Box3 {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl Box3 {
    pub fn new(x: u32, y: u32, z: u32) -> Self {
        Box3 { x, y, z }
    }

    pub fn origin() -> Self {
        Box3::new(1, 1, 1)
    }

    /// The weight as integer coordinates (i, j) with h = i*h1 + j*h2,
    /// after eliminating h3 = -h1 - h2.
    pub fn weight_ij(&self) -> (i64, i64) {
        let (a, b, c) = (self.y as i64 - 1, self.x as i64 - 1, self.z as i64 - 1);
        (a - c, b - c)
    }

    /// h = h1 (y-1) + h2 (x-1) + h3 (z-1).
    pub fn weight(&self) -> ParamRational {
        let (i, j) = self.weight_ij();
        weight_from_ij(i, j)
    }

    /// Key for the canonical growth order: lexicographic in (z, x, y).
    pub fn growth_key(&self) -> (u32, u32, u32) {
        (self.z, self.x, self.y)
    }
}

pub fn weight_from_ij(i: i64, j: i64) -> ParamRational {
    ParamRational::h1() * ParamRational::from_i64(i) + ParamRational::h2() * ParamRational::from_i64(j)
}

impl fmt::Display for Box3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

/// A 3D Young diagram stored as its height matrix: `heights[x-1][y-1]` is
/// the number of boxes stacked over (x, y). Rows are trimmed of trailing
/// zeros and empty rows are dropped, so equal diagrams compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PlanePartition {
    heights: Vec<Vec<u32>>,
}

impl PlanePartition {
    pub fn empty() -> Self {
        PlanePartition::default()
    }

    pub fn from_heights(rows: Vec<Vec<u32>>) -> Result<Self> {
        let mut h = rows;
        for r in h.iter_mut() {
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        while h.last().map_or(false, |r| r.is_empty()) {
            h.pop();
        }
        for (x, r) in h.iter().enumerate() {
            for (y, &v) in r.iter().enumerate() {
                let up = if x > 0 { h[x - 1].get(y).copied().unwrap_or(0) } else { u32::MAX };
                let left = if y > 0 { r[y - 1] } else { u32::MAX };
                if v > up || v > left {
                    return Err(Error::Parse(format!("heights not weakly decreasing at ({},{})", x + 1, y + 1)));
                }
            }
        }
        Ok(PlanePartition { heights: h })
    }

    /// Height-one diagram whose rows are the parts of `lambda`.
    pub fn from_partition(lambda: &Partition) -> Self {
        PlanePartition { heights: lambda.parts().iter().map(|&p| vec![1; p as usize]).collect() }
    }

    /// The 2D shape if every height is at most one.
    pub fn to_partition(&self) -> Option<Partition> {
        if self.max_height() > 1 {
            return None;
        }
        Some(Partition::new(self.heights.iter().map(|r| r.len() as u32).collect()))
    }

    pub fn heights(&self) -> &[Vec<u32>] {
        &self.heights
    }

    pub fn height(&self, x: u32, y: u32) -> u32 {
        if x == 0 || y == 0 {
            return u32::MAX;
        }
        self.heights.get(x as usize - 1).and_then(|r| r.get(y as usize - 1)).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.heights.iter().flatten().map(|&v| v as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.heights.is_empty()
    }

    pub fn max_height(&self) -> u32 {
        self.heights.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn contains(&self, b: &Box3) -> bool {
        b.x >= 1 && b.y >= 1 && b.z >= 1 && self.height(b.x, b.y) >= b.z
    }

    pub fn boxes(&self) -> Vec<Box3> {
        let mut out = Vec::with_capacity(self.size());
        for (x, r) in self.heights.iter().enumerate() {
            for (y, &v) in r.iter().enumerate() {
                for z in 1..=v {
                    out.push(Box3::new(x as u32 + 1, y as u32 + 1, z));
                }
            }
        }
        out
    }

    /// Boxes that can be added keeping a plane partition (the set pi^+).
    pub fn addable(&self) -> Vec<Box3> {
        let mut out = Vec::new();
        let nx = self.heights.len() as u32 + 1;
        for x in 1..=nx {
            let ny = self.heights.get(x as usize - 1).map_or(0, |r| r.len()) as u32 + 1;
            for y in 1..=ny {
                let z = self.height(x, y) + 1;
                if self.height(x - 1, y) >= z && self.height(x, y - 1) >= z {
                    out.push(Box3::new(x, y, z));
                }
            }
        }
        out
    }

    /// Boxes that can be removed (the set pi^-).
    pub fn removable(&self) -> Vec<Box3> {
        let mut out = Vec::new();
        for (x, r) in self.heights.iter().enumerate() {
            for (y, &v) in r.iter().enumerate() {
                let (x1, y1) = (x as u32 + 1, y as u32 + 1);
                if v > 0 && self.height(x1 + 1, y1) < v && self.height(x1, y1 + 1) < v {
                    out.push(Box3::new(x1, y1, v));
                }
            }
        }
        out
    }

    pub fn is_addable(&self, b: &Box3) -> bool {
        b.x >= 1
            && b.y >= 1
            && b.z >= 1
            && self.height(b.x, b.y) + 1 == b.z
            && self.height(b.x - 1, b.y) >= b.z
            && self.height(b.x, b.y - 1) >= b.z
    }

    pub fn is_removable(&self, b: &Box3) -> bool {
        self.contains(b)
            && self.height(b.x, b.y) == b.z
            && self.height(b.x + 1, b.y) < b.z
            && self.height(b.x, b.y + 1) < b.z
    }

    pub fn add(&self, b: &Box3) -> Option<PlanePartition> {
        if !self.is_addable(b) {
            return None;
        }
        let mut h = self.heights.clone();
        let (x, y) = (b.x as usize - 1, b.y as usize - 1);
        if x == h.len() {
            h.push(Vec::new());
        }
        if y == h[x].len() {
            h[x].push(0);
        }
        h[x][y] += 1;
        Some(PlanePartition { heights: h })
    }

    pub fn remove(&self, b: &Box3) -> Option<PlanePartition> {
        if !self.is_removable(b) {
            return None;
        }
        let mut h = self.heights.clone();
        let (x, y) = (b.x as usize - 1, b.y as usize - 1);
        h[x][y] -= 1;
        while h[x].last() == Some(&0) {
            h[x].pop();
        }
        while h.last().map_or(false, |r| r.is_empty()) {
            h.pop();
        }
        Some(PlanePartition { heights: h })
    }

    /// The removable box that is largest in (z, x, y) order. Removing it
    /// defines the parent of the diagram in the canonical growth tree.
    pub fn canonical_box(&self) -> Option<Box3> {
        // the lex-max box overall is always removable
        self.boxes().into_iter().max_by_key(|b| b.growth_key())
    }

    pub fn parent(&self) -> Option<(PlanePartition, Box3)> {
        let c = self.canonical_box()?;
        Some((self.remove(&c).expect("canonical box is removable"), c))
    }

    /// Boxes in canonical growth order, starting from the origin.
    pub fn canonical_path(&self) -> Vec<Box3> {
        let mut path = Vec::new();
        let mut cur = self.clone();
        while let Some((p, c)) = cur.parent() {
            path.push(c);
            cur = p;
        }
        path.reverse();
        path
    }

    pub fn to_json(&self) -> Value {
        json!({ "heights": self.heights })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let rows = v
            .get("heights")
            .and_then(|h| h.as_array())
            .ok_or_else(|| Error::Parse("expected {\"heights\": [[...]]}".into()))?;
        let mut out = Vec::new();
        for r in rows {
            let r = r.as_array().ok_or_else(|| Error::Parse("row is not an array".into()))?;
            let mut row = Vec::new();
            for e in r {
                row.push(e.as_u64().ok_or_else(|| Error::Parse("height is not a non-negative integer".into()))? as u32);
            }
            out.push(row);
        }
        Self::from_heights(out)
    }

    /// Height matrix, one row per line.
    pub fn render(&self) -> String {
        if self.heights.is_empty() {
            return "(empty)".into();
        }
        self.heights
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for PlanePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .heights
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "[{}]", rows.join(";"))
    }
}

/// All plane partitions with exactly `n` boxes, grown level by level.
pub fn plane_partitions_of(n: usize) -> Vec<PlanePartition> {
    let mut level = vec![PlanePartition::empty()];
    for _ in 0..n {
        let mut next = std::collections::BTreeSet::new();
        for p in &level {
            for b in p.addable() {
                next.insert(p.add(&b).unwrap());
            }
        }
        level = next.into_iter().collect();
    }
    level
}

/// Plane partitions with at most `n` boxes, ordered by size.
pub fn plane_partitions_up_to(n: usize) -> Vec<PlanePartition> {
    (0..=n).flat_map(plane_partitions_of).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn macmahon_counts() {
        let c: Vec<usize> = (0..7).map(|n| plane_partitions_of(n).len()).collect();
        assert_eq!(c, vec![1, 1, 3, 6, 13, 24, 48]);
    }

    #[test]
    fn origin_neighbours() {
        let p = PlanePartition::empty().add(&Box3::origin()).unwrap();
        let mut a = p.addable();
        a.sort();
        assert_eq!(a, vec![Box3::new(1, 1, 2), Box3::new(1, 2, 1), Box3::new(2, 1, 1)]);
        assert_eq!(Box3::new(2, 1, 1).weight(), ParamRational::h2());
        assert_eq!(Box3::new(1, 2, 1).weight(), ParamRational::h1());
        assert_eq!(Box3::new(1, 1, 2).weight(), ParamRational::h3());
        assert_eq!(p.removable(), vec![Box3::origin()]);
    }

    #[test]
    fn add_remove_round_trip() {
        for p in plane_partitions_up_to(5) {
            for b in p.addable() {
                assert_eq!(p.add(&b).unwrap().remove(&b).unwrap(), p);
            }
            for b in p.removable() {
                assert_eq!(p.remove(&b).unwrap().add(&b).unwrap(), p);
            }
        }
    }

    #[test]
    fn height_one_matches_2d_corners() {
        for lam in crate::symfun::partitions_up_to(6) {
            let p = PlanePartition::from_partition(&lam);
            let flat: Vec<usize> = p.addable().iter().filter(|b| b.z == 1).map(|b| b.x as usize - 1).collect();
            assert_eq!(flat, lam.addable_rows());
            let rem: Vec<usize> = p.removable().iter().map(|b| b.x as usize - 1).collect();
            assert_eq!(rem, lam.removable_rows());
        }
    }

    #[test]
    fn json_round_trip() {
        let p = PlanePartition::from_heights(vec![vec![2, 1], vec![1]]).unwrap();
        assert_eq!(PlanePartition::from_json(&p.to_json()).unwrap(), p);
        assert!(PlanePartition::from_heights(vec![vec![1, 2]]).is_err());
    }

    #[test]
    fn canonical_path_rebuilds() {
        for p in plane_partitions_up_to(5) {
            let mut q = PlanePartition::empty();
            for b in p.canonical_path() {
                q = q.add(&b).unwrap();
            }
            assert_eq!(q, p);
        }
    }
}
