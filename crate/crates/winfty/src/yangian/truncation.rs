//! The one-layer truncation at psi0 = -1/(h1 h2): height-one diagrams
//! form a submodule, because no box can be put on the second layer.

use serde::Serialize;

use super::module::{Gauge, YangianModule, YangianParams};
use crate::error::Result;

#[derive(Clone, Debug, Serialize)]
pub struct TruncationReport {
    pub level: usize,
    /// Height-one states with at most `level` boxes.
    pub states: usize,
    /// Second-layer boxes addable to those states.
    pub second_layer_edges: usize,
    /// Every E*F product for those boxes is symbolically zero.
    pub creation_vanishes: bool,
    /// f_0 maps no two-layer state onto a height-one state.
    pub removal_closed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl TruncationReport {
    pub fn passed(&self) -> bool {
        self.creation_vanishes && self.removal_closed
    }
}

pub fn one_layer_truncation(level: usize) -> Result<TruncationReport> {
    let m = YangianModule::new(YangianParams::one_layer(), level + 1)?;
    let (mut states, mut edges, mut counterexample) = (0, 0, None);
    for i in 0..m.dim() {
        let s = &m.states[i];
        if s.max_height() > 1 || s.size() > level {
            continue;
        }
        states += 1;
        for e in &m.edges[i] {
            if e.b.z < 2 {
                continue;
            }
            edges += 1;
            if !e.ef.is_zero() && counterexample.is_none() {
                counterexample = Some(format!("adding ({},{},{}) to {}: E*F = {}", e.b.x, e.b.y, e.b.z, s, e.ef));
            }
        }
    }
    let creation_vanishes = counterexample.is_none();
    let f0 = m.f(0, Gauge::Tree);
    let mut removal_closed = true;
    for (i, j, x) in f0.entries() {
        if m.states[j].max_height() > 1 && m.states[i].max_height() <= 1 && !x.is_zero() {
            removal_closed = false;
            counterexample.get_or_insert_with(|| format!("f_0 <{}| |{}> = {}", m.states[i], m.states[j], x));
        }
    }
    Ok(TruncationReport { level, states, second_layer_edges: edges, creation_vanishes, removal_closed, counterexample })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_levels() {
        let r = one_layer_truncation(3).unwrap();
        assert!(r.passed(), "{:?}", r);
        assert_eq!(r.states, 7);
        assert!(r.second_layer_edges > 0);
    }
}
