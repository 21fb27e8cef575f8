//! Rauzy graphs of the interior column-value language: vertices are factors of
//! length `i`, edges join `a·w` to `w·b` for every admitted factor `a·w·b`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::problem::{Mode, ProblemSpec};
use crate::semiring::{spectral_radius, Real, SparseMatrix, DEFAULT_MAX_ITERS, DEFAULT_TOL};
use crate::state::{for_each_state, pack};

/// Distance kept from both ends of a harvested state.
pub const DEFAULT_PAD: usize = 2;
/// Maximum number of states visited while harvesting one graph.
pub const DEFAULT_WORD_BUDGET: usize = 1 << 27;
/// Two consecutive growth rates closer than this count as stabilised.
pub const STABILITY_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RauzyGraph {
    pub order: usize,
    /// Factors of length `order`, packed and sorted.
    pub vertices: Vec<u128>,
    /// Sorted, deduplicated vertex index pairs.
    pub edges: Vec<(u32, u32)>,
}

impl RauzyGraph {
    /// Graph of the factors at offset `pad` of each word; every word has length `order + 1 + 2·pad`.
    pub fn from_words<'a>(
        words: impl IntoIterator<Item = &'a [u8]>,
        order: usize,
        pad: usize,
        bits: u32,
    ) -> Self {
        let mut factors = BTreeSet::new();
        for w in words {
            assert_eq!(w.len(), order + 1 + 2 * pad, "word of wrong length");
            factors.insert(pack(&w[pad..pad + order + 1], bits));
        }
        Self::from_factors(&factors, order, bits)
    }

    fn from_factors(factors: &BTreeSet<u128>, order: usize, bits: u32) -> Self {
        let low = (1u128 << (bits as usize * order)) - 1;
        // Cell k sits at bit offset k·bits, so the prefix is the low part.
        let ends: Vec<(u128, u128)> = factors.iter().map(|&f| (f & low, f >> bits)).collect();
        let vertex_set: BTreeSet<u128> = ends.iter().flat_map(|&(u, v)| [u, v]).collect();
        let index: BTreeMap<u128, u32> = vertex_set.iter().enumerate().map(|(k, &v)| (v, k as u32)).collect();
        let mut edges: Vec<(u32, u32)> = ends.iter().map(|(u, v)| (index[u], index[v])).collect();
        edges.sort_unstable();
        edges.dedup();
        RauzyGraph { order, vertices: vertex_set.into_iter().collect(), edges }
    }

    pub fn adjacency(&self) -> SparseMatrix<Real> {
        let mut rows = vec![Vec::new(); self.vertices.len()];
        for &(u, v) in &self.edges {
            rows[u as usize].push((v, Real(1.0)));
        }
        SparseMatrix::from_rows(self.vertices.len(), rows)
    }

    pub fn radius(&self) -> Result<f64> {
        if self.vertices.is_empty() {
            return Ok(0.0);
        }
        spectral_radius(&self.adjacency(), DEFAULT_TOL, DEFAULT_MAX_ITERS)
    }
}

pub fn build_rauzy(spec: &ProblemSpec, order: usize, pad: usize) -> Result<RauzyGraph> {
    build_rauzy_with_budget(spec, order, pad, DEFAULT_WORD_BUDGET)
}

pub fn build_rauzy_with_budget(spec: &ProblemSpec, order: usize, pad: usize, budget: usize) -> Result<RauzyGraph> {
    if order == 0 {
        return Err(Error::InvalidArgument("Rauzy order must be at least 1".into()));
    }
    let bits = spec.bits();
    if bits as usize * (order + 1) > 128 {
        return Err(Error::CapacityExceeded { budget: 128 / bits as usize - 1 });
    }
    let mut factors = BTreeSet::new();
    let mut visited = 0usize;
    for_each_state(spec, order + 1 + 2 * pad, Mode::Interior, &mut |w| {
        visited += 1;
        factors.insert(pack(&w[pad..pad + order + 1], bits));
        visited <= budget
    })?;
    if visited > budget {
        return Err(Error::CapacityExceeded { budget });
    }
    Ok(RauzyGraph::from_factors(&factors, order, bits))
}

pub fn growth_rate(spec: &ProblemSpec, order: usize) -> Result<f64> {
    build_rauzy(spec, order, DEFAULT_PAD)?.radius()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthSweep {
    pub problem: String,
    /// `rates[k]` is the growth rate at order `k + 1`.
    pub rates: Vec<f64>,
    /// First order whose rate agrees with the previous one within `STABILITY_TOL`.
    pub stable_order: Option<usize>,
    /// Set when the sweep stopped on the word budget.
    pub truncated: bool,
}

impl GrowthSweep {
    pub fn last(&self) -> Option<f64> {
        self.rates.last().copied()
    }
}

/// Growth rates at orders `1..=max_order`, stopping at the first stabilised order.
pub fn growth_sweep(spec: &ProblemSpec, max_order: usize, budget: usize) -> Result<GrowthSweep> {
    let mut sweep = GrowthSweep { problem: spec.name.clone(), rates: Vec::new(), stable_order: None, truncated: false };
    for order in 1..=max_order {
        let rate = match build_rauzy_with_budget(spec, order, DEFAULT_PAD, budget) {
            Ok(g) => g.radius()?,
            Err(Error::CapacityExceeded { .. }) => {
                sweep.truncated = true;
                break;
            }
            Err(e) => return Err(e),
        };
        let prev = sweep.rates.last().copied();
        sweep.rates.push(rate);
        if prev.is_some_and(|p| (rate - p).abs() < STABILITY_TOL) {
            sweep.stable_order = Some(order);
            break;
        }
    }
    Ok(sweep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::get_problem;

    #[test]
    fn free_binary_language_gives_complete_graph() {
        let words: Vec<Vec<u8>> = (0..16u8).map(|x| (0..4).map(|k| (x >> k) & 1).collect()).collect();
        let g = RauzyGraph::from_words(words.iter().map(Vec::as_slice), 1, 1, 1);
        assert_eq!(g.vertices.len(), 2);
        assert_eq!(g.edges, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert!((g.radius().unwrap() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn edges_overlap_their_endpoints() {
        let spec = get_problem("2dom").unwrap();
        let g = build_rauzy(&spec, 3, DEFAULT_PAD).unwrap();
        let bits = spec.bits() as usize;
        let mask = (1u128 << (bits * 2)) - 1;
        for &(u, v) in &g.edges {
            assert_eq!(g.vertices[u as usize] >> bits, g.vertices[v as usize] & mask);
        }
    }

    #[test]
    fn two_dom_growth_rate() {
        let rate = growth_rate(&get_problem("2dom").unwrap(), 2).unwrap();
        assert!((rate - 2.485584).abs() < 1e-4, "{rate}");
    }
}
