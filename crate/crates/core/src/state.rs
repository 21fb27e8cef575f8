//! Column states: packing, enumeration with incremental pruning, and the
//! first/end/compatibility predicates.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::problem::{d2, Mode, ProblemSpec, Rules};

/// Largest state set materialised unless a caller asks for more.
pub const DEFAULT_STATE_BUDGET: usize = 8_000_000;

/// One column's cell values, bit-packed with cell 0 in the lowest bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ColumnState {
    pub height: u8,
    pub bits: u8,
    pub packed: u128,
}

impl ColumnState {
    pub fn from_cells(spec: &ProblemSpec, cells: &[u8]) -> Self {
        let bits = spec.bits();
        assert!(cells.len() <= capacity(bits), "column too tall to pack");
        assert!(cells.iter().all(|&c| (c as usize) < spec.alphabet.len()), "value outside alphabet");
        ColumnState { height: cells.len() as u8, bits: bits as u8, packed: pack(cells, bits) }
    }

    pub fn from_labels(spec: &ProblemSpec, labels: &[&str]) -> Self {
        let cells: Vec<u8> = labels.iter().map(|l| spec.id(l)).collect();
        Self::from_cells(spec, &cells)
    }

    pub fn cells(&self) -> Vec<u8> {
        unpack(self.packed, self.height as usize, self.bits as u32)
    }

    pub fn labels(&self, spec: &ProblemSpec) -> Vec<&'static str> {
        self.cells().iter().map(|&c| spec.alphabet[c as usize].label).collect()
    }
}

/// Cells that fit in a packed state at `bits` per cell.
pub fn capacity(bits: u32) -> usize {
    (u128::BITS / bits) as usize
}

pub fn pack(cells: &[u8], bits: u32) -> u128 {
    cells
        .iter()
        .enumerate()
        .fold(0u128, |acc, (i, &c)| acc | (u128::from(c) << (i as u32 * bits)))
}

pub fn unpack(packed: u128, height: usize, bits: u32) -> Vec<u8> {
    let mask = (1u128 << bits) - 1;
    (0..height).map(|i| ((packed >> (i as u32 * bits)) & mask) as u8).collect()
}

pub fn reflect(s: &ColumnState) -> ColumnState {
    let mut cells = s.cells();
    cells.reverse();
    ColumnState { packed: pack(&cells, s.bits as u32), ..*s }
}

pub fn canonical(s: &ColumnState) -> ColumnState {
    let r = reflect(s);
    if r.packed < s.packed {
        r
    } else {
        *s
    }
}

fn reflect_packed(packed: u128, height: usize, bits: u32) -> u128 {
    let mask = (1u128 << bits) - 1;
    let mut out = 0u128;
    for i in 0..height {
        let c = (packed >> (i as u32 * bits)) & mask;
        out |= c << ((height - 1 - i) as u32 * bits);
    }
    out
}

fn canonical_packed(packed: u128, height: usize, bits: u32) -> u128 {
    packed.min(reflect_packed(packed, height, bits))
}

/// Valid states of one height and mode, sorted by packed value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSet {
    pub problem: String,
    pub height: usize,
    pub mode: Mode,
    pub pruned_by_symmetry: bool,
    pub bits: u32,
    states: Vec<u128>,
}

impl StateSet {
    pub(crate) fn from_sorted(spec: &ProblemSpec, height: usize, mode: Mode, pruned: bool, states: Vec<u128>) -> Self {
        debug_assert!(states.windows(2).all(|w| w[0] < w[1]));
        StateSet {
            problem: spec.name.clone(),
            height,
            mode,
            pruned_by_symmetry: pruned,
            bits: spec.bits(),
            states,
        }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn packed(&self) -> &[u128] {
        &self.states
    }

    pub fn get(&self, i: usize) -> ColumnState {
        ColumnState { height: self.height as u8, bits: self.bits as u8, packed: self.states[i] }
    }

    pub fn cells(&self, i: usize) -> Vec<u8> {
        unpack(self.states[i], self.height, self.bits)
    }

    pub fn index_of(&self, packed: u128) -> Option<usize> {
        self.states.binary_search(&packed).ok()
    }

    /// Index of the stored representative of `packed` (its canonical form when pruned).
    pub fn index_of_representative(&self, packed: u128) -> Option<usize> {
        if self.pruned_by_symmetry {
            self.index_of(canonical_packed(packed, self.height, self.bits))
        } else {
            self.index_of(packed)
        }
    }
}

pub fn enumerate_states(spec: &ProblemSpec, height: usize, mode: Mode, prune_symmetry: bool) -> Result<StateSet> {
    enumerate_states_with_budget(spec, height, mode, prune_symmetry, DEFAULT_STATE_BUDGET)
}

pub fn enumerate_states_with_budget(
    spec: &ProblemSpec,
    height: usize,
    mode: Mode,
    prune_symmetry: bool,
    budget: usize,
) -> Result<StateSet> {
    check_height(spec, height)?;
    if prune_symmetry && mode == Mode::LossBand {
        return Err(Error::InvalidArgument("symmetry pruning does not apply to loss bands".into()));
    }
    let bits = spec.bits();
    let alpha = spec.alphabet.len() as u8;
    let root_len = height.min(2);
    let roots: Vec<Vec<u8>> = (0..(alpha as usize).pow(root_len as u32))
        .map(|mut k| {
            (0..root_len)
                .map(|_| {
                    let c = (k % alpha as usize) as u8;
                    k /= alpha as usize;
                    c
                })
                .collect()
        })
        .collect();
    let chunks: Vec<Result<Vec<u128>>> = roots
        .par_iter()
        .map(|root| {
            let mut out = Vec::new();
            let mut buf = vec![0u8; height];
            buf[..root.len()].copy_from_slice(root);
            let r = spec.radius();
            for k in 0..root.len() {
                if k >= r && !spec.cell_valid(&buf, k - r, mode) {
                    return Ok(out);
                }
            }
            let mut overflow = false;
            extend_states(spec, mode, &mut buf, root.len(), &mut |cells| {
                let p = pack(cells, bits);
                if !prune_symmetry || p == canonical_packed(p, height, bits) {
                    out.push(p);
                    if out.len() > budget {
                        overflow = true;
                    }
                }
                !overflow
            });
            if overflow {
                return Err(Error::CapacityExceeded { budget });
            }
            Ok(out)
        })
        .collect();
    let mut states = Vec::new();
    for c in chunks {
        states.extend(c?);
        if states.len() > budget {
            return Err(Error::CapacityExceeded { budget });
        }
    }
    states.sort_unstable();
    Ok(StateSet::from_sorted(spec, height, mode, prune_symmetry, states))
}

pub(crate) fn check_height(spec: &ProblemSpec, height: usize) -> Result<()> {
    if height == 0 || height > capacity(spec.bits()) {
        return Err(Error::InvalidArgument(format!(
            "height {height} outside 1..={}",
            capacity(spec.bits())
        )));
    }
    Ok(())
}

/// Depth-first completion of `buf[k..]`, checking each cell once its whole
/// window is fixed. `visit` returns false to stop.
pub(crate) fn extend_states(
    spec: &ProblemSpec,
    mode: Mode,
    buf: &mut [u8],
    k: usize,
    visit: &mut dyn FnMut(&[u8]) -> bool,
) -> bool {
    let h = buf.len();
    let r = spec.radius();
    if k == h {
        for i in h.saturating_sub(r)..h {
            if !spec.cell_valid(buf, i, mode) {
                return true;
            }
        }
        return visit(buf);
    }
    for v in 0..spec.alphabet.len() as u8 {
        buf[k] = v;
        if k >= r && !spec.cell_valid(buf, k - r, mode) {
            continue;
        }
        if !extend_states(spec, mode, buf, k + 1, visit) {
            return false;
        }
    }
    true
}

/// Visits every valid state of `height` without materialising the set.
pub fn for_each_state(spec: &ProblemSpec, height: usize, mode: Mode, visit: &mut dyn FnMut(&[u8]) -> bool) -> Result<()> {
    check_height(spec, height)?;
    let mut buf = vec![0u8; height];
    extend_states(spec, mode, &mut buf, 0, visit);
    Ok(())
}

/// Values that may follow `prev` in the same row, by history shift.
pub(crate) fn row_candidates(spec: &ProblemSpec, prev: u8) -> Vec<u8> {
    let all = 0..spec.alphabet.len() as u8;
    match spec.rules {
        Rules::Local => all.collect(),
        Rules::Distance2 => match prev {
            d2::STONE => vec![d2::STONE, d2::OK_PREV],
            d2::NEED_ONE => vec![d2::STONE],
            _ => all.filter(|&v| v != d2::OK_PREV).collect(),
        },
        Rules::Minimal { .. } => {
            let stone = prev % 3 > 0;
            all.filter(|&v| (v / 3 > 0) == stone).collect()
        }
    }
}

/// Every `t` with `s ℛ t`, as cell vectors, in lexicographic order.
pub(crate) fn for_each_successor(spec: &ProblemSpec, s: &[u8], mode: Mode, visit: &mut dyn FnMut(&[u8])) {
    let h = s.len();
    let cand: Vec<Vec<u8>> = s.iter().map(|&p| row_candidates(spec, p)).collect();
    let mut t = vec![0u8; h];
    successor_dfs(spec, s, mode, &cand, &mut t, 0, visit);
}

fn successor_dfs(
    spec: &ProblemSpec,
    s: &[u8],
    mode: Mode,
    cand: &[Vec<u8>],
    t: &mut [u8],
    k: usize,
    visit: &mut dyn FnMut(&[u8]),
) {
    let h = s.len();
    let r = spec.radius();
    let ok = |t: &[u8], i: usize| spec.cell_compat(s, t, i, mode) && spec.cell_valid(t, i, mode);
    if k == h {
        if (h.saturating_sub(r)..h).all(|i| ok(t, i)) {
            visit(t);
        }
        return;
    }
    for &v in &cand[k] {
        t[k] = v;
        if k >= r && !ok(t, k - r) {
            continue;
        }
        successor_dfs(spec, s, mode, cand, t, k + 1, visit);
    }
}

fn same_height(s: &ColumnState, t: &ColumnState) {
    assert_eq!(s.height, t.height, "states of different heights");
}

pub fn is_valid(spec: &ProblemSpec, s: &ColumnState, mode: Mode) -> bool {
    let c = s.cells();
    (0..c.len()).all(|i| spec.cell_valid(&c, i, mode))
}

/// `t` may directly follow `s` in a valid filling.
pub fn is_compatible(spec: &ProblemSpec, s: &ColumnState, t: &ColumnState, mode: Mode) -> bool {
    same_height(s, t);
    let (a, b) = (s.cells(), t.cells());
    is_valid(spec, s, mode)
        && is_valid(spec, t, mode)
        && (0..a.len()).all(|i| spec.cell_compat(&a, &b, i, mode))
}

pub fn is_first(spec: &ProblemSpec, s: &ColumnState) -> bool {
    is_first_in(spec, s, Mode::Interior)
}

pub fn is_end(spec: &ProblemSpec, s: &ColumnState) -> bool {
    is_end_in(spec, s, Mode::Interior)
}

pub fn is_first_in(spec: &ProblemSpec, s: &ColumnState, mode: Mode) -> bool {
    let c = s.cells();
    is_valid(spec, s, mode) && (0..c.len()).all(|i| spec.cell_first(&c, i, mode))
}

pub fn is_end_in(spec: &ProblemSpec, s: &ColumnState, mode: Mode) -> bool {
    let c = s.cells();
    is_valid(spec, s, mode) && (0..c.len()).all(|i| spec.cell_end(&c, i, mode))
}

/// States whose recorded history matches `s` shifted by one column. A superset
/// of the true successors.
pub fn successor_candidates(spec: &ProblemSpec, set: &StateSet, s: &ColumnState) -> Vec<usize> {
    let allowed: Vec<Vec<u8>> = s.cells().iter().map(|&p| row_candidates(spec, p)).collect();
    (0..set.len())
        .filter(|&i| {
            let c = set.cells(i);
            let direct = c.iter().zip(&allowed).all(|(v, a)| a.contains(v));
            let mirrored = set.pruned_by_symmetry
                && c.iter().rev().zip(&allowed).all(|(v, a)| a.contains(v));
            direct || mirrored
        })
        .collect()
}

/// Successor indices of state `i`, mapped to stored representatives, sorted and unique.
pub(crate) fn successor_indices(spec: &ProblemSpec, set: &StateSet, i: usize) -> Vec<u32> {
    let s = set.cells(i);
    let mut out = Vec::new();
    for_each_successor(spec, &s, set.mode, &mut |t| {
        let p = pack(t, set.bits);
        let j = set
            .index_of_representative(p)
            .expect("successor of a valid state must be a stored valid state");
        out.push(j as u32);
    });
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::get_problem;

    fn st(spec: &ProblemSpec, labels: &[&str]) -> ColumnState {
        ColumnState::from_labels(spec, labels)
    }

    #[test]
    fn two_dom_small_heights() {
        let p = get_problem("2dom").unwrap();
        let h1 = enumerate_states(&p, 1, Mode::Interior, false).unwrap();
        let labels: Vec<_> = (0..h1.len()).map(|i| h1.get(i).labels(&p)).collect();
        assert_eq!(labels, vec![vec!["stone"], vec!["need_one"]]);
        assert_eq!(enumerate_states(&p, 2, Mode::Interior, false).unwrap().len(), 6);
    }

    #[test]
    fn two_dom_compatibility_examples() {
        let p = get_problem("2dom").unwrap();
        let m = Mode::Interior;
        assert!(!is_compatible(&p, &st(&p, &["need_one"]), &st(&p, &["ok"]), m));
        assert!(is_compatible(&p, &st(&p, &["stone"]), &st(&p, &["need_one"]), m));
        assert!(!is_compatible(&p, &st(&p, &["stone"]), &st(&p, &["ok"]), m));
        let ss = st(&p, &["stone", "stone"]);
        assert!(is_first(&p, &ss) && is_end(&p, &ss));
        assert!(!is_first(&p, &st(&p, &["need_one"])));
        assert!(!is_end(&p, &st(&p, &["need_one", "stone"])));
    }

    #[test]
    fn reflection() {
        let p = get_problem("2dom").unwrap();
        let s = st(&p, &["stone", "need_one", "ok"]);
        assert_eq!(reflect(&s).labels(&p), ["ok", "need_one", "stone"]);
        let pal = st(&p, &["stone", "ok", "stone"]);
        assert_eq!(reflect(&pal), pal);
        assert!(canonical(&s).packed <= s.packed);
        assert_eq!(canonical(&s), canonical(&reflect(&s)));
    }

    #[test]
    fn pack_roundtrip() {
        let cells = vec![3u8, 0, 8, 5, 1];
        assert_eq!(unpack(pack(&cells, 4), 5, 4), cells);
        assert_eq!(capacity(4), 32);
    }

    #[test]
    fn window_one_candidates_are_everything() {
        let p = get_problem("2dom").unwrap();
        let set = enumerate_states(&p, 3, Mode::Interior, false).unwrap();
        assert_eq!(successor_candidates(&p, &set, &set.get(0)).len(), set.len());
    }

    #[test]
    fn pruned_set_holds_one_of_each_mirror_pair() {
        let p = get_problem("2dom").unwrap();
        let full = enumerate_states(&p, 6, Mode::Interior, false).unwrap();
        let half = enumerate_states(&p, 6, Mode::Interior, true).unwrap();
        for i in 0..full.len() {
            let s = full.get(i);
            assert!(half.index_of(canonical(&s).packed).is_some());
        }
        for i in 0..half.len() {
            let s = half.get(i);
            assert_eq!(canonical(&s), s);
        }
    }

    #[test]
    fn loss_band_rejects_pruning() {
        let p = get_problem("2dom").unwrap();
        assert!(enumerate_states(&p, 3, Mode::LossBand, true).is_err());
    }
}
