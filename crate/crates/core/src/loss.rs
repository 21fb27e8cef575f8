//! Lower bounds from the loss concentrated on the border of the grid. The border
//! of width `h` is walked as four bands joined by four `h × h` corners; a band
//! state is a column across the band, row 0 facing the interior and row `h − 1`
//! on the grid border.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::problem::{reverse_loss, Mode, ProblemSpec};
use crate::semiring::{detect_recurrence, vec_mat, DenseMinPlus, MinPlus, Recurrence, SparseMatrix, INF};
use crate::state::{enumerate_states_with_budget, successor_indices, StateSet, DEFAULT_STATE_BUDGET};

/// Largest band power examined when looking for a band recurrence.
pub const DEFAULT_BAND_MAX_EXPONENT: usize = 400;

/// Band states with their (min,+) loss transfer matrix and, once built, the corner matrix.
#[derive(Clone, Debug)]
pub struct BandSystem {
    pub problem: String,
    pub height: usize,
    pub states: StateSet,
    /// `transfer[S][S']`: loss fixed by appending `S'` after `S`.
    pub transfer: SparseMatrix<MinPlus>,
    /// Loss of each state standing first, with nothing charged from the left.
    pub self_loss: Vec<u32>,
    /// `corner[A][B]`: loss of a corner entered from band state `A` and left into band state `B`.
    pub corner: Option<DenseMinPlus>,
    /// Per transfer entry, the charge when row 0 of the appended state sees a known
    /// cell of supply 0 or 1 above it (INF when the deficits disagree).
    exact_top: [Vec<u32>; 2],
    edge_ptr: Vec<usize>,
}

/// Scaled border loss of one grid and the bound it implies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LossResult {
    pub n: usize,
    pub m: usize,
    pub h: usize,
    pub loss: u64,
    pub lower_bound: u64,
}

fn require_loss_model(spec: &ProblemSpec) -> Result<()> {
    if spec.loss_model.is_none() || !spec.has_local_rules() {
        return Err(Error::LossUnsupported(spec.name.clone()));
    }
    Ok(())
}

/// Loss fixed when `c` is appended after `prev`: every cell of `c` against its
/// left and vertical neighbours, and every satisfied cell of `prev` against `c`.
/// `top` is the supply seen above row 0 (0 when unseen).
fn charge(spec: &ProblemSpec, prev: Option<&[u8]>, c: &[u8], top: u8, right_border: bool) -> u32 {
    let h = c.len();
    let mut total = 0;
    for i in 0..h {
        let k = spec.kind_of(c[i]);
        let left = prev.map_or(0, |p| spec.supply(p[i]));
        let up = if i > 0 { spec.supply(c[i - 1]) } else { top };
        let down = if i + 1 < h { spec.supply(c[i + 1]) } else { 0 };
        let missing = u32::from(i + 1 == h) + u32::from(right_border);
        total += k.excess_w * u32::from((left + up + down).saturating_sub(k.req)) + k.flat + k.pos_w * missing;
    }
    if let Some(p) = prev {
        for i in 0..h {
            if spec.deficit(p[i]) == 0 {
                total += spec.kind_of(p[i]).excess_w * u32::from(spec.supply(c[i]));
            }
        }
    }
    total
}

/// Whether row 0 of `c` has the deficit forced by a known cell of supply `top` above it.
fn exact_top_ok(spec: &ProblemSpec, prev: &[u8], c: &[u8], top: u8) -> bool {
    let below = if c.len() > 1 { spec.supply(c[1]) } else { 0 };
    let received = spec.supply(prev[0]) + below + top;
    spec.deficit(c[0]) == spec.kind_of(c[0]).req.saturating_sub(received)
}

pub fn build_band(spec: &ProblemSpec, h: usize) -> Result<BandSystem> {
    build_band_with_budget(spec, h, DEFAULT_STATE_BUDGET)
}

pub fn build_band_with_budget(spec: &ProblemSpec, h: usize, budget: usize) -> Result<BandSystem> {
    require_loss_model(spec)?;
    let states = enumerate_states_with_budget(spec, h, Mode::LossBand, false, budget)?;
    let n = states.len();
    let rows: Vec<(Vec<(u32, MinPlus)>, [Vec<u32>; 2])> = (0..n)
        .into_par_iter()
        .with_min_len(16)
        .map(|i| {
            let s = states.cells(i);
            let succ = successor_indices(spec, &states, i);
            let mut row = Vec::with_capacity(succ.len());
            let mut exact = [Vec::with_capacity(succ.len()), Vec::with_capacity(succ.len())];
            for &j in &succ {
                let t = states.cells(j as usize);
                row.push((j, MinPlus(charge(spec, Some(&s), &t, 0, false))));
                for top in 0..2u8 {
                    let v = if exact_top_ok(spec, &s, &t, top) { charge(spec, Some(&s), &t, top, false) } else { INF };
                    exact[top as usize].push(v);
                }
            }
            (row, exact)
        })
        .collect();
    let mut edge_ptr = vec![0];
    let mut exact_top = [Vec::new(), Vec::new()];
    let mut lists = Vec::with_capacity(n);
    for (row, exact) in rows {
        edge_ptr.push(edge_ptr.last().unwrap() + row.len());
        for (dst, src) in exact_top.iter_mut().zip(exact) {
            dst.extend(src);
        }
        lists.push(row);
    }
    let transfer = SparseMatrix::from_rows(n, lists);
    debug_assert_eq!(transfer.nnz(), *edge_ptr.last().unwrap());
    let self_loss = (0..n).map(|i| charge(spec, None, &states.cells(i), 0, false)).collect();
    Ok(BandSystem {
        problem: spec.name.clone(),
        height: h,
        states,
        transfer,
        self_loss,
        corner: None,
        exact_top,
        edge_ptr,
    })
}

/// Charge of the output state's cell `x`, which follows the corner's row 0 cell `c0`.
fn exit_charge(spec: &ProblemSpec, b: &[u8], x: usize, c0: u8) -> u32 {
    let h = b.len();
    if !spec.compatible_kinds(c0, b[x]) {
        return INF;
    }
    let k = spec.kind_of(b[x]);
    let up = if x > 0 { spec.supply(b[x - 1]) } else { 0 };
    let down = if x + 1 < h { spec.supply(b[x + 1]) } else { 0 };
    let received = spec.supply(c0) + up + down;
    let slack = u8::from(x == 0);
    if !(0..=slack).any(|e| spec.deficit(b[x]) == k.req.saturating_sub(received + e)) {
        return INF;
    }
    k.excess_w * u32::from(received.saturating_sub(k.req)) + k.flat + k.pos_w * u32::from(x + 1 == h)
}

fn add(a: u32, b: u32) -> u32 {
    if a == INF || b == INF {
        INF
    } else {
        a + b
    }
}

struct CornerCtx<'a> {
    spec: &'a ProblemSpec,
    band: &'a BandSystem,
    cells: Vec<Vec<u8>>,
    /// Value of the final corner column: border charge if it owes nothing, else INF.
    last: Vec<u32>,
}

impl CornerCtx<'_> {
    /// `out[c] = min over successors c' of exact_top[top](c → c') + d[c']`.
    fn relax(&self, top: u8, d: &[u32]) -> Vec<u32> {
        let t = &self.band.transfer;
        let costs = &self.band.exact_top[top as usize];
        (0..t.dim())
            .map(|c| {
                let base = self.band.edge_ptr[c];
                let mut best = INF;
                for (k, &j) in t.row(c).0.iter().enumerate() {
                    best = best.min(add(costs[base + k], d[j as usize]));
                }
                best
            })
            .collect()
    }

    /// Folds corner column `x` for every output state in `group`, which share cells `x..h`.
    fn descend(&self, x: usize, group: &[usize], below: Option<&[u32]>, out: &mut Vec<(usize, Vec<u32>)>) {
        let h = self.band.height;
        let b = &self.cells[group[0]];
        let tail = match below {
            None => self.last.clone(),
            Some(d) => self.relax(self.spec.supply(b[x + 1]), d),
        };
        let mut start = 0;
        while start < group.len() {
            let key = |i: usize| if x > 0 { self.cells[group[i]][x - 1] } else { 0 };
            let mut end = start + 1;
            while end < group.len() && key(end) == key(start) {
                end += 1;
            }
            let sub = &group[start..end];
            let bs = &self.cells[sub[0]];
            let here: Vec<u32> = (0..tail.len())
                .map(|c| {
                    if tail[c] == INF {
                        INF
                    } else {
                        add(exit_charge(self.spec, bs, x, self.cells[c][0]), tail[c])
                    }
                })
                .collect();
            if x == 0 {
                debug_assert_eq!(sub.len(), 1);
                let col = self.relax(self.spec.supply(bs[0]), &here);
                out.push((sub[0], col));
            } else {
                self.descend(x - 1, sub, Some(&here), out);
            }
            start = end;
        }
        debug_assert!(h > x);
    }
}

/// Fills `band.corner` by fixing the output state, folding the corner columns from
/// the outer border inwards, and closing with the input state.
pub fn build_corner(spec: &ProblemSpec, band: &mut BandSystem) -> Result<()> {
    require_loss_model(spec)?;
    let n = band.states.len();
    let h = band.height;
    let cells: Vec<Vec<u8>> = (0..n).map(|i| band.states.cells(i)).collect();
    let last = cells
        .iter()
        .map(|c| {
            if c.iter().all(|&v| spec.deficit(v) == 0) {
                c.iter().map(|&v| spec.kind_of(v).pos_w).sum()
            } else {
                INF
            }
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| cells[a].iter().rev().cmp(cells[b].iter().rev()));
    let ctx = CornerCtx { spec, band, cells, last };
    let split = h.min(2);
    let mut groups: Vec<&[usize]> = Vec::new();
    let mut start = 0;
    while start < n {
        let key = |i: usize| &ctx.cells[order[i]][h - split..];
        let mut end = start + 1;
        while end < n && key(end) == key(start) {
            end += 1;
        }
        groups.push(&order[start..end]);
        start = end;
    }
    let columns: Vec<(usize, Vec<u32>)> = groups
        .par_iter()
        .flat_map_iter(|g| {
            let mut out = Vec::new();
            ctx.descend(h - 1, g, None, &mut out);
            out
        })
        .collect();
    let mut data = vec![INF; n * n];
    for (b, col) in columns {
        for (a, v) in col.into_iter().enumerate() {
            data[a * n + b] = v;
        }
    }
    band.corner = Some(DenseMinPlus::from_row_major(n, data));
    Ok(())
}

/// Minimum loss over fillings of an `h × length` band, seen through the transfer matrix.
pub fn band_path_loss(band: &BandSystem, length: usize) -> Option<u64> {
    assert!(length >= 1, "band length must be positive");
    let mut v: Vec<MinPlus> = band.self_loss.iter().map(|&x| MinPlus(x)).collect();
    for _ in 1..length {
        v = vec_mat(&v, &band.transfer);
    }
    v.iter().filter_map(|x| x.finite()).min().map(u64::from)
}

/// Band matrix, corner matrix and cached products for repeated border queries.
pub struct LossEngine {
    spec: ProblemSpec,
    band: BandSystem,
    corner: DenseMinPlus,
    powers: Vec<DenseMinPlus>,
    halves: HashMap<usize, DenseMinPlus>,
    recurrence: Option<Recurrence>,
}

impl LossEngine {
    pub fn new(spec: &ProblemSpec, h: usize) -> Result<Self> {
        let mut band = build_band(spec, h)?;
        build_corner(spec, &mut band)?;
        Ok(Self::from_band(spec, band))
    }

    pub fn from_band(spec: &ProblemSpec, band: BandSystem) -> Self {
        let corner = band.corner.clone().expect("corner must be built first");
        LossEngine {
            spec: spec.clone(),
            powers: vec![DenseMinPlus::identity(band.states.len())],
            band,
            corner,
            halves: HashMap::new(),
            recurrence: None,
        }
    }

    pub fn band(&self) -> &BandSystem {
        &self.band
    }

    pub fn height(&self) -> usize {
        self.band.height
    }

    fn power(&mut self, e: usize) {
        while self.powers.len() <= e {
            let next = self.powers.last().unwrap().mul_sparse(&self.band.transfer);
            self.powers.push(next);
        }
    }

    /// `T^e ⊙ C`: one band side followed by its corner.
    fn half(&mut self, e: usize) -> DenseMinPlus {
        if let Some(q) = self.halves.get(&e) {
            return q.clone();
        }
        let q = if e == 0 {
            self.corner.clone()
        } else {
            self.power(e);
            self.powers[e].mul(&self.corner)
        };
        self.halves.insert(e, q.clone());
        q
    }

    fn exponents(&self, n: usize, m: usize) -> Result<(usize, usize)> {
        let h = self.band.height;
        if 2 * h >= n.min(m) {
            return Err(Error::DimensionTooSmall { n, m, h });
        }
        Ok((m - 2 * h - 1, n - 2 * h - 1))
    }

    fn trace(&mut self, a: usize, b: usize) -> Result<u64> {
        let (a, b) = (a.min(b), a.max(b));
        let x = self.half(a).mul(&self.half(b));
        match x.trace_of_square() {
            INF => Err(Error::InvalidArgument("no filling of the border exists".into())),
            v => Ok(u64::from(v)),
        }
    }

    /// Minimum scaled loss over the width-`h` border of the `n × m` grid.
    pub fn border_loss(&mut self, n: usize, m: usize) -> Result<u64> {
        let (a, b) = self.exponents(n, m)?;
        self.trace(a, b)
    }

    pub fn lower_bound(&mut self, n: usize, m: usize) -> Result<LossResult> {
        let loss = self.border_loss(n, m)?;
        self.result(n, m, loss)
    }

    fn result(&self, n: usize, m: usize, loss: u64) -> Result<LossResult> {
        Ok(LossResult { n, m, h: self.band.height, loss, lower_bound: reverse_loss(&self.spec, n, m, loss)? })
    }

    /// `T^{l+r} = T^l + p` for all `l ≥ start`.
    pub fn band_recurrence(&mut self) -> Result<Recurrence> {
        if let Some(r) = self.recurrence {
            return Ok(r);
        }
        let r = detect_recurrence(&self.band.transfer, DEFAULT_BAND_MAX_EXPONENT)?;
        self.recurrence = Some(r);
        Ok(r)
    }

    /// As `border_loss`, with long sides shortened by whole band periods first.
    pub fn extended_border_loss(&mut self, n: usize, m: usize) -> Result<u64> {
        let (a, b) = self.exponents(n, m)?;
        let rec = self.band_recurrence()?;
        let p = u64::try_from(rec.increment).map_err(|_| Error::NotPrimitive)?;
        let reduce = |e: usize| {
            if e >= rec.start + rec.period {
                let k = (e - rec.start) / rec.period;
                (e - k * rec.period, k as u64)
            } else {
                (e, 0)
            }
        };
        let ((a, ka), (b, kb)) = (reduce(a), reduce(b));
        Ok(self.trace(a, b)? + 2 * p * (ka + kb))
    }

    pub fn extended_lower_bound(&mut self, n: usize, m: usize) -> Result<LossResult> {
        let loss = self.extended_border_loss(n, m)?;
        self.result(n, m, loss)
    }
}

pub fn border_min_loss(spec: &ProblemSpec, band: &BandSystem, n: usize, m: usize) -> Result<u64> {
    LossEngine::from_band(spec, band.clone()).border_loss(n, m)
}

pub fn lower_bound(spec: &ProblemSpec, n: usize, m: usize, h: usize) -> Result<LossResult> {
    require_loss_model(spec)?;
    if 2 * h >= n.min(m) {
        return Err(Error::DimensionTooSmall { n, m, h });
    }
    LossEngine::new(spec, h)?.lower_bound(n, m)
}

pub fn extended_lower_bound(spec: &ProblemSpec, n: usize, m: usize, h: usize) -> Result<LossResult> {
    require_loss_model(spec)?;
    if 2 * h >= n.min(m) {
        return Err(Error::DimensionTooSmall { n, m, h });
    }
    LossEngine::new(spec, h)?.extended_lower_bound(n, m)
}
