//! Column transfer systems over (min,+), optimal values γ(n, m), and their
//! recurrences in `m`.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, VecDeque};
use std::hash::{Hash, Hasher};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{self, Lists};
use crate::problem::{Mode, ProblemSpec};
use crate::semiring::{mat_vec, MinPlus, Recurrence, SparseMatrix, INF};
use crate::state::{enumerate_states_with_budget, successor_indices, ColumnState, StateSet, DEFAULT_STATE_BUDGET};

/// Columns scanned before giving up on a recurrence.
pub const DEFAULT_MAX_COLUMNS: usize = 4096;

/// States, boundary flags and the (min,+) transfer matrix `T[S][S'] = cost(S')`.
#[derive(Clone, Debug)]
pub struct TransferSystem {
    pub states: StateSet,
    pub first: Vec<bool>,
    pub end: Vec<bool>,
    pub costs: Vec<u32>,
    pub matrix: SparseMatrix<MinPlus>,
    /// `matrix` transposed, for gathers.
    pub transposed: SparseMatrix<MinPlus>,
}

pub fn build_system(spec: &ProblemSpec, height: usize, mode: Mode, prune_symmetry: bool) -> Result<TransferSystem> {
    build_system_with_budget(spec, height, mode, prune_symmetry, DEFAULT_STATE_BUDGET)
}

pub fn build_system_with_budget(
    spec: &ProblemSpec,
    height: usize,
    mode: Mode,
    prune_symmetry: bool,
    budget: usize,
) -> Result<TransferSystem> {
    let states = enumerate_states_with_budget(spec, height, mode, prune_symmetry, budget)?;
    Ok(system_from_states(spec, states))
}

pub fn system_from_states(spec: &ProblemSpec, states: StateSet) -> TransferSystem {
    let mode = states.mode;
    let n = states.len();
    let costs: Vec<u32> = (0..n).map(|i| states.cells(i).iter().map(|&v| spec.cost(v)).sum()).collect();
    let flags: Vec<(bool, bool)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let c = states.cells(i);
            let h = c.len();
            (
                (0..h).all(|k| spec.cell_first(&c, k, mode)),
                (0..h).all(|k| spec.cell_end(&c, k, mode)),
            )
        })
        .collect();
    let rows: Vec<Vec<(u32, MinPlus)>> = (0..n)
        .into_par_iter()
        .with_min_len(64)
        .map(|i| {
            successor_indices(spec, &states, i)
                .into_iter()
                .map(|j| (j, MinPlus(costs[j as usize])))
                .collect()
        })
        .collect();
    let matrix = SparseMatrix::from_rows(n, rows);
    let transposed = matrix.transpose();
    TransferSystem {
        first: flags.iter().map(|f| f.0).collect(),
        end: flags.iter().map(|f| f.1).collect(),
        states,
        costs,
        matrix,
        transposed,
    }
}

impl TransferSystem {
    pub fn len(&self) -> usize {
        self.costs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.costs.is_empty()
    }

    pub fn state(&self, i: usize) -> ColumnState {
        self.states.get(i)
    }

    /// Best cost of a one-column prefix ending in each state.
    pub fn initial_vector(&self) -> Vec<MinPlus> {
        self.first
            .iter()
            .zip(&self.costs)
            .map(|(&f, &c)| if f { MinPlus(c) } else { MinPlus::INF })
            .collect()
    }

    /// Extends every prefix by one column.
    pub fn step(&self, v: &[MinPlus]) -> Vec<MinPlus> {
        mat_vec(&self.transposed, v)
    }

    /// Minimum over end states; `None` when no end state is reachable.
    pub fn close(&self, v: &[MinPlus]) -> Option<u32> {
        v.iter()
            .zip(&self.end)
            .filter(|(_, &e)| e)
            .map(|(x, _)| x.0)
            .min()
            .filter(|&x| x != INF)
    }

    /// γ for `m = 1..=m_max`.
    pub fn gamma_range(&self, m_max: usize) -> Vec<Option<u32>> {
        let mut out = Vec::with_capacity(m_max);
        let mut v = self.initial_vector();
        for m in 1..=m_max {
            out.push(self.close(&v));
            if m < m_max {
                v = self.step(&v);
            }
        }
        out
    }

    /// States lying on some path from a first state to an end state.
    pub fn useful(&self) -> Vec<bool> {
        let fwd = graph::forward_reach(&self.matrix, &self.first);
        let rev = graph::reversed(&self.matrix);
        let bwd = graph::forward_reach(&Lists(&rev), &self.end);
        fwd.iter().zip(&bwd).map(|(a, b)| *a && *b).collect()
    }
}

/// Minimum cost of a solution on the `n × m` grid (`n` rows), `None` if there is none.
pub fn gamma(spec: &ProblemSpec, n: usize, m: usize) -> Result<Option<u32>> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument("grid sides must be positive".into()));
    }
    let sys = build_system(spec, n, Mode::Interior, true)?;
    Ok(*sys.gamma_range(m).last().expect("m ≥ 1"))
}

pub fn gamma_range(spec: &ProblemSpec, n: usize, m_max: usize) -> Result<Vec<Option<u32>>> {
    let sys = build_system(spec, n, Mode::Interior, true)?;
    Ok(sys.gamma_range(m_max))
}

/// The useful part of the graph must carry exactly one cycle class, and it must be aperiodic.
fn check_single_primitive_class(sys: &TransferSystem) -> Result<()> {
    let keep = sys.useful();
    let (sub, _) = sys.matrix.restrict(&keep);
    let (comp, count) = graph::strong_components(&sub);
    let mut size = vec![0usize; count];
    for &c in &comp {
        size[c as usize] += 1;
    }
    let nontrivial: Vec<usize> = (0..count)
        .filter(|&c| {
            size[c] > 1 || (0..sub.dim()).any(|v| comp[v] as usize == c && sub.row(v).0.contains(&(v as u32)))
        })
        .collect();
    let [c] = nontrivial[..] else {
        return Err(Error::NotPrimitive);
    };
    let members: Vec<bool> = comp.iter().map(|&x| x as usize == c).collect();
    if graph::period(&sub, &members) != 1 {
        return Err(Error::NotPrimitive);
    }
    Ok(())
}

fn fingerprint(v: &[u32]) -> u64 {
    let mut h = DefaultHasher::new();
    v.hash(&mut h);
    h.finish()
}

/// `(l0, r, p)` with `V_{l+r} = V_l + p` for all `l ≥ l0`, plus γ(1..=l0+r).
fn vector_orbit(sys: &TransferSystem, max_columns: usize) -> Result<(usize, usize, u32, Vec<Option<u32>>)> {
    let mut seen: HashMap<u64, Vec<usize>> = HashMap::new();
    let mut window: VecDeque<(usize, u32, Vec<u32>)> = VecDeque::new();
    let mut capacity = 32usize;
    let mut values = Vec::new();
    let mut v = sys.initial_vector();
    for l in 1..=max_columns {
        values.push(sys.close(&v));
        let low = v.iter().map(|x| x.0).min().unwrap_or(INF);
        if low == INF {
            // Every later vector is infinite too.
            return Ok((l, 1, 0, values));
        }
        let norm: Vec<u32> = v.iter().map(|x| if x.0 == INF { INF } else { x.0 - low }).collect();
        let key = fingerprint(&norm);
        if let Some(earlier) = seen.get(&key) {
            for &l0 in earlier {
                match window.iter().find(|(e, _, _)| *e == l0) {
                    Some((_, low0, n0)) if *n0 == norm => return Ok((l0, l - l0, low - low0, values)),
                    Some(_) => {}
                    None => capacity = capacity.max(2 * (l - l0)),
                }
            }
        }
        seen.entry(key).or_default().push(l);
        window.push_back((l, low, norm));
        while window.len() > capacity {
            window.pop_front();
        }
        v = sys.step(&v);
    }
    Err(Error::NotFound(max_columns))
}

fn shifted(a: Option<u32>, b: Option<u32>, q: u32) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(x), Some(y)) => y == x + q,
        _ => false,
    }
}

/// Extends `values` to length `len` using `γ(m + r) = γ(m) + p` for `m ≥ l0`.
fn extend_values(values: &mut Vec<Option<u32>>, len: usize, l0: usize, r: usize, p: u32) {
    while values.len() < len {
        let m = values.len() + 1;
        debug_assert!(m - r >= l0);
        let prev = values[m - r - 1];
        values.push(prev.map(|x| x + p));
    }
}

/// Recurrence `γ(m) = γ(m − period) + increment` for all `m ≥ start`, with the
/// period minimal and the start as small as the values allow.
pub fn find_recurrence(spec: &ProblemSpec, n: usize) -> Result<Recurrence> {
    find_recurrence_with_values(spec, n, DEFAULT_MAX_COLUMNS).map(|(r, _)| r)
}

/// As `find_recurrence`, also returning γ(1..=start + period).
pub fn find_recurrence_with_values(
    spec: &ProblemSpec,
    n: usize,
    max_columns: usize,
) -> Result<(Recurrence, Vec<Option<u32>>)> {
    let sys = build_system(spec, n, Mode::Interior, true)?;
    recurrence_of_system(&sys, max_columns)
}

pub fn recurrence_of_system(sys: &TransferSystem, max_columns: usize) -> Result<(Recurrence, Vec<Option<u32>>)> {
    check_single_primitive_class(sys)?;
    let (l0, rv, pv, mut values) = vector_orbit(sys, max_columns)?;
    extend_values(&mut values, l0 + 2 * rv, l0, rv, pv);
    let (mut r, mut p) = (rv, pv);
    for d in (1..=rv).filter(|d| rv % d == 0) {
        if (pv as usize * d) % rv != 0 {
            continue;
        }
        let q = (pv as usize * d / rv) as u32;
        if (l0..l0 + rv).all(|m| shifted(values[m - 1], values[m + d - 1], q)) {
            r = d;
            p = q;
            break;
        }
    }
    let mut m0 = l0;
    while m0 > 1 && shifted(values[m0 - 2], values[m0 + r - 2], p) {
        m0 -= 1;
    }
    let start = m0 + r;
    values.truncate(start + r);
    Ok((Recurrence { start, period: r, increment: i64::from(p) }, values))
}

/// γ(m) for every `m ≥ 1` from finitely many values: explicit below `floor`, and
/// `bases[c] + increment·k` at `m = floor + c + k·period`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiecewiseFormula {
    pub floor: usize,
    pub period: usize,
    pub increment: u32,
    pub exceptions: Vec<Option<u32>>,
    pub bases: Vec<Option<u32>>,
}

impl PiecewiseFormula {
    pub fn eval(&self, m: usize) -> Option<u32> {
        assert!(m >= 1, "m must be positive");
        if m < self.floor {
            return self.exceptions[m - 1];
        }
        let k = m - self.floor;
        self.bases[k % self.period].map(|b| b + self.increment * (k / self.period) as u32)
    }
}

/// Builds the formula from `values[m − 1] = γ(m)`.
pub fn synthesize_formula(rec: &Recurrence, values: &[Option<u32>]) -> Result<PiecewiseFormula> {
    let increment = u32::try_from(rec.increment)
        .map_err(|_| Error::InvalidArgument("negative recurrence increment".into()))?;
    if rec.period == 0 {
        return Err(Error::InvalidArgument("recurrence period must be positive".into()));
    }
    let floor = rec.start.saturating_sub(rec.period).max(1);
    let needed = floor + rec.period - 1;
    if values.len() < needed {
        return Err(Error::InsufficientInitialValues { needed, got: values.len() });
    }
    Ok(PiecewiseFormula {
        floor,
        period: rec.period,
        increment,
        exceptions: values[..floor - 1].to_vec(),
        bases: values[floor - 1..needed].to_vec(),
    })
}

/// Recurrence and formula for height `n`.
pub fn formula_for(spec: &ProblemSpec, n: usize) -> Result<(Recurrence, PiecewiseFormula)> {
    let (rec, values) = find_recurrence_with_values(spec, n, DEFAULT_MAX_COLUMNS)?;
    let f = synthesize_formula(&rec, &values)?;
    Ok((rec, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_min_cost;
    use crate::problem::get_problem;
    use crate::reference::reference_formula;

    #[test]
    fn small_values_match_brute_force() {
        for name in ["dom", "2dom", "total", "roman", "dist2", "minimal-dom", "minimal-total"] {
            let p = get_problem(name).unwrap();
            for n in 1..=3 {
                let g = gamma_range(&p, n, 5).unwrap();
                for m in 1..=5 {
                    if n * m > 12 {
                        continue;
                    }
                    assert_eq!(g[m - 1], brute_min_cost(&p, n, m).unwrap(), "{name} {n}x{m}");
                }
            }
        }
    }

    #[test]
    fn known_values() {
        let two = get_problem("2dom").unwrap();
        assert_eq!(gamma(&two, 1, 1).unwrap(), Some(1));
        assert_eq!(gamma(&two, 3, 3).unwrap(), Some(4));
        assert_eq!(gamma(&two, 5, 14).unwrap(), Some(31));
        let roman = get_problem("roman").unwrap();
        assert_eq!(gamma(&roman, 4, 6).unwrap(), Some(13));
        assert_eq!(brute_min_cost(&roman, 4, 6).unwrap(), Some(13));
        assert_eq!(gamma(&get_problem("total").unwrap(), 1, 1).unwrap(), None);
    }

    #[test]
    fn two_dom_small_heights_match_table() {
        let p = get_problem("2dom").unwrap();
        for n in 1..=5 {
            let g = gamma_range(&p, n, 30).unwrap();
            for m in 1..=30 {
                assert_eq!(g[m - 1], reference_formula("2dom", n, m).unwrap(), "{n}x{m}");
            }
        }
    }

    #[test]
    fn two_dom_recurrences() {
        let p = get_problem("2dom").unwrap();
        for (n, r, inc, start) in [(1, 2, 1, 3), (2, 1, 1, 3), (3, 3, 4, 5), (4, 4, 7, 8), (5, 7, 15, 14)] {
            let rec = find_recurrence(&p, n).unwrap();
            assert_eq!((rec.period, rec.increment), (r, inc), "n = {n}");
            assert!(rec.start <= start, "n = {n}: start {}", rec.start);
        }
    }

    #[test]
    fn formula_reproduces_values() {
        let p = get_problem("roman").unwrap();
        let (_, f) = formula_for(&p, 3).unwrap();
        let g = gamma_range(&p, 3, 40).unwrap();
        for m in 1..=40 {
            assert_eq!(f.eval(m), g[m - 1]);
        }
    }

    #[test]
    fn formula_needs_enough_values() {
        let rec = Recurrence { start: 10, period: 4, increment: 3 };
        let err = synthesize_formula(&rec, &[Some(1); 5]).unwrap_err();
        assert_eq!(err, Error::InsufficientInitialValues { needed: 9, got: 5 });
    }
}
