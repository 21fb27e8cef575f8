//! Brute-force ground truth straight from the global definitions. Nothing here
//! touches column states.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::problem::{local_loss, CellContext, ProblemSpec, Role};

/// Largest number of cells enumerated for set problems.
pub const MAX_SET_CELLS: usize = 20;
/// Largest number of cells enumerated for Roman assignments.
pub const MAX_ROMAN_CELLS: usize = 12;
/// Cell limit for the Roman minimum, which only enumerates the doubled set.
pub const MAX_ROMAN_MIN_CELLS: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Definition {
    /// Members need `a` neighbours in S, non-members `b`.
    Ab(u8, u8),
    /// Every vertex within distance two of S.
    Distance2,
    /// Inclusion-minimal dominating (closed) or total dominating (open) sets.
    Minimal { closed: bool },
    /// Pairs (S1, S2); `restricted` forbids S1 next to S1 ∪ S2.
    Roman { restricted: bool },
}

fn definition(spec: &ProblemSpec) -> Definition {
    match spec.name.as_str() {
        "dist2" => Definition::Distance2,
        "minimal-dom" => Definition::Minimal { closed: true },
        "minimal-total" => Definition::Minimal { closed: false },
        "roman" => Definition::Roman { restricted: true },
        "roman-plain" => Definition::Roman { restricted: false },
        _ => {
            let (a, b) = spec.sigma_rho.expect("set problem without (a,b)");
            Definition::Ab(a, b)
        }
    }
}

/// Rectangular grid with cell `(r, c)` at bit `r·cols + c`.
#[derive(Clone, Copy, Debug)]
struct Grid {
    rows: usize,
    cols: usize,
    full: u32,
    not_first_col: u32,
    not_last_col: u32,
}

impl Grid {
    fn new(rows: usize, cols: usize) -> Self {
        let cells = rows * cols;
        let full = if cells == 32 { u32::MAX } else { (1u32 << cells) - 1 };
        let mut first = 0u32;
        let mut last = 0u32;
        for r in 0..rows {
            first |= 1 << (r * cols);
            last |= 1 << (r * cols + cols - 1);
        }
        Grid { rows, cols, full, not_first_col: full & !first, not_last_col: full & !last }
    }

    fn cells(&self) -> usize {
        self.rows * self.cols
    }

    /// For each direction, the cells whose neighbour in that direction is in `s`.
    fn shifted(&self, s: u32) -> [u32; 4] {
        [
            (s >> 1) & self.not_last_col,
            (s << 1) & self.not_first_col,
            s >> self.cols,
            (s << self.cols) & self.full,
        ]
    }

    fn neighbours(&self, s: u32) -> u32 {
        self.shifted(s).iter().fold(0, |a, &b| a | b)
    }

    /// `at_least[k]` = cells with at least `k` neighbours in `s`.
    fn at_least(&self, s: u32) -> [u32; 5] {
        let mut c = [self.full, 0, 0, 0, 0];
        for d in self.shifted(s) {
            for k in (1..=4).rev() {
                c[k] |= c[k - 1] & d;
            }
        }
        c
    }

    fn neighbour_count(&self, s: u32, v: usize) -> u32 {
        let (r, c) = (v / self.cols, v % self.cols);
        let mut k = 0;
        let mut test = |rr: usize, cc: usize| {
            if s >> (rr * self.cols + cc) & 1 == 1 {
                k += 1;
            }
        };
        if r > 0 {
            test(r - 1, c);
        }
        if r + 1 < self.rows {
            test(r + 1, c);
        }
        if c > 0 {
            test(r, c - 1);
        }
        if c + 1 < self.cols {
            test(r, c + 1);
        }
        k
    }

    fn degree(&self, v: usize) -> u32 {
        self.neighbour_count(self.full, v)
    }
}

fn satisfies_ab(g: &Grid, s: u32, a: u8, b: u8) -> bool {
    let c = g.at_least(s);
    let members_ok = s & !c[a as usize] == 0;
    let others_ok = (g.full & !s) & !c[b as usize] == 0;
    members_ok && others_ok
}

fn dominating(g: &Grid, s: u32, closed: bool) -> bool {
    let covered = g.neighbours(s) | if closed { s } else { 0 };
    covered == g.full
}

fn satisfies_set(g: &Grid, def: Definition, s: u32) -> bool {
    match def {
        Definition::Ab(a, b) => satisfies_ab(g, s, a, b),
        Definition::Distance2 => {
            let one = s | g.neighbours(s);
            (one | g.neighbours(one)) == g.full
        }
        Definition::Minimal { closed } => {
            dominating(g, s, closed)
                && (0..g.cells()).filter(|&v| s >> v & 1 == 1).all(|v| !dominating(g, s & !(1 << v), closed))
        }
        Definition::Roman { .. } => unreachable!("Roman assignments are not sets"),
    }
}

/// Roman assignment digits: 0 empty, 1 single stone, 2 two stones.
fn roman_masks(mut code: u64, cells: usize) -> (u32, u32) {
    let (mut s1, mut s2) = (0u32, 0u32);
    for v in 0..cells {
        match code % 3 {
            1 => s1 |= 1 << v,
            2 => s2 |= 1 << v,
            _ => {}
        }
        code /= 3;
    }
    (s1, s2)
}

fn roman_ok(g: &Grid, s1: u32, s2: u32, restricted: bool) -> bool {
    let covered = s1 | s2 | g.neighbours(s2);
    covered == g.full && (!restricted || g.neighbours(s1 | s2) & s1 == 0)
}

fn check_size(def: Definition, cells: usize) -> Result<()> {
    let cap = match def {
        Definition::Roman { .. } => MAX_ROMAN_CELLS,
        _ => MAX_SET_CELLS,
    };
    if cells == 0 || cells > cap {
        return Err(Error::TooLarge);
    }
    Ok(())
}

/// Minimum cost over all assignments meeting the definition; `None` when none exists.
pub fn brute_min_cost(spec: &ProblemSpec, n: usize, m: usize) -> Result<Option<u32>> {
    let def = definition(spec);
    if let Definition::Roman { .. } = def {
        return brute_roman_min(n, m).map(Some);
    }
    check_size(def, n * m)?;
    let g = Grid::new(n, m);
    let best = match def {
        Definition::Roman { .. } => unreachable!(),
        _ => (0..=g.full)
            .into_par_iter()
            .filter(|&s| satisfies_set(&g, def, s))
            .map(u32::count_ones)
            .min(),
    };
    Ok(best)
}

/// Every cell outside `S2` and its neighbours must be in `S1`, so the minimum is
/// over `S2` alone.
fn brute_roman_min(n: usize, m: usize) -> Result<u32> {
    if n * m == 0 || n * m > MAX_ROMAN_MIN_CELLS {
        return Err(Error::TooLarge);
    }
    let g = Grid::new(n, m);
    let cells = g.cells() as u32;
    let best = (0..=g.full)
        .into_par_iter()
        .map(|s2| {
            let covered = s2 | g.neighbours(s2);
            2 * s2.count_ones() + cells - covered.count_ones()
        })
        .min();
    Ok(best.expect("the full set is a candidate"))
}

/// Number of sets meeting the definition.
pub fn brute_count(spec: &ProblemSpec, n: usize, m: usize) -> Result<BigUint> {
    let def = definition(spec);
    check_size(def, n * m)?;
    let g = Grid::new(n, m);
    let count: u64 = match def {
        Definition::Roman { restricted } => (0..3u64.pow(g.cells() as u32))
            .into_par_iter()
            .filter(|&code| {
                let (s1, s2) = roman_masks(code, g.cells());
                roman_ok(&g, s1, s2, restricted)
            })
            .count() as u64,
        _ => (0..=g.full).into_par_iter().filter(|&s| satisfies_set(&g, def, s)).count() as u64,
    };
    Ok(BigUint::from(count))
}

/// All sets meeting a set definition on the grid (small grids only).
pub fn brute_sets(spec: &ProblemSpec, n: usize, m: usize) -> Result<Vec<u32>> {
    let def = definition(spec);
    if matches!(def, Definition::Roman { .. }) {
        return Err(Error::InvalidArgument("Roman assignments are pairs of sets".into()));
    }
    check_size(def, n * m)?;
    let g = Grid::new(n, m);
    Ok((0..=g.full).filter(|&s| satisfies_set(&g, def, s)).collect())
}

/// Whether `s` (bit `r·m + c`) meets the problem's definition on `G_{n,m}`.
pub fn is_solution(spec: &ProblemSpec, n: usize, m: usize, s: u32) -> bool {
    satisfies_set(&Grid::new(n, m), definition(spec), s)
}

/// Sum of `local_loss` over every cell of a set on `G_{n,m}`.
pub fn set_loss(spec: &ProblemSpec, n: usize, m: usize, s: u32) -> u64 {
    let g = Grid::new(n, m);
    (0..g.cells())
        .map(|v| {
            let role = if s >> v & 1 == 1 { Role::Stone } else { Role::Empty };
            let ctx = CellContext { role, p: g.neighbour_count(s, v), missing: 4 - g.degree(v) };
            u64::from(local_loss(spec, &ctx))
        })
        .sum()
}

/// Minimum loss over `h × length` bands: row 0 and the first and last columns
/// face unseen cells that may each supply one dominator; row `h − 1` is the grid
/// border. `None` when no filling exists.
pub fn brute_band_loss(spec: &ProblemSpec, h: usize, length: usize) -> Result<Option<u64>> {
    let def = definition(spec);
    if matches!(def, Definition::Minimal { .. } | Definition::Distance2) || spec.loss_model.is_none() {
        return Err(Error::LossUnsupported(spec.name.clone()));
    }
    if h == 0 || length == 0 || h > 3 || length > 6 {
        return Err(Error::TooLarge);
    }
    check_size(def, h * length)?;
    let g = Grid::new(h, length);
    let cells = g.cells();
    let unseen = |v: usize| {
        let (r, c) = (v / length, v % length);
        u32::from(r == 0) + u32::from(c == 0) + u32::from(c + 1 == length)
    };
    let missing = |v: usize| u32::from(v / length + 1 == h);
    let loss_of = |roles: &dyn Fn(usize) -> Role, supply: u32| -> Option<u64> {
        let mut total = 0u64;
        for v in 0..cells {
            let role = roles(v);
            let p = g.neighbour_count(supply, v);
            let req = match (def, role) {
                (Definition::Ab(a, _), Role::Stone) => u32::from(a),
                (Definition::Ab(_, b), Role::Empty) => u32::from(b),
                (Definition::Roman { .. }, Role::Empty) => 1,
                _ => 0,
            };
            if p + unseen(v) < req {
                return None;
            }
            total += u64::from(local_loss(spec, &CellContext { role, p, missing: missing(v) }));
        }
        Some(total)
    };
    let best = match def {
        Definition::Roman { restricted } => (0..3u64.pow(cells as u32))
            .into_par_iter()
            .filter_map(|code| {
                let (s1, s2) = roman_masks(code, cells);
                if restricted && g.neighbours(s1 | s2) & s1 != 0 {
                    return None;
                }
                let role = |v: usize| {
                    if s2 >> v & 1 == 1 {
                        Role::TwoStones
                    } else if s1 >> v & 1 == 1 {
                        Role::Stone
                    } else {
                        Role::Empty
                    }
                };
                loss_of(&role, s2)
            })
            .min(),
        _ => (0..=g.full)
            .into_par_iter()
            .filter_map(|s| {
                let role = |v: usize| if s >> v & 1 == 1 { Role::Stone } else { Role::Empty };
                loss_of(&role, s)
            })
            .min(),
    };
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::get_problem;

    fn p(name: &str) -> ProblemSpec {
        get_problem(name).unwrap()
    }

    #[test]
    fn min_cost_examples() {
        assert_eq!(brute_min_cost(&p("2dom"), 2, 2).unwrap(), Some(2));
        assert_eq!(brute_min_cost(&p("roman"), 1, 3).unwrap(), Some(2));
        assert_eq!(brute_min_cost(&p("dom"), 3, 3).unwrap(), Some(3));
        assert_eq!(brute_min_cost(&p("total"), 1, 1).unwrap(), None);
        assert_eq!(brute_min_cost(&p("dist2"), 1, 5).unwrap(), Some(1));
    }

    #[test]
    fn roman_minimum_agrees_with_full_enumeration() {
        for (n, m) in [(1, 4), (2, 3), (2, 5), (3, 3), (3, 4)] {
            let g = Grid::new(n, m);
            let full = (0..3u64.pow(g.cells() as u32))
                .filter_map(|code| {
                    let (s1, s2) = roman_masks(code, g.cells());
                    roman_ok(&g, s1, s2, false).then(|| s1.count_ones() + 2 * s2.count_ones())
                })
                .min();
            assert_eq!(brute_min_cost(&p("roman"), n, m).unwrap(), full, "{n}x{m}");
        }
    }

    #[test]
    fn count_examples() {
        assert_eq!(brute_count(&p("dom"), 1, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(brute_count(&p("dom"), 2, 2).unwrap(), BigUint::from(11u32));
        assert_eq!(brute_count(&p("total"), 2, 2).unwrap(), BigUint::from(9u32));
        assert_eq!(brute_count(&p("minimal-total"), 1, 1).unwrap(), BigUint::from(0u32));
        assert_eq!(brute_count(&p("minimal-dom"), 1, 2).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn caps() {
        assert_eq!(brute_min_cost(&p("dom"), 3, 7), Err(Error::TooLarge));
        assert_eq!(brute_min_cost(&p("roman"), 5, 5), Err(Error::TooLarge));
        assert_eq!(brute_count(&p("roman"), 2, 7), Err(Error::TooLarge));
        assert_eq!(brute_band_loss(&p("2dom"), 4, 2), Err(Error::TooLarge));
        assert!(brute_band_loss(&p("minimal-dom"), 2, 2).is_err());
    }

    #[test]
    fn all_stone_band_loss_is_positional_plus_adjacency() {
        // With everything forced to stones the loss is 2·(internal edges) + bottom-row cells.
        let spec = p("2dom");
        let g = Grid::new(2, 3);
        let s = g.full;
        let direct: u64 = (0..6)
            .map(|v| {
                let ctx = CellContext { role: Role::Stone, p: g.neighbour_count(s, v), missing: u32::from(v >= 3) };
                u64::from(local_loss(&spec, &ctx))
            })
            .sum();
        assert_eq!(direct, 2 * 7 + 3);
    }

    #[test]
    fn loss_identity_on_small_grids() {
        let spec = p("2dom");
        for (n, m) in [(2, 3), (3, 3), (3, 4)] {
            for s in brute_sets(&spec, n, m).unwrap() {
                let d = u64::from(s.count_ones());
                let nm = (n * m) as u64;
                assert_eq!(set_loss(&spec, n, m, s) + 2 * nm, 6 * d);
            }
        }
    }
}
