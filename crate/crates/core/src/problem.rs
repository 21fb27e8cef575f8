//! Registry of domination variants: alphabets, local column rules, costs and loss models.

use serde::Serialize;

use crate::error::{Error, Result};

/// Which rule variant a column state is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Rows 0 and h−1 are grid borders.
    Interior,
    /// Row 0 faces an unseen region that may supply one dominator; row h−1 is a grid border.
    LossBand,
    /// Domination and privacy requirements are waived on rows 0 and h−1.
    MiddleRows,
}

impl Mode {
    pub fn tag(self) -> &'static str {
        match self {
            Mode::Interior => "interior",
            Mode::LossBand => "loss_band",
            Mode::MiddleRows => "middle_rows",
        }
    }
}

/// What a cell holds, independent of its bookkeeping value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Empty,
    Stone,
    TwoStones,
}

/// Per-role parameters. Loss weights are already multiplied by the loss scale.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Kind {
    pub role: Role,
    /// Dominators contributed to every neighbour.
    pub supply: u8,
    /// Dominators required from neighbours.
    pub req: u8,
    pub cost: u32,
    /// Loss per missing neighbour (grid border).
    pub pos_w: u32,
    /// Loss per dominator beyond `req`.
    pub excess_w: u32,
    /// Loss charged unconditionally.
    pub flat: u32,
    /// Bitmask over kind indices that may not be adjacent to this kind.
    pub excludes: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellValue {
    pub id: u8,
    pub label: &'static str,
    /// Index into `ProblemSpec::kinds`.
    pub kind: u8,
    /// Dominators still owed by the next column (local-rule problems only).
    pub deficit: u8,
}

/// Neighbourhood over which loss is accounted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Neighbourhood {
    /// Four orthogonal neighbours, the cell itself excluded.
    Open,
    /// Radius-2 ball (13 cells), the cell itself included.
    Ball2,
}

/// `γ ≥ ⌈(nm_factor·n·m + ℓ) / divisor⌉` for a scaled border loss `ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LossModel {
    pub scale: u32,
    pub nm_factor: u64,
    pub divisor: u64,
    pub neighbourhood: Neighbourhood,
    /// False when the reversal has never been matched against known values.
    pub validated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub(crate) enum Rules {
    /// Radius 1: value = (kind, deficit).
    Local,
    /// Radius 2: stones within distance two.
    Distance2,
    /// Radius 2 over a three-column history.
    Minimal { closed: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProblemSpec {
    pub name: String,
    pub alphabet: Vec<CellValue>,
    pub kinds: Vec<Kind>,
    pub sigma_rho: Option<(u8, u8)>,
    /// Columns of history a state summarises.
    pub window: usize,
    /// Whether the default rules discard solutions that cannot be optimal.
    pub optimized: bool,
    pub loss_model: Option<LossModel>,
    pub(crate) rules: Rules,
}

/// Neighbourhood descriptor for `local_loss`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellContext {
    pub role: Role,
    /// Dominators seen in the loss neighbourhood.
    pub p: u32,
    /// Loss-neighbourhood cells that fall outside the grid.
    pub missing: u32,
}

pub const PROBLEM_NAMES: &[&str] = &[
    "dom",
    "2dom",
    "roman",
    "roman-plain",
    "total",
    "ab:A,B",
    "dist2",
    "minimal-dom",
    "minimal-total",
];

pub fn get_problem(name: &str) -> Result<ProblemSpec> {
    let unknown = || Error::UnknownProblem(name.to_string());
    match name {
        "dom" => Ok(ab_problem(name, 0, 1)),
        "2dom" => Ok(ab_problem(name, 0, 2)),
        "total" => Ok(ab_problem(name, 1, 1)),
        "roman" => Ok(roman(true)),
        "roman-plain" => Ok(roman(false)),
        "dist2" => Ok(distance2()),
        "minimal-dom" => Ok(minimal(true)),
        "minimal-total" => Ok(minimal(false)),
        _ => {
            let rest = name.strip_prefix("ab:").ok_or_else(unknown)?;
            let (a, b) = rest.split_once(',').ok_or_else(unknown)?;
            let a: u8 = a.trim().parse().map_err(|_| unknown())?;
            let b: u8 = b.trim().parse().map_err(|_| unknown())?;
            if a > 4 || b > 4 {
                return Err(unknown());
            }
            Ok(ab_problem(name, a, b))
        }
    }
}

fn value(id: usize, label: &'static str, kind: u8, deficit: u8) -> CellValue {
    CellValue { id: id as u8, label, kind, deficit }
}

fn ab_problem(name: &str, a: u8, b: u8) -> ProblemSpec {
    let kinds = vec![
        Kind {
            role: Role::Stone,
            supply: 1,
            req: a,
            cost: 1,
            pos_w: 1,
            excess_w: 1,
            flat: 0,
            excludes: 0,
        },
        Kind {
            role: Role::Empty,
            supply: 0,
            req: b,
            cost: 0,
            pos_w: 0,
            excess_w: 1,
            flat: 0,
            excludes: 0,
        },
    ];
    let mut alphabet = Vec::new();
    if a == 0 {
        alphabet.push(value(alphabet.len(), "stone", 0, 0));
    } else {
        alphabet.push(value(alphabet.len(), "stone_ok", 0, 0));
        alphabet.push(value(alphabet.len(), "stone_need_one", 0, 1));
    }
    if b > 0 {
        alphabet.push(value(alphabet.len(), "need_one", 1, 1));
    }
    alphabet.push(value(alphabet.len(), "ok", 1, 0));
    let divisor = 4 + u64::from(b) - u64::from(a);
    ProblemSpec {
        name: name.to_string(),
        alphabet,
        kinds,
        sigma_rho: Some((a, b)),
        window: 1,
        optimized: false,
        loss_model: (divisor > 0).then_some(LossModel {
            scale: 1,
            nm_factor: u64::from(b),
            divisor,
            neighbourhood: Neighbourhood::Open,
            validated: true,
        }),
        rules: Rules::Local,
    }
}

/// Roman domination at loss scale 2: `2ℓ = 10|S2| + 5|S1| − 2nm`.
fn roman(optimized: bool) -> ProblemSpec {
    let kinds = vec![
        Kind {
            role: Role::TwoStones,
            supply: 1,
            req: 0,
            cost: 2,
            pos_w: 2,
            excess_w: 2,
            flat: 0,
            excludes: if optimized { 0b010 } else { 0 },
        },
        Kind {
            role: Role::Stone,
            supply: 0,
            req: 0,
            cost: 1,
            pos_w: 0,
            excess_w: 2,
            flat: 3,
            excludes: if optimized { 0b011 } else { 0 },
        },
        Kind {
            role: Role::Empty,
            supply: 0,
            req: 1,
            cost: 0,
            pos_w: 0,
            excess_w: 2,
            flat: 0,
            excludes: 0,
        },
    ];
    let alphabet = vec![
        value(0, "two_stones", 0, 0),
        value(1, "stone", 1, 0),
        value(2, "ok", 2, 0),
        value(3, "need_one", 2, 1),
    ];
    ProblemSpec {
        name: if optimized { "roman" } else { "roman-plain" }.to_string(),
        alphabet,
        kinds,
        sigma_rho: None,
        window: 1,
        optimized,
        loss_model: Some(LossModel {
            scale: 2,
            nm_factor: 2,
            divisor: 5,
            neighbourhood: Neighbourhood::Open,
            validated: true,
        }),
        rules: Rules::Local,
    }
}

fn set_kinds(pos_w: u32, stone_req: u8) -> Vec<Kind> {
    vec![
        Kind {
            role: Role::Stone,
            supply: 1,
            req: stone_req,
            cost: 1,
            pos_w,
            excess_w: 1,
            flat: 0,
            excludes: 0,
        },
        Kind {
            role: Role::Empty,
            supply: 0,
            req: 1,
            cost: 0,
            pos_w: 0,
            excess_w: 1,
            flat: 0,
            excludes: 0,
        },
    ]
}

pub(crate) mod d2 {
    pub const STONE: u8 = 0;
    pub const OK_PREV: u8 = 1;
    pub const OK: u8 = 2;
    pub const NEED_TWO: u8 = 3;
    pub const NEED_ONE: u8 = 4;
}

fn distance2() -> ProblemSpec {
    let alphabet = vec![
        value(0, "stone", 0, 0),
        value(1, "ok_prev", 1, 0),
        value(2, "ok", 1, 0),
        value(3, "need_dist_two", 1, 0),
        value(4, "need_dist_one", 1, 0),
    ];
    ProblemSpec {
        name: "dist2".to_string(),
        alphabet,
        kinds: set_kinds(1, 1),
        sigma_rho: None,
        window: 2,
        optimized: false,
        loss_model: Some(LossModel {
            scale: 1,
            nm_factor: 1,
            divisor: 13,
            neighbourhood: Neighbourhood::Ball2,
            validated: false,
        }),
        rules: Rules::Distance2,
    }
}

/// Labels are `previous:current`. Previous column: `empty`, `open` (stone still
/// lacking a private neighbour), `settled`. Current column: `empty`, `stone`,
/// `stone_lp` (stone whose left neighbour is private to it).
const MINIMAL_LABELS: [&str; 9] = [
    "empty:empty",
    "empty:stone",
    "empty:stone_lp",
    "open:empty",
    "open:stone",
    "open:stone_lp",
    "settled:empty",
    "settled:stone",
    "settled:stone_lp",
];

fn minimal(closed: bool) -> ProblemSpec {
    let alphabet = MINIMAL_LABELS
        .iter()
        .enumerate()
        .map(|(id, &label)| value(id, label, if id % 3 == 0 { 1 } else { 0 }, 0))
        .collect();
    ProblemSpec {
        name: if closed { "minimal-dom" } else { "minimal-total" }.to_string(),
        alphabet,
        kinds: set_kinds(0, if closed { 0 } else { 1 }),
        sigma_rho: None,
        window: 3,
        optimized: false,
        loss_model: None,
        rules: Rules::Minimal { closed },
    }
}

pub fn cost_of(spec: &ProblemSpec, v: &CellValue) -> u32 {
    spec.kinds[v.kind as usize].cost
}

/// Scaled loss of one cell given its neighbourhood.
pub fn local_loss(spec: &ProblemSpec, ctx: &CellContext) -> u32 {
    let model = spec.loss_model.as_ref();
    let kind = spec
        .kinds
        .iter()
        .find(|k| k.role == ctx.role)
        .unwrap_or_else(|| panic!("{} has no {:?} cells", spec.name, ctx.role));
    match model.map(|m| m.neighbourhood) {
        Some(Neighbourhood::Ball2) => {
            let pos = if kind.supply > 0 { kind.pos_w * ctx.missing } else { 0 };
            pos + ctx.p.saturating_sub(1)
        }
        _ => {
            kind.pos_w * ctx.missing
                + kind.excess_w * ctx.p.saturating_sub(u32::from(kind.req))
                + kind.flat
        }
    }
}

/// Lower bound on γ from a scaled loss, by exact integer ceiling.
pub fn reverse_loss(spec: &ProblemSpec, n: usize, m: usize, loss: u64) -> Result<u64> {
    let model = spec
        .loss_model
        .as_ref()
        .ok_or_else(|| Error::LossUnsupported(spec.name.clone()))?;
    let num = model.nm_factor * (n as u64) * (m as u64) + loss;
    Ok(num.div_ceil(model.divisor))
}

impl ProblemSpec {
    pub fn value(&self, label: &str) -> Option<&CellValue> {
        self.alphabet.iter().find(|v| v.label == label)
    }

    pub fn id(&self, label: &str) -> u8 {
        self.value(label)
            .unwrap_or_else(|| panic!("{} has no value `{label}`", self.name))
            .id
    }

    /// Bits needed per packed cell.
    pub fn bits(&self) -> u32 {
        let n = self.alphabet.len() as u32;
        (u32::BITS - (n - 1).leading_zeros()).max(1)
    }

    /// How far up and down a cell's rules look.
    pub fn radius(&self) -> usize {
        match self.rules {
            Rules::Local => 1,
            Rules::Distance2 | Rules::Minimal { .. } => 2,
        }
    }

    pub fn has_local_rules(&self) -> bool {
        self.rules == Rules::Local
    }

    pub fn cost(&self, v: u8) -> u32 {
        self.kinds[self.alphabet[v as usize].kind as usize].cost
    }

    pub fn role(&self, v: u8) -> Role {
        self.kinds[self.alphabet[v as usize].kind as usize].role
    }

    pub(crate) fn kind_of(&self, v: u8) -> &Kind {
        &self.kinds[self.alphabet[v as usize].kind as usize]
    }

    pub(crate) fn supply(&self, v: u8) -> u8 {
        self.kind_of(v).supply
    }

    pub(crate) fn deficit(&self, v: u8) -> u8 {
        self.alphabet[v as usize].deficit
    }

    /// Whether the kinds of `u` and `v` may be adjacent.
    pub(crate) fn compatible_kinds(&self, u: u8, v: u8) -> bool {
        let ku = self.alphabet[u as usize].kind;
        let kv = self.alphabet[v as usize].kind;
        self.kinds[ku as usize].excludes & (1 << kv) == 0
    }

    fn req_at(&self, v: u8, i: usize, h: usize, mode: Mode) -> u8 {
        if mode == Mode::MiddleRows && (i == 0 || i + 1 == h) {
            0
        } else {
            self.kind_of(v).req
        }
    }

    fn vertical_supply(&self, s: &[u8], i: usize) -> u8 {
        let up = if i > 0 { self.supply(s[i - 1]) } else { 0 };
        let down = if i + 1 < s.len() { self.supply(s[i + 1]) } else { 0 };
        up + down
    }

    fn vertical_kinds_ok(&self, s: &[u8], i: usize) -> bool {
        (i == 0 || self.compatible_kinds(s[i], s[i - 1]))
            && (i + 1 >= s.len() || self.compatible_kinds(s[i], s[i + 1]))
    }

    /// Intra-column validity of cell `i`; reads cells within `radius` of `i`.
    pub(crate) fn cell_valid(&self, s: &[u8], i: usize, mode: Mode) -> bool {
        match self.rules {
            Rules::Local => {
                let free = u8::from(mode == Mode::LossBand && i == 0);
                self.vertical_kinds_ok(s, i)
                    && deficit_matches(
                        self.deficit(s[i]),
                        self.req_at(s[i], i, s.len(), mode),
                        self.vertical_supply(s, i),
                        1 + free,
                    )
            }
            Rules::Distance2 => dist2_valid(s, i),
            Rules::Minimal { closed } => minimal_valid(s, i, closed, relaxed(mode, i, s.len())),
        }
    }

    /// Whether cell `i` is consistent with an empty column to the left.
    pub(crate) fn cell_first(&self, s: &[u8], i: usize, mode: Mode) -> bool {
        match self.rules {
            Rules::Local => {
                let free = u8::from(mode == Mode::LossBand && i == 0);
                deficit_matches(
                    self.deficit(s[i]),
                    self.req_at(s[i], i, s.len(), mode),
                    self.vertical_supply(s, i),
                    free,
                )
            }
            Rules::Distance2 => s[i] == dist2_next(None, s, i),
            Rules::Minimal { .. } => s[i] < 2,
        }
    }

    /// Whether cell `i` needs nothing from a column to the right.
    pub(crate) fn cell_end(&self, s: &[u8], i: usize, mode: Mode) -> bool {
        match self.rules {
            Rules::Local => self.deficit(s[i]) == 0,
            Rules::Distance2 => s[i] != d2::NEED_TWO && s[i] != d2::NEED_ONE,
            Rules::Minimal { closed } => minimal_end(s, i, closed, mode),
        }
    }

    /// Whether cell `i` of `t` may follow cell `i` of `s`; reads within `radius`.
    pub(crate) fn cell_compat(&self, s: &[u8], t: &[u8], i: usize, mode: Mode) -> bool {
        match self.rules {
            Rules::Local => {
                let free = u8::from(mode == Mode::LossBand && i == 0);
                let left = self.supply(s[i]);
                self.deficit(s[i]) <= self.supply(t[i])
                    && self.compatible_kinds(s[i], t[i])
                    && deficit_matches(
                        self.deficit(t[i]),
                        self.req_at(t[i], i, t.len(), mode),
                        left + self.vertical_supply(t, i),
                        free,
                    )
            }
            Rules::Distance2 => t[i] == dist2_next(Some(s), t, i),
            Rules::Minimal { closed } => minimal_compat(s, t, i, closed, mode),
        }
    }
}

/// `d = max(0, req − received − e)` for some `e ≤ slack` supplied later or from outside.
fn deficit_matches(d: u8, req: u8, received: u8, slack: u8) -> bool {
    (0..=slack).any(|e| d == req.saturating_sub(received + e))
}

fn relaxed(mode: Mode, i: usize, h: usize) -> bool {
    mode == Mode::MiddleRows && (i == 0 || i + 1 == h)
}

fn at(s: &[u8], i: isize) -> Option<u8> {
    (i >= 0 && (i as usize) < s.len()).then(|| s[i as usize])
}

/// Value forced at cell `i` of `t` by the stones of `t` and the previous column `s`
/// (`None` stands for an empty, fully dominated column).
fn dist2_next(s: Option<&[u8]>, t: &[u8], i: usize) -> u8 {
    use d2::*;
    let i = i as isize;
    let stone = |col: &[u8], k: isize| at(col, k) == Some(STONE);
    if stone(t, i) {
        return STONE;
    }
    let prev = s.map_or(OK, |s| s[i as usize]);
    if prev == STONE {
        return OK_PREV;
    }
    if prev == NEED_ONE {
        return u8::MAX;
    }
    let near = stone(t, i - 1) || stone(t, i + 1);
    if prev == NEED_TWO && !near {
        return NEED_ONE;
    }
    let from_prev = prev == OK_PREV || s.is_some_and(|s| stone(s, i - 1) || stone(s, i + 1));
    if from_prev || near || stone(t, i - 2) || stone(t, i + 2) {
        OK
    } else {
        NEED_TWO
    }
}

fn dist2_valid(s: &[u8], i: usize) -> bool {
    use d2::*;
    let i = i as isize;
    let near_bad = |k: isize| matches!(at(s, k), Some(STONE) | Some(OK_PREV));
    match s[i as usize] {
        NEED_TWO => {
            !near_bad(i - 1)
                && !near_bad(i + 1)
                && at(s, i - 2) != Some(STONE)
                && at(s, i + 2) != Some(STONE)
        }
        NEED_ONE => !near_bad(i - 1) && !near_bad(i + 1),
        _ => true,
    }
}

/// Decoded minimal-variant cell: stone two columns back (`xp`), its privacy flag
/// (`a`), stone one column back (`xc`), left-private flag (`b`).
#[derive(Clone, Copy)]
struct MinCell {
    xp: bool,
    a: bool,
    xc: bool,
    b: bool,
}

fn min_cell(v: u8) -> MinCell {
    let (p, c) = (v / 3, v % 3);
    MinCell { xp: p > 0, a: p == 2, xc: c > 0, b: c == 2 }
}

fn min_get(s: &[u8], i: isize) -> Option<MinCell> {
    at(s, i).map(min_cell)
}

fn xc(s: &[u8], i: isize) -> u8 {
    u8::from(min_get(s, i).is_some_and(|c| c.xc))
}

fn xp(s: &[u8], i: isize) -> u8 {
    u8::from(min_get(s, i).is_some_and(|c| c.xp))
}

/// Stones dominating cell `i` of the column `s` records as current, given the next
/// column's stones `next`.
fn min_count(s: &[u8], next: impl Fn(isize) -> u8, i: isize, closed: bool) -> u8 {
    let own = if closed { xc(s, i) } else { 0 };
    own + xp(s, i) + xc(s, i - 1) + xc(s, i + 1) + next(i)
}

fn minimal_valid(s: &[u8], i: usize, closed: bool, relaxed_row: bool) -> bool {
    let c = min_cell(s[i]);
    let i = i as isize;
    if c.b && (xp(s, i - 1) == 1 || xp(s, i + 1) == 1 || (closed && c.xp)) {
        return false;
    }
    if c.xp && !c.a && !relaxed_row && (xc(s, i - 1) == 1 || xc(s, i + 1) == 1 || (closed && c.xc)) {
        return false;
    }
    true
}

fn minimal_check(
    s: &[u8],
    next: impl Fn(isize) -> u8 + Copy,
    i: usize,
    closed: bool,
    mode: Mode,
    next_flags: Option<(bool, bool)>,
) -> bool {
    let h = s.len();
    let c = min_cell(s[i]);
    let ii = i as isize;
    let count = |k: isize| min_count(s, next, k, closed);
    let private = |k: isize| k >= 0 && (k as usize) < h && count(k) == 1;
    let relax = relaxed(mode, i, h);
    let cnt = count(ii);
    if !relax && cnt == 0 {
        return false;
    }
    if c.xp && !relax && !c.a && cnt != 1 {
        return false;
    }
    let settled = c.b || (closed && private(ii)) || private(ii - 1) || private(ii + 1);
    match next_flags {
        Some((a_next, b_next)) => {
            if c.xc && a_next != settled {
                return false;
            }
            if next(ii) == 1 && b_next != (cnt == 1) {
                return false;
            }
            true
        }
        None => !c.xc || relax || settled,
    }
}

fn minimal_compat(s: &[u8], t: &[u8], i: usize, closed: bool, mode: Mode) -> bool {
    let ct = min_cell(t[i]);
    let cs = min_cell(s[i]);
    if ct.xp != cs.xc {
        return false;
    }
    let next = |k: isize| xc(t, k);
    minimal_check(s, next, i, closed, mode, Some((ct.a, ct.b)))
}

fn minimal_end(s: &[u8], i: usize, closed: bool, mode: Mode) -> bool {
    minimal_check(s, |_| 0, i, closed, mode, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_alphabets() {
        let labels = |p: &str| {
            get_problem(p).unwrap().alphabet.iter().map(|v| v.label).collect::<Vec<_>>()
        };
        assert_eq!(labels("2dom"), ["stone", "need_one", "ok"]);
        assert_eq!(labels("roman"), ["two_stones", "stone", "ok", "need_one"]);
        assert_eq!(labels("total"), ["stone_ok", "stone_need_one", "need_one", "ok"]);
        assert_eq!(labels("ab:1,1"), labels("total"));
        assert!(matches!(get_problem("frobnicate"), Err(Error::UnknownProblem(_))));
        assert!(matches!(get_problem("ab:1"), Err(Error::UnknownProblem(_))));
        for name in ["dom", "2dom", "roman", "total", "ab:2,3", "dist2", "minimal-dom", "minimal-total"] {
            let p = get_problem(name).unwrap();
            assert!(p.bits() <= 4);
            for (k, v) in p.alphabet.iter().enumerate() {
                assert_eq!(v.id as usize, k);
            }
        }
    }

    #[test]
    fn costs() {
        let d = get_problem("2dom").unwrap();
        assert_eq!(cost_of(&d, d.value("stone").unwrap()), 1);
        let r = get_problem("roman").unwrap();
        assert_eq!(cost_of(&r, r.value("two_stones").unwrap()), 2);
        assert_eq!(cost_of(&r, r.value("ok").unwrap()), 0);
        for p in ["2dom", "roman", "total", "dist2", "minimal-dom"] {
            let p = get_problem(p).unwrap();
            for v in &p.alphabet {
                let stoneless = !v.label.contains("stone");
                assert_eq!(cost_of(&p, v) == 0, stoneless, "{} {}", p.name, v.label);
            }
        }
    }

    #[test]
    fn local_loss_examples() {
        let d = get_problem("2dom").unwrap();
        let ctx = |role, p, missing| CellContext { role, p, missing };
        assert_eq!(local_loss(&d, &ctx(Role::Stone, 0, 2)), 2);
        assert_eq!(local_loss(&d, &ctx(Role::Stone, 0, 1)), 1);
        assert_eq!(local_loss(&d, &ctx(Role::Stone, 3, 0)), 3);
        assert_eq!(local_loss(&d, &ctx(Role::Empty, 4, 0)), 2);
        assert_eq!(local_loss(&d, &ctx(Role::Empty, 2, 0)), 0);
        assert_eq!(local_loss(&d, &ctx(Role::Empty, 1, 0)), 0);
    }

    #[test]
    fn reverse_loss_examples() {
        let d = get_problem("2dom").unwrap();
        assert_eq!(reverse_loss(&d, 3, 4, 12).unwrap(), 6);
        let t = get_problem("ab:1,1").unwrap();
        assert_eq!(reverse_loss(&t, 2, 2, 4).unwrap(), 2);
        let r = get_problem("roman").unwrap();
        assert_eq!(reverse_loss(&r, 5, 5, 10).unwrap(), 12);
        let m = get_problem("minimal-dom").unwrap();
        assert!(reverse_loss(&m, 2, 2, 0).is_err());
    }

    #[test]
    fn deficit_rule() {
        assert!(deficit_matches(1, 2, 1, 0));
        assert!(!deficit_matches(0, 2, 1, 0));
        assert!(deficit_matches(0, 2, 1, 1));
        assert!(!deficit_matches(1, 2, 0, 0));
        assert!(deficit_matches(1, 2, 0, 1));
        assert!(deficit_matches(0, 0, 3, 0));
    }
}
