//! Exact counts of dominating sets by column transfer in (+,×), and growth-rate
//! brackets from spectral radii of the per-height transfer graphs.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::problem::{Mode, ProblemSpec};
use crate::semiring::{spectral_radius, Real, DEFAULT_MAX_ITERS, DEFAULT_TOL};
use crate::solver::{build_system, system_from_states, TransferSystem};
use crate::state::{enumerate_states, StateSet};

/// Problems whose states are in bijection with the counted sets.
pub const COUNTABLE: &[&str] = &["dom", "2dom", "total", "minimal-dom", "minimal-total"];

pub fn require_countable(spec: &ProblemSpec) -> Result<()> {
    if spec.optimized || spec.kinds.iter().any(|k| k.cost > 1) {
        return Err(Error::InvalidArgument(format!("{} cannot be counted", spec.name)));
    }
    Ok(())
}

/// Counts for `m = 1..=m_max` from an unpruned system.
pub fn count_range_in(sys: &TransferSystem, m_max: usize) -> Vec<BigUint> {
    assert!(!sys.states.pruned_by_symmetry, "counting needs every state");
    let preds: Vec<&[u32]> = (0..sys.len()).map(|j| sys.transposed.row(j).0).collect();
    let mut v: Vec<BigUint> =
        sys.first.iter().map(|&f| if f { BigUint::one() } else { BigUint::zero() }).collect();
    let mut out = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let total = v.iter().zip(&sys.end).filter(|(_, &e)| e).fold(BigUint::zero(), |acc, (x, _)| acc + x);
        out.push(total);
        if m == m_max {
            break;
        }
        v = preds
            .par_iter()
            .with_min_len(64)
            .map(|ps| ps.iter().fold(BigUint::zero(), |acc, &i| acc + &v[i as usize]))
            .collect();
    }
    out
}

pub fn count_range(spec: &ProblemSpec, n: usize, m_max: usize) -> Result<Vec<BigUint>> {
    require_countable(spec)?;
    if n == 0 {
        return Err(Error::InvalidArgument("grid sides must be positive".into()));
    }
    let sys = build_system(spec, n, Mode::Interior, false)?;
    Ok(count_range_in(&sys, m_max))
}

/// Number of sets of the problem's kind on the `n × m` grid.
pub fn count_sets(spec: &ProblemSpec, n: usize, m: usize) -> Result<BigUint> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument("grid sides must be positive".into()));
    }
    Ok(count_range(spec, n, m)?.pop().expect("m ≥ 1"))
}

/// Perron root of the transfer graph restricted to states on some first→end path.
pub fn transfer_radius(sys: &TransferSystem) -> Result<f64> {
    let (sub, _) = sys.matrix.restrict(&sys.useful());
    if sub.dim() == 0 {
        return Ok(0.0);
    }
    spectral_radius(&sub.map(|_| Real(1.0)), DEFAULT_TOL, DEFAULT_MAX_ITERS)
}

/// Growth-rate estimates at one height. Values come from floating-point power
/// iteration and are not certified.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthBracket {
    pub problem: String,
    pub height: usize,
    /// `ρ(T_n)^{1/n}`.
    pub lower: f64,
    /// `ρ(T*_n)^{1/n}`, with requirements on the outer rows waived.
    pub upper: f64,
    /// `ρ(T_{n+1}) / ρ(T_n)`.
    pub ratio: f64,
    pub radius: f64,
    pub next_radius: f64,
    pub certified: bool,
}

pub fn growth_bounds(spec: &ProblemSpec, n: usize) -> Result<GrowthBracket> {
    growth_bounds_with(spec, n, &|h, mode| enumerate_states(spec, h, mode, false))
}

/// `growth_bounds` with unpruned state sets supplied by `states(height, mode)`.
pub fn growth_bounds_with(
    spec: &ProblemSpec,
    n: usize,
    states: &dyn Fn(usize, Mode) -> Result<StateSet>,
) -> Result<GrowthBracket> {
    require_countable(spec)?;
    if n < 3 {
        return Err(Error::InvalidArgument("growth brackets need height at least 3".into()));
    }
    let radius_of = |h, mode| transfer_radius(&system_from_states(spec, states(h, mode)?));
    let radius = radius_of(n, Mode::Interior)?;
    let next_radius = radius_of(n + 1, Mode::Interior)?;
    let relaxed = radius_of(n, Mode::MiddleRows)?;
    let root = |x: f64| x.powf(1.0 / n as f64);
    Ok(GrowthBracket {
        problem: spec.name.clone(),
        height: n,
        lower: root(radius),
        upper: root(relaxed),
        ratio: next_radius / radius,
        radius,
        next_radius,
        certified: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_count;
    use crate::problem::get_problem;

    #[test]
    fn counts_match_exhaustive_enumeration() {
        for name in COUNTABLE {
            let spec = get_problem(name).unwrap();
            for n in 1..=4 {
                let counts = count_range(&spec, n, 4).unwrap();
                for m in 1..=4 {
                    assert_eq!(counts[m - 1], brute_count(&spec, n, m).unwrap(), "{name} {n}x{m}");
                }
            }
        }
    }

    #[test]
    fn examples() {
        let dom = get_problem("dom").unwrap();
        assert_eq!(count_sets(&dom, 1, 1).unwrap(), BigUint::from(1u32));
        assert_eq!(count_sets(&dom, 2, 2).unwrap(), BigUint::from(11u32));
        assert_eq!(count_sets(&get_problem("total").unwrap(), 2, 2).unwrap(), BigUint::from(9u32));
        assert_eq!(count_sets(&get_problem("minimal-dom").unwrap(), 1, 2).unwrap(), BigUint::from(2u32));
        assert!(count_sets(&get_problem("roman").unwrap(), 2, 2).is_err());
    }

    #[test]
    fn brackets_are_ordered() {
        let b = growth_bounds(&get_problem("dom").unwrap(), 5).unwrap();
        assert!(b.lower <= b.upper);
        assert!(b.lower <= 1.959201684 && b.upper >= 1.950022198, "{b:?}");
    }
}
