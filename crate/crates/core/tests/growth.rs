use gdl_core::counting::{count_range, growth_bounds};
use gdl_core::problem::{get_problem, Mode};
use gdl_core::rauzy::{growth_rate, growth_sweep, DEFAULT_WORD_BUDGET, STABILITY_TOL};
use gdl_core::state::enumerate_states;

#[test]
fn rauzy_rates_fall_then_settle() {
    for name in ["2dom", "total", "roman", "dom", "dist2"] {
        let sweep = growth_sweep(&get_problem(name).unwrap(), 8, DEFAULT_WORD_BUDGET).unwrap();
        assert!(sweep.stable_order.is_some(), "{name}: {sweep:?}");
        for w in sweep.rates.windows(2) {
            assert!(w[1] <= w[0] + STABILITY_TOL, "{name}: {:?}", sweep.rates);
        }
    }
}

#[test]
fn rauzy_rate_tracks_state_count_ratio() {
    let spec = get_problem("2dom").unwrap();
    let rate = growth_rate(&spec, 4).unwrap();
    let count = |h| enumerate_states(&spec, h, Mode::Interior, false).unwrap().len() as f64;
    let ratio = count(13) / count(12);
    assert!((ratio - rate).abs() < 0.05, "{ratio} vs {rate}");
}

#[test]
fn brackets_nest_across_heights() {
    for name in ["dom", "total", "minimal-dom"] {
        let spec = get_problem(name).unwrap();
        let brackets: Vec<_> = (3..=7).map(|n| growth_bounds(&spec, n).unwrap()).collect();
        for a in &brackets {
            for b in &brackets {
                assert!(a.lower <= b.upper, "{name}: lower({}) > upper({})", a.height, b.height);
            }
        }
    }
}

#[test]
fn count_radius_matches_count_growth() {
    let spec = get_problem("dom").unwrap();
    let b = growth_bounds(&spec, 4).unwrap();
    let counts = count_range(&spec, 4, 60).unwrap();
    let ratio = counts[59].to_string().parse::<f64>().unwrap() / counts[58].to_string().parse::<f64>().unwrap();
    assert!((ratio - b.radius).abs() < 1e-6 * b.radius, "{ratio} vs {}", b.radius);
}
