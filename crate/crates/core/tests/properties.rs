use gdl_core::loss::{lower_bound, LossEngine};
use gdl_core::oracle::{brute_min_cost, is_solution, set_loss};
use gdl_core::problem::{get_problem, Mode};
use gdl_core::semiring::{mat_mul, DenseMinPlus, MinPlus, SparseMatrix, INF};
use gdl_core::solver::{build_system, find_recurrence_with_values, gamma, gamma_range};
use gdl_core::state::{canonical, enumerate_states, is_compatible, is_valid, reflect};
use proptest::prelude::*;

const MIN_PROBLEMS: &[&str] = &["dom", "2dom", "roman", "total", "dist2", "minimal-dom", "minimal-total"];

/// Adds every cell lacking two neighbours in the set until the set 2-dominates.
fn repair_two_dom(n: usize, m: usize, mut s: u32) -> u32 {
    let idx = |r: usize, c: usize| r * m + c;
    loop {
        let mut changed = false;
        for r in 0..n {
            for c in 0..m {
                let v = idx(r, c);
                if s >> v & 1 == 1 {
                    continue;
                }
                let mut k = 0;
                if r > 0 { k += s >> idx(r - 1, c) & 1; }
                if r + 1 < n { k += s >> idx(r + 1, c) & 1; }
                if c > 0 { k += s >> idx(r, c - 1) & 1; }
                if c + 1 < m { k += s >> idx(r, c + 1) & 1; }
                if k < 2 {
                    s |= 1 << v;
                    changed = true;
                }
            }
        }
        if !changed {
            return s;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn two_dom_local_losses_sum_to_global_loss(n in 1usize..=6, m in 1usize..=5, seed: u32) {
        let spec = get_problem("2dom").unwrap();
        let s = repair_two_dom(n, m, seed & ((1u32 << (n * m)) - 1));
        prop_assert!(is_solution(&spec, n, m, s));
        let d = i64::from(s.count_ones());
        let scale = i64::from(spec.loss_model.as_ref().unwrap().scale);
        let global = 4 * d - 2 * ((n * m) as i64 - d);
        prop_assert_eq!(set_loss(&spec, n, m, s) as i64, scale * global);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn transpose_symmetry(p in 0..MIN_PROBLEMS.len(), n in 1usize..=6, m in 1usize..=6) {
        let spec = get_problem(MIN_PROBLEMS[p]).unwrap();
        prop_assert_eq!(gamma(&spec, n, m).unwrap(), gamma(&spec, m, n).unwrap());
    }

    #[test]
    fn subadditive_in_width(p in 0..5usize, n in 1usize..=6, a in 2usize..=8, b in 2usize..=8) {
        let spec = get_problem(MIN_PROBLEMS[p]).unwrap();
        let g = gamma_range(&spec, n, a + b).unwrap();
        if let (Some(x), Some(y), Some(z)) = (g[a - 1], g[b - 1], g[a + b - 1]) {
            prop_assert!(z <= x + y, "{} n={n}: {z} > {x} + {y}", MIN_PROBLEMS[p]);
        }
    }

    #[test]
    fn pruning_is_neutral(p in 0..MIN_PROBLEMS.len(), n in 1usize..=6) {
        let spec = get_problem(MIN_PROBLEMS[p]).unwrap();
        let full = build_system(&spec, n, Mode::Interior, false).unwrap().gamma_range(25);
        let pruned = build_system(&spec, n, Mode::Interior, true).unwrap().gamma_range(25);
        prop_assert_eq!(full, pruned);
    }

    #[test]
    fn oracle_agrees_with_solver(p in 0..MIN_PROBLEMS.len(), n in 1usize..=4, m in 1usize..=4) {
        let spec = get_problem(MIN_PROBLEMS[p]).unwrap();
        prop_assert_eq!(gamma(&spec, n, m).unwrap(), brute_min_cost(&spec, n, m).unwrap());
    }

    #[test]
    fn reflection_preserves_rules(p in 0..MIN_PROBLEMS.len(), h in 1usize..=5, i: prop::sample::Index, j: prop::sample::Index) {
        let spec = get_problem(MIN_PROBLEMS[p]).unwrap();
        let set = enumerate_states(&spec, h, Mode::Interior, false).unwrap();
        let s = set.get(i.index(set.len()));
        let t = set.get(j.index(set.len()));
        prop_assert_eq!(reflect(&reflect(&s)), s);
        prop_assert!(is_valid(&spec, &reflect(&s), Mode::Interior));
        prop_assert_eq!(canonical(&s), canonical(&reflect(&s)));
        prop_assert_eq!(
            is_compatible(&spec, &s, &t, Mode::Interior),
            is_compatible(&spec, &reflect(&s), &reflect(&t), Mode::Interior)
        );
    }

    #[test]
    fn dense_and_sparse_products_agree(dim in 1usize..=7, cells in prop::collection::vec(prop::option::of(0u32..20), 49)) {
        let rows: Vec<Vec<MinPlus>> = (0..dim)
            .map(|i| (0..dim).map(|j| MinPlus(cells[i * 7 + j].unwrap_or(INF))).collect())
            .collect();
        let sparse = SparseMatrix::from_dense(&rows);
        let dense = DenseMinPlus::from_sparse(&sparse);
        let via_sparse = mat_mul(&sparse, &sparse, usize::MAX).unwrap();
        prop_assert_eq!(dense.mul(&dense).to_sparse().to_dense(), via_sparse.to_dense());
        prop_assert_eq!(dense.mul_sparse(&sparse), dense.mul(&dense));
    }
}

#[test]
fn recurrences_replay_on_long_ranges() {
    for (name, heights) in [("2dom", 1..=7), ("total", 2..=6), ("roman", 1..=5)] {
        let spec = get_problem(name).unwrap();
        for n in heights {
            let (rec, _) = find_recurrence_with_values(&spec, n, 4096).unwrap();
            let g = gamma_range(&spec, n, 200).unwrap();
            for m in rec.start.max(rec.period + 1)..=200 {
                let (now, then) = (g[m - 1].unwrap() as i64, g[m - 1 - rec.period].unwrap() as i64);
                assert_eq!(now, then + rec.increment, "{name} n={n} m={m}");
            }
        }
    }
}

#[test]
fn loss_bounds_are_sound_and_grow_with_band_height() {
    for name in ["2dom", "roman", "total", "dom"] {
        let spec = get_problem(name).unwrap();
        let mut engines: Vec<LossEngine> = (1..=3).map(|h| LossEngine::new(&spec, h).unwrap()).collect();
        for n in 7..=11 {
            let g = gamma_range(&spec, n, 14).unwrap();
            for m in n..=14 {
                let mut prev = 0;
                for e in &mut engines {
                    let b = e.lower_bound(n, m).unwrap().lower_bound;
                    assert!(b <= u64::from(g[m - 1].unwrap()), "{name} {n}x{m} h={}", e.height());
                    assert!(b >= prev, "{name} {n}x{m} h={}", e.height());
                    prev = b;
                }
            }
        }
    }
    let spec = get_problem("2dom").unwrap();
    assert_eq!(lower_bound(&spec, 13, 13, 6).unwrap().lower_bound, 69);
}
