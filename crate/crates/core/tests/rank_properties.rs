mod support;

use std::collections::BTreeMap;

use liquidrank::{
    liquid_rank, mention_rank, to_ranked_list, Handle, NormMode, RankParams, RatingGraph,
    TimeWindow,
};
use proptest::prelude::*;
use support::oracle::dense_liquid_rank;

const NAMES: [&str; 6] = ["alice", "bob", "carol", "dave", "erin", "frank"];

/// Weight matrices with 2 to 6 nodes, entries in 0..=5, zero diagonal, at
/// least one edge.
fn weight_matrix() -> impl Strategy<Value = Vec<Vec<u64>>> {
    (2usize..=6)
        .prop_flat_map(|n| proptest::collection::vec(proptest::collection::vec(0u64..=5, n), n))
        .prop_map(|mut w| {
            for (i, row) in w.iter_mut().enumerate() {
                row[i] = 0;
            }
            w
        })
        .prop_filter("needs an edge", |w| w.iter().flatten().any(|&x| x > 0))
}

fn to_graph(w: &[Vec<u64>], names: &[&str]) -> RatingGraph {
    let nodes = names[..w.len()].iter().map(|n| Handle::new(n).unwrap());
    let mut edges = Vec::new();
    for (i, row) in w.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if x > 0 {
                edges.push((
                    Handle::new(names[i]).unwrap(),
                    Handle::new(names[j]).unwrap(),
                    x,
                ));
            }
        }
    }
    RatingGraph::from_parts(nodes, edges, TimeWindow::unbounded()).unwrap()
}

fn as_f64(w: &[Vec<u64>]) -> Vec<Vec<f64>> {
    w.iter()
        .map(|r| r.iter().map(|&x| x as f64).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matches_dense_oracle(w in weight_matrix()) {
        let g = to_graph(&w, &NAMES);
        let params = RankParams { epsilon: 1e-12, max_iters: 20_000, ..Default::default() };
        let state = liquid_rank(&g, &params, None).unwrap();
        let oracle = dense_liquid_rank(&as_f64(&w), 0.5, 1e-12, 20_000);
        for (j, name) in NAMES[..w.len()].iter().enumerate() {
            let got = state.scores[*name];
            prop_assert!((got - oracle.scores[j]).abs() < 1e-9, "{name}: {got} vs {}", oracle.scores[j]);
        }
    }

    #[test]
    fn norm_is_one_after_every_iteration(
        w in weight_matrix(),
        alpha in 0.05f64..=1.0,
        max in any::<bool>(),
    ) {
        let g = to_graph(&w, &NAMES);
        let norm_mode = if max { NormMode::Max } else { NormMode::L1 };
        for iters in 1..=25 {
            let params = RankParams { epsilon: 1e-300, max_iters: iters, alpha, norm_mode };
            let Ok(state) = liquid_rank(&g, &params, None) else {
                // undamped runs on acyclic graphs run out of raters
                prop_assert_eq!(alpha, 1.0);
                break;
            };
            prop_assert!(state.iterations <= iters);
            let norm = match norm_mode {
                NormMode::L1 => state.scores.values().sum::<f64>(),
                NormMode::Max => state.scores.values().copied().fold(0.0, f64::max),
            };
            prop_assert!((norm - 1.0).abs() <= 1e-12, "norm {norm} after {iters}");
            prop_assert!(state.scores.values().all(|s| s.is_finite() && *s >= 0.0));
            if state.converged {
                break;
            }
        }
    }

    #[test]
    fn scale_invariant(w in weight_matrix(), c in 1u64..=1000) {
        let scaled: Vec<Vec<u64>> = w.iter().map(|r| r.iter().map(|x| x * c).collect()).collect();
        let params = RankParams::default();
        let a = liquid_rank(&to_graph(&w, &NAMES), &params, None).unwrap();
        let b = liquid_rank(&to_graph(&scaled, &NAMES), &params, None).unwrap();
        prop_assert_eq!(a.iterations, b.iterations);
        for (name, s) in &a.scores {
            prop_assert!((s - b.scores[name]).abs() <= 1e-12);
        }
    }

    #[test]
    fn permutation_equivariant(
        w in weight_matrix(),
        perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let n = w.len();
        let renamed: Vec<&str> = (0..n).map(|i| NAMES[perm[i]]).collect();
        let params = RankParams { epsilon: 1e-10, ..Default::default() };
        let base = to_graph(&w, &NAMES);
        let relabeled = to_graph(&w, &renamed);

        let a = liquid_rank(&base, &params, None).unwrap();
        let b = liquid_rank(&relabeled, &params, None).unwrap();
        let ma = mention_rank(&base).unwrap();
        let mb = mention_rank(&relabeled).unwrap();
        for i in 0..n {
            prop_assert!((a.scores[NAMES[i]] - b.scores[renamed[i]]).abs() < 1e-9);
            prop_assert_eq!(ma.score_of(NAMES[i]), mb.score_of(renamed[i]));
        }
    }

    #[test]
    fn norm_modes_agree_on_order(w in weight_matrix(), alpha in 0.1f64..1.0) {
        let g = to_graph(&w, &NAMES);
        let l1 = RankParams { alpha, ..Default::default() };
        let max = RankParams { norm_mode: NormMode::Max, ..l1 };
        let a = to_ranked_list(&liquid_rank(&g, &l1, None).unwrap());
        let b = to_ranked_list(&liquid_rank(&g, &max, None).unwrap());
        let oa: Vec<&Handle> = a.nodes().collect();
        let ob: Vec<&Handle> = b.nodes().collect();
        prop_assert_eq!(oa, ob);
    }

    #[test]
    fn zero_inflow_nodes_decay(w in weight_matrix(), alpha in 0.1f64..1.0) {
        let g = to_graph(&w, &NAMES);
        let params = RankParams { alpha, ..Default::default() };
        let state = liquid_rank(&g, &params, None).unwrap();
        if state.converged {
            for (j, name) in NAMES[..w.len()].iter().enumerate() {
                if (0..w.len()).all(|i| w[i][j] == 0) {
                    prop_assert!(state.scores[*name] < params.epsilon * 10.0);
                }
            }
        }
    }

    #[test]
    fn adding_an_edge_raises_only_its_target(
        w in weight_matrix(),
        pick in any::<(prop::sample::Index, prop::sample::Index)>(),
        extra in 1u64..=5,
    ) {
        let n = w.len();
        let i = pick.0.index(n);
        let j = (i + 1 + pick.1.index(n - 1)) % n;
        let mut bumped = w.clone();
        bumped[i][j] += extra;
        let before = mention_rank(&to_graph(&w, &NAMES)).unwrap();
        let after = mention_rank(&to_graph(&bumped, &NAMES)).unwrap();
        for (k, name) in NAMES[..n].iter().enumerate() {
            let (b, a) = (before.score_of(name).unwrap(), after.score_of(name).unwrap());
            if k == j {
                prop_assert!(a > b);
            } else {
                prop_assert_eq!(a, b);
            }
        }
    }
}

#[test]
fn undamped_asymmetric_cycle_has_period_two() {
    let w = vec![vec![0, 1], vec![3, 0]];
    let g = to_graph(&w, &NAMES);
    let at = |iters| {
        let params = RankParams {
            alpha: 1.0,
            max_iters: iters,
            ..Default::default()
        };
        liquid_rank(&g, &params, None).unwrap()
    };
    // by hand: (1/2, 1/2) -> (3/4, 1/4) -> (1/2, 1/2) -> (3/4, 1/4)
    assert_eq!(at(1).scores["alice"], 0.75);
    assert_eq!(at(2).scores["alice"], 0.5);
    assert_eq!(at(3).scores["alice"], 0.75);
    assert_eq!(at(4).scores["alice"], 0.5);
    let long = at(1000);
    assert!(!long.converged);
    assert_eq!(long.iterations, 1000);
}

#[test]
fn closed_form_two_node_fixed_point() {
    let g = to_graph(&[vec![0, 1], vec![3, 0]], &NAMES);
    let oracle = dense_liquid_rank(&[vec![0.0, 1.0], vec![3.0, 0.0]], 0.5, 1e-12, 10_000);
    let r3 = 3f64.sqrt();
    let expected = [r3 / (1.0 + r3), 1.0 / (1.0 + r3)];
    // the oracle agrees with the closed form before it is used as a reference
    for (o, e) in oracle.scores.iter().zip(expected) {
        assert!((o - e).abs() < 1e-11);
    }
    let params = RankParams {
        epsilon: 1e-6,
        ..Default::default()
    };
    let state = liquid_rank(&g, &params, None).unwrap();
    assert!(state.converged);
    assert!((state.scores["alice"] - expected[0]).abs() < 5e-6);
    assert!((state.scores["bob"] - expected[1]).abs() < 5e-6);
}

#[test]
fn initial_vector_defaults_to_uniform() {
    let w = vec![vec![0, 2, 1], vec![1, 0, 0], vec![4, 1, 0]];
    let g = to_graph(&w, &NAMES);
    let uniform: BTreeMap<Handle, f64> = g.nodes().iter().map(|n| (n.clone(), 7.0)).collect();
    let params = RankParams::default();
    assert_eq!(
        liquid_rank(&g, &params, None).unwrap(),
        liquid_rank(&g, &params, Some(&uniform)).unwrap()
    );
}
