use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twkit::exact::{exact_decomposition, exact_treewidth};
use twkit::generators::random_partial_k_tree;
use twkit::graph::{connected_components, contract_matching, decontract_decomposition, maximal_matching};
use twkit::separators::{check_balanced, component_sizes, flow_s_separator, Beta};
use twkit::td::{ceil_log2, greedy_decomposition, rebalance_log_depth, shrink_bags, to_nice, validate, C_BAL};
use twkit::{approximate, DecomposeOutcome, DecomposerConfig, Graph, Mode, NodeKind, TreeDecomposition};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut b = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[b] {
                        edges.push((i, j));
                    }
                    b += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

/// A partial `w`-tree with its generating decomposition.
fn arb_decomposed(max_n: usize) -> impl Strategy<Value = (Graph, TreeDecomposition)> {
    (2..=max_n, 1usize..=3, 0.3f64..1.0, any::<u64>()).prop_map(|(n, w, keep, seed)| {
        random_partial_k_tree(n, w.min(n - 1), keep, &mut ChaCha8Rng::seed_from_u64(seed))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn greedy_is_valid_with_requested_root((g, _) in arb_decomposed(40), cut in 0usize..4) {
        let last: Vec<usize> = (0..cut.min(g.n())).collect();
        if let Some(td) = greedy_decomposition(&g, &last, g.n()) {
            prop_assert!(validate(&g, &td).is_ok());
            prop_assert_eq!(td.bag(td.root()), &last[..]);
        }
    }

    #[test]
    fn shrinking_keeps_validity_and_width((g, td) in arb_decomposed(60)) {
        let small = shrink_bags(&g, &td);
        prop_assert!(validate(&g, &small).is_ok());
        prop_assert!(small.width() <= td.width());
        prop_assert!(small.len() <= td.len());
    }

    #[test]
    fn nice_form_is_valid((g, td) in arb_decomposed(60)) {
        let nice = to_nice(&g, &td);
        prop_assert!(validate(&g, &nice.to_tree_decomposition()).is_ok());
        prop_assert_eq!(nice.width(), td.width());
        for i in 0..nice.len() {
            let kids = nice.children(i);
            match nice.kind(i) {
                NodeKind::Leaf => prop_assert!(kids.is_empty() && nice.bag(i).is_empty()),
                NodeKind::Join => {
                    prop_assert_eq!(kids.len(), 2);
                    prop_assert!(kids.iter().all(|&c| nice.bag(c) == nice.bag(i)));
                }
                _ => {
                    prop_assert_eq!(kids.len(), 1);
                    let (b, c) = (nice.bag(i).len(), nice.bag(kids[0]).len());
                    prop_assert_eq!(b.abs_diff(c), 1);
                }
            }
        }
        prop_assert!(nice.bag(nice.root()).is_empty());
    }

    #[test]
    fn rebalancing_contract((g, td) in arb_decomposed(300)) {
        let out = rebalance_log_depth(&td);
        prop_assert!(validate(&g, &out).is_ok());
        prop_assert!(out.width() <= 3 * td.width() + 2);
        prop_assert!(out.depth() <= C_BAL * ceil_log2(td.len() + 1));
    }

    #[test]
    fn decontraction_lifts_decompositions(g in arb_graph(10)) {
        let matching = maximal_matching(&g);
        let (h, map) = contract_matching(&g, &matching);
        let td = exact_decomposition(&h).unwrap();
        let lifted = decontract_decomposition(&td, &map);
        prop_assert!(validate(&g, &lifted).is_ok());
        prop_assert!(lifted.width() <= 2 * td.width() + 1);
    }

    #[test]
    fn balance_agrees_with_component_sizes(g in arb_graph(12), xs in proptest::collection::vec(0usize..12, 0..4)) {
        let all: Vec<usize> = (0..g.n()).collect();
        let mut x: Vec<usize> = xs.into_iter().filter(|&v| v < g.n()).collect();
        x.sort_unstable();
        x.dedup();
        let sizes = component_sizes(&g, &all, &x);
        prop_assert_eq!(sizes.iter().sum::<usize>(), g.n() - x.len());
        prop_assert_eq!(sizes.len(), connected_components(&g, &x).len());
        let rest = g.n() - x.len();
        let balanced = sizes.iter().all(|&c| Beta::HALF.admits(c, rest));
        let mut ground = all.clone();
        ground.retain(|v| x.binary_search(v).is_err());
        prop_assert_eq!(check_balanced(&g, &all, &ground, &x, Beta::HALF), balanced);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn flow_separator_is_balanced_or_certified(g in arb_graph(10), k in 0usize..3, pick in any::<u64>()) {
        let s: Vec<usize> = (0..g.n()).filter(|v| pick >> v & 1 == 1).take(3 * k + 4).collect();
        let all: Vec<usize> = (0..g.n()).collect();
        match flow_s_separator(&g, &s, k) {
            Ok(x) => {
                prop_assert!(x.len() <= k + 1);
                prop_assert!(check_balanced(&g, &all, &s, &x, Beta::TWO_THIRDS));
            }
            Err(_) => prop_assert!(exact_treewidth(&g).unwrap() > k),
        }
    }

    #[test]
    fn pipelines_are_valid_or_sound(g in arb_graph(11), k in 0usize..4, which in 0usize..4) {
        let mode = [Mode::Rs4, Mode::Three, Mode::Five { alpha: 1 }, Mode::Five { alpha: 2 }][which];
        match approximate(&g, k, mode, &DecomposerConfig::default()).unwrap() {
            DecomposeOutcome::Decomposition(td) => {
                prop_assert!(validate(&g, &td).is_ok());
                prop_assert!(td.width() <= mode.width_bound(k) as isize);
            }
            DecomposeOutcome::TwExceeds(_) => prop_assert!(exact_treewidth(&g).unwrap() > k),
        }
    }
}
