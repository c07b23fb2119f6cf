mod common;

use std::collections::HashMap;

use labelcut::format::{emit, parse};
use labelcut::generators::{
    assemble, make_gap_instance, make_random_instance, GadgetParams, PermutationTable,
};
use labelcut::{is_label_cut, path_labels, Instance, LabelSubset, StPath};
use proptest::prelude::*;

fn random_instance() -> impl Strategy<Value = Instance> {
    (3usize..10, 1usize..6, any::<bool>(), any::<u64>()).prop_flat_map(|(n, q, directed, seed)| {
        let max_m = n * (n - 1) / 2;
        (1..=max_m.min(18)).prop_map(move |m| make_random_instance(n, m, q, directed, seed).unwrap())
    })
}

fn subset_strategy(q: usize) -> impl Strategy<Value = (LabelSubset, LabelSubset)> {
    (prop::collection::vec(any::<bool>(), q), prop::collection::vec(any::<bool>(), q)).prop_map(|(a, b)| {
        let small: LabelSubset = (0..a.len()).filter(|&l| a[l]).collect();
        let large: LabelSubset = (0..a.len()).filter(|&l| a[l] || b[l]).collect();
        (small, large)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn round_trip(g in random_instance()) {
        let text = emit(&g);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(emit(&back), text);
    }

    #[test]
    fn cuts_are_monotone((g, (small, large)) in random_instance().prop_flat_map(|g| {
        let q = g.label_count();
        (Just(g), subset_strategy(q))
    })) {
        prop_assert!(small.is_subset(&large));
        if is_label_cut(&g, &small).unwrap() {
            prop_assert!(is_label_cut(&g, &large).unwrap());
        }
        let mask = |s: &LabelSubset| s.iter().fold(0u64, |m, &l| m | 1 << l);
        prop_assert_eq!(is_label_cut(&g, &small).unwrap(), common::separated(&g, mask(&small)));
    }

    #[test]
    fn full_label_set_always_cuts(g in random_instance()) {
        prop_assert!(is_label_cut(&g, &LabelSubset::full(g.label_count())).unwrap());
    }
}

#[test]
fn gadget_paths_carry_d_distinct_labels() {
    for (k, d, h, seed) in [(2, 2, 1, 0), (2, 3, 2, 7), (3, 3, 1, 4), (3, 2, 2, 1)] {
        let gap = make_gap_instance(&GadgetParams::new(k, d, h, seed).unwrap()).unwrap();
        let paths = common::all_simple_paths(&gap.instance);
        // 2^d choices per chain, C(k,2) h chains
        assert_eq!(paths.len(), (1 << d) * h * k * (k - 1) / 2);
        for p in paths {
            let path = StPath::from_edges(&gap.instance, p).unwrap();
            assert_eq!(path_labels(&gap.instance, &path).unwrap().len(), d);
        }
    }
}

#[test]
fn directed_gadget_has_the_same_paths() {
    let params = GadgetParams::new(3, 2, 2, 11).unwrap();
    let table = PermutationTable::draw(3, 2, 2, 11);
    let undirected = assemble(&params, table.clone(), false).unwrap().instance;
    let directed = assemble(&params, table, true).unwrap().instance;
    let mut a = common::all_simple_paths(&undirected);
    let mut b = common::all_simple_paths(&directed);
    a.sort();
    b.sort();
    assert_eq!(a, b);
}

#[test]
fn size_formulas_and_simplicity() {
    for k in 2..=5 {
        for d in 1..=4 {
            for h in 1..=3 {
                let p = GadgetParams::new(k, d, h, (k * 100 + d * 10 + h) as u64).unwrap();
                let g = make_gap_instance(&p).unwrap().instance;
                let pairs = k * (k - 1) / 2;
                assert_eq!(g.vertex_count(), 2 + pairs * h * (3 * d - 1));
                assert_eq!(g.edge_count(), 4 * d * h * pairs);
                assert_eq!(g.label_count(), k * d);
                assert!(g.is_simple());
                assert_eq!(emit(&g), emit(&make_gap_instance(&p).unwrap().instance));
            }
        }
    }
}

#[test]
fn permutations_of_three_are_uniform() {
    let seeds = 100_000u64;
    let mut counts: HashMap<Vec<usize>, u64> = HashMap::new();
    for seed in 0..seeds {
        let table = PermutationTable::draw(2, 3, 1, seed);
        *counts.entry(table.all()[0].images()).or_default() += 1;
    }
    assert_eq!(counts.len(), 6);
    for (perm, c) in counts {
        let freq = c as f64 / seeds as f64;
        assert!((freq - 1.0 / 6.0).abs() <= 0.01, "{perm:?}: {freq}");
    }
}

#[test]
fn chains_of_one_table_are_independent_draws() {
    // with many chains per shutter, every permutation of [3] shows up
    let table = PermutationTable::draw(2, 3, 600, 5);
    let mut counts: HashMap<Vec<usize>, u64> = HashMap::new();
    for p in table.all() {
        *counts.entry(p.images()).or_default() += 1;
    }
    assert_eq!(counts.len(), 6);
    assert!(counts.values().all(|&c| (60..=140).contains(&c)), "{counts:?}");
}
