mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use systolic_atlas::census::{
    enumerate, sample_configuration, CensusStore, CensusTable, CACHE_ENV,
};
use systolic_atlas::multigraph::{canonical_code, girth};
use systolic_atlas::rewrite::{whitehead, Variant};
use systolic_atlas::{CanonicalCode, CubicMultigraph, Error};

fn census_classes(table: &CensusTable) -> BTreeSet<EdgeSet> {
    table.codes().iter().map(code_edges).collect()
}

#[test]
fn v2_matches_all_fifteen_pairings() {
    let (total, graphs) = all_pairing_graphs(2);
    assert_eq!(total, 15);
    let oracle = brute_classes(2, &graphs);
    assert_eq!(oracle.len(), 2);
    assert_eq!(census_classes(&enumerate(2, 12).unwrap()), oracle);
}

#[test]
fn v4_matches_all_pairings() {
    let (total, graphs) = all_pairing_graphs(4);
    assert_eq!(total, 10395);
    let oracle = brute_classes(4, &graphs);
    assert_eq!(census_classes(&enumerate(4, 12).unwrap()), oracle);
    assert_eq!(oracle.len(), 5);
}

#[test]
fn v6_matches_adjacency_matrix_enumeration() {
    let graphs = all_adjacency_graphs(6);
    let oracle = brute_classes(6, &graphs);
    assert_eq!(census_classes(&enumerate(6, 12).unwrap()), oracle);
    assert_eq!(oracle.len(), 17);
}

#[test]
fn codes_agree_with_exhaustive_minimization_up_to_v8() {
    for v in [2, 4, 6, 8] {
        let perms = permutations(v);
        for code in enumerate(v, 12).unwrap().codes() {
            let g = code.to_graph();
            assert_eq!(
                brute_canonical(&g.edge_list(), &perms),
                code_edges(code),
                "{code}"
            );
        }
    }
}

#[test]
fn codes_are_invariant_under_random_relabeling() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for v in [2, 4, 6, 8] {
        for code in enumerate(v, 12).unwrap().codes() {
            let g = code.to_graph();
            let mut perm: Vec<usize> = (0..v).collect();
            for _ in 0..200 {
                perm.shuffle(&mut rng);
                let h = g.relabeled(&perm).unwrap();
                assert_eq!(&canonical_code(&h), code);
            }
        }
    }
}

#[test]
fn published_counts() {
    let store = CensusStore::new(None, 12);
    for (v, count) in MULTIGRAPH_COUNTS.into_iter().filter(|&(v, _)| v <= 12) {
        assert_eq!(store.table(v).unwrap().count(), count, "V = {v}");
    }
    for (v, count) in SIMPLE_COUNTS.into_iter().filter(|&(v, _)| v <= 12) {
        assert_eq!(store.count_simple(v).unwrap(), count, "V = {v}");
    }
}

#[test]
fn tables_are_sorted_and_round_trip() {
    let store = CensusStore::new(None, 12);
    for v in (2..=10).step_by(2) {
        let t = store.table(v).unwrap();
        assert!(t.codes().windows(2).all(|w| w[0] < w[1]));
        for code in t.codes() {
            let g = code.to_graph();
            assert_eq!(g.vertex_count(), v);
            assert_eq!(&canonical_code(&g), code);
        }
        let back = CensusTable::from_text(&t.to_text()).unwrap();
        assert_eq!(&back, t.as_ref());
    }
}

#[test]
fn census_is_closed_under_whitehead_moves() {
    let store = CensusStore::new(None, 12);
    for v in (2..=10).step_by(2) {
        let t = store.table(v).unwrap();
        for g in t.graphs() {
            for e in g.edge_ids().filter(|&e| !g.is_loop(e)) {
                for variant in [Variant::A, Variant::B] {
                    let h = whitehead(&g, e, variant).unwrap();
                    assert!(t.contains(&canonical_code(&h)));
                }
            }
        }
    }
}

#[test]
fn limits_and_simple_counts() {
    assert!(matches!(enumerate(14, 12), Err(Error::Limit { .. })));
    assert!(matches!(enumerate(16, 16), Err(Error::Limit { .. })));
    assert!(enumerate(3, 12).is_err());
    let t = enumerate(6, 12).unwrap();
    let simple = t.graphs().filter(|g| girth(g) >= 3).count();
    assert_eq!(simple, t.count_simple());
}

#[test]
fn cache_files_are_written_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let store = CensusStore::new(Some(dir.path().to_path_buf()), 12);
    let t = store.table(6).unwrap();
    let path = dir.path().join("census_V6.txt");
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("census v1 V=6 count=17\n"));
    assert_eq!(text.lines().count(), 18);

    // a corrupted file is regenerated
    std::fs::write(&path, "census v1 V=6 count=3\nbogus\n").unwrap();
    let fresh = CensusStore::new(Some(dir.path().to_path_buf()), 12);
    assert_eq!(fresh.table(6).unwrap(), t);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
}

#[test]
fn cache_flag_wins_over_environment() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    std::env::set_var(CACHE_ENV, env_dir.path());
    let from_env = CensusStore::with_env(None, 12);
    let from_flag = CensusStore::with_env(Some(flag_dir.path().to_path_buf()), 12);
    std::env::remove_var(CACHE_ENV);
    assert_eq!(from_env.cache_dir(), Some(env_dir.path()));
    assert_eq!(from_flag.cache_dir(), Some(flag_dir.path()));
}

#[test]
fn uniform_sampling_is_uniform_at_v4() {
    let store = CensusStore::new(None, 12);
    let t = store.table(4).unwrap();
    let draws = 10_000;
    let mut hist: BTreeMap<CanonicalCode, usize> = BTreeMap::new();
    for seed in 0..draws {
        *hist
            .entry(canonical_code(&store.sample_uniform(4, seed).unwrap()))
            .or_default() += 1;
    }
    assert_eq!(hist.len(), t.count());
    let p = 1.0 / t.count() as f64;
    let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
    for (code, &n) in &hist {
        assert!(
            (n as f64 - draws as f64 * p).abs() < 5.0 * sigma,
            "{code}: {n}"
        );
    }
    let a = store.sample_uniform(10, 99).unwrap();
    assert_eq!(a, store.sample_uniform(10, 99).unwrap());
}

#[test]
fn configuration_model_matches_matching_counts_at_v2() {
    // of the 15 matchings of 6 half-edges, 6 give theta and 9 the dumbbell
    let draws = 10_000;
    let theta = (0..draws)
        .filter(|&s| girth(&sample_configuration(2, s).unwrap()) == 2)
        .count();
    let p = 6.0 / 15.0;
    let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
    assert!(
        (theta as f64 - draws as f64 * p).abs() < 5.0 * sigma,
        "{theta}"
    );
}

#[test]
fn configuration_samples_are_cubic() {
    for seed in 0..50 {
        let g: CubicMultigraph = sample_configuration(20, seed).unwrap();
        assert_eq!(g.vertex_count(), 20);
        for v in 0..20 {
            assert_eq!(g.half_edges(v).len(), 3);
        }
        assert_eq!(g, sample_configuration(20, seed).unwrap());
    }
}

#[test]
fn growth_report_counts_increase() {
    let store = CensusStore::new(None, 12);
    let rows = store.growth_report(12).unwrap();
    assert_eq!(
        (rows[0].genus, rows[0].vertex_count, rows[0].count),
        (2, 2, 2)
    );
    assert!(rows.windows(2).all(|w| w[0].count < w[1].count));
    assert!(rows.iter().all(|r| r.ratio.is_finite() && r.ratio > 0.0));
}
