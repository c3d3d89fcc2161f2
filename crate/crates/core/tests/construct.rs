mod common;

use std::collections::BTreeSet;

use common::Oracle;
use proptest::prelude::*;
use sidcodes::bounds::{exact_small_value, path_construction_size};
use sidcodes::construct::{
    construct_appendix_code, construct_cycle_code, construct_path_code, pattern_a, pattern_b,
    APattern, BPattern,
};
use sidcodes::{construct, Family, ProductGraph, Topology, Vertex, VertexSet};

fn set(vs: &[(usize, usize)]) -> BTreeSet<Vertex> {
    vs.iter().map(|&(r, c)| Vertex::new(r, c)).collect()
}

fn as_set(vs: Vec<Vertex>) -> BTreeSet<Vertex> {
    vs.into_iter().collect()
}

fn columns(m: usize, cols: &[usize]) -> BTreeSet<Vertex> {
    cols.iter()
        .flat_map(|&c| (0..m).map(move |r| Vertex::new(r, c)))
        .collect()
}

fn path(m: usize, n: usize) -> ProductGraph {
    ProductGraph::new(m, n, Topology::Path).unwrap()
}

fn cycle(m: usize, n: usize) -> ProductGraph {
    ProductGraph::new(m, n, Topology::Cycle).unwrap()
}

#[test]
fn path_core_patterns() {
    assert_eq!(
        as_set(pattern_a(1, APattern::A, 4).unwrap()),
        set(&[(2, 2), (0, 4), (1, 4), (0, 5), (1, 7), (2, 7)])
    );
    assert_eq!(
        as_set(pattern_a(0, APattern::ADoublePrime, 3).unwrap()),
        set(&[(0, 2), (1, 4), (2, 4)])
    );
    assert_eq!(
        as_set(pattern_a(1, APattern::APrime, 5).unwrap()),
        set(&[(0, 2), (1, 4), (2, 4), (2, 5), (0, 7), (1, 7)])
    );
}

#[test]
fn path_core_pattern_ranges() {
    assert!(pattern_a(2, APattern::A, 9).is_err());
    assert!(pattern_a(1, APattern::A, 3).is_err());
    assert!(pattern_a(1, APattern::APrime, 4).is_err());
    assert!(pattern_a(0, APattern::ADoublePrime, 2).is_err());
}

#[test]
fn cycle_patterns() {
    assert_eq!(
        as_set(pattern_b(0, BPattern::B, 2, 6).unwrap()),
        set(&[(0, 0), (1, 2), (2, 2), (2, 3), (0, 5), (1, 5)])
    );
    assert_eq!(
        as_set(pattern_b(0, BPattern::BPrime, 2, 7).unwrap()),
        set(&[(0, 6), (1, 6), (2, 6)])
    );
    assert_eq!(
        as_set(pattern_b(0, BPattern::BDoublePrime, 3, 9).unwrap()),
        set(&[(0, 6), (1, 6), (2, 6), (0, 8), (1, 8), (2, 8)])
    );
    assert!(pattern_b(1, BPattern::B, 4, 12).is_err());
    assert!(pattern_b(0, BPattern::BDoublePrime, 0, 3).is_err());
}

#[test]
fn path_construction_sizes() {
    for (m, n, size) in [(3, 9, 24), (3, 7, 18), (4, 8, 25), (5, 12, 40)] {
        let g = path(m, n);
        let (code, plan) = construct_path_code(&g).unwrap();
        assert_eq!(code.len(), size, "K{m} x P{n}");
        assert_eq!(plan.predicted_size, size);
        assert_eq!(plan.family, Family::PathGeneral);
        assert!(code.is_self_identifying_def1().holds);
        assert!(code.check_sufficient_path().unwrap().holds);
    }
}

#[test]
fn path_construction_needs_long_paths() {
    assert!(construct_path_code(&path(3, 6)).is_err());
    assert!(construct_path_code(&path(2, 9)).is_err());
    assert!(construct_path_code(&cycle(3, 9)).is_err());
}

#[test]
fn cycle_construction_examples() {
    let g = cycle(3, 6);
    let (code, plan) = construct_cycle_code(&g).unwrap();
    assert_eq!(code.len(), 12);
    assert_eq!(plan.family, Family::CycleGeneral);
    let mut expected = set(&[(0, 0), (1, 2), (2, 2), (2, 3), (0, 5), (1, 5)]);
    expected.extend(columns(3, &[1, 4]));
    assert_eq!(
        code.codewords().into_iter().collect::<BTreeSet<_>>(),
        expected
    );

    let g = cycle(3, 7);
    let (code, _) = construct_cycle_code(&g).unwrap();
    assert_eq!(code.len(), 16);
    assert!(code.is_self_identifying_def1().holds);

    let g = cycle(4, 9);
    let (code, _) = construct_cycle_code(&g).unwrap();
    let mut expected = set(&[(0, 0), (1, 2), (2, 2), (2, 3), (0, 5), (1, 5)]);
    expected.extend(set(&[(0, 6), (1, 6), (2, 6), (0, 8), (1, 8), (2, 8)]));
    expected.extend(columns(4, &[1, 4, 7]));
    assert_eq!(
        code.codewords().into_iter().collect::<BTreeSet<_>>(),
        expected
    );
    assert!(code.is_self_identifying_def1().holds);
}

#[test]
fn short_cycles_use_the_fallback() {
    for m in 3..=6 {
        for n in 3..=5 {
            let g = cycle(m, n);
            let (code, plan) = construct_cycle_code(&g).unwrap();
            assert_eq!(plan.family, Family::CycleFallback);
            assert!(code.is_self_identifying_def1().holds);
            assert!(code.check_sufficient_cycle().unwrap().holds);
            assert!(code.len() <= n.div_ceil(3) * (m + 3) + 3 || n == 4);
        }
    }
}

#[test]
fn short_path_examples() {
    let g = path(3, 5);
    let (code, plan) = construct_appendix_code(&g).unwrap();
    assert_eq!(plan.family, Family::AppendixSmall);
    assert_eq!(
        code.codewords().into_iter().collect::<BTreeSet<_>>(),
        columns(3, &[0, 1, 3, 4])
    );

    let g = path(4, 3);
    assert_eq!(construct_appendix_code(&g).unwrap().0.len(), 11);

    let g = path(6, 6);
    let (code, _) = construct_appendix_code(&g).unwrap();
    let mut expected = columns(6, &[0, 2, 5]);
    expected.extend(set(&[(0, 1), (1, 1), (2, 1), (0, 4), (1, 4), (2, 4)]));
    assert_eq!(
        code.codewords().into_iter().collect::<BTreeSet<_>>(),
        expected
    );
    assert_eq!(code.len(), 24);

    assert_eq!(construct(&path(3, 6)).unwrap().0.len(), 14);
    assert!(construct_appendix_code(&path(3, 7)).is_err());
}

#[test]
fn short_path_sizes_match_the_exact_values() {
    for m in 3..=8 {
        for n in 3..=6 {
            let g = path(m, n);
            let (code, plan) = construct_appendix_code(&g).unwrap();
            assert_eq!(Some(code.len()), exact_small_value(m, n), "K{m} x P{n}");
            assert_eq!(plan.predicted_size, code.len());
            assert!(code.is_self_identifying_def1().holds, "K{m} x P{n}");
        }
    }
}

#[test]
fn small_codes_agree_with_the_oracle() {
    for (m, n) in [(3, 3), (3, 4), (4, 3), (3, 5), (4, 4), (5, 3)] {
        let g = path(m, n);
        let o = Oracle::of(&g);
        let (code, _) = construct(&g).unwrap();
        assert!(o.is_sid(o.to_mask(code.members())));
    }
}

#[test]
fn dispatcher_rejects_thin_graphs() {
    assert!(construct(&path(2, 9)).is_err());
    assert!(construct(&path(3, 2)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn plans_partition_the_code(m in 3usize..9, n in 3usize..31, cyc in any::<bool>()) {
        let g = if cyc { cycle(m, n) } else { path(m, n) };
        let (code, plan) = construct(&g).unwrap();
        prop_assert!(plan.parts_disjoint());
        let total: usize = plan.parts.iter().map(|(_, p)| p.len()).sum();
        prop_assert_eq!(total, plan.predicted_size);
        prop_assert_eq!(plan.predicted_size, code.len());
        let mut union = VertexSet::empty(m, n);
        for (_, p) in &plan.parts {
            union.union_with(p);
        }
        prop_assert_eq!(&union, code.members());
        prop_assert_eq!(plan.k, n / 3);
    }

    #[test]
    fn path_sizes_follow_the_formula(m in 3usize..9, n in 7usize..31) {
        let g = path(m, n);
        let (code, _) = construct(&g).unwrap();
        let k = n / 3;
        let expected = (k + 1) * (m + 3) + if n % 3 == 2 { m } else { 0 };
        prop_assert_eq!(code.len(), expected);
        prop_assert_eq!(path_construction_size(m, n), expected);
    }
}
