mod common;

use common::Oracle;
use proptest::prelude::*;
use sidcodes::{construct, Check, CodeSet, ProductGraph, Topology, Vertex};

fn topology() -> impl Strategy<Value = Topology> {
    prop_oneof![Just(Topology::Path), Just(Topology::Cycle)]
}

/// Shape with at most 64 vertices plus a random subset of it.
fn graph_and_subset() -> impl Strategy<Value = (usize, usize, Topology, u64)> {
    subsets_of(1..8, 2..9)
}

fn subsets_of(
    m: std::ops::Range<usize>,
    n: std::ops::Range<usize>,
) -> impl Strategy<Value = (usize, usize, Topology, u64)> {
    (m, n, topology(), any::<u64>(), 0u32..4).prop_filter_map(
        "cycles need n >= 3",
        |(m, n, t, bits, thin)| {
            if t == Topology::Cycle && n < 3 {
                return None;
            }
            let o = Oracle::new(m, n, t == Topology::Cycle);
            // bias towards dense subsets, where codes live
            let mut s = bits;
            for k in 0..thin {
                s |= bits.rotate_left(7 * (k + 1));
            }
            Some((m, n, t, s & o.full()))
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn predicates_match_the_oracle((m, n, t, s) in graph_and_subset()) {
        let g = ProductGraph::new(m, n, t).unwrap();
        let o = Oracle::of(&g);
        let code = CodeSet::new(&g, o.to_set(s)).unwrap();
        let def1 = code.is_self_identifying_def1().holds;
        prop_assert_eq!(def1, o.is_sid(s));
        prop_assert_eq!(code.is_self_identifying_def2().holds, def1);
        prop_assert_eq!(code.is_self_identifying_def2().holds, o.is_def2(s));
        prop_assert_eq!(code.is_identifying().holds, o.is_id(s));
        prop_assert_eq!(code.is_dominating().holds, o.is_dominating(s));
    }

    #[test]
    fn self_identifying_implies_identifying((m, n, t, s) in graph_and_subset()) {
        let g = ProductGraph::new(m, n, t).unwrap();
        let o = Oracle::of(&g);
        let code = CodeSet::new(&g, o.to_set(s)).unwrap();
        if code.is_self_identifying_def1().holds {
            prop_assert!(code.is_identifying().holds);
            prop_assert!(code.is_dominating().holds);
        }
    }

    #[test]
    fn self_identifying_is_closed_under_supersets((m, n, t, s) in graph_and_subset(), extra in any::<u64>()) {
        let g = ProductGraph::new(m, n, t).unwrap();
        let o = Oracle::of(&g);
        if o.is_sid(s) {
            let bigger = CodeSet::new(&g, o.to_set((s | extra) & o.full())).unwrap();
            prop_assert!(bigger.is_self_identifying_def1().holds);
        }
    }

    #[test]
    fn sufficient_conditions_imply_self_identifying((m, n, t, s) in subsets_of(3..8, 3..9)) {
        let g = ProductGraph::new(m, n, t).unwrap();
        let o = Oracle::of(&g);
        let code = CodeSet::new(&g, o.to_set(s)).unwrap();
        let sufficient = match t {
            Topology::Path => code.check_sufficient_path().unwrap(),
            Topology::Cycle => code.check_sufficient_cycle().unwrap(),
        };
        if sufficient.holds {
            prop_assert!(o.is_sid(s));
        }
    }

    #[test]
    fn codes_satisfy_the_degree_condition((m, n, t, s) in graph_and_subset()) {
        let g = ProductGraph::new(m, n, t).unwrap();
        let o = Oracle::of(&g);
        let code = CodeSet::new(&g, o.to_set(s)).unwrap();
        if o.is_sid(s) && g.vertices().all(|v| g.degree(v) >= 2) {
            prop_assert!(code.check_degree_condition().holds);
        }
    }

    #[test]
    fn failing_predicates_report_a_witness((m, n, t, s) in graph_and_subset()) {
        let g = ProductGraph::new(m, n, t).unwrap();
        let o = Oracle::of(&g);
        let code = CodeSet::new(&g, o.to_set(s)).unwrap();
        for v in [code.is_dominating(), code.is_identifying(), code.is_self_identifying_def1()] {
            prop_assert_eq!(v.holds, v.witness.is_empty());
        }
    }
}

#[test]
fn single_row_full_set_is_self_identifying() {
    for n in 2..12 {
        let g = ProductGraph::new(1, n, Topology::Path).unwrap();
        assert!(
            CodeSet::full(&g).is_self_identifying_def1().holds,
            "K1 x P{n}"
        );
    }
}

#[test]
fn two_row_paths_admit_no_code() {
    for n in 2..10 {
        let g = ProductGraph::new(2, n, Topology::Path).unwrap();
        assert!(
            !CodeSet::full(&g).is_self_identifying_def1().holds,
            "K2 x P{n}"
        );
    }
}

#[test]
fn two_row_cycles_are_unions_of_cycles() {
    for n in 3..10 {
        let g = ProductGraph::new(2, n, Topology::Cycle).unwrap();
        let o = Oracle::of(&g);
        assert!(o.is_sid(o.full()));
        assert!(
            CodeSet::full(&g).is_self_identifying_def1().holds,
            "K2 x C{n}"
        );
    }
}

#[test]
fn empty_set_fails_everything() {
    let g = ProductGraph::new(3, 4, Topology::Path).unwrap();
    let e = CodeSet::empty(&g);
    assert!(!e.is_dominating().holds);
    assert!(!e.is_self_identifying_def1().holds);
    assert!(!e.is_self_identifying_def2().holds);
}

#[test]
fn removing_a_boundary_codeword_breaks_the_path_code() {
    let g = ProductGraph::new(3, 9, Topology::Path).unwrap();
    let (code, _) = construct(&g).unwrap();
    let mut members = code.members().clone();
    members.remove(Vertex::new(0, 0));
    let broken = CodeSet::new(&g, members).unwrap();
    let report = broken
        .verify(&[Check::SelfIdentifying, Check::Sufficient])
        .unwrap();
    assert!(!report.all_hold());
    let (name, witness) = report.violations().next().unwrap();
    assert!(name == "self_identifying" || name == "sufficient_path");
    assert!(!witness.is_empty());
}

#[test]
fn verify_selects_requested_conditions() {
    let g = ProductGraph::new(3, 5, Topology::Path).unwrap();
    let (code, _) = construct(&g).unwrap();
    let r = code.verify(&[Check::SelfIdentifying]).unwrap();
    assert!(r.condition("self_identifying").is_some());
    assert!(r.condition("identifying").is_none());
    let r = code
        .verify(&[
            Check::Dominating,
            Check::SelfIdentifyingDef2,
            Check::Necessary,
        ])
        .unwrap();
    assert!(r.condition("dominating").unwrap().holds);
    assert!(r.condition("self_identifying_def2").unwrap().holds);
    assert!(r.condition("boundary_columns").unwrap().holds);
    assert!(r.all_hold());
}

#[test]
fn audits_require_the_right_topology() {
    let g = ProductGraph::new(3, 5, Topology::Path).unwrap();
    let code = CodeSet::full(&g);
    assert!(code.audit_necessary_cycle().is_err());
    assert!(code.audit_necessary_path().unwrap().audits_hold());
    let c = ProductGraph::new(3, 5, Topology::Cycle).unwrap();
    assert!(CodeSet::full(&c).check_sufficient_path().is_err());
}

#[test]
fn cycle_window_audit_flags_sparse_windows() {
    let g = ProductGraph::new(3, 6, Topology::Cycle).unwrap();
    let code = CodeSet::from_vertices(&g, [(0usize, 0usize), (1, 1), (2, 2)]).unwrap();
    let r = code.audit_necessary_cycle().unwrap();
    assert!(!r.condition("triple_column_cycle").unwrap().holds);
}

#[test]
fn report_serializes_as_a_map() {
    let g = ProductGraph::new(3, 3, Topology::Path).unwrap();
    let r = CodeSet::full(&g).verify(&[Check::SelfIdentifying]).unwrap();
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["self_identifying"]["holds"], true);
}
