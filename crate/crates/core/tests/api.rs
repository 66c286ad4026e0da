//! Smoke tests of the re-exported API on small hand-built instances.

use std::sync::Arc;

use fforge_core::matroid::{uniform, DynMatroid};
use fforge_core::oracle::{brute_exists_packing, validate_packing};
use fforge_core::partition::{bell, enumerate_partitions};
use fforge_core::solvers::{augment_hypergraph, pack_limited_hyper, solve};
use fforge_core::{check, Bound, Condition, ElementSet, Error, Hypergraph, ProblemKind, ProblemSpec, RootMultiset, Verdict, Witness};

fn triangle_with_tokens() -> ProblemSpec {
    let g = Hypergraph::graph(3, &[(0, 1), (1, 2), (0, 2), (0, 1)]).unwrap();
    let roots = RootMultiset::new(3, vec![0, 2]).unwrap();
    let m: DynMatroid = Arc::new(uniform(ElementSet::full(2), 1).unwrap());
    ProblemSpec::new(g, roots, m).unwrap()
}

#[test]
fn partitions_are_counted_by_bell_numbers() {
    for n in 0..=7 {
        assert_eq!(enumerate_partitions(n).unwrap().count() as u64, bell(n), "n = {n}");
    }
}

#[test]
fn enumeration_refuses_past_the_cap() {
    match enumerate_partitions(13) {
        Err(Error::CapExceeded { got: 13, cap: 12, .. }) => {}
        other => panic!("expected a cap error, got {other:?}"),
    }
}

#[test]
fn every_kind_agrees_with_brute_force_on_one_instance() {
    let spec = triangle_with_tokens().with_tree_count(1).with_limits(1, 2);
    for kind in [ProblemKind::MBased, ProblemKind::Bounded, ProblemKind::Limited, ProblemKind::LimitedHyper] {
        let feasible = check(&spec, kind).unwrap().is_feasible();
        assert_eq!(feasible, brute_exists_packing(&spec, kind).unwrap(), "{kind:?}");
        let outcome = solve(&spec, kind).unwrap();
        assert_eq!(outcome.is_solved(), feasible, "{kind:?}");
        if let Some(p) = outcome.solved() {
            assert!(validate_packing(&p, &spec.normalized(kind).unwrap()).ok(), "{kind:?}");
        }
    }
}

#[test]
fn upper_bounds_block_a_root() {
    let spec = triangle_with_tokens()
        .with_bounds(vec![0, 0, 0], vec![Bound::Finite(0), Bound::Infinite, Bound::Finite(0)])
        .unwrap()
        .with_limits(1, 2);
    match check(&spec, ProblemKind::Limited).unwrap() {
        Verdict::Violated(v) => assert!(v.deficit > 0 && v.reverify(&spec).unwrap() == v.deficit),
        Verdict::Feasible => panic!("no vertex may root a tree, yet check passed"),
    }
}

#[test]
fn hypergraph_packing_and_augmentation() {
    let h = Hypergraph::new(4, [vec![0, 1, 2], vec![1, 2, 3], vec![0, 3]]).unwrap();
    let roots = RootMultiset::new(4, vec![0]).unwrap();
    let m: DynMatroid = Arc::new(uniform(ElementSet::full(1), 1).unwrap());
    let spec = ProblemSpec::new(h, roots, m).unwrap().with_limits(1, 1);
    let p = pack_limited_hyper(&spec).unwrap().solved().unwrap();
    assert_eq!(p.members.len(), 1);
    assert_eq!(p.edge_ids().len(), 3);

    let mut two = spec.clone();
    two.instance = Hypergraph::new(4, [vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
    let v = pack_limited_hyper(&two).unwrap().violation().cloned().unwrap();
    assert_eq!(v.condition, Condition::UpperCut);
    assert!(matches!(v.witness, Witness::Partition(_)));
    let a = augment_hypergraph(&two.with_budget(1)).unwrap().solved().unwrap();
    assert_eq!(a.added.len(), 1);
    assert_eq!(a.instance.edge_count(), 3);
}

#[test]
fn mismatched_matroid_is_rejected() {
    let g = Hypergraph::empty(2).unwrap();
    let roots = RootMultiset::new(2, vec![0, 1]).unwrap();
    let m: DynMatroid = Arc::new(uniform(ElementSet::full(3), 1).unwrap());
    assert!(matches!(ProblemSpec::new(g, roots, m), Err(Error::RootMatroidMismatch { tokens: 2 })));
}
