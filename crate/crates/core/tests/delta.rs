mod common;

use common::*;
use knotbound::delta::{classify_tangle, resolving_tree, delta_tree_with_stats, DeltaTangle, ALL_TYPES};
use knotbound::{homfly, parse_delta, delta_tree, verify_delta_tree, DeltaDiagram, DeltaType, Diagram, Error};
use rand::{rngs::StdRng, SeedableRng};

#[test]
fn single_tangle_closures() {
    let dd = parse_delta("DU(3,1,1,2,2,3)").unwrap();
    let trefoil: Diagram = RH_TREFOIL.parse().unwrap();
    let expanded = dd.expand();
    assert_eq!(expanded.crossing_count(), 3);
    assert!(
        homfly(expanded).unwrap() == homfly(&trefoil).unwrap()
            || homfly(&expanded.mirror()).unwrap() == homfly(&trefoil).unwrap()
    );
    let tree = delta_tree(&dd).unwrap();
    assert!(tree.depth() <= 2);
    tree.validate().unwrap();

    let trivial = parse_delta("DU(1,1,2,2,3,3)").unwrap();
    assert_eq!(trivial.expand().is_trivial_unlink(), Some(1));
    assert_eq!(delta_tree(&trivial).unwrap().depth(), 0);
}

#[test]
fn braid_like_tangles_do_not_close_to_knots_alone() {
    for k in [DeltaType::S, DeltaType::T] {
        assert!(DeltaDiagram::enumerate(&[k])
            .iter()
            .all(|d| d.expand().component_count() > 1));
    }
}

#[test]
fn expansion_keeps_tangle_types() {
    for dd in delta_corpus(2) {
        for (t, tangle) in dd.tangles().iter().enumerate() {
            assert_eq!(classify_tangle(dd.expand(), [3 * t, 3 * t + 1, 3 * t + 2]), Some(tangle.kind), "{dd}");
        }
    }
}

#[test]
fn text_round_trip_and_errors() {
    for dd in delta_corpus(1) {
        assert_eq!(parse_delta(&dd.to_string()).unwrap(), dd);
    }
    assert!(matches!(parse_delta("DS(1,2,3,4,5)"), Err(Error::Syntax { .. })));
    assert!(matches!(parse_delta("DS(1,2,3,4,5,6,7)"), Err(Error::Syntax { .. })));
    assert!(matches!(parse_delta("DQ(1,2,3,4,5,6)"), Err(Error::Syntax { .. })));
    assert!(matches!(parse_delta("DU(1,2,3,4,5,6)"), Err(Error::InvalidDelta(_))));
    assert!(matches!(parse_delta("DU(1,2,3,1,2,3)"), Err(Error::InvalidDelta(_))));
    let tangles = vec![DeltaTangle {
        kind: DeltaType::U,
        boundary: [3, 1, 1, 2, 2, 3],
    }];
    assert_eq!(DeltaDiagram::new(tangles, 0).unwrap(), parse_delta("DU(3,1,1,2,2,3)").unwrap());
}

#[test]
fn links_are_refused() {
    let dd = DeltaDiagram::enumerate(&[DeltaType::S]).into_iter().next().unwrap();
    assert!(matches!(delta_tree(&dd), Err(Error::Construction(_))));
    let report = verify_delta_tree(&dd);
    assert!(!report.pass);
    assert!(report.to_text().contains("result=fail"));
}

#[test]
fn corpus_up_to_two_tangles() {
    let corpus = delta_corpus(2);
    assert!(corpus.len() > 250);
    for dd in &corpus {
        let r = verify_delta_tree(dd);
        assert!(r.pass, "{dd}\n{}", r.to_text());
        assert_eq!(r.trivial_leaves, r.leaves);
    }
    // braid-like tangles only ever close up to links when glued to each other
    let types: std::collections::BTreeSet<_> = corpus.iter().flat_map(|d| d.tangles().iter().map(|t| t.kind)).collect();
    assert_eq!(types.into_iter().collect::<Vec<_>>(), vec![DeltaType::U, DeltaType::W]);
}

#[test]
fn links_from_all_types_stay_within_bound() {
    for a in ALL_TYPES {
        for b in ALL_TYPES {
            for dd in DeltaDiagram::enumerate(&[a, b]) {
                let (tree, _) = resolving_tree(&dd).unwrap();
                assert!(tree.depth() <= 4, "{dd}");
                tree.validate().unwrap();
            }
        }
    }
}

#[test]
fn random_three_tangle_knots() {
    let mut rng = StdRng::seed_from_u64(3);
    for dd in random_delta_knots(&mut rng, 3, 100) {
        let (tree, _) = delta_tree_with_stats(&dd).unwrap();
        assert!(tree.depth() <= 6, "{dd}: depth {}", tree.depth());
        tree.validate().unwrap();
    }
}
