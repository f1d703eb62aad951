mod common;

use common::*;
use knotbound::homfly::HomflyEngine;
use knotbound::skein::{certify_td_with, DEFAULT_SEARCH_CAP};
use knotbound::{certify_td, td_upper_bound, Diagram, Error, TdInterval, TdSearch};

#[test]
fn trefoil_is_certified_exactly() {
    for text in [RH_TREFOIL, LH_TREFOIL] {
        let d: Diagram = text.parse().unwrap();
        let (iv, tree) = certify_td(&d).unwrap();
        assert_eq!(iv, TdInterval { lo: 2, hi: 2 });
        tree.validate().unwrap();
        assert!(tree.leaves().iter().all(|l| l.is_trivial_unlink().is_some()));
    }
}

#[test]
fn witness_trees_are_valid() {
    let engine = HomflyEngine::default();
    let mut certified = 0;
    for d in corpus(6) {
        let mut search = TdSearch::new(DEFAULT_SEARCH_CAP);
        match certify_td_with(&engine, &mut search, &d) {
            Ok((iv, tree)) => {
                assert!(iv.lo <= iv.hi, "{d}");
                assert_eq!(tree.depth(), iv.hi, "{d}");
                tree.validate().unwrap();
                certified += 1;
            }
            // projections without monogons or bigons never reach an R1/R2-reducible leaf
            Err(Error::ResourceLimit(_)) => assert!(d.simplify().crossing_count() >= 6, "{d}"),
            Err(e) => panic!("{d}: {e}"),
        }
    }
    assert!(certified > 40, "{certified}");
}

#[test]
fn borromean_projection_has_no_recognized_tree() {
    let d = Diagram::from_braid(3, &[1, -2, 1, -2, 1, -2]).unwrap();
    assert_eq!(d.component_count(), 3);
    assert!(TdSearch::new(DEFAULT_SEARCH_CAP).upper_bound(&d, 6).unwrap().is_none());
    assert!(matches!(certify_td(&d), Err(Error::ResourceLimit(_))));
}

#[test]
fn memo_does_not_change_the_answer() {
    for d in corpus(5) {
        let a = TdSearch::new(DEFAULT_SEARCH_CAP).upper_bound(&d, 4).unwrap().map(|x| x.0);
        let b = TdSearch::new(DEFAULT_SEARCH_CAP)
            .without_memo()
            .upper_bound(&d, 4)
            .unwrap()
            .map(|x| x.0);
        assert_eq!(a, b, "{d}");
    }
}

#[test]
fn budget_is_respected() {
    let d: Diagram = FIGURE_EIGHT.parse().unwrap();
    for budget in 0..4 {
        if let Some((v, t)) = td_upper_bound(&d, budget).unwrap() {
            assert!(v <= budget);
            assert_eq!(t.depth(), v);
        }
    }
    let (iv, _) = certify_td(&d).unwrap();
    assert_eq!(iv.lo, 2);
}

#[test]
fn search_cap_is_enforced() {
    let d = Diagram::from_braid(2, &[1; 7]).unwrap();
    assert!(matches!(TdSearch::new(6).upper_bound(&d, 7), Err(Error::ResourceLimit(_))));
}

#[test]
fn tree_text_export() {
    let d: Diagram = RH_TREFOIL.parse().unwrap();
    let (_, tree) = certify_td(&d).unwrap();
    let text = tree.to_text();
    assert!(text.starts_with("node x"));
    assert_eq!(text.lines().count(), tree.node_count());
}
