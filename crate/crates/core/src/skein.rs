//! Skein resolving trees and the minimal-depth search that bounds `td`.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::homfly::HomflyEngine;

pub const DEFAULT_SEARCH_CAP: usize = 12;

/// A binary resolving tree. Each internal node resolves one crossing of its
/// diagram (after R1/R2 reduction); leaves are recognized unlinks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkeinTree {
    Leaf {
        diagram: Diagram,
        components: usize,
    },
    Node {
        diagram: Diagram,
        crossing: usize,
        sign: i32,
        switched: Box<SkeinTree>,
        smoothed: Box<SkeinTree>,
    },
}

impl SkeinTree {
    pub fn leaf(diagram: Diagram) -> Result<SkeinTree> {
        let components = diagram.is_trivial_unlink().ok_or_else(|| {
            Error::Construction(format!("leaf {diagram} is not recognized as an unlink"))
        })?;
        Ok(SkeinTree::Leaf {
            diagram,
            components,
        })
    }

    pub fn diagram(&self) -> &Diagram {
        match self {
            SkeinTree::Leaf { diagram, .. } | SkeinTree::Node { diagram, .. } => diagram,
        }
    }

    /// Maximum leaf depth in edges.
    pub fn depth(&self) -> usize {
        match self {
            SkeinTree::Leaf { .. } => 0,
            SkeinTree::Node {
                switched, smoothed, ..
            } => 1 + switched.depth().max(smoothed.depth()),
        }
    }

    pub fn leaves(&self) -> Vec<&Diagram> {
        match self {
            SkeinTree::Leaf { diagram, .. } => vec![diagram],
            SkeinTree::Node {
                switched, smoothed, ..
            } => {
                let mut v = switched.leaves();
                v.extend(smoothed.leaves());
                v
            }
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            SkeinTree::Leaf { .. } => 1,
            SkeinTree::Node {
                switched, smoothed, ..
            } => 1 + switched.node_count() + smoothed.node_count(),
        }
    }

    /// Check the tree invariants: children are the switch and the zeroth
    /// resolution of the recorded crossing (compared after R1/R2 reduction)
    /// and every leaf is a recognized unlink.
    pub fn validate(&self) -> Result<()> {
        match self {
            SkeinTree::Leaf {
                diagram,
                components,
            } => match diagram.is_trivial_unlink() {
                Some(k) if k == *components => Ok(()),
                _ => Err(Error::Construction(format!("leaf {diagram} is not a recognized unlink"))),
            },
            SkeinTree::Node {
                diagram,
                crossing,
                sign,
                switched,
                smoothed,
            } => {
                if diagram.crossing_sign(*crossing)? != *sign {
                    return Err(Error::Construction(format!(
                        "recorded sign of crossing {crossing} is wrong"
                    )));
                }
                let same = |a: &Diagram, b: &Diagram| {
                    a.simplify().canonical_key() == b.simplify().canonical_key()
                };
                if !same(&diagram.switch_crossing(*crossing)?, switched.diagram()) {
                    return Err(Error::Construction(format!(
                        "switch child of crossing {crossing} in {diagram} does not match"
                    )));
                }
                if !same(&diagram.smooth_oriented(*crossing)?, smoothed.diagram()) {
                    return Err(Error::Construction(format!(
                        "smoothing child of crossing {crossing} in {diagram} does not match"
                    )));
                }
                switched.validate()?;
                smoothed.validate()
            }
        }
    }

    /// Indented text export, one node per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out, 0);
        out
    }

    fn write_text(&self, out: &mut String, level: usize) {
        let pad = "  ".repeat(level);
        match self {
            SkeinTree::Leaf {
                diagram,
                components,
            } => {
                let _ = writeln!(out, "{pad}leaf unlink({components}) {diagram}");
            }
            SkeinTree::Node {
                diagram,
                crossing,
                sign,
                switched,
                smoothed,
            } => {
                let s = if *sign > 0 { '+' } else { '-' };
                let _ = writeln!(out, "{pad}node x{crossing}{s} {diagram}");
                switched.write_text(out, level + 1);
                smoothed.write_text(out, level + 1);
            }
        }
    }

    pub fn report(&self) -> TreeReport {
        match self {
            SkeinTree::Leaf {
                diagram,
                components,
            } => TreeReport::Leaf {
                pd: diagram.to_string(),
                components: *components,
            },
            SkeinTree::Node {
                diagram,
                crossing,
                sign,
                switched,
                smoothed,
            } => TreeReport::Node {
                pd: diagram.to_string(),
                crossing: *crossing,
                sign: *sign,
                switched: Box::new(switched.report()),
                smoothed: Box::new(smoothed.report()),
            },
        }
    }
}

/// Serializable nested form of a [`SkeinTree`].
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TreeReport {
    Leaf {
        pd: String,
        components: usize,
    },
    Node {
        pd: String,
        crossing: usize,
        sign: i32,
        switched: Box<TreeReport>,
        smoothed: Box<TreeReport>,
    },
}

#[derive(Clone, Copy, Debug, Default)]
struct Entry {
    /// The value is known to be at least this.
    lower: usize,
    exact: Option<usize>,
}

/// Depth-bounded min-max search over resolution choices, with a
/// transposition table keyed on canonical diagram keys.
#[derive(Debug)]
pub struct TdSearch {
    cap: usize,
    memoize: bool,
    table: HashMap<String, Entry>,
    nodes: u64,
}

impl Default for TdSearch {
    fn default() -> Self {
        TdSearch::new(DEFAULT_SEARCH_CAP)
    }
}

impl TdSearch {
    pub fn new(cap: usize) -> Self {
        TdSearch {
            cap,
            memoize: true,
            table: HashMap::new(),
            nodes: 0,
        }
    }

    /// Turn the transposition table off (for cross-checking).
    pub fn without_memo(mut self) -> Self {
        self.memoize = false;
        self
    }

    /// Number of diagrams expanded so far.
    pub fn nodes_expanded(&self) -> u64 {
        self.nodes
    }

    /// The smallest depth `<= budget` reachable from the reduced diagram,
    /// searched by iterative deepening, with a witness tree.
    pub fn upper_bound(&mut self, d: &Diagram, budget: usize) -> Result<Option<(usize, SkeinTree)>> {
        if d.crossing_count() > self.cap {
            return Err(Error::ResourceLimit(format!(
                "{} crossings exceeds the search cap of {}",
                d.crossing_count(),
                self.cap
            )));
        }
        let root = d.simplify();
        for b in 0..=budget {
            if let Some(v) = self.solve(&root, b) {
                let tree = self.witness(&root, v)?;
                return Ok(Some((v, tree)));
            }
        }
        Ok(None)
    }

    /// Exact value of a reduced diagram if it is at most `budget`.
    fn solve(&mut self, d: &Diagram, budget: usize) -> Option<usize> {
        if d.crossing_count() == 0 {
            return Some(0);
        }
        let key = if self.memoize {
            let key = d.canonical_key();
            if let Some(e) = self.table.get(&key) {
                if let Some(v) = e.exact {
                    return (v <= budget).then_some(v);
                }
                if e.lower > budget {
                    return None;
                }
            }
            Some(key)
        } else {
            None
        };
        self.nodes += 1;
        let mut best: Option<usize> = None;
        if budget > 0 {
            for c in 0..d.crossing_count() {
                let limit = best.map_or(budget, |b| b - 1);
                if limit == 0 {
                    break;
                }
                let sw = d.switch_crossing(c).expect("valid id").simplify();
                let Some(v1) = self.solve(&sw, limit - 1) else {
                    continue;
                };
                let sm = d.smooth_oriented(c).expect("valid id").simplify();
                let Some(v2) = self.solve(&sm, limit - 1) else {
                    continue;
                };
                best = Some(1 + v1.max(v2));
            }
        }
        if let Some(key) = key {
            let e = self.table.entry(key).or_default();
            match best {
                Some(v) => e.exact = Some(v),
                None => e.lower = e.lower.max(budget + 1),
            }
        }
        best
    }

    /// Rebuild a witness tree of depth `value`; lowest crossing id first.
    fn witness(&mut self, d: &Diagram, value: usize) -> Result<SkeinTree> {
        if d.crossing_count() == 0 {
            return SkeinTree::leaf(d.clone());
        }
        for c in 0..d.crossing_count() {
            let sw = d.switch_crossing(c)?.simplify();
            let sm = d.smooth_oriented(c)?.simplify();
            let (Some(v1), Some(v2)) = (
                self.solve(&sw, value.saturating_sub(1)),
                self.solve(&sm, value.saturating_sub(1)),
            ) else {
                continue;
            };
            if value >= 1 && 1 + v1.max(v2) <= value {
                return Ok(SkeinTree::Node {
                    diagram: d.clone(),
                    crossing: c,
                    sign: d.crossing_sign(c)?,
                    switched: Box::new(self.witness(&sw, v1)?),
                    smoothed: Box::new(self.witness(&sm, v2)?),
                });
            }
        }
        Err(Error::Construction(format!("no witness of depth {value} for {d}")))
    }
}

pub fn td_upper_bound(d: &Diagram, budget: usize) -> Result<Option<(usize, SkeinTree)>> {
    TdSearch::default().upper_bound(d, budget)
}

/// Certified interval for the skein tree depth of the link drawn by `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TdInterval {
    pub lo: usize,
    pub hi: usize,
}

impl TdInterval {
    pub fn exact(&self) -> Option<usize> {
        (self.lo == self.hi).then_some(self.lo)
    }
}

/// Lower bound from the `z`-degree of HOMFLYPT, upper bound from the search
/// with the budget escalated one step at a time from the lower bound.
pub fn certify_td(d: &Diagram) -> Result<(TdInterval, SkeinTree)> {
    certify_td_with(&HomflyEngine::default(), &mut TdSearch::default(), d)
}

pub fn certify_td_with(
    engine: &HomflyEngine,
    search: &mut TdSearch,
    d: &Diagram,
) -> Result<(TdInterval, SkeinTree)> {
    let lo = engine.homfly(d)?.z_degree()?.max(0) as usize;
    let top = d.crossing_count().max(lo);
    for budget in lo..=top {
        if let Some((hi, tree)) = search.upper_bound(d, budget)? {
            return Ok((TdInterval { lo, hi }, tree));
        }
    }
    Err(Error::ResourceLimit(format!(
        "no skein tree of depth <= {top} found in the search space"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";

    #[test]
    fn unknot_is_a_leaf() {
        let (v, t) = td_upper_bound(&Diagram::unknot(), 0).unwrap().unwrap();
        assert_eq!(v, 0);
        assert_eq!(t.depth(), 0);
        let (iv, _) = certify_td(&Diagram::unknot()).unwrap();
        assert_eq!(iv, TdInterval { lo: 0, hi: 0 });
    }

    #[test]
    fn trefoil_depth_two() {
        let d = parse_pd(TREFOIL).unwrap();
        let (v, t) = td_upper_bound(&d, 2).unwrap().unwrap();
        assert_eq!(v, 2);
        assert_eq!(t.depth(), 2);
        t.validate().unwrap();
        assert!(td_upper_bound(&d, 1).unwrap().is_none());
    }

    #[test]
    fn hand_built_trefoil_tree() {
        let d = parse_pd(TREFOIL).unwrap();
        let hopf = d.smooth_oriented(0).unwrap();
        let t = SkeinTree::Node {
            diagram: d.clone(),
            crossing: 0,
            sign: -1,
            switched: Box::new(SkeinTree::leaf(d.switch_crossing(0).unwrap()).unwrap()),
            smoothed: Box::new(SkeinTree::Node {
                diagram: hopf.clone(),
                crossing: 0,
                sign: hopf.crossing_sign(0).unwrap(),
                switched: Box::new(SkeinTree::leaf(hopf.switch_crossing(0).unwrap()).unwrap()),
                smoothed: Box::new(SkeinTree::leaf(hopf.smooth_oriented(0).unwrap()).unwrap()),
            }),
        };
        t.validate().unwrap();
        assert_eq!(t.depth(), 2);
        assert_eq!(t.leaves().len(), 3);
    }

    #[test]
    fn validate_catches_wrong_child() {
        let d = parse_pd(TREFOIL).unwrap();
        let t = SkeinTree::Node {
            diagram: d.clone(),
            crossing: 0,
            sign: -1,
            switched: Box::new(SkeinTree::leaf(Diagram::unknot()).unwrap()),
            smoothed: Box::new(SkeinTree::leaf(Diagram::unknot()).unwrap()),
        };
        assert!(t.validate().is_err());
    }

    #[test]
    fn certify_trefoil_and_figure_eight() {
        let (iv, tree) = certify_td(&parse_pd(TREFOIL).unwrap()).unwrap();
        assert_eq!(iv, TdInterval { lo: 2, hi: 2 });
        assert_eq!(iv.exact(), Some(2));
        tree.validate().unwrap();
        let fig8 = Diagram::from_braid(3, &[1, -2, 1, -2]).unwrap();
        let (iv, tree) = certify_td(&fig8).unwrap();
        assert_eq!(iv.lo, 2);
        assert!(iv.hi >= 2);
        assert_eq!(tree.depth(), iv.hi);
    }

    #[test]
    fn text_export() {
        let (_, t) = td_upper_bound(&parse_pd(TREFOIL).unwrap(), 2).unwrap().unwrap();
        let text = t.to_text();
        assert!(text.starts_with("node x"));
        assert_eq!(text.lines().count(), t.node_count());
        let json = serde_json::to_string(&t.report()).unwrap();
        assert!(json.contains("\"kind\":\"leaf\""));
    }
}
