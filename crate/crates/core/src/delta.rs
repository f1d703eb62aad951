//! Delta-crossing diagrams and the skein tree of depth at most `2n` built
//! from a diagram with `n` delta tangles.
//!
//! A delta tangle is a disk containing three strands that pairwise cross
//! once, each strand passing over at one of its crossings and under at the
//! other. Its six boundary endpoints are numbered `1..=6` counterclockwise;
//! the strands join endpoints `1-4`, `2-5` and `3-6`. Up to rotation there
//! are four oriented types:
//!
//! | type | orientation                     | cyclic over-pattern          |
//! |------|---------------------------------|------------------------------|
//! | `S`  | enters at 1, 2, 3 (braid-like)  | 1-4 over 2-5 over 3-6 over 1-4 |
//! | `T`  | as `S`                          | mirror of `S`                |
//! | `U`  | enters at 1, 3, 5 (alternating) | as `S`                       |
//! | `W`  | as `U`                          | mirror of `U`                |
//!
//! `T` and `W` are the crossing-switched mirrors of `S` and `U`; `U` is `S`
//! with the `2-5` strand reversed.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::diagram::{Crossing, Diagram};
use crate::error::{Error, Result};
use crate::skein::SkeinTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DeltaType {
    S,
    T,
    U,
    W,
}

pub const ALL_TYPES: [DeltaType; 4] = [DeltaType::S, DeltaType::T, DeltaType::U, DeltaType::W];

/// Template labels: `1..=6` are boundary endpoints, `7..=9` the inner
/// triangle sides on strands `1-4`, `2-5`, `3-6`.
type TemplateCrossing = ([u8; 4], bool);

// Generated from a straight-line drawing of the three chords.
const S_TEMPLATE: [TemplateCrossing; 3] = [([2, 7, 8, 1], false), ([9, 5, 6, 8], false), ([7, 3, 4, 9], true)];
const T_TEMPLATE: [TemplateCrossing; 3] = [([1, 2, 7, 8], true), ([8, 9, 5, 6], true), ([3, 4, 9, 7], false)];
const U_TEMPLATE: [TemplateCrossing; 3] = [([8, 1, 2, 7], true), ([9, 5, 6, 8], true), ([7, 3, 4, 9], true)];
const W_TEMPLATE: [TemplateCrossing; 3] = [([1, 2, 7, 8], false), ([5, 6, 8, 9], false), ([3, 4, 9, 7], false)];

impl DeltaType {
    pub fn template(self) -> [TemplateCrossing; 3] {
        match self {
            DeltaType::S => S_TEMPLATE,
            DeltaType::T => T_TEMPLATE,
            DeltaType::U => U_TEMPLATE,
            DeltaType::W => W_TEMPLATE,
        }
    }

    /// Boundary endpoints (1-based) where a strand enters the tangle.
    pub fn incoming_endpoints(self) -> Vec<usize> {
        let mut v = Vec::new();
        for (slots, fwd) in self.template() {
            let x = Crossing::new([0; 4], fwd);
            for (p, &l) in slots.iter().enumerate() {
                if l <= 6 && x.is_incoming(p) {
                    v.push(l as usize);
                }
            }
        }
        v.sort_unstable();
        v
    }

    pub fn mirror(self) -> DeltaType {
        match self {
            DeltaType::S => DeltaType::T,
            DeltaType::T => DeltaType::S,
            DeltaType::U => DeltaType::W,
            DeltaType::W => DeltaType::U,
        }
    }
}

impl fmt::Display for DeltaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaTangle {
    pub kind: DeltaType,
    /// Labels of endpoints `1..=6`; each label is shared with exactly one
    /// other endpoint of the diagram.
    pub boundary: [u32; 6],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaDiagram {
    tangles: Vec<DeltaTangle>,
    circles: usize,
    expansion: Diagram,
}

impl DeltaDiagram {
    pub fn new(tangles: Vec<DeltaTangle>, circles: usize) -> Result<DeltaDiagram> {
        let mut count: HashMap<u32, usize> = HashMap::new();
        for t in &tangles {
            for &l in &t.boundary {
                if l == 0 {
                    return Err(Error::InvalidDelta("endpoint label 0 is not allowed".into()));
                }
                *count.entry(l).or_default() += 1;
            }
        }
        if let Some((l, n)) = count.iter().find(|(_, &n)| n != 2) {
            return Err(Error::InvalidDelta(format!(
                "endpoint label {l} used {n} times (expected twice)"
            )));
        }
        let base = count.keys().max().copied().unwrap_or(0) + 1;
        let mut xs = Vec::with_capacity(3 * tangles.len());
        for (ti, t) in tangles.iter().enumerate() {
            for (slots, fwd) in t.kind.template() {
                let map = |l: u8| {
                    if l <= 6 {
                        t.boundary[l as usize - 1]
                    } else {
                        base + 3 * ti as u32 + (l - 7) as u32
                    }
                };
                xs.push(Crossing::new(slots.map(map), fwd));
            }
        }
        let expansion = if xs.is_empty() {
            Diagram::unlink(circles)
        } else {
            Diagram::from_crossings(xs, circles)
                .map_err(|e| Error::InvalidDelta(format!("gluing is not a valid diagram: {e}")))?
        };
        debug_assert_eq!(expansion.crossing_count(), 3 * tangles.len());
        Ok(DeltaDiagram {
            tangles,
            circles,
            expansion,
        })
    }

    pub fn tangles(&self) -> &[DeltaTangle] {
        &self.tangles
    }

    pub fn tangle_count(&self) -> usize {
        self.tangles.len()
    }

    /// The underlying link diagram; tangle `t` owns crossings `3t..3t+3`.
    pub fn expand(&self) -> &Diagram {
        &self.expansion
    }

    /// Build every gluing of the given tangles whose expansion is a valid
    /// planar diagram. Gluings join each outgoing endpoint to an incoming one.
    pub fn enumerate(kinds: &[DeltaType]) -> Vec<DeltaDiagram> {
        let mut outs = Vec::new();
        let mut ins = Vec::new();
        for (ti, k) in kinds.iter().enumerate() {
            let inc = k.incoming_endpoints();
            for e in 1..=6 {
                if inc.contains(&e) {
                    ins.push((ti, e));
                } else {
                    outs.push((ti, e));
                }
            }
        }
        let mut result = Vec::new();
        let mut perm: Vec<usize> = (0..ins.len()).collect();
        permutations(&mut perm, 0, &mut |p| {
            if let Ok(dd) = Self::glue(kinds, &outs, &ins, p) {
                result.push(dd);
            }
        });
        result
    }

    /// Glue `outs[i]` to `ins[perm[i]]`.
    pub fn glue(
        kinds: &[DeltaType],
        outs: &[(usize, usize)],
        ins: &[(usize, usize)],
        perm: &[usize],
    ) -> Result<DeltaDiagram> {
        let mut boundary = vec![[0u32; 6]; kinds.len()];
        for (i, &(t, e)) in outs.iter().enumerate() {
            let label = i as u32 + 1;
            boundary[t][e - 1] = label;
            let (t2, e2) = ins[perm[i]];
            boundary[t2][e2 - 1] = label;
        }
        let tangles = kinds
            .iter()
            .zip(boundary)
            .map(|(&kind, boundary)| DeltaTangle { kind, boundary })
            .collect();
        DeltaDiagram::new(tangles, 0)
    }
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Parse `D<type>(e1,e2,e3,e4,e5,e6)` terms and `U<k>` tokens.
pub fn parse_delta(text: &str) -> Result<DeltaDiagram> {
    let syntax = |pos: usize, msg: &str| Error::Syntax {
        pos,
        msg: msg.to_string(),
    };
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut tangles = Vec::new();
    let mut circles = 0usize;
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        match bytes[i] {
            b'D' => {
                let kind = match bytes.get(i + 1) {
                    Some(b'S') => DeltaType::S,
                    Some(b'T') => DeltaType::T,
                    Some(b'U') => DeltaType::U,
                    Some(b'W') => DeltaType::W,
                    _ => return Err(syntax(i + 1, "expected tangle type S, T, U or W")),
                };
                i += 2;
                if bytes.get(i) != Some(&b'(') {
                    return Err(syntax(i, "expected '('"));
                }
                let close = text[i..]
                    .find(')')
                    .map(|k| i + k)
                    .ok_or_else(|| syntax(i, "missing ')'"))?;
                let mut labels = Vec::new();
                let mut pos = i + 1;
                for part in text[i + 1..close].split(',') {
                    let v: u32 = part
                        .trim()
                        .parse()
                        .map_err(|_| syntax(pos, "expected endpoint label"))?;
                    labels.push(v);
                    pos += part.len() + 1;
                }
                if labels.len() != 6 {
                    return Err(syntax(
                        i,
                        &format!("a delta tangle has 6 endpoints, found {}", labels.len()),
                    ));
                }
                let mut boundary = [0u32; 6];
                boundary.copy_from_slice(&labels);
                tangles.push(DeltaTangle { kind, boundary });
                i = close + 1;
            }
            b'U' => {
                let start = i + 1;
                let mut j = start;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j == start {
                    return Err(syntax(j, "expected circle count after U"));
                }
                circles += text[start..j]
                    .parse::<usize>()
                    .map_err(|_| syntax(start, "circle count too large"))?;
                i = j;
            }
            _ => return Err(syntax(i, "expected 'D' or 'U'")),
        }
    }
    DeltaDiagram::new(tangles, circles)
}

impl FromStr for DeltaDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_delta(s)
    }
}

impl fmt::Display for DeltaDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = self
            .tangles
            .iter()
            .map(|t| {
                let b = t.boundary;
                format!("D{}({},{},{},{},{},{})", t.kind, b[0], b[1], b[2], b[3], b[4], b[5])
            })
            .collect();
        if self.circles > 0 || terms.is_empty() {
            terms.push(format!("U{}", self.circles));
        }
        write!(f, "{}", terms.join(" "))
    }
}

/// Identify which delta type (if any) three crossings of `d` form.
pub fn classify_tangle(d: &Diagram, crossings: [usize; 3]) -> Option<DeltaType> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let xs = d.crossings();
    if crossings.iter().any(|&c| c >= xs.len()) {
        return None;
    }
    'kind: for kind in ALL_TYPES {
        let tpl = kind.template();
        'perm: for perm in PERMS {
            let mut inner: HashMap<u8, u32> = HashMap::new();
            for (k, (slots, fwd)) in tpl.iter().enumerate() {
                let x = xs[crossings[perm[k]]];
                if x.over_forward() != *fwd {
                    continue 'perm;
                }
                for p in 0..4 {
                    if slots[p] > 6 {
                        let l = x.slots()[p];
                        if *inner.entry(slots[p]).or_insert(l) != l {
                            continue 'perm;
                        }
                    }
                }
            }
            let images: BTreeSet<u32> = inner.values().copied().collect();
            if images.len() != 3 {
                continue;
            }
            for (k, (slots, _)) in tpl.iter().enumerate() {
                let x = xs[crossings[perm[k]]];
                for p in 0..4 {
                    if slots[p] <= 6 && images.contains(&x.slots()[p]) {
                        continue 'perm;
                    }
                }
            }
            return Some(kind);
            #[allow(unreachable_code)]
            {
                continue 'kind;
            }
        }
    }
    None
}

/// A diagram whose crossings are grouped into (possibly partial) tangles,
/// with crossing ids tracked through switches, smoothings and reductions.
#[derive(Clone, Debug)]
struct Tracked {
    d: Diagram,
    tangles: Vec<TrackedTangle>,
}

#[derive(Clone, Debug)]
struct TrackedTangle {
    kind: DeltaType,
    crossings: Vec<usize>,
    untouched: bool,
}

impl Tracked {
    fn switch(&self, c: usize) -> Tracked {
        Tracked {
            d: self.d.switch_crossing(c).expect("valid id"),
            tangles: self.tangles.clone(),
        }
    }

    fn smooth(&self, c: usize) -> Tracked {
        let tangles = self
            .tangles
            .iter()
            .map(|t| TrackedTangle {
                crossings: t
                    .crossings
                    .iter()
                    .filter(|&&x| x != c)
                    .map(|&x| if x > c { x - 1 } else { x })
                    .collect(),
                ..t.clone()
            })
            .collect();
        Tracked {
            d: self.d.smooth_oriented(c).expect("valid id"),
            tangles,
        }
    }

    fn simplify(&self) -> Tracked {
        let (d, origin) = self.d.simplify_tracked();
        let mut new_id: HashMap<usize, usize> = HashMap::new();
        for (i, o) in origin.iter().enumerate() {
            new_id.insert(*o, i);
        }
        let tangles = self
            .tangles
            .iter()
            .map(|t| {
                let crossings: Vec<usize> = t.crossings.iter().filter_map(|c| new_id.get(c).copied()).collect();
                TrackedTangle {
                    untouched: t.untouched && crossings.len() == t.crossings.len(),
                    crossings,
                    kind: t.kind,
                }
            })
            .collect();
        Tracked { d, tangles }
    }

    fn tangle_of(&self, c: usize) -> Option<usize> {
        self.tangles.iter().position(|t| t.crossings.contains(&c))
    }

    fn touch(&mut self, t: usize) {
        self.tangles[t].untouched = false;
    }

    /// Untouched tangles must still be delta tangles of their original type.
    fn check_untouched(&self) -> Result<()> {
        for (i, t) in self.tangles.iter().enumerate() {
            if !t.untouched {
                continue;
            }
            let cs: [usize; 3] = t
                .crossings
                .clone()
                .try_into()
                .map_err(|_| Error::Construction(format!("untouched tangle {i} lost crossings")))?;
            if classify_tangle(&self.d, cs) != Some(t.kind) {
                return Err(Error::Construction(format!(
                    "untouched tangle {i} no longer matches type {}",
                    t.kind
                )));
            }
        }
        Ok(())
    }
}

/// Statistics gathered while building the tree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConstructionStats {
    /// Intermediate diagrams on which untouched tangles were re-checked.
    pub structure_checks: usize,
    /// Resolution choices that were abandoned for exceeding the budget.
    pub backtracks: usize,
}

/// Build the resolving tree within depth `2n`. Each step opens one tangle:
/// it resolves a crossing of that tangle met first on its over-strand, then
/// in each branch resolves at most one further crossing of the same tangle
/// before restarting the walk on the reduced children. The crossing met
/// first is tried first; the other crossings are tried only when that choice
/// overruns the budget.
pub fn delta_tree(dd: &DeltaDiagram) -> Result<SkeinTree> {
    delta_tree_with_stats(dd).map(|(t, _)| t)
}

pub fn delta_tree_with_stats(dd: &DeltaDiagram) -> Result<(SkeinTree, ConstructionStats)> {
    if dd.expand().component_count() != 1 {
        return Err(Error::Construction(format!(
            "expansion has {} components; the construction takes knots",
            dd.expand().component_count()
        )));
    }
    resolving_tree(dd)
}

/// The same construction without the single-component requirement. For
/// links the walk takes the components in order, so leaves are stacked
/// ascending diagrams.
pub fn resolving_tree(dd: &DeltaDiagram) -> Result<(SkeinTree, ConstructionStats)> {
    let state = Tracked {
        d: dd.expand().clone(),
        tangles: dd
            .tangles()
            .iter()
            .enumerate()
            .map(|(i, t)| TrackedTangle {
                kind: t.kind,
                crossings: vec![3 * i, 3 * i + 1, 3 * i + 2],
                untouched: true,
            })
            .collect(),
    };
    let mut stats = ConstructionStats::default();
    let bound = 2 * dd.tangle_count();
    if let Some(tree) = search(state.clone(), bound, &mut stats)? {
        return Ok((tree, stats));
    }
    // no tree within the bound: return the first one found so the excess is visible
    let generous = 4 * dd.expand().crossing_count() + 4;
    match search(state, generous, &mut stats)? {
        Some(tree) => Ok((tree, stats)),
        None => Err(Error::Construction(format!(
            "no resolving tree of depth at most {generous}"
        ))),
    }
}

fn node(state: &Tracked, c: usize, switched: SkeinTree, smoothed: SkeinTree) -> SkeinTree {
    SkeinTree::Node {
        diagram: state.d.clone(),
        crossing: c,
        sign: state.d.crossings()[c].sign(),
        switched: Box::new(switched),
        smoothed: Box::new(smoothed),
    }
}

fn dedup_push(v: &mut Vec<Option<usize>>, x: Option<usize>) {
    if !v.contains(&x) {
        v.push(x);
    }
}

/// Resolve `c` (if any) and recurse on both children, or recurse directly.
fn finish(
    state: Tracked,
    c: Option<usize>,
    budget: usize,
    stats: &mut ConstructionStats,
) -> Result<Option<SkeinTree>> {
    let Some(c) = c else {
        return search(state, budget, stats);
    };
    if budget == 0 {
        return Ok(None);
    }
    let Some(a) = search(state.switch(c), budget - 1, stats)? else {
        return Ok(None);
    };
    let Some(b) = search(state.smooth(c), budget - 1, stats)? else {
        return Ok(None);
    };
    Ok(Some(node(&state, c, a, b)))
}

fn search(state: Tracked, budget: usize, stats: &mut ConstructionStats) -> Result<Option<SkeinTree>> {
    let state = state.simplify();
    state.check_untouched()?;
    stats.structure_checks += 1;
    if state.d.crossing_count() == 0 {
        return SkeinTree::leaf(state.d).map(Some);
    }
    if budget == 0 {
        return Ok(None);
    }
    let wrong = state.d.ascending_violations();
    if wrong.is_empty() {
        if let Ok(leaf) = SkeinTree::leaf(state.d.clone()) {
            return Ok(Some(leaf));
        }
    }
    let mut firsts = wrong.clone();
    firsts.extend((0..state.d.crossing_count()).filter(|c| !wrong.contains(c)));

    for c1 in firsts {
        let Some(t) = state.tangle_of(c1) else {
            continue;
        };
        let mut st = state.clone();
        st.touch(t);

        let sw = st.switch(c1);
        let sw_wrong = sw.d.ascending_violations();
        let mut options = Vec::new();
        dedup_push(
            &mut options,
            sw_wrong.iter().copied().find(|c| sw.tangles[t].crossings.contains(c)),
        );
        for &c in &sw.tangles[t].crossings {
            dedup_push(&mut options, Some(c));
        }
        dedup_push(&mut options, None);
        let mut switched = None;
        for c in options {
            if let Some(tree) = finish(sw.clone(), c, budget - 1, stats)? {
                switched = Some(tree);
                break;
            }
            stats.backtracks += 1;
        }
        let Some(switched) = switched else {
            continue;
        };

        let sm = st.smooth(c1).simplify();
        sm.check_untouched()?;
        stats.structure_checks += 1;
        let rest = sm.tangles[t].crossings.clone();
        let clears = |c: usize| {
            let a = sm.switch(c).simplify();
            let b = sm.smooth(c).simplify();
            a.tangles[t].crossings.is_empty() && b.tangles[t].crossings.is_empty()
        };
        let sm_wrong = sm.d.ascending_violations();
        let mut options = Vec::new();
        for &c in rest.iter().filter(|&&c| clears(c)) {
            dedup_push(&mut options, Some(c));
        }
        for &c in sm_wrong.iter().filter(|c| rest.contains(c)) {
            dedup_push(&mut options, Some(c));
        }
        for &c in &rest {
            dedup_push(&mut options, Some(c));
        }
        dedup_push(&mut options, None);
        let mut smoothed = None;
        for c in options {
            if let Some(tree) = finish(sm.clone(), c, budget - 1, stats)? {
                smoothed = Some(tree);
                break;
            }
            stats.backtracks += 1;
        }
        let Some(smoothed) = smoothed else {
            continue;
        };
        return Ok(Some(node(&state, c1, switched, smoothed)));
    }
    Ok(None)
}

/// Outcome of running the construction on one delta diagram.
#[derive(Clone, Debug, Serialize)]
pub struct DeltaTreeReport {
    pub tangles: usize,
    pub depth: Option<usize>,
    pub bound: usize,
    pub leaves: usize,
    pub trivial_leaves: usize,
    pub structure_checks: usize,
    pub backtracks: usize,
    pub pass: bool,
    pub error: Option<String>,
}

impl DeltaTreeReport {
    pub fn to_text(&self) -> String {
        let mut lines = vec![
            format!("tangles={}", self.tangles),
            format!(
                "depth={}",
                self.depth.map_or("none".to_string(), |d| d.to_string())
            ),
            format!("bound={}", self.bound),
            format!("leaves={}", self.leaves),
            format!("trivial_leaves={}", self.trivial_leaves),
            format!("structure_checks={}", self.structure_checks),
            format!("backtracks={}", self.backtracks),
            format!("result={}", if self.pass { "pass" } else { "fail" }),
        ];
        if let Some(e) = &self.error {
            lines.push(format!("error={e}"));
        }
        lines.join("\n")
    }
}

pub fn verify_delta_tree(dd: &DeltaDiagram) -> DeltaTreeReport {
    let bound = 2 * dd.tangle_count();
    match delta_tree_with_stats(dd) {
        Ok((tree, stats)) => {
            let leaves = tree.leaves();
            let trivial = leaves.iter().filter(|l| l.is_trivial_unlink().is_some()).count();
            let depth = tree.depth();
            let valid = tree.validate();
            DeltaTreeReport {
                tangles: dd.tangle_count(),
                depth: Some(depth),
                bound,
                leaves: leaves.len(),
                trivial_leaves: trivial,
                structure_checks: stats.structure_checks,
                backtracks: stats.backtracks,
                pass: depth <= bound && trivial == leaves.len() && valid.is_ok(),
                error: valid.err().map(|e| e.to_string()),
            }
        }
        Err(e) => DeltaTreeReport {
            tangles: dd.tangle_count(),
            depth: None,
            bound,
            leaves: 0,
            trivial_leaves: 0,
            structure_checks: 0,
            backtracks: 0,
            pass: false,
            error: Some(e.to_string()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn templates_are_delta_tangles() {
        for k in ALL_TYPES {
            let dd = DeltaDiagram::enumerate(&[k]);
            assert!(!dd.is_empty(), "{k}");
            for d in &dd {
                assert_eq!(classify_tangle(d.expand(), [0, 1, 2]), Some(k));
                assert_eq!(classify_tangle(&d.expand().mirror(), [0, 1, 2]), Some(k.mirror()));
            }
        }
        assert_eq!(DeltaType::S.incoming_endpoints(), vec![1, 2, 3]);
        assert_eq!(DeltaType::U.incoming_endpoints(), vec![1, 3, 5]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_delta("DS(1,2,3,4,5)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_delta("DX(1,2,3,4,5,6)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_delta("DS(1,2,3,1,2,4)"), Err(Error::InvalidDelta(_))));
    }

    #[test]
    fn empty_delta_diagram_is_the_unknot() {
        let dd = parse_delta("U1").unwrap();
        assert_eq!(dd.tangle_count(), 0);
        assert_eq!(dd.expand().crossing_count(), 0);
        let t = delta_tree(&dd).unwrap();
        assert_eq!(t.depth(), 0);
        let r = verify_delta_tree(&dd);
        assert!(r.pass);
        assert_eq!(r.bound, 0);
    }

    #[test]
    fn display_round_trip() {
        for dd in DeltaDiagram::enumerate(&[DeltaType::U]) {
            let again = parse_delta(&dd.to_string()).unwrap();
            assert_eq!(again, dd);
        }
    }
}
