//! Oriented link diagrams encoded as planar-diagram (PD) codes.
//!
//! A crossing `X(a,b,c,d)` lists its four edge labels counterclockwise,
//! starting from the incoming under-strand, so the under-strand runs
//! `a -> c` and the over-strand joins `b` and `d` in one of the two
//! directions. The direction of the over-strand is stored explicitly; it
//! is recovered from edge succession when a PD code is parsed.
//!
//! Every constructed [`Diagram`] is validated (each label used exactly
//! twice, consistent orientation, planar) and normalized: edges are
//! relabelled `1..=2n` consecutively along each component, components
//! ordered by their smallest original label. Crossing order is preserved
//! by normalization, so crossing ids survive relabelling.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A single crossing in PD form with an explicit over-strand direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    slots: [u32; 4],
    /// `true` when the over-strand enters at slot 1 (`b -> d`).
    over_forward: bool,
}

impl Crossing {
    pub fn new(slots: [u32; 4], over_forward: bool) -> Self {
        Crossing {
            slots,
            over_forward,
        }
    }

    pub fn slots(&self) -> [u32; 4] {
        self.slots
    }

    pub fn over_forward(&self) -> bool {
        self.over_forward
    }

    /// +1 for an `L+` crossing, -1 for `L-`.
    pub fn sign(&self) -> i32 {
        if self.over_forward {
            -1
        } else {
            1
        }
    }

    /// `(incoming, outgoing)` labels of the under-strand.
    pub fn under(&self) -> (u32, u32) {
        (self.slots[0], self.slots[2])
    }

    /// `(incoming, outgoing)` labels of the over-strand.
    pub fn over(&self) -> (u32, u32) {
        if self.over_forward {
            (self.slots[1], self.slots[3])
        } else {
            (self.slots[3], self.slots[1])
        }
    }

    pub(crate) fn is_incoming(&self, slot: usize) -> bool {
        match slot {
            0 => true,
            2 => false,
            1 => self.over_forward,
            _ => !self.over_forward,
        }
    }

    /// The same crossing with under and over exchanged.
    pub fn switched(&self) -> Crossing {
        let [a, b, c, d] = self.slots;
        if self.over_forward {
            Crossing::new([b, c, d, a], false)
        } else {
            Crossing::new([d, a, b, c], true)
        }
    }

    fn relabel(&self, f: impl Fn(u32) -> u32) -> Crossing {
        let s = self.slots;
        Crossing::new([f(s[0]), f(s[1]), f(s[2]), f(s[3])], self.over_forward)
    }
}

/// An oriented link diagram: PD crossings plus crossing-free circles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    circles: usize,
    /// Edge labels of each crossing-carrying component, in orientation order.
    components: Vec<Vec<u32>>,
}

/// `(crossing, slot)` of the head (incoming end) of each label.
struct Incidence {
    head: HashMap<u32, (usize, usize)>,
}

impl Incidence {
    fn build(crossings: &[Crossing]) -> Result<Incidence> {
        let mut head = HashMap::new();
        let mut tail = HashMap::new();
        for (ci, x) in crossings.iter().enumerate() {
            for p in 0..4 {
                let l = x.slots[p];
                if l == 0 {
                    return Err(Error::InvalidDiagram("edge label 0 is not allowed".into()));
                }
                let map = if x.is_incoming(p) { &mut head } else { &mut tail };
                if map.insert(l, (ci, p)).is_some() {
                    return Err(Error::InvalidDiagram(format!(
                        "edge {l} has two {} ends",
                        if x.is_incoming(p) { "incoming" } else { "outgoing" }
                    )));
                }
            }
        }
        for l in head.keys() {
            if !tail.contains_key(l) {
                return Err(Error::InvalidDiagram(format!("edge {l} appears only once")));
            }
        }
        for l in tail.keys() {
            if !head.contains_key(l) {
                return Err(Error::InvalidDiagram(format!("edge {l} appears only once")));
            }
        }
        Ok(Incidence { head })
    }

    fn next(&self, crossings: &[Crossing], label: u32) -> u32 {
        let (c, p) = self.head[&label];
        crossings[c].slots[(p + 2) % 4]
    }
}

fn find(parent: &mut HashMap<u32, u32>, x: u32) -> u32 {
    let mut r = x;
    while let Some(&p) = parent.get(&r) {
        if p == r {
            break;
        }
        r = p;
    }
    let mut cur = x;
    while let Some(&p) = parent.get(&cur) {
        if p == r {
            break;
        }
        parent.insert(cur, r);
        cur = p;
    }
    r
}

fn union(parent: &mut HashMap<u32, u32>, a: u32, b: u32) {
    let ra = find(parent, a);
    let rb = find(parent, b);
    if ra != rb {
        parent.insert(ra.max(rb), ra.min(rb));
    }
}

/// Count faces of the PD graph by tracing darts; used for the planarity check.
fn is_planar(crossings: &[Crossing]) -> bool {
    let n = crossings.len();
    if n == 0 {
        return true;
    }
    let mut occ: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
    for (ci, x) in crossings.iter().enumerate() {
        for p in 0..4 {
            occ.entry(x.slots[p]).or_default().push((ci, p));
        }
    }
    let twin = |h: (usize, usize)| -> (usize, usize) {
        let v = &occ[&crossings[h.0].slots[h.1]];
        if v[0] == h {
            v[1]
        } else {
            v[0]
        }
    };
    let mut seen = vec![[false; 4]; n];
    let mut faces = 0usize;
    for c in 0..n {
        for p in 0..4 {
            if seen[c][p] {
                continue;
            }
            faces += 1;
            let mut h = (c, p);
            while !seen[h.0][h.1] {
                seen[h.0][h.1] = true;
                let t = twin(h);
                h = (t.0, (t.1 + 1) % 4);
            }
        }
    }
    // connected pieces of the projection graph
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut Vec<usize>, mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for v in occ.values() {
        let (a, b) = (root(&mut parent, v[0].0), root(&mut parent, v[1].0));
        parent[a] = b;
    }
    let pieces = (0..n).filter(|&i| root(&mut parent, i) == i).count();
    // V - E + F = 2 per connected piece, with E = 2V
    faces == n + 2 * pieces
}

impl Diagram {
    /// The crossing-free diagram of `k` circles (`k >= 1`).
    pub fn unlink(k: usize) -> Diagram {
        Diagram {
            crossings: Vec::new(),
            circles: k.max(1),
            components: Vec::new(),
        }
    }

    pub fn unknot() -> Diagram {
        Diagram::unlink(1)
    }

    /// Validate and normalize a list of oriented crossings.
    pub fn from_crossings(crossings: Vec<Crossing>, circles: usize) -> Result<Diagram> {
        let inc = Incidence::build(&crossings)?;
        if !is_planar(&crossings) {
            return Err(Error::InvalidDiagram("PD code is not planar".into()));
        }
        let mut labels: Vec<u32> = inc.head.keys().copied().collect();
        labels.sort_unstable();
        let mut new_label: HashMap<u32, u32> = HashMap::with_capacity(labels.len());
        let mut components = Vec::new();
        let mut next_id = 1u32;
        for &start in &labels {
            if new_label.contains_key(&start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut cur = start;
            loop {
                new_label.insert(cur, next_id);
                comp.push(next_id);
                next_id += 1;
                cur = inc.next(&crossings, cur);
                if cur == start {
                    break;
                }
            }
            components.push(comp);
        }
        let crossings = crossings
            .iter()
            .map(|x| x.relabel(|l| new_label[&l]))
            .collect();
        Ok(Diagram {
            crossings,
            circles,
            components,
        })
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Number of crossing-free circles carried alongside the PD code.
    pub fn circles(&self) -> usize {
        self.circles
    }

    /// Total number of link components, circles included.
    pub fn component_count(&self) -> usize {
        self.components.len() + self.circles
    }

    /// Edge labels of every crossing-carrying component, in orientation order.
    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    /// Component index of an edge label.
    pub fn component_of(&self, label: u32) -> Option<usize> {
        self.components.iter().position(|c| c.contains(&label))
    }

    pub fn edge_count(&self) -> usize {
        2 * self.crossings.len()
    }

    fn check_id(&self, id: usize) -> Result<()> {
        if id >= self.crossings.len() {
            Err(Error::InvalidCrossing {
                id,
                count: self.crossings.len(),
            })
        } else {
            Ok(())
        }
    }

    pub fn crossing_sign(&self, id: usize) -> Result<i32> {
        self.check_id(id)?;
        Ok(self.crossings[id].sign())
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(Crossing::sign).sum()
    }

    pub fn switch_crossing(&self, id: usize) -> Result<Diagram> {
        self.check_id(id)?;
        let mut d = self.clone();
        d.crossings[id] = d.crossings[id].switched();
        Ok(d)
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> Diagram {
        let mut d = self.clone();
        for x in d.crossings.iter_mut() {
            *x = x.switched();
        }
        d
    }

    /// Oriented (zeroth) resolution of crossing `id`.
    pub fn smooth_oriented(&self, id: usize) -> Result<Diagram> {
        self.check_id(id)?;
        let x = self.crossings[id];
        let (u_in, u_out) = x.under();
        let (o_in, o_out) = x.over();
        let mut w = Rewire::new(&self.crossings, self.circles);
        w.remove(id);
        w.join(&[u_in, o_out]);
        w.join(&[o_in, u_out]);
        w.finish()
    }

    /// Greedy crossing-decreasing Reidemeister I/II reduction.
    pub fn simplify(&self) -> Diagram {
        self.simplify_tracked().0
    }

    /// Like [`Diagram::simplify`], also returning for each surviving crossing
    /// its index in `self`.
    pub fn simplify_tracked(&self) -> (Diagram, Vec<usize>) {
        let mut d = self.clone();
        let mut origin: Vec<usize> = (0..d.crossings.len()).collect();
        while let Some((removed, next)) = d.reduce_once() {
            let mut keep = Vec::with_capacity(origin.len());
            for (i, o) in origin.iter().enumerate() {
                if !removed.contains(&i) {
                    keep.push(*o);
                }
            }
            origin = keep;
            d = next;
        }
        (d, origin)
    }

    fn reduce_once(&self) -> Option<(Vec<usize>, Diagram)> {
        let xs = &self.crossings;
        // R1: an edge joining two cyclically adjacent slots of one crossing
        for (i, x) in xs.iter().enumerate() {
            for p in 0..4 {
                if x.slots[p] == x.slots[(p + 1) % 4] {
                    let s = x.slots;
                    let mut w = Rewire::new(xs, self.circles);
                    w.remove(i);
                    w.join(&[s[0], s[1], s[2], s[3]]);
                    return Some((vec![i], w.finish().ok()?));
                }
            }
        }
        // R2: a bigon whose one side passes over at both crossings
        let mut at: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
        for (i, x) in xs.iter().enumerate() {
            for p in 0..4 {
                at.entry(x.slots[p]).or_default().push((i, p));
            }
        }
        for (i, x) in xs.iter().enumerate() {
            for p in 0..4 {
                let q = (p + 1) % 4;
                let (e, f) = (x.slots[p], x.slots[q]);
                if e == f {
                    continue;
                }
                let other = |l: u32| at[&l].iter().copied().find(|&(c, _)| c != i);
                let (Some((j, pe)), Some((j2, pf))) = (other(e), other(f)) else {
                    continue;
                };
                if j != j2 || j < i {
                    continue;
                }
                // the bigon face needs opposite rotational senses at i and j
                if pf != (pe + 3) % 4 {
                    continue;
                }
                if p % 2 != pe % 2 {
                    continue;
                }
                let y = xs[j];
                let mut w = Rewire::new(xs, self.circles);
                w.remove(i);
                w.remove(j);
                w.join(&[x.slots[(p + 2) % 4], e, y.slots[(pe + 2) % 4]]);
                w.join(&[x.slots[(q + 2) % 4], f, y.slots[(pf + 2) % 4]]);
                return Some((vec![i, j], w.finish().ok()?));
            }
        }
        None
    }

    /// `Some(k)` when greedy simplification reaches a crossing-free diagram of
    /// `k` circles. `None` does not assert non-triviality.
    pub fn is_trivial_unlink(&self) -> Option<usize> {
        let s = self.simplify();
        if s.crossings.is_empty() {
            Some(s.circles)
        } else {
            None
        }
    }

    /// Order in which crossings are first met when walking the components in
    /// order from their base points, with whether the first pass is over.
    pub fn first_visits(&self) -> Vec<(usize, bool)> {
        let mut heads: HashMap<u32, (usize, usize)> = HashMap::new();
        for (ci, x) in self.crossings.iter().enumerate() {
            for p in 0..4 {
                if x.is_incoming(p) {
                    heads.insert(x.slots[p], (ci, p));
                }
            }
        }
        let mut seen = vec![false; self.crossings.len()];
        let mut out = Vec::with_capacity(self.crossings.len());
        for comp in &self.components {
            for l in comp {
                let (c, p) = heads[l];
                if !seen[c] {
                    seen[c] = true;
                    out.push((c, p % 2 == 1));
                }
            }
        }
        out
    }

    /// Crossings whose first visit is on the over-strand, in visit order. The
    /// diagram is ascending (a trivial link) when this is empty.
    pub fn ascending_violations(&self) -> Vec<usize> {
        self.first_visits()
            .into_iter()
            .filter(|&(_, over)| over)
            .map(|(c, _)| c)
            .collect()
    }

    /// Crossings whose first visit is on the under-strand, in visit order.
    pub fn descending_violations(&self) -> Vec<usize> {
        self.first_visits()
            .into_iter()
            .filter(|&(_, over)| !over)
            .map(|(c, _)| c)
            .collect()
    }

    /// A fingerprint equal for diagrams that differ only by edge relabelling
    /// and crossing reordering.
    pub fn canonical_key(&self) -> String {
        let mut pieces: Vec<String> = self.pieces().iter().map(|p| self.piece_key(p)).collect();
        pieces.sort();
        format!("{}|{}", self.circles, pieces.join(";"))
    }

    /// Crossing indices of each connected piece of the projection.
    fn pieces(&self) -> Vec<Vec<usize>> {
        let mut parent: HashMap<u32, u32> = HashMap::new();
        for x in &self.crossings {
            for &l in &x.slots {
                parent.entry(l).or_insert(l);
            }
            for p in 1..4 {
                union(&mut parent, x.slots[0], x.slots[p]);
            }
        }
        let mut groups: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (i, x) in self.crossings.iter().enumerate() {
            let r = find(&mut parent, x.slots[0]);
            groups.entry(r).or_default().push(i);
        }
        groups.into_values().collect()
    }

    fn piece_key(&self, piece: &[usize]) -> String {
        let xs = &self.crossings;
        let mut heads: HashMap<u32, (usize, usize)> = HashMap::new();
        let mut labels = Vec::new();
        for &ci in piece {
            for p in 0..4 {
                if xs[ci].is_incoming(p) {
                    heads.insert(xs[ci].slots[p], (ci, p));
                    labels.push(xs[ci].slots[p]);
                }
            }
        }
        let next = |l: u32| {
            let (c, p) = heads[&l];
            xs[c].slots[(p + 2) % 4]
        };
        let mut best: Option<Vec<([u32; 4], bool)>> = None;
        for &start in &labels {
            let mut new: HashMap<u32, u32> = HashMap::new();
            let mut order: Vec<u32> = Vec::new();
            let walk = |s: u32, new: &mut HashMap<u32, u32>, order: &mut Vec<u32>| {
                let mut cur = s;
                loop {
                    new.insert(cur, order.len() as u32 + 1);
                    order.push(cur);
                    cur = next(cur);
                    if cur == s {
                        break;
                    }
                }
            };
            walk(start, &mut new, &mut order);
            let mut idx = 0;
            while idx < order.len() {
                let (c, p) = heads[&order[idx]];
                let q = (p + 1) % 4;
                let x = &xs[c];
                let inc = if x.is_incoming(q) { x.slots[q] } else { x.slots[(q + 2) % 4] };
                if !new.contains_key(&inc) {
                    walk(inc, &mut new, &mut order);
                }
                idx += 1;
            }
            let mut enc: Vec<([u32; 4], bool)> = piece
                .iter()
                .map(|&ci| {
                    let s = xs[ci].slots;
                    ([new[&s[0]], new[&s[1]], new[&s[2]], new[&s[3]]], xs[ci].over_forward)
                })
                .collect();
            enc.sort_unstable();
            if best.as_ref().map_or(true, |b| enc < *b) {
                best = Some(enc);
            }
        }
        best.unwrap_or_default()
            .iter()
            .map(|(s, f)| format!("{},{},{},{}{}", s[0], s[1], s[2], s[3], if *f { '-' } else { '+' }))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Closure of a braid word on `strands` strands. Generator `i` (1-based,
    /// sign gives the crossing sign) crosses strands at positions `i` and `i+1`.
    pub fn from_braid(strands: usize, word: &[i32]) -> Result<Diagram> {
        if strands == 0 {
            return Err(Error::InvalidDiagram("braid needs at least one strand".into()));
        }
        let mut fresh = 1u32;
        let bottom: Vec<u32> = (0..strands)
            .map(|_| {
                fresh += 1;
                fresh - 1
            })
            .collect();
        let mut cur = bottom.clone();
        let mut xs = Vec::with_capacity(word.len());
        for &g in word {
            let i = g.unsigned_abs() as usize;
            if g == 0 || i >= strands {
                return Err(Error::InvalidDiagram(format!("braid generator {g} out of range")));
            }
            let (x, y) = (cur[i - 1], cur[i]);
            let (x2, y2) = (fresh, fresh + 1);
            fresh += 2;
            // strand from position i-1 moves to i, strand from i moves to i-1
            if g > 0 {
                xs.push(Crossing::new([y, x2, y2, x], false));
            } else {
                xs.push(Crossing::new([x, y, x2, y2], true));
            }
            cur[i - 1] = y2;
            cur[i] = x2;
        }
        // close: top label at each position is identified with the bottom one
        let mut parent: HashMap<u32, u32> = HashMap::new();
        for l in 1..fresh {
            parent.insert(l, l);
        }
        for (t, b) in cur.iter().zip(&bottom) {
            union(&mut parent, *t, *b);
        }
        let root: HashMap<u32, u32> = (1..fresh).map(|l| (l, find(&mut parent, l))).collect();
        let xs: Vec<Crossing> = xs.iter().map(|x| x.relabel(|l| root[&l])).collect();
        let used: std::collections::HashSet<u32> = xs.iter().flat_map(|x| x.slots).collect();
        let mut roots = std::collections::HashSet::new();
        for b in &bottom {
            roots.insert(find(&mut parent, *b));
        }
        let circles = roots.iter().filter(|r| !used.contains(*r)).count();
        if xs.is_empty() {
            return Ok(Diagram::unlink(circles));
        }
        Diagram::from_crossings(xs, circles)
    }
}

/// Removes crossings and fuses edge labels that become a single edge.
struct Rewire {
    crossings: Vec<Option<Crossing>>,
    circles: usize,
    parent: HashMap<u32, u32>,
    touched: Vec<u32>,
}

impl Rewire {
    fn new(xs: &[Crossing], circles: usize) -> Self {
        Rewire {
            crossings: xs.iter().copied().map(Some).collect(),
            circles,
            parent: HashMap::new(),
            touched: Vec::new(),
        }
    }

    fn remove(&mut self, i: usize) {
        if let Some(x) = self.crossings[i].take() {
            self.touched.extend(x.slots);
        }
    }

    fn join(&mut self, labels: &[u32]) {
        for &l in labels {
            self.parent.entry(l).or_insert(l);
        }
        for w in labels.windows(2) {
            union(&mut self.parent, w[0], w[1]);
        }
    }

    fn finish(mut self) -> Result<Diagram> {
        let parent = &mut self.parent;
        let xs: Vec<Crossing> = self
            .crossings
            .iter()
            .flatten()
            .map(|x| {
                let mut s = x.slots;
                for l in s.iter_mut() {
                    if parent.contains_key(l) {
                        *l = find(parent, *l);
                    }
                }
                Crossing::new(s, x.over_forward)
            })
            .collect();
        let present: std::collections::HashSet<u32> = xs.iter().flat_map(|x| x.slots).collect();
        let mut orphan = std::collections::HashSet::new();
        for &l in &self.touched {
            let r = if parent.contains_key(&l) { find(parent, l) } else { l };
            if !present.contains(&r) {
                orphan.insert(r);
            }
        }
        let circles = self.circles + orphan.len();
        if xs.is_empty() {
            return Ok(Diagram::unlink(circles));
        }
        Diagram::from_crossings(xs, circles)
    }
}

/// Parse a PD code: whitespace-separated `X(a,b,c,d)` terms and `U<k>` tokens.
pub fn parse_pd(text: &str) -> Result<Diagram> {
    let mut raw: Vec<[u32; 4]> = Vec::new();
    let mut circles = 0usize;
    let bytes = text.as_bytes();
    let mut i = 0;
    let syntax = |pos: usize, msg: &str| Error::Syntax {
        pos,
        msg: msg.to_string(),
    };
    while i < bytes.len() {
        let ch = bytes[i];
        if ch.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        match ch {
            b'X' => {
                i += 1;
                if bytes.get(i) != Some(&b'(') {
                    return Err(syntax(i, "expected '(' after X"));
                }
                i += 1;
                let mut vals = Vec::with_capacity(4);
                loop {
                    while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                        i += 1;
                    }
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if start == i {
                        return Err(syntax(i, "expected edge label"));
                    }
                    let v: u32 = text[start..i]
                        .parse()
                        .map_err(|_| syntax(start, "edge label too large"))?;
                    if v == 0 {
                        return Err(syntax(start, "edge labels must be positive"));
                    }
                    vals.push(v);
                    while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                        i += 1;
                    }
                    match bytes.get(i) {
                        Some(b',') => i += 1,
                        Some(b')') => {
                            i += 1;
                            break;
                        }
                        _ => return Err(syntax(i, "expected ',' or ')'")),
                    }
                }
                if vals.len() != 4 {
                    return Err(syntax(i, "a crossing needs exactly four edge labels"));
                }
                raw.push([vals[0], vals[1], vals[2], vals[3]]);
            }
            b'U' => {
                i += 1;
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(syntax(i, "expected circle count after U"));
                }
                circles += text[start..i]
                    .parse::<usize>()
                    .map_err(|_| syntax(start, "circle count too large"))?;
            }
            _ => return Err(syntax(i, "expected 'X(' or 'U'")),
        }
    }
    if raw.is_empty() {
        return Ok(Diagram::unlink(circles));
    }
    Diagram::from_crossings(orient(&raw)?, circles)
}

/// Recover over-strand directions from the under-strands met along each
/// component; components with no under-pass follow increasing labels.
fn orient(raw: &[[u32; 4]]) -> Result<Vec<Crossing>> {
    let mut occ: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
    for (ci, s) in raw.iter().enumerate() {
        for p in 0..4 {
            occ.entry(s[p]).or_default().push((ci, p));
        }
    }
    for (l, v) in &occ {
        if v.len() != 2 {
            return Err(Error::InvalidDiagram(format!(
                "edge {l} appears {} times (expected exactly twice)",
                v.len()
            )));
        }
    }
    let other = |h: (usize, usize)| {
        let v = &occ[&raw[h.0][h.1]];
        if v[0] == h {
            v[1]
        } else {
            v[0]
        }
    };
    let mut forward: Vec<Option<bool>> = vec![None; raw.len()];
    let mut visited: std::collections::HashSet<(usize, usize)> = Default::default();
    let mut labels: Vec<u32> = occ.keys().copied().collect();
    labels.sort_unstable();
    for &l in &labels {
        let v = &occ[&l];
        if visited.contains(&v[0]) {
            continue;
        }
        // walk the cycle of entries starting by entering at v[0]
        let walk = |first: (usize, usize)| -> Vec<(usize, usize)> {
            let mut entries = Vec::new();
            let mut h = first;
            loop {
                entries.push(h);
                let out = (h.0, (h.1 + 2) % 4);
                h = other(out);
                if h == first {
                    break;
                }
            }
            entries
        };
        let a = walk(v[0]);
        let b = walk(v[1]);
        let score = |es: &[(usize, usize)]| -> (usize, usize) {
            let good = es.iter().filter(|h| h.1 == 0).count();
            let bad = es.iter().filter(|h| h.1 == 2).count();
            (good, bad)
        };
        let (ga, ba) = score(&a);
        let entries = if ga + ba > 0 {
            if ga > 0 && ba > 0 {
                return Err(Error::InvalidDiagram(format!(
                    "inconsistent under-strand orientation on the component of edge {l}"
                )));
            }
            if ga > 0 {
                a
            } else {
                b
            }
        } else {
            // no under passes: follow the smaller neighbouring label
            let next_label = |es: &[(usize, usize)]| raw[es[0].0][(es[0].1 + 2) % 4];
            let (na, nb) = (next_label(&a), next_label(&b));
            if nb < na {
                b
            } else {
                a
            }
        };
        for h in &entries {
            visited.insert(*h);
            visited.insert((h.0, (h.1 + 2) % 4));
            if h.1 % 2 == 1 {
                forward[h.0] = Some(h.1 == 1);
            }
        }
    }
    Ok(raw
        .iter()
        .zip(forward)
        .map(|(s, f)| Crossing::new(*s, f.unwrap_or(false)))
        .collect())
}

impl FromStr for Diagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_pd(s)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = self
            .crossings
            .iter()
            .map(|x| {
                let [a, b, c, d] = x.slots;
                format!("X({a},{b},{c},{d})")
            })
            .collect();
        if self.circles > 0 || terms.is_empty() {
            terms.push(format!("U{}", self.circles));
        }
        write!(f, "{}", terms.join(" "))
    }
}
