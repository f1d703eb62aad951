//! Inequalities between knot invariants as a graph, and per-knot interval
//! bound propagation over it.
//!
//! An edge `A >= B` states `value(A, K) >= value(B, K)` for every knot `K`,
//! where `A` and `B` are expressions over a single invariant such as `2*g`,
//! `b-2`, `abs(sigma)` or `ceil(spV_t/2)`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

macro_rules! invariants {
    ($($variant:ident => $name:literal),* $(,)?) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum InvariantId { $($variant),* }

        impl InvariantId {
            pub const ALL: &'static [InvariantId] = &[$(InvariantId::$variant),*];

            pub fn name(self) -> &'static str {
                match self { $(InvariantId::$variant => $name),* }
            }
        }

        impl FromStr for InvariantId {
            type Err = String;
            fn from_str(s: &str) -> std::result::Result<Self, String> {
                match s {
                    $($name => Ok(InvariantId::$variant),)*
                    _ => Err(format!("unknown invariant {s:?}")),
                }
            }
        }
    };
}

invariants! {
    C => "c",
    C3 => "c3",
    CDelta => "cDelta",
    G => "g",
    Gf => "gf",
    Gc => "gc",
    U => "u",
    Ub => "ub",
    Ulb => "ulb",
    G4 => "g4",
    Gr => "gr",
    Gds => "gds",
    Sigma => "sigma",
    SpDeltaT => "spDelta_t",
    SpVT => "spV_t",
    DegPZ => "degP_z",
    SpPV => "spP_v",
    SpFA => "spF_a",
    Cl4 => "cl4",
    Cl => "cl",
    Us => "us",
    Td => "td",
    Tr => "tr",
    Uc => "uc",
    UrStar => "ur_star",
    Br => "br",
    B => "b",
    Alpha => "alpha",
    M => "m",
    A => "a",
    Tau => "tau",
    S => "s",
}

impl InvariantId {
    /// Invariants that may take negative values.
    pub fn is_signed(self) -> bool {
        matches!(self, InvariantId::Sigma | InvariantId::Tau | InvariantId::S)
    }
}

impl fmt::Display for InvariantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for InvariantId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Integer interval; `None` is an infinite endpoint.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Interval {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl Interval {
    pub const FULL: Interval = Interval { lo: None, hi: None };

    pub fn new(lo: Option<i64>, hi: Option<i64>) -> Interval {
        Interval { lo, hi }
    }

    pub fn exact(v: i64) -> Interval {
        Interval {
            lo: Some(v),
            hi: Some(v),
        }
    }

    pub fn value(&self) -> Option<i64> {
        match (self.lo, self.hi) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!((self.lo, self.hi), (Some(a), Some(b)) if a > b)
    }

    pub fn is_full(&self) -> bool {
        self.lo.is_none() && self.hi.is_none()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.lo.map_or(true, |l| l <= x) && self.hi.map_or(true, |h| x <= h)
    }

    /// `self` is a subset of `other`.
    pub fn within(&self, other: &Interval) -> bool {
        let lo_ok = match (other.lo, self.lo) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(o), Some(s)) => s >= o,
        };
        let hi_ok = match (other.hi, self.hi) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(o), Some(s)) => s <= o,
        };
        lo_ok && hi_ok
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        Interval {
            lo: max_opt(self.lo, other.lo),
            hi: min_opt(self.hi, other.hi),
        }
    }
}

fn max_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn fmt_bound(b: Option<i64>, neg: bool) -> String {
    match b {
        Some(v) => v.to_string(),
        None if neg => "-inf".into(),
        None => "+inf".into(),
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", fmt_bound(self.lo, true), fmt_bound(self.hi, false))
    }
}

/// How an expression is computed from its base invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Transform {
    /// `scale * x + offset`, `scale >= 1`.
    Affine { scale: i64, offset: i64 },
    /// `scale * |x|`.
    Abs { scale: i64 },
    /// `ceil(x / 2)`.
    HalfCeil,
}

impl Transform {
    pub const IDENTITY: Transform = Transform::Affine { scale: 1, offset: 0 };

    pub fn eval(self, x: i64) -> i64 {
        match self {
            Transform::Affine { scale, offset } => scale * x + offset,
            Transform::Abs { scale } => scale * x.abs(),
            Transform::HalfCeil => div_ceil(x, 2),
        }
    }

    pub fn is_monotone(self) -> bool {
        !matches!(self, Transform::Abs { .. })
    }

    /// Interval of `eval(x)` for `x` in `iv`.
    pub fn image(self, iv: Interval) -> Interval {
        match self {
            Transform::Affine { .. } | Transform::HalfCeil => Interval {
                lo: iv.lo.map(|x| self.eval(x)),
                hi: iv.hi.map(|x| self.eval(x)),
            },
            Transform::Abs { scale } => {
                let (lo, hi) = match (iv.lo, iv.hi) {
                    (Some(l), Some(h)) if l >= 0 => (l, Some(h)),
                    (Some(l), Some(h)) if h <= 0 => (-h, Some(-l)),
                    (Some(l), Some(h)) => (0, Some(h.max(-l))),
                    (Some(l), None) => (l.max(0), None),
                    (None, Some(h)) => ((-h).max(0), None),
                    (None, None) => (0, None),
                };
                Interval {
                    lo: Some(scale * lo),
                    hi: hi.map(|h| scale * h),
                }
            }
        }
    }

    /// Tightest interval for `x` implied by `eval(x) <= h`.
    pub fn preimage_upper(self, h: i64) -> Interval {
        match self {
            Transform::Affine { scale, offset } => Interval::new(None, Some(div_floor(h - offset, scale))),
            Transform::Abs { scale } => {
                let m = div_floor(h, scale);
                Interval::new(Some(-m), Some(m))
            }
            Transform::HalfCeil => Interval::new(None, Some(2 * h)),
        }
    }

    /// Interval for `x` implied by `eval(x) >= l`. Lower bounds on `|x|` are
    /// not convex and are dropped.
    pub fn preimage_lower(self, l: i64) -> Interval {
        match self {
            Transform::Affine { scale, offset } => Interval::new(Some(div_ceil(l - offset, scale)), None),
            Transform::Abs { .. } => Interval::FULL,
            Transform::HalfCeil => Interval::new(Some(2 * l - 1), None),
        }
    }

    /// Asymptotic slopes towards `+inf` and `-inf`, doubled to stay integral.
    fn slopes2(self) -> (i64, i64) {
        match self {
            Transform::Affine { scale, .. } => (2 * scale, 2 * scale),
            Transform::Abs { scale } => (2 * scale, -2 * scale),
            Transform::HalfCeil => (1, 1),
        }
    }
}

fn div_floor(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantExpr {
    pub base: InvariantId,
    pub transform: Transform,
}

impl InvariantExpr {
    pub fn plain(base: InvariantId) -> InvariantExpr {
        InvariantExpr {
            base,
            transform: Transform::IDENTITY,
        }
    }

    pub fn eval(&self, x: i64) -> i64 {
        self.transform.eval(x)
    }

    /// `self >= other` for every admissible value of the shared base.
    /// Checked on a window around zero plus the asymptotic slopes; exact for
    /// the transforms above, whose kinks all lie at 0 or between 0 and 1.
    pub fn dominates(&self, other: &InvariantExpr) -> bool {
        if self.base != other.base {
            return false;
        }
        let (a, b) = (self.transform, other.transform);
        let signed = self.base.is_signed();
        let window = if signed { -64..=64 } else { 0..=64 };
        if window.into_iter().any(|x| a.eval(x) < b.eval(x)) {
            return false;
        }
        let (ap, an) = a.slopes2();
        let (bp, bn) = b.slopes2();
        ap >= bp && (!signed || an <= bn)
    }
}

impl fmt::Display for InvariantExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = self.base.name();
        match self.transform {
            Transform::Affine { scale, offset } => {
                if scale != 1 {
                    write!(f, "{scale}*")?;
                }
                write!(f, "{x}")?;
                match offset.cmp(&0) {
                    std::cmp::Ordering::Greater => write!(f, "+{offset}"),
                    std::cmp::Ordering::Less => write!(f, "{offset}"),
                    std::cmp::Ordering::Equal => Ok(()),
                }
            }
            Transform::Abs { scale: 1 } => write!(f, "abs({x})"),
            Transform::Abs { scale } => write!(f, "{scale}*abs({x})"),
            Transform::HalfCeil => write!(f, "ceil({x}/2)"),
        }
    }
}

impl FromStr for InvariantExpr {
    type Err = String;

    /// `x`, `k*x`, `x+o`, `x-o`, `k*x-o`, `abs(x)`, `k*abs(x)`, `ceil(x/2)`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        let (scale, rest) = match s.split_once('*') {
            Some((k, rest)) => (
                k.trim()
                    .parse::<i64>()
                    .ok()
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| format!("bad scale in {s:?}"))?,
                rest.trim(),
            ),
            None => (1, s),
        };
        if let Some(inner) = rest.strip_prefix("abs(").and_then(|r| r.strip_suffix(')')) {
            let base = inner.trim().parse()?;
            return Ok(InvariantExpr {
                base,
                transform: Transform::Abs { scale },
            });
        }
        if let Some(inner) = rest.strip_prefix("ceil(").and_then(|r| r.strip_suffix(')')) {
            let (x, d) = inner
                .split_once('/')
                .ok_or_else(|| format!("expected ceil(x/2) in {s:?}"))?;
            if d.trim() != "2" || scale != 1 {
                return Err(format!("only ceil(x/2) is supported, got {s:?}"));
            }
            return Ok(InvariantExpr {
                base: x.trim().parse()?,
                transform: Transform::HalfCeil,
            });
        }
        let (name, offset) = match rest.find(['+', '-']) {
            Some(i) => {
                let off: i64 = rest[i + 1..]
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad offset in {s:?}"))?;
                (&rest[..i], if &rest[i..i + 1] == "-" { -off } else { off })
            }
            None => (rest, 0),
        };
        Ok(InvariantExpr {
            base: name.trim().parse()?,
            transform: Transform::Affine { scale, offset },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeId {
    Num(u32),
    Named(String),
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeId::Num(n) => write!(f, "{n}"),
            EdgeId::Named(s) => f.write_str(s),
        }
    }
}

impl FromStr for EdgeId {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.is_empty() || !s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(format!("bad edge id {s:?}"));
        }
        Ok(match s.parse::<u32>() {
            Ok(n) => EdgeId::Num(n),
            Err(_) => EdgeId::Named(s.to_string()),
        })
    }
}

impl Serialize for EdgeId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeStatus {
    Theorem,
    Conjecture,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationEdge {
    pub id: EdgeId,
    pub status: EdgeStatus,
    pub source: InvariantExpr,
    pub target: InvariantExpr,
    pub citation: String,
}

impl fmt::Display for RelationEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            EdgeStatus::Theorem => "theorem",
            EdgeStatus::Conjecture => "conjecture",
        };
        write!(f, "edge {} {status} {} >= {}", self.id, self.source, self.target)?;
        if !self.citation.is_empty() {
            write!(f, " # {}", self.citation)?;
        }
        Ok(())
    }
}

/// The bundled transcription of the relation diagram.
pub const BUILTIN_RELATIONS: &str = include_str!("../data/relations.txt");

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationGraph {
    edges: Vec<RelationEdge>,
}

impl RelationGraph {
    pub fn builtin() -> RelationGraph {
        RelationGraph::parse(BUILTIN_RELATIONS).expect("bundled relations file parses")
    }

    /// Parse `edge <id> <status> <source> >= <target> # <citation>` lines;
    /// blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<RelationGraph> {
        let mut g = RelationGraph::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |msg: String| Error::Relations { line, msg };
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (body, citation) = match trimmed.split_once('#') {
                Some((b, c)) => (b.trim(), c.trim().to_string()),
                None => (trimmed, String::new()),
            };
            let mut parts = body.splitn(4, char::is_whitespace);
            if parts.next() != Some("edge") {
                return Err(err("expected 'edge'".into()));
            }
            let id: EdgeId = parts
                .next()
                .ok_or_else(|| err("missing edge id".into()))?
                .parse()
                .map_err(err)?;
            let status = match parts.next() {
                Some("theorem") => EdgeStatus::Theorem,
                Some("conjecture") => EdgeStatus::Conjecture,
                other => return Err(err(format!("bad status {other:?}"))),
            };
            let rel = parts.next().ok_or_else(|| err("missing relation".into()))?;
            let (src, tgt) = rel
                .split_once(">=")
                .ok_or_else(|| err("expected '>='".into()))?;
            let edge = RelationEdge {
                id,
                status,
                source: src.parse().map_err(err)?,
                target: tgt.parse().map_err(err)?,
                citation,
            };
            g.add(edge).map_err(|e| match e {
                Error::Relations { msg, .. } => err(msg),
                other => other,
            })?;
        }
        Ok(g)
    }

    pub fn add(&mut self, edge: RelationEdge) -> Result<()> {
        if self.edge(&edge.id).is_some() {
            return Err(Error::Relations {
                line: 0,
                msg: format!("duplicate edge id {}", edge.id),
            });
        }
        self.edges.push(edge);
        Ok(())
    }

    pub fn edges(&self) -> &[RelationEdge] {
        &self.edges
    }

    pub fn edge(&self, id: &EdgeId) -> Option<&RelationEdge> {
        self.edges.iter().find(|e| &e.id == id)
    }

    pub fn theorems(&self) -> impl Iterator<Item = &RelationEdge> {
        self.edges.iter().filter(|e| e.status == EdgeStatus::Theorem)
    }

    pub fn conjectures(&self) -> impl Iterator<Item = &RelationEdge> {
        self.edges.iter().filter(|e| e.status == EdgeStatus::Conjecture)
    }

    pub fn to_text(&self) -> String {
        self.edges.iter().map(|e| format!("{e}\n")).collect()
    }
}

/// Per-knot invariant intervals. Absent entries are unbounded.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BoundState {
    knots: BTreeMap<String, BTreeMap<InvariantId, Interval>>,
}

impl BoundState {
    pub fn new() -> BoundState {
        BoundState::default()
    }

    pub fn is_empty(&self) -> bool {
        self.knots.is_empty()
    }

    pub fn knot_count(&self) -> usize {
        self.knots.len()
    }

    pub fn knots(&self) -> impl Iterator<Item = &str> {
        self.knots.keys().map(String::as_str)
    }

    pub fn add_knot(&mut self, knot: &str) {
        self.knots.entry(knot.to_string()).or_default();
    }

    pub fn set(&mut self, knot: &str, inv: InvariantId, iv: Interval) {
        let m = self.knots.entry(knot.to_string()).or_default();
        if iv.is_full() {
            m.remove(&inv);
        } else {
            m.insert(inv, iv);
        }
    }

    pub fn get(&self, knot: &str, inv: InvariantId) -> Interval {
        self.knots
            .get(knot)
            .and_then(|m| m.get(&inv))
            .copied()
            .unwrap_or(Interval::FULL)
    }

    pub fn entries(&self, knot: &str) -> impl Iterator<Item = (InvariantId, Interval)> + '_ {
        self.knots.get(knot).into_iter().flat_map(|m| m.iter().map(|(k, v)| (*k, *v)))
    }

    /// All `(knot, invariant, interval)` triples in sorted order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, InvariantId, Interval)> {
        self.knots
            .iter()
            .flat_map(|(k, m)| m.iter().map(move |(i, v)| (k.as_str(), *i, *v)))
    }

    /// Every interval of `self` lies inside the matching interval of `other`.
    pub fn refines(&self, other: &BoundState) -> bool {
        other.knots().all(|k| self.knots.contains_key(k))
            && self.knots().all(|k| {
                InvariantId::ALL
                    .iter()
                    .all(|&i| self.get(k, i).within(&other.get(k, i)))
            })
    }

    pub fn expr_interval(&self, knot: &str, e: &InvariantExpr) -> Interval {
        e.transform.image(self.get(knot, e.base))
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for (k, inv, iv) in self.iter() {
            out.push_str(&format!("{k:<10} {:<10} {iv}\n", inv.name()));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WorklistOrder {
    /// Queue, edges in file order.
    #[default]
    Fifo,
    /// Stack.
    Lifo,
    /// Queue, edges in reverse file order.
    Reversed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PropagateOptions {
    /// Lower bound 0 for every invariant except `sigma`, `tau`, `s`.
    pub nonnegative: bool,
    /// Signature of a knot is even.
    pub sigma_even: bool,
    pub order: WorklistOrder,
    /// Edge visits allowed per knot; default `10 * |edges| * |invariants|`.
    pub iteration_cap: Option<usize>,
}

impl Default for PropagateOptions {
    fn default() -> Self {
        PropagateOptions {
            nonnegative: true,
            sigma_even: false,
            order: WorklistOrder::Fifo,
            iteration_cap: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Side {
    Lo,
    Hi,
}

#[derive(Clone, Debug)]
enum Reason {
    Input,
    Axiom(&'static str),
    Edge(EdgeId, InvariantId, Side),
}

struct KnotRun<'a> {
    knot: &'a str,
    bounds: HashMap<InvariantId, Interval>,
    why: HashMap<(InvariantId, Side), Reason>,
}

impl KnotRun<'_> {
    fn get(&self, i: InvariantId) -> Interval {
        self.bounds.get(&i).copied().unwrap_or(Interval::FULL)
    }

    /// Tighten `i` by `iv`; returns whether anything changed.
    fn tighten(&mut self, i: InvariantId, iv: Interval, why: impl Fn(Side) -> Reason) -> Result<bool> {
        let old = self.get(i);
        let new = old.intersect(&iv);
        if new == old {
            return Ok(false);
        }
        if new.lo != old.lo {
            self.why.insert((i, Side::Lo), why(Side::Lo));
        }
        if new.hi != old.hi {
            self.why.insert((i, Side::Hi), why(Side::Hi));
        }
        self.bounds.insert(i, new);
        if new.is_empty() {
            return Err(Error::Contradiction {
                knot: self.knot.to_string(),
                invariant: i.name().to_string(),
                lo: fmt_bound(new.lo, true),
                hi: fmt_bound(new.hi, false),
                chain: format!("lower bound: {}; upper bound: {}", self.chain(i, Side::Lo), self.chain(i, Side::Hi)),
            });
        }
        Ok(true)
    }

    fn chain(&self, i: InvariantId, side: Side) -> String {
        let mut steps = Vec::new();
        let mut cur = (i, side);
        let mut seen = HashSet::new();
        while seen.insert(cur) {
            match self.why.get(&cur) {
                Some(Reason::Edge(id, from, s)) => {
                    steps.push(format!("edge {id}"));
                    cur = (*from, *s);
                }
                Some(Reason::Axiom(a)) => {
                    steps.push(format!("axiom {a}"));
                    break;
                }
                Some(Reason::Input) | None => {
                    steps.push(format!("input {}", cur.0));
                    break;
                }
            }
        }
        steps.reverse();
        steps.join(" -> ")
    }
}

/// Tighten every knot's intervals to the fixpoint of the theorem edges and
/// the enabled axioms. Conjecture edges are ignored.
pub fn propagate(g: &RelationGraph, s: &BoundState) -> Result<BoundState> {
    propagate_with(g, s, &PropagateOptions::default())
}

pub fn propagate_with(g: &RelationGraph, s: &BoundState, opts: &PropagateOptions) -> Result<BoundState> {
    let mut edges: Vec<&RelationEdge> = g.theorems().collect();
    if opts.order == WorklistOrder::Reversed {
        edges.reverse();
    }
    let mut by_inv: HashMap<InvariantId, Vec<usize>> = HashMap::new();
    for (k, e) in edges.iter().enumerate() {
        by_inv.entry(e.source.base).or_default().push(k);
        if e.target.base != e.source.base {
            by_inv.entry(e.target.base).or_default().push(k);
        }
    }
    let cap = opts
        .iteration_cap
        .unwrap_or(10 * edges.len().max(1) * InvariantId::ALL.len());

    let mut out = BoundState::new();
    for knot in s.knots() {
        let mut run = KnotRun {
            knot,
            bounds: HashMap::new(),
            why: HashMap::new(),
        };
        for (i, iv) in s.entries(knot) {
            run.tighten(i, iv, |_| Reason::Input)?;
        }
        for &i in InvariantId::ALL {
            if opts.nonnegative && !i.is_signed() {
                run.tighten(i, Interval::new(Some(0), None), |_| Reason::Axiom("nonnegative"))?;
            }
        }
        if opts.sigma_even {
            even_sigma(&mut run)?;
        }

        let mut queue: VecDeque<usize> = (0..edges.len()).collect();
        let mut queued = vec![true; edges.len()];
        let mut steps = 0usize;
        loop {
            let next = match opts.order {
                WorklistOrder::Lifo => queue.pop_back(),
                _ => queue.pop_front(),
            };
            let Some(k) = next else { break };
            queued[k] = false;
            steps += 1;
            if steps > cap {
                return Err(Error::IterationCap(knot.to_string()));
            }
            let e = edges[k];
            let mut changed = Vec::new();
            // forward: target <= source
            if let Some(h) = e.source.transform.image(run.get(e.source.base)).hi {
                let why = |_| Reason::Edge(e.id.clone(), e.source.base, Side::Hi);
                if run.tighten(e.target.base, e.target.transform.preimage_upper(h), why)? {
                    changed.push(e.target.base);
                }
            }
            // backward: source >= target
            if let Some(l) = e.target.transform.image(run.get(e.target.base)).lo {
                let why = |_| Reason::Edge(e.id.clone(), e.target.base, Side::Lo);
                if run.tighten(e.source.base, e.source.transform.preimage_lower(l), why)? {
                    changed.push(e.source.base);
                }
            }
            for i in changed {
                if opts.sigma_even && i == InvariantId::Sigma {
                    even_sigma(&mut run)?;
                }
                for &k2 in by_inv.get(&i).map(Vec::as_slice).unwrap_or(&[]) {
                    if !queued[k2] {
                        queued[k2] = true;
                        queue.push_back(k2);
                    }
                }
            }
        }
        out.add_knot(knot);
        for (i, iv) in run.bounds {
            out.set(knot, i, iv);
        }
    }
    Ok(out)
}

fn even_sigma(run: &mut KnotRun<'_>) -> Result<bool> {
    let iv = run.get(InvariantId::Sigma);
    let lo = iv.lo.map(|l| l + l.rem_euclid(2));
    let hi = iv.hi.map(|h| h - h.rem_euclid(2));
    run.tighten(InvariantId::Sigma, Interval::new(lo, hi), |_| Reason::Axiom("sigma even"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Deduction {
    pub knot: String,
    pub invariant: InvariantId,
    pub value: i64,
}

/// Entries exact in `after` that were not exact in `before`.
pub fn deduce_exact(before: &BoundState, after: &BoundState) -> Vec<Deduction> {
    after
        .iter()
        .filter_map(|(k, i, iv)| {
            let v = iv.value()?;
            if before.get(k, i).value().is_some() {
                return None;
            }
            Some(Deduction {
                knot: k.to_string(),
                invariant: i,
                value: v,
            })
        })
        .collect()
}

/// Whether the edge fails to follow from the other theorem edges together
/// with dominance between expressions of the same invariant.
pub fn independence_check(g: &RelationGraph, id: &EdgeId) -> Result<bool> {
    let edge = g.edge(id).ok_or_else(|| Error::UnknownEdge(id.to_string()))?;
    let rest: Vec<&RelationEdge> = g.theorems().filter(|e| &e.id != id).collect();
    let mut nodes: BTreeSet<InvariantExpr> = BTreeSet::new();
    nodes.insert(edge.source);
    nodes.insert(edge.target);
    for e in &rest {
        nodes.insert(e.source);
        nodes.insert(e.target);
    }
    let bases: Vec<InvariantId> = nodes.iter().map(|n| n.base).collect();
    nodes.extend(bases.into_iter().map(InvariantExpr::plain));

    let mut adj: HashMap<InvariantExpr, Vec<InvariantExpr>> = HashMap::new();
    for e in &rest {
        adj.entry(e.source).or_default().push(e.target);
    }
    for a in &nodes {
        for b in &nodes {
            if a != b && a.dominates(b) {
                adj.entry(*a).or_default().push(*b);
            }
        }
    }
    let mut seen = HashSet::from([edge.source]);
    let mut queue = VecDeque::from([edge.source]);
    while let Some(x) = queue.pop_front() {
        if x == edge.target {
            return Ok(false);
        }
        for y in adj.get(&x).into_iter().flatten() {
            if seen.insert(*y) {
                queue.push_back(*y);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjectureStatus {
    Holds,
    Violated,
    InsufficientData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureEntry {
    pub edge: EdgeId,
    pub relation: String,
    pub knot: String,
    pub source: Option<i64>,
    pub target: Option<i64>,
    pub status: ConjectureStatus,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub entries: Vec<ConjectureEntry>,
}

impl ConjectureReport {
    pub fn violations(&self) -> impl Iterator<Item = &ConjectureEntry> {
        self.entries.iter().filter(|e| e.status == ConjectureStatus::Violated)
    }

    pub fn count(&self, status: ConjectureStatus) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let show = |v: Option<i64>| v.map_or("?".to_string(), |v| v.to_string());
            out.push_str(&format!(
                "{} {} {} source={} target={} {}\n",
                e.edge,
                e.relation,
                e.knot,
                show(e.source),
                show(e.target),
                match e.status {
                    ConjectureStatus::Holds => "holds",
                    ConjectureStatus::Violated => "VIOLATED",
                    ConjectureStatus::InsufficientData => "insufficient data",
                }
            ));
        }
        out.push_str(&format!(
            "holds={} violated={} insufficient={}\n",
            self.count(ConjectureStatus::Holds),
            self.count(ConjectureStatus::Violated),
            self.count(ConjectureStatus::InsufficientData)
        ));
        out
    }
}

/// Compare both sides of every conjecture edge on each knot whose values are
/// known exactly. `s` should already be propagated over the theorem edges.
pub fn check_conjectures(g: &RelationGraph, s: &BoundState) -> ConjectureReport {
    let mut report = ConjectureReport::default();
    for e in g.conjectures() {
        for knot in s.knots() {
            let src = s.expr_interval(knot, &e.source).value();
            let tgt = s.expr_interval(knot, &e.target).value();
            let status = match (src, tgt) {
                (Some(a), Some(b)) if a >= b => ConjectureStatus::Holds,
                (Some(_), Some(_)) => ConjectureStatus::Violated,
                _ => ConjectureStatus::InsufficientData,
            };
            report.entries.push(ConjectureEntry {
                edge: e.id.clone(),
                relation: format!("{} >= {}", e.source, e.target),
                knot: knot.to_string(),
                source: src,
                target: tgt,
                status,
            });
        }
    }
    report
}

/// Reject data that contradicts a theorem edge outright: the source's
/// largest possible value is below the target's smallest.
pub fn check_soundness(g: &RelationGraph, s: &BoundState) -> Result<()> {
    for knot in s.knots() {
        for e in g.theorems() {
            let a = s.expr_interval(knot, &e.source);
            let b = s.expr_interval(knot, &e.target);
            if let (Some(h), Some(l)) = (a.hi, b.lo) {
                if h < l {
                    return Err(Error::Soundness {
                        knot: knot.to_string(),
                        edge: e.id.to_string(),
                        detail: format!("{} = {a} but {} = {b}", e.source, e.target),
                    });
                }
            }
        }
    }
    Ok(())
}
