//! Independent oracles and random diagram generators shared by the
//! integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use knotbound::{Diagram, LaurentPoly1, LaurentPoly2};
use rand::seq::SliceRandom;
use rand::Rng;

pub const RH_TREFOIL: &str = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)";
pub const LH_TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
pub const FIGURE_EIGHT: &str = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";
pub const FIVE_TWO: &str = "X(1,5,2,4) X(3,9,4,8) X(5,1,6,10) X(7,3,8,2) X(9,7,10,6)";

/// Small knots and links given by braid words.
pub const BRAIDS: &[(usize, &[i32])] = &[
    (2, &[1, 1, 1]),
    (3, &[1, -2, 1, -2]),
    (2, &[1, 1, 1, 1, 1]),
    (3, &[1, 1, 1, 2, -1, 2]),
    (3, &[1, 1, 1, -2, 1, -2]),
    (3, &[1, -2, 1, -2, 1, -2]),
    (2, &[1, 1]),
    (2, &[1, 1, 1, 1]),
    (3, &[1, 2, 1, 2]),
    (4, &[1, -2, 3, -2, 1]),
    (4, &[1, 2, 3, 1, 2, 3]),
    (3, &[1, 1, 2, 2, 1, 1]),
];

type APoly = BTreeMap<i32, i64>;

fn mul(a: &APoly, b: &APoly) -> APoly {
    let mut out = APoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_default() += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn find(p: &mut HashMap<u32, u32>, x: u32) -> u32 {
    let mut r = x;
    while p[&r] != r {
        r = p[&r];
    }
    p.insert(x, r);
    r
}

/// Kauffman bracket state sum in the variable `A`, normalized so the
/// crossing-free unknot is 1.
pub fn bracket(d: &Diagram) -> APoly {
    let xs = d.crossings();
    let n = xs.len();
    let loop_value: APoly = [(2, -1), (-2, -1)].into_iter().collect();
    let mut total = APoly::new();
    for state in 0u64..(1u64 << n) {
        let mut parent: HashMap<u32, u32> = HashMap::new();
        for x in xs {
            for l in x.slots() {
                parent.insert(l, l);
            }
        }
        let mut a_count = 0i32;
        for (i, x) in xs.iter().enumerate() {
            let [a, b, c, e] = x.slots();
            let pairs = if state >> i & 1 == 0 {
                a_count += 1;
                [(a, b), (c, e)]
            } else {
                a_count -= 1;
                [(a, e), (b, c)]
            };
            for (u, v) in pairs {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                parent.insert(ru, rv);
            }
        }
        let labels: Vec<u32> = parent.keys().copied().collect();
        let mut roots: Vec<u32> = labels.into_iter().map(|l| find(&mut parent, l)).collect();
        roots.sort_unstable();
        roots.dedup();
        let loops = roots.len() + d.circles();
        let mut term: APoly = [(a_count, 1)].into_iter().collect();
        for _ in 1..loops.max(1) {
            term = mul(&term, &loop_value);
        }
        for (e, c) in term {
            *total.entry(e).or_default() += c;
        }
    }
    total.retain(|_, c| *c != 0);
    total
}

/// Jones polynomial from the bracket, in `q = t^(1/2)`: with `A = t^(-1/4)`,
/// `A^e` becomes `q^(-e/2)`.
pub fn jones_oracle(d: &Diagram) -> LaurentPoly1 {
    let w = d.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let f = mul(&bracket(d), &[(-3 * w, sign)].into_iter().collect());
    LaurentPoly1::from_terms(f.into_iter().map(|(e, c)| {
        assert!(e % 2 == 0, "odd A-power {e} in normalized bracket");
        (c, -e / 2)
    }))
}

/// Skein recursion without memoization or Reidemeister reduction, resolving
/// the last crossing that breaks the descending order.
pub fn homfly_oracle(d: &Diagram) -> LaurentPoly2 {
    let wrong = d.descending_violations();
    match wrong.last() {
        None => {
            let delta = LaurentPoly2::from_terms([(1, -1, -1), (-1, 1, -1)]);
            delta.pow(d.component_count().saturating_sub(1) as u32)
        }
        Some(&c) => {
            let switched = homfly_oracle(&d.switch_crossing(c).unwrap());
            let smoothed = homfly_oracle(&d.smooth_oriented(c).unwrap());
            if d.crossings()[c].sign() > 0 {
                &(&LaurentPoly2::monomial(1, 2, 0) * &switched) + &(&LaurentPoly2::monomial(1, 1, 1) * &smoothed)
            } else {
                &(&LaurentPoly2::monomial(1, -2, 0) * &switched) - &(&LaurentPoly2::monomial(1, -1, 1) * &smoothed)
            }
        }
    }
}

pub fn random_braid<R: Rng>(rng: &mut R, max_len: usize) -> Diagram {
    let strands = rng.gen_range(2..=4);
    let len = rng.gen_range(1..=max_len);
    let word: Vec<i32> = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    Diagram::from_braid(strands, &word).unwrap()
}

/// A table diagram with some crossings switched and at most one smoothed.
pub fn random_table_variant<R: Rng>(rng: &mut R) -> Diagram {
    let mut corpus: Vec<Diagram> = [RH_TREFOIL, LH_TREFOIL, FIGURE_EIGHT, FIVE_TWO]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    corpus.extend(BRAIDS.iter().map(|(s, w)| Diagram::from_braid(*s, w).unwrap()));
    let mut d = corpus.choose(rng).unwrap().clone();
    for c in 0..d.crossing_count() {
        if rng.gen_bool(0.3) {
            d = d.switch_crossing(c).unwrap();
        }
    }
    if d.crossing_count() > 1 && rng.gen_bool(0.3) {
        d = d.smooth_oriented(rng.gen_range(0..d.crossing_count())).unwrap();
    }
    d
}

pub fn random_diagram<R: Rng>(rng: &mut R, max_crossings: usize) -> Diagram {
    loop {
        let d = if rng.gen_bool(0.5) {
            random_braid(rng, max_crossings)
        } else {
            random_table_variant(rng)
        };
        if d.crossing_count() <= max_crossings {
            return d;
        }
    }
}

/// Fixed diagrams used for oracle comparisons.
pub fn corpus(max_crossings: usize) -> Vec<Diagram> {
    let mut out: Vec<Diagram> = [RH_TREFOIL, LH_TREFOIL, FIGURE_EIGHT, FIVE_TWO, "U1", "U2", "U3"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    out.extend(BRAIDS.iter().map(|(s, w)| Diagram::from_braid(*s, w).unwrap()));
    let base = out.clone();
    for d in &base {
        out.push(d.mirror());
        for c in 0..d.crossing_count() {
            out.push(d.switch_crossing(c).unwrap());
            out.push(d.smooth_oriented(c).unwrap());
        }
    }
    out.retain(|d| d.crossing_count() <= max_crossings);
    out
}

/// Random single-component delta diagrams with `n` tangles, by rejection.
pub fn random_delta_knots<R: Rng>(rng: &mut R, n: usize, count: usize) -> Vec<knotbound::DeltaDiagram> {
    use knotbound::delta::{DeltaDiagram, ALL_TYPES};
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < count {
        tries += 1;
        assert!(tries < 5_000_000, "rejection sampling stalled");
        let kinds: Vec<_> = (0..n).map(|_| *ALL_TYPES.choose(rng).unwrap()).collect();
        let (mut outs, mut ins) = (Vec::new(), Vec::new());
        for (t, k) in kinds.iter().enumerate() {
            let inc = k.incoming_endpoints();
            for e in 1..=6 {
                if inc.contains(&e) {
                    ins.push((t, e));
                } else {
                    outs.push((t, e));
                }
            }
        }
        let mut perm: Vec<usize> = (0..ins.len()).collect();
        perm.shuffle(rng);
        if let Ok(dd) = DeltaDiagram::glue(&kinds, &outs, &ins, &perm) {
            if dd.expand().component_count() == 1 {
                out.push(dd);
            }
        }
    }
    out
}

/// Every single-component gluing of up to `max_n` tangles.
pub fn delta_corpus(max_n: usize) -> Vec<knotbound::DeltaDiagram> {
    use knotbound::delta::{DeltaDiagram, ALL_TYPES};
    let mut kinds: Vec<Vec<_>> = vec![vec![]];
    let mut out = vec![knotbound::parse_delta("U1").unwrap()];
    for _ in 0..max_n {
        kinds = kinds
            .iter()
            .flat_map(|k| {
                ALL_TYPES.iter().map(move |t| {
                    let mut k = k.clone();
                    k.push(*t);
                    k
                })
            })
            .collect();
        for k in &kinds {
            out.extend(
                DeltaDiagram::enumerate(k)
                    .into_iter()
                    .filter(|d| d.expand().component_count() == 1),
            );
        }
    }
    out
}
