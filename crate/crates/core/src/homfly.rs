//! HOMFLYPT polynomial by skein recursion, plus Jones and Alexander
//! specializations.
//!
//! Normalization: `v^-1 P(L+) - v P(L-) = z P(L0)`, `P(unknot) = 1`.
//! Each step reduces the diagram with R1/R2 moves, then resolves the first
//! crossing met on the wrong strand relative to the target (ascending by
//! default) order. A diagram with no such crossing is an unlink.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::poly::{LaurentPoly1, LaurentPoly2};

pub const DEFAULT_CROSSING_CAP: usize = 14;

/// Which monotone target the recursion drives the diagram toward.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    #[default]
    Ascending,
    Descending,
}

/// `(v^-1 - v) z^-1`, the factor contributed by each extra unlinked circle.
pub fn unlink_factor() -> LaurentPoly2 {
    LaurentPoly2::from_terms([(1, -1, -1), (-1, 1, -1)])
}

/// HOMFLYPT of the `k`-component unlink.
pub fn unlink_poly(k: usize) -> LaurentPoly2 {
    unlink_factor().pow(k.saturating_sub(1) as u32)
}

/// Memoizing skein evaluator. The memo is shared behind a mutex; all writes
/// for one key carry the same value, so concurrent callers may race freely.
#[derive(Debug)]
pub struct HomflyEngine {
    cap: usize,
    strategy: Strategy,
    memo: Mutex<HashMap<String, LaurentPoly2>>,
}

impl Default for HomflyEngine {
    fn default() -> Self {
        HomflyEngine::new(DEFAULT_CROSSING_CAP)
    }
}

impl HomflyEngine {
    pub fn new(cap: usize) -> Self {
        HomflyEngine {
            cap,
            strategy: Strategy::default(),
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn memo_len(&self) -> usize {
        self.memo.lock().map(|m| m.len()).unwrap_or(0)
    }

    pub fn homfly(&self, d: &Diagram) -> Result<LaurentPoly2> {
        if d.crossing_count() > self.cap {
            return Err(Error::ResourceLimit(format!(
                "{} crossings exceeds the cap of {}",
                d.crossing_count(),
                self.cap
            )));
        }
        Ok(self.eval(d))
    }

    fn eval(&self, d: &Diagram) -> LaurentPoly2 {
        let d = d.simplify();
        if d.crossing_count() == 0 {
            return unlink_poly(d.circles());
        }
        let key = d.canonical_key();
        if let Some(p) = self.memo.lock().ok().and_then(|m| m.get(&key).cloned()) {
            return p;
        }
        let wrong = match self.strategy {
            Strategy::Ascending => d.ascending_violations(),
            Strategy::Descending => d.descending_violations(),
        };
        let p = match wrong.first() {
            None => unlink_poly(d.component_count()),
            Some(&c) => {
                let switched = self.eval(&d.switch_crossing(c).expect("valid id"));
                let smoothed = self.eval(&d.smooth_oriented(c).expect("valid id"));
                if d.crossings()[c].sign() > 0 {
                    // P+ = v^2 P- + v z P0
                    &(&LaurentPoly2::monomial(1, 2, 0) * &switched)
                        + &(&LaurentPoly2::monomial(1, 1, 1) * &smoothed)
                } else {
                    // P- = v^-2 P+ - v^-1 z P0
                    &(&LaurentPoly2::monomial(1, -2, 0) * &switched)
                        - &(&LaurentPoly2::monomial(1, -1, 1) * &smoothed)
                }
            }
        };
        if let Ok(mut m) = self.memo.lock() {
            m.insert(key, p.clone());
        }
        p
    }

    /// Jones polynomial in `q = t^1/2`: `P` at `v = t`, `z = t^1/2 - t^-1/2`.
    pub fn jones(&self, d: &Diagram) -> Result<LaurentPoly1> {
        self.homfly(d)?.specialize(2)
    }

    /// Conway-normalized Alexander polynomial in `q = t^1/2`: `P` at `v = 1`.
    pub fn alexander(&self, d: &Diagram) -> Result<LaurentPoly1> {
        self.homfly(d)?.specialize(0)
    }
}

pub fn homfly(d: &Diagram) -> Result<LaurentPoly2> {
    HomflyEngine::default().homfly(d)
}

pub fn jones(d: &Diagram) -> Result<LaurentPoly1> {
    HomflyEngine::default().jones(d)
}

pub fn alexander(d: &Diagram) -> Result<LaurentPoly1> {
    HomflyEngine::default().alexander(d)
}

/// The lower-bound quantities read off the skein polynomials.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PolySummary {
    pub homfly: String,
    pub jones: String,
    pub alexander: String,
    pub deg_p_z: i32,
    pub sp_p_v: i32,
    pub sp_v_t: Option<i32>,
    pub sp_delta_t: Option<i32>,
}

pub fn summarize(engine: &HomflyEngine, d: &Diagram) -> Result<PolySummary> {
    let p = engine.homfly(d)?;
    let j = p.specialize(2)?;
    let a = p.specialize(0)?;
    Ok(PolySummary {
        homfly: p.to_string(),
        jones: j.to_string(),
        alexander: a.to_string(),
        deg_p_z: p.z_degree()?,
        sp_p_v: p.v_spread()?,
        sp_v_t: j.span_t().ok(),
        sp_delta_t: a.span_t().ok(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    const RH_TREFOIL: &str = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)";

    #[test]
    fn base_cases() {
        assert_eq!(homfly(&Diagram::unknot()).unwrap(), LaurentPoly2::one());
        assert_eq!(homfly(&Diagram::unlink(2)).unwrap(), unlink_factor());
        assert_eq!(homfly(&Diagram::unlink(2)).unwrap().z_degree().unwrap(), -1);
    }

    #[test]
    fn trefoil_values() {
        let d = parse_pd(RH_TREFOIL).unwrap();
        let p = homfly(&d).unwrap();
        // hand skein: P(H+) = v z + v z^-1 - v^3 z^-1, P(T) = v^2 P(U) + v z P(H+)
        let expected = LaurentPoly2::from_terms([(2, 2, 0), (-1, 4, 0), (1, 2, 2)]);
        assert_eq!(p, expected);
        assert_eq!(p.z_degree().unwrap(), 2);
        assert_eq!(p.v_spread().unwrap(), 2);
        let j = jones(&d).unwrap();
        // t + t^3 - t^4
        assert_eq!(j, LaurentPoly1::from_terms([(1, 2), (1, 6), (-1, 8)]));
        assert_eq!(j.span_t().unwrap(), 3);
        let a = alexander(&d).unwrap();
        assert_eq!(a, LaurentPoly1::from_terms([(1, -2), (-1, 0), (1, 2)]));
        assert_eq!(a.span_t().unwrap(), 2);
    }

    #[test]
    fn mirror_swaps_v() {
        let d = parse_pd(RH_TREFOIL).unwrap();
        let p = homfly(&d).unwrap();
        let m = homfly(&d.mirror()).unwrap();
        let flipped = LaurentPoly2::from_terms(p.terms().map(|(c, v, z)| (c, -v, z)));
        assert_eq!(m, flipped);
    }

    #[test]
    fn strategies_agree() {
        let d = Diagram::from_braid(3, &[1, -2, 1, -2]).unwrap();
        let a = HomflyEngine::default().homfly(&d).unwrap();
        let b = HomflyEngine::default()
            .with_strategy(Strategy::Descending)
            .homfly(&d)
            .unwrap();
        assert_eq!(a, b);
        // figure-eight: v^-2 - 1 + v^2 - z^2
        assert_eq!(
            a,
            LaurentPoly2::from_terms([(1, -2, 0), (-1, 0, 0), (1, 2, 0), (-1, 0, 2)])
        );
    }

    #[test]
    fn cap_is_enforced() {
        let d = Diagram::from_braid(2, &[1; 5]).unwrap();
        assert!(matches!(
            HomflyEngine::new(4).homfly(&d),
            Err(Error::ResourceLimit(_))
        ));
        assert!(HomflyEngine::new(5).homfly(&d).is_ok());
    }
}
