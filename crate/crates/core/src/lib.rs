pub mod delta;
pub mod diagram;
pub mod error;
pub mod homfly;
pub mod ineq;
pub mod ingest;
pub mod poly;
pub mod skein;

pub use delta::{parse_delta, delta_tree, verify_delta_tree, DeltaDiagram, DeltaType};
pub use diagram::{parse_pd, Crossing, Diagram};
pub use error::{Error, Result};
pub use homfly::{alexander, homfly, jones, HomflyEngine};
pub use ineq::{
    check_conjectures, check_soundness, deduce_exact, independence_check, propagate, BoundState, EdgeId,
    InvariantExpr, InvariantId, Interval, RelationGraph,
};
pub use ingest::{ingest, read_invariant_csv, write_invariant_csv, Dataset};
pub use poly::{LaurentPoly1, LaurentPoly2};
pub use skein::{certify_td, td_upper_bound, SkeinTree, TdInterval, TdSearch};
