//! Exact positions, colours, finite ordered bipartite graphs and the partial
//! isomorphisms between them.

mod enumerate;
mod iso;
mod pos;
mod rat;
mod structure;

pub use enumerate::{enumerate_structures, enumerate_up_to, DEFAULT_ENUMERATION_CAP};
pub use iso::{is_partial_iso, IsoError, PartialIso};
pub use pos::{Color, ExtPos, Interval, Slot};
pub use rat::{mediant_between, rat_between, rat_between_with_parity, Rat, RatError};
pub use structure::{FinStruct, Point, PointId, Shape, StructError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrderError {
    #[error("empty interval")]
    EmptyInterval,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
}
