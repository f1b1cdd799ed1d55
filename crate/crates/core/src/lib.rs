//! Countable homogeneous ordered bipartite graphs.
//!
//! Every structure in the classification is exposed as a growable
//! [`StructureOracle`]: a finite sample of the countable structure that can be
//! extended on demand and queried for order, colour, adjacency, density and
//! witnesses. On top of the oracles sit the catalog of all structures, brute
//! force checks of the finite classes whose limits they are, and probing
//! algorithms that classify an oracle or separate two of them.

pub mod analysis;
pub mod catalog;
pub mod fixtures;
pub mod fraisse;
pub mod oracle;
pub mod order;

pub use catalog::{CaseTag, CatalogEntry, ClosedFormRule};
pub use oracle::{Sign, StructureOracle, WitnessSpec};
pub use order::{Color, ExtPos, FinStruct, Interval, PartialIso, Point, PointId, Rat};
