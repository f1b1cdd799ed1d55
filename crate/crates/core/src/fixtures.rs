//! Structures outside the catalog that probing should reject.
//!
//! Both live on two consecutive copies of the rationals, red below blue.

use std::fmt;
use std::str::FromStr;

use crate::oracle::{Law, Origin, Space, StructureOracle};
use crate::order::Color;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Fixture {
    /// The red at `-t` is adjacent to the blue at `t` only.
    Matching2Q,
    /// The red at `-t` is adjacent to the blues at `t` and `t + 1`.
    FiniteNeighbors2,
}

impl Fixture {
    pub const ALL: [Fixture; 2] = [Fixture::Matching2Q, Fixture::FiniteNeighbors2];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Matching2Q => "matching2Q",
            Fixture::FiniteNeighbors2 => "finiteNeighbors2",
        }
    }

    pub fn instantiate(self, seed: u64) -> StructureOracle {
        let law = match self {
            Fixture::Matching2Q => Law::Matching2Q,
            Fixture::FiniteNeighbors2 => Law::FiniteNeighbors2,
        };
        StructureOracle::build(Origin::Fixture(self), Space::Blocks { first: Color::Red, bounded: None }, law, seed)
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fixture {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.strip_prefix("fixture:").unwrap_or(s);
        Fixture::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| format!("unknown fixture `{s}`"))
    }
}
