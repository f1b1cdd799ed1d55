use std::collections::BTreeSet;

use super::{FinStruct, PointId, StructError};

/// Checks that `pairs` is injective both ways and preserves order, colour,
/// adjacency and non-adjacency between `s` and `t`.
pub fn is_partial_iso(pairs: &[(PointId, PointId)], s: &FinStruct, t: &FinStruct) -> Result<bool, StructError> {
    let mut src = Vec::with_capacity(pairs.len());
    let mut dst = Vec::with_capacity(pairs.len());
    for &(a, b) in pairs {
        src.push(s.require(a)?);
        dst.push(t.require(b)?);
    }
    let distinct_src: BTreeSet<_> = pairs.iter().map(|p| p.0).collect();
    let distinct_dst: BTreeSet<_> = pairs.iter().map(|p| p.1).collect();
    if distinct_src.len() != pairs.len() || distinct_dst.len() != pairs.len() {
        return Ok(false);
    }
    for i in 0..pairs.len() {
        if src[i].color != dst[i].color {
            return Ok(false);
        }
        for j in (i + 1)..pairs.len() {
            if (src[i].pos < src[j].pos) != (dst[i].pos < dst[j].pos) {
                return Ok(false);
            }
            if s.has_edge(pairs[i].0, pairs[j].0) != t.has_edge(pairs[i].1, pairs[j].1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A validated finite partial isomorphism, pairs sorted by source id.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct PartialIso {
    pairs: Vec<(PointId, PointId)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IsoError {
    #[error(transparent)]
    Struct(#[from] StructError),
    #[error("pairs do not form a partial isomorphism")]
    NotIsomorphism,
}

impl PartialIso {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn try_new(mut pairs: Vec<(PointId, PointId)>, s: &FinStruct, t: &FinStruct) -> Result<Self, IsoError> {
        if !is_partial_iso(&pairs, s, t)? {
            return Err(IsoError::NotIsomorphism);
        }
        pairs.sort_unstable();
        Ok(PartialIso { pairs })
    }

    pub fn pairs(&self) -> &[(PointId, PointId)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn image(&self, a: PointId) -> Option<PointId> {
        self.pairs.iter().find(|p| p.0 == a).map(|p| p.1)
    }

    pub fn domain(&self) -> impl Iterator<Item = PointId> + '_ {
        self.pairs.iter().map(|p| p.0)
    }

    pub fn range(&self) -> impl Iterator<Item = PointId> + '_ {
        self.pairs.iter().map(|p| p.1)
    }

    pub fn inverse(&self) -> PartialIso {
        let mut pairs: Vec<_> = self.pairs.iter().map(|&(a, b)| (b, a)).collect();
        pairs.sort_unstable();
        PartialIso { pairs }
    }
}
