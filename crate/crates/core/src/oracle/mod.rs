//! Growable finite samples of fixed countable structures.
//!
//! A [`StructureOracle`] holds the part of its structure that has been looked
//! at so far. Density and witness queries either return a point of the
//! structure (creating it in the sample when needed) or `None` when the
//! structure has no such point. Free adjacency choices of generic structures
//! are drawn from a seeded stream at creation time and then never change.

mod law;
mod space;

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::CatalogEntry;
use crate::fixtures::Fixture;
use crate::fraisse::ClassDescriptor;
use crate::order::{Color, ExtPos, FinStruct, Interval, OrderError, Point, PointId, Rat, Slot};

pub(crate) use law::{Adj, Law, View};
pub(crate) use space::Space;
pub use space::{BlockMap, EndSide};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of(adjacent: bool) -> Sign {
        if adjacent {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn holds(self, adjacent: bool) -> bool {
        adjacent == (self == Sign::Plus)
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A request for a point of `color` inside `interval`, adjacent to the
/// `Plus` constraint points and not adjacent to the `Minus` ones.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WitnessSpec {
    pub color: Color,
    pub interval: Interval,
    pub constraints: Vec<(PointId, Sign)>,
}

impl WitnessSpec {
    pub fn new(color: Color, interval: Interval, constraints: Vec<(PointId, Sign)>) -> Self {
        WitnessSpec { color, interval, constraints }
    }
}

impl fmt::Display for WitnessSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.color, self.interval)?;
        for (id, s) in &self.constraints {
            write!(f, " {}{}", s.symbol(), id)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("unknown point {0}")]
    UnknownId(PointId),
    #[error("points {0} and {1} have the same colour")]
    SameColor(PointId, PointId),
    #[error("empty interval")]
    EmptyInterval,
    #[error("malformed witness spec: {0}")]
    MalformedSpec(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
}

impl From<OrderError> for OracleError {
    fn from(e: OrderError) -> Self {
        match e {
            OrderError::EmptyInterval => OracleError::EmptyInterval,
            OrderError::BudgetExceeded(m) => OracleError::BudgetExceeded(m),
        }
    }
}

/// What structure an oracle stands for.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Origin {
    Entry(CatalogEntry),
    Fixture(Fixture),
    Limit(ClassDescriptor),
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Entry(e) => write!(f, "{e}"),
            Origin::Fixture(x) => write!(f, "fixture:{}", x.name()),
            Origin::Limit(c) => write!(f, "limit:{}", c.name()),
        }
    }
}

enum Candidate {
    Existing(PointId),
    Fresh(ExtPos, Option<Rat>),
}

#[derive(Clone, Debug)]
pub struct StructureOracle {
    origin: Origin,
    space: Space,
    law: Law,
    sample: FinStruct,
    bases: BTreeMap<PointId, Rat>,
    partners: BTreeMap<PointId, PointId>,
    seed: u64,
    rng: ChaCha8Rng,
    next_id: u64,
    calls: u64,
    step: u64,
}

impl StructureOracle {
    pub(crate) fn build(origin: Origin, space: Space, law: Law, seed: u64) -> Self {
        StructureOracle {
            origin,
            space,
            law,
            sample: FinStruct::new(),
            bases: BTreeMap::new(),
            partners: BTreeMap::new(),
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
            next_id: 1,
            calls: 0,
            step: 0,
        }
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of adjacency, density and witness queries answered so far.
    pub fn calls(&self) -> u64 {
        self.calls
    }

    pub fn sample(&self) -> &FinStruct {
        &self.sample
    }

    pub fn sample_snapshot(&self) -> FinStruct {
        self.sample.clone()
    }

    pub fn len(&self) -> usize {
        self.sample.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sample.is_empty()
    }

    /// True when adjacency is a function of positions (and pairing) alone.
    pub fn is_deterministic(&self) -> bool {
        self.law.is_deterministic()
    }

    pub fn is_finite(&self) -> bool {
        self.space.finite_size().is_some()
    }

    pub fn point(&self, id: PointId) -> Result<&Point, OracleError> {
        self.sample.point(id).ok_or(OracleError::UnknownId(id))
    }

    /// Base coordinate of a bounded generic point.
    pub fn base_of(&self, id: PointId) -> Option<&Rat> {
        self.bases.get(&id)
    }

    /// The other point of `id`'s adjacent pair, for paired structures.
    pub fn partner_of(&self, id: PointId) -> Option<PointId> {
        self.partners.get(&id).copied()
    }

    pub(crate) fn block_map(&self) -> Option<&BlockMap> {
        match &self.space {
            Space::Blocks { bounded, .. } => bounded.as_ref(),
            _ => None,
        }
    }

    fn view(&self, id: PointId) -> View<'_> {
        let p = self.sample.point(id).expect("sampled");
        View { pos: &p.pos, color: p.color, base: self.bases.get(&id) }
    }

    pub fn adjacent(&mut self, a: PointId, b: PointId) -> Result<bool, OracleError> {
        self.calls += 1;
        let ca = self.point(a)?.color;
        let cb = self.point(b)?.color;
        if ca == cb {
            return Err(OracleError::SameColor(a, b));
        }
        Ok(self.sample.has_edge(a, b))
    }

    /// A point of colour `c` strictly between `lo` and `hi` (`None` is unbounded),
    /// the leftmost the sample can see, or `None` if the structure has none.
    pub fn exists_between(
        &mut self,
        lo: Option<ExtPos>,
        hi: Option<ExtPos>,
        c: Color,
    ) -> Result<Option<PointId>, OracleError> {
        self.calls += 1;
        let interval = Interval::new(lo, hi)?;
        let found = self.search(c, &interval, &[], true);
        Ok(found.map(|cand| self.commit(cand, c, &[])))
    }

    /// A point realizing `w`, or `None` if the structure has none.
    ///
    /// A fresh point is preferred; an already sampled point is returned only
    /// when every witness in the structure is already in the sample.
    pub fn realize_witness(&mut self, w: &WitnessSpec) -> Result<Option<PointId>, OracleError> {
        self.calls += 1;
        self.validate(w)?;
        let found = self
            .search(w.color, &w.interval, &w.constraints, false)
            .or_else(|| self.search(w.color, &w.interval, &w.constraints, true));
        Ok(found.map(|cand| self.commit(cand, w.color, &w.constraints)))
    }

    fn validate(&self, w: &WitnessSpec) -> Result<(), OracleError> {
        if let (Some(l), Some(h)) = (&w.interval.lo, &w.interval.hi) {
            if l >= h {
                return Err(OracleError::EmptyInterval);
            }
        }
        for (i, (id, _)) in w.constraints.iter().enumerate() {
            let p = self.sample.point(*id).ok_or_else(|| OracleError::MalformedSpec(format!("unknown point {id}")))?;
            if p.color == w.color {
                return Err(OracleError::MalformedSpec(format!("{id} has the witness colour")));
            }
            if w.constraints[..i].iter().any(|(j, _)| j == id) {
                return Err(OracleError::MalformedSpec(format!("{id} constrained twice")));
            }
        }
        Ok(())
    }

    fn fresh_ok(&self, pos: &ExtPos, base: Option<&Rat>, c: Color, constraints: &[(PointId, Sign)]) -> bool {
        let z = View { pos, color: c, base };
        if self.law.constrains_positions()
            && !self.sample.points().iter().all(|y| self.law.compatible(z, self.view(y.id)))
        {
            return false;
        }
        constraints.iter().all(|&(x, s)| match self.law.relation(z, self.view(x)) {
            Adj::Forced(v) => s.holds(v),
            Adj::Free => true,
        })
    }

    fn existing_ok(&self, id: PointId, c: Color, constraints: &[(PointId, Sign)]) -> bool {
        self.view(id).color == c && constraints.iter().all(|&(x, s)| s.holds(self.sample.has_edge(id, x)))
    }

    /// Left-to-right scan of the interval: each open cell between consecutive
    /// boundaries gets one fresh representative, then the boundary itself.
    fn search(
        &self,
        c: Color,
        interval: &Interval,
        constraints: &[(PointId, Sign)],
        allow_existing: bool,
    ) -> Option<Candidate> {
        let mut bounds: Vec<(ExtPos, Option<PointId>)> = self
            .sample
            .points()
            .iter()
            .filter(|p| interval.contains(&p.pos))
            .map(|p| (p.pos.clone(), Some(p.id)))
            .collect();
        let mut extra: Vec<ExtPos> = self.space.isolated(c);
        for &(x, _) in constraints {
            extra.extend(self.law.breakpoints(self.view(x), c, self.block_map()));
        }
        for p in extra {
            if interval.contains(&p) && self.sample.point_at(&p).is_none() {
                bounds.push((p, None));
            }
        }
        bounds.sort();
        bounds.dedup_by(|a, b| a.0 == b.0);

        let mut prev = interval.lo.clone();
        let try_cell = |lo: Option<&ExtPos>, hi: Option<&ExtPos>| -> Option<Candidate> {
            let (pos, base) = self.space.representative(lo, hi, c)?;
            self.fresh_ok(&pos, base.as_ref(), c, constraints).then_some(Candidate::Fresh(pos, base))
        };
        for (pos, id) in bounds {
            if let Some(cand) = try_cell(prev.as_ref(), Some(&pos)) {
                return Some(cand);
            }
            match id {
                Some(id) => {
                    if allow_existing && self.existing_ok(id, c, constraints) {
                        return Some(Candidate::Existing(id));
                    }
                }
                None => {
                    if let Some(base) = self.space.admits(&pos, c) {
                        if self.fresh_ok(&pos, base.as_ref(), c, constraints) {
                            return Some(Candidate::Fresh(pos, base));
                        }
                    }
                }
            }
            prev = Some(pos);
        }
        try_cell(prev.as_ref(), interval.hi.as_ref())
    }

    fn commit(&mut self, cand: Candidate, c: Color, constraints: &[(PointId, Sign)]) -> PointId {
        match cand {
            Candidate::Existing(id) => id,
            Candidate::Fresh(pos, base) => {
                let partner = match &pos {
                    ExtPos::Pair(q, slot) => {
                        Some(ExtPos::Pair(q.clone(), if *slot == Slot::First { Slot::Second } else { Slot::First }))
                    }
                    _ => None,
                };
                let id = self.insert(pos, c, base, constraints);
                if let Some(ppos) = partner {
                    let pid = self.insert(ppos, c.other(), None, &[]);
                    self.partners.insert(id, pid);
                    self.partners.insert(pid, id);
                }
                id
            }
        }
    }

    fn insert(&mut self, pos: ExtPos, c: Color, base: Option<Rat>, constraints: &[(PointId, Sign)]) -> PointId {
        let id = PointId(self.next_id);
        self.next_id += 1;
        let z = View { pos: &pos, color: c, base: base.as_ref() };
        let decided: Vec<(PointId, Adj)> = self
            .sample
            .points()
            .iter()
            .filter(|y| y.color != c)
            .map(|y| match constraints.iter().find(|(x, _)| *x == y.id) {
                Some((_, s)) => (y.id, Adj::Forced(*s == Sign::Plus)),
                None => (y.id, self.law.relation(z, self.view(y.id))),
            })
            .collect();
        let mut edges = Vec::new();
        for (y, adj) in decided {
            let v = match adj {
                Adj::Forced(v) => v,
                Adj::Free => self.rng.gen_bool(0.5),
            };
            if v {
                edges.push(y);
            }
        }
        self.sample.insert_point(Point { id, pos, color: c }).expect("search only yields unoccupied positions");
        for y in edges {
            self.sample.add_edge(id, y).expect("opposite colours");
        }
        if let Some(b) = base {
            self.bases.insert(id, b);
        }
        id
    }

    /// Grows the sample to at least `n` points, or to the whole structure if it
    /// is finite and smaller.
    ///
    /// Steps alternate colours; every other pair of steps asks for a witness with
    /// up to three random constraints instead of a bare point. The cell is chosen
    /// uniformly from the seeded stream.
    pub fn grow_to(&mut self, n: usize) -> Result<FinStruct, OracleError> {
        let limit = 64 + 16 * n;
        let mut stalls = 0;
        while self.sample.len() < n {
            if self.space.finite_size().is_some_and(|k| self.sample.len() >= k) {
                break;
            }
            let before = self.sample.len();
            self.grow_step()?;
            if self.sample.len() == before {
                stalls += 1;
                if stalls > limit {
                    return Err(OracleError::BudgetExceeded(format!("{} stalled at {} points", self.origin, before)));
                }
            } else {
                stalls = 0;
            }
        }
        Ok(self.sample_snapshot())
    }

    fn grow_step(&mut self) -> Result<(), OracleError> {
        let k = self.step;
        self.step += 1;
        let c = if k.is_multiple_of(2) { Color::Red } else { Color::Blue };
        let pts = self.sample.points();
        let cell = self.rng.gen_range(0..=pts.len());
        let lo = cell.checked_sub(1).map(|i| pts[i].pos.clone());
        let hi = pts.get(cell).map(|p| p.pos.clone());
        let interval = Interval { lo, hi };
        if (k / 2).is_multiple_of(2) {
            self.exists_between(interval.lo, interval.hi, c)?;
        } else {
            let mut others: Vec<PointId> = pts.iter().filter(|p| p.color != c).map(|p| p.id).collect();
            others.shuffle(&mut self.rng);
            let m = self.rng.gen_range(0..=others.len().min(3));
            let constraints = others[..m].iter().map(|&id| (id, Sign::of(self.rng.gen_bool(0.5)))).collect();
            self.realize_witness(&WitnessSpec::new(c, interval, constraints))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
