use std::cmp::Ordering;
use std::fmt;

use super::{OrderError, Rat};

/// The two parts of the bipartite graph.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub const BOTH: [Color; 2] = [Color::Red, Color::Blue];

    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Color::Red => 'r',
            Color::Blue => 'b',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Blue => "blue",
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which member of an adjacent pair a point is.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Slot {
    First,
    Second,
}

impl Slot {
    pub fn index(self) -> u8 {
        match self {
            Slot::First => 0,
            Slot::Second => 1,
        }
    }
}

/// A position on the extended line.
///
/// `Pair(q, slot)` places a point in the adjacent pair indexed by `q`; the two
/// slots of one pair have nothing between them. Order key: `NegInf`, then by
/// rational with `Finite(q) < Pair(q, First) < Pair(q, Second)`, then `PosInf`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ExtPos {
    NegInf,
    Finite(Rat),
    Pair(Rat, Slot),
    PosInf,
}

impl ExtPos {
    pub fn finite(q: Rat) -> Self {
        ExtPos::Finite(q)
    }

    pub fn int(n: i64) -> Self {
        ExtPos::Finite(Rat::integer(n))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtPos::NegInf | ExtPos::PosInf)
    }

    /// The rational coordinate, if any.
    pub fn rat(&self) -> Option<&Rat> {
        match self {
            ExtPos::Finite(q) | ExtPos::Pair(q, _) => Some(q),
            _ => None,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            ExtPos::NegInf => 0,
            ExtPos::Finite(_) | ExtPos::Pair(..) => 1,
            ExtPos::PosInf => 2,
        }
    }

    fn sub_key(&self) -> u8 {
        match self {
            ExtPos::Pair(_, s) => 1 + s.index(),
            _ => 0,
        }
    }
}

impl Ord for ExtPos {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank()
            .cmp(&other.rank())
            .then_with(|| self.rat().cmp(&other.rat()))
            .then_with(|| self.sub_key().cmp(&other.sub_key()))
    }
}

impl PartialOrd for ExtPos {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtPos::NegInf => f.write_str("0/1@ninf"),
            ExtPos::PosInf => f.write_str("0/1@inf"),
            ExtPos::Finite(q) => write!(f, "{q}"),
            ExtPos::Pair(q, s) => write!(f, "{q}@pair{}", s.index()),
        }
    }
}

/// An open interval of positions. `None` on either side means unbounded, so an
/// unbounded side also admits the infinite endpoint positions.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Interval {
    pub lo: Option<ExtPos>,
    pub hi: Option<ExtPos>,
}

impl Interval {
    pub fn new(lo: Option<ExtPos>, hi: Option<ExtPos>) -> Result<Self, OrderError> {
        if let (Some(l), Some(h)) = (&lo, &hi) {
            if l >= h {
                return Err(OrderError::EmptyInterval);
            }
        }
        Ok(Interval { lo, hi })
    }

    pub fn full() -> Self {
        Interval::default()
    }

    pub fn above(p: ExtPos) -> Self {
        Interval { lo: Some(p), hi: None }
    }

    pub fn below(p: ExtPos) -> Self {
        Interval { lo: None, hi: Some(p) }
    }

    pub fn contains(&self, p: &ExtPos) -> bool {
        self.lo.as_ref().is_none_or(|l| l < p) && self.hi.as_ref().is_none_or(|h| p < h)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |b: &Option<ExtPos>, open: &str| match b {
            None => open.to_string(),
            Some(p) => p.to_string(),
        };
        write!(f, "({}, {})", show(&self.lo, "-oo"), show(&self.hi, "+oo"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_slots_are_adjacent() {
        let q = Rat::new(1, 2);
        let a = ExtPos::Pair(q.clone(), Slot::First);
        let b = ExtPos::Pair(q.clone(), Slot::Second);
        let f = ExtPos::Finite(q);
        assert!(f < a && a < b);
        assert!(b < ExtPos::Pair(Rat::new(2, 3), Slot::First));
        assert!(ExtPos::NegInf < ExtPos::int(-1_000_000));
        assert!(ExtPos::int(1_000_000) < ExtPos::PosInf);
    }

    #[test]
    fn interval_membership() {
        let i = Interval::new(Some(ExtPos::int(0)), None).unwrap();
        assert!(i.contains(&ExtPos::PosInf));
        assert!(!i.contains(&ExtPos::int(0)));
        let j = Interval::new(Some(ExtPos::int(0)), Some(ExtPos::PosInf)).unwrap();
        assert!(!j.contains(&ExtPos::PosInf));
        assert!(Interval::new(Some(ExtPos::int(1)), Some(ExtPos::int(1))).is_err());
    }

    #[test]
    fn complement_is_involution() {
        for c in Color::BOTH {
            assert_eq!(c.other().other(), c);
            assert_ne!(c.other(), c);
        }
    }
}
