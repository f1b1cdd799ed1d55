//! Where points of each colour may sit, per underlying coloured order.

use crate::order::{mediant_between, rat_between_with_parity, Color, ExtPos, Rat, Slot};

/// Order-preserving bijection from the rationals onto the negative rationals.
pub(crate) fn neg_block(x: &Rat) -> Rat {
    if x.is_positive() {
        // -1 / (x + 1), inside (-1, 0)
        Rat::integer(-1).div(&x.add(&Rat::integer(1)))
    } else {
        // 2x - 1, at most -1
        x.mul(&Rat::integer(2)).sub(&Rat::integer(1))
    }
}

pub(crate) fn neg_block_inv(y: &Rat) -> Rat {
    if *y <= Rat::integer(-1) {
        y.add(&Rat::integer(1)).div(&Rat::integer(2))
    } else {
        Rat::integer(-1).div(y).sub(&Rat::integer(1))
    }
}

/// Order-preserving bijection from the rationals onto the positive rationals.
pub(crate) fn pos_block(x: &Rat) -> Rat {
    neg_block(&x.neg()).neg()
}

pub(crate) fn pos_block_inv(y: &Rat) -> Rat {
    neg_block_inv(&y.neg()).neg()
}

/// Exposed coordinates of the bounded generic structure.
///
/// Each point carries a base coordinate in the dense two-coloured line, where
/// the first-block colour owns the rationals with odd denominator and the other
/// colour those with even denominator. The first-block colour is laid out on
/// the negative rationals and the second on the positive ones, each through an
/// order-preserving bijection, after negating the base of a reversed colour.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct BlockMap {
    pub first: Color,
    pub red_reversed: bool,
    pub blue_reversed: bool,
}

impl BlockMap {
    pub fn reversed(&self, c: Color) -> bool {
        match c {
            Color::Red => self.red_reversed,
            Color::Blue => self.blue_reversed,
        }
    }

    pub fn base_has_even_denominator(&self, c: Color) -> bool {
        c != self.first
    }

    pub fn expose(&self, c: Color, base: &Rat) -> Rat {
        let b = if self.reversed(c) { base.neg() } else { base.clone() };
        if c == self.first {
            neg_block(&b)
        } else {
            pos_block(&b)
        }
    }

    /// Inverse of [`BlockMap::expose`]; `exposed` must lie inside the colour's block.
    pub fn base_of(&self, c: Color, exposed: &Rat) -> Rat {
        let b = if c == self.first { neg_block_inv(exposed) } else { pos_block_inv(exposed) };
        if self.reversed(c) {
            b.neg()
        } else {
            b
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum EndSide {
    NegInf,
    PosInf,
}

impl EndSide {
    pub fn position(self) -> ExtPos {
        match self {
            EndSide::NegInf => ExtPos::NegInf,
            EndSide::PosInf => ExtPos::PosInf,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) enum Space {
    /// A fixed finite set of points.
    Finite(Vec<(ExtPos, Color)>),
    /// One copy of the rationals, one colour.
    Mono(Color),
    /// The rationals in one colour plus one point of the other colour at an end.
    Endpoint { side: EndSide, endpoint: Color },
    /// First colour on the negative rationals, second on the positive ones.
    Blocks { first: Color, bounded: Option<BlockMap> },
    /// Rationally many adjacent pairs, first colour in the first slot.
    Pairs { first: Color },
    /// Both colours dense everywhere.
    Dense,
}

/// Rational lower bound of an open interval; `None` is minus infinity.
fn lower(lo: Option<&ExtPos>) -> Option<ExtPos> {
    match lo {
        None | Some(ExtPos::NegInf) => None,
        Some(p) => Some(p.clone()),
    }
}

fn upper(hi: Option<&ExtPos>) -> Option<ExtPos> {
    match hi {
        None | Some(ExtPos::PosInf) => None,
        Some(p) => Some(p.clone()),
    }
}

fn max_lower(a: Option<ExtPos>, b: Option<ExtPos>) -> Option<ExtPos> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.max(y)),
    }
}

fn min_upper(a: Option<ExtPos>, b: Option<ExtPos>) -> Option<ExtPos> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

impl Space {
    pub fn finite_size(&self) -> Option<usize> {
        match self {
            Space::Finite(pts) => Some(pts.len()),
            _ => None,
        }
    }

    fn block_bounds(first: Color, c: Color) -> (Option<ExtPos>, Option<ExtPos>) {
        if c == first {
            (None, Some(ExtPos::int(0)))
        } else {
            (Some(ExtPos::int(0)), None)
        }
    }

    /// A position of colour `c` strictly inside the open cell, with its base
    /// coordinate when the space has one. The cell must contain no sample point.
    pub fn representative(&self, lo: Option<&ExtPos>, hi: Option<&ExtPos>, c: Color) -> Option<(ExtPos, Option<Rat>)> {
        let dense = |l: Option<&ExtPos>, h: Option<&ExtPos>| {
            if let (Some(a), Some(b)) = (l, h) {
                if a >= b {
                    return None;
                }
            }
            mediant_between(l, h).ok().map(|q| (ExtPos::Finite(q), None))
        };
        match self {
            Space::Finite(_) => None,
            Space::Mono(col) => (c == *col).then(|| dense(lo, hi)).flatten(),
            Space::Endpoint { endpoint, .. } => {
                (c != *endpoint).then(|| dense(lower(lo).as_ref(), upper(hi).as_ref())).flatten()
            }
            Space::Dense => dense(lower(lo).as_ref(), upper(hi).as_ref()),
            Space::Blocks { first, bounded } => {
                let (bl, bh) = Self::block_bounds(*first, c);
                let l = max_lower(lower(lo), bl);
                let h = min_upper(upper(hi), bh);
                if let (Some(a), Some(b)) = (&l, &h) {
                    if a >= b {
                        return None;
                    }
                }
                match bounded {
                    None => dense(l.as_ref(), h.as_ref()),
                    Some(map) => {
                        let edge = ExtPos::int(0);
                        let to_base = |p: &Option<ExtPos>| -> Option<Rat> {
                            match p {
                                Some(q) if *q != edge => Some(map.base_of(c, q.rat()?)),
                                _ => None,
                            }
                        };
                        let (mut base_lo, mut base_hi) = (to_base(&l), to_base(&h));
                        if map.reversed(c) {
                            std::mem::swap(&mut base_lo, &mut base_hi);
                        }
                        let base = rat_between_with_parity(
                            base_lo.as_ref(),
                            base_hi.as_ref(),
                            map.base_has_even_denominator(c),
                        )
                        .ok()?;
                        Some((ExtPos::Finite(map.expose(c, &base)), Some(base)))
                    }
                }
            }
            Space::Pairs { first } => {
                let slot = if c == *first { Slot::First } else { Slot::Second };
                let l = lower(lo);
                let h = upper(hi);
                let lr = l.as_ref().and_then(|p| p.rat().cloned());
                let hr = h.as_ref().and_then(|p| p.rat().cloned());
                if let (Some(a), Some(b)) = (&lr, &hr) {
                    if a >= b {
                        return None;
                    }
                }
                let q = crate::order::rat_between(lr.as_ref(), hr.as_ref()).ok()?;
                Some((ExtPos::Pair(q, slot), None))
            }
        }
    }

    /// Isolated positions of colour `c` (points with no room around them).
    pub fn isolated(&self, c: Color) -> Vec<ExtPos> {
        match self {
            Space::Finite(pts) => pts.iter().filter(|(_, col)| *col == c).map(|(p, _)| p.clone()).collect(),
            Space::Endpoint { side, endpoint } if *endpoint == c => vec![side.position()],
            _ => Vec::new(),
        }
    }

    /// Whether `pos` is a legal position for a point of colour `c`, and its base.
    pub fn admits(&self, pos: &ExtPos, c: Color) -> Option<Option<Rat>> {
        match (self, pos) {
            (Space::Finite(pts), _) => pts.iter().any(|(p, col)| p == pos && *col == c).then_some(None),
            (Space::Mono(col), ExtPos::Finite(_)) => (*col == c).then_some(None),
            (Space::Endpoint { side, endpoint }, _) => {
                if c == *endpoint {
                    (*pos == side.position()).then_some(None)
                } else {
                    matches!(pos, ExtPos::Finite(_)).then_some(None)
                }
            }
            (Space::Dense, ExtPos::Finite(_)) => Some(None),
            (Space::Blocks { first, bounded }, ExtPos::Finite(q)) => {
                let in_block = if c == *first { q.is_negative() } else { q.is_positive() };
                if !in_block {
                    return None;
                }
                match bounded {
                    None => Some(None),
                    Some(map) => {
                        let base = map.base_of(c, q);
                        (base.has_even_denominator() == map.base_has_even_denominator(c)).then_some(Some(base))
                    }
                }
            }
            (Space::Pairs { first }, ExtPos::Pair(_, slot)) => {
                let want = if c == *first { Slot::First } else { Slot::Second };
                (*slot == want).then_some(None)
            }
            _ => None,
        }
    }
}
