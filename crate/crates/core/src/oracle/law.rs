//! Adjacency laws: how the colour-crossing relation is decided between two points.

use crate::catalog::{PairRelations, Part};
use crate::fraisse::ClassDescriptor;
use crate::order::{Color, ExtPos, FinStruct, Point, PointId, Rat};

use super::space::BlockMap;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Adj {
    Forced(bool),
    Free,
}

/// A point as the laws see it: position, colour and (for bounded generic) base.
#[derive(Clone, Copy, Debug)]
pub(crate) struct View<'a> {
    pub pos: &'a ExtPos,
    pub color: Color,
    pub base: Option<&'a Rat>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) enum Law {
    Empty,
    Complete,
    Bounded { first: Color },
    Pairs { first: Color, rel: PairRelations },
    Dense { right: Part, left: Part },
    BlocksGeneric,
    Matching2Q,
    FiniteNeighbors2,
    Class(ClassDescriptor),
}

fn split<'a>(a: View<'a>, b: View<'a>) -> (View<'a>, View<'a>) {
    if a.color == Color::Red {
        (a, b)
    } else {
        (b, a)
    }
}

fn part_adj(p: Part) -> Adj {
    match p {
        Part::Empty => Adj::Forced(false),
        Part::Complete => Adj::Forced(true),
        Part::Generic => Adj::Free,
    }
}

fn two_point(a: View<'_>, b: View<'_>, edge: bool) -> FinStruct {
    let pts = [
        Point { id: PointId(1), pos: a.pos.clone(), color: a.color },
        Point { id: PointId(2), pos: b.pos.clone(), color: b.color },
    ];
    let edges = if edge { vec![(PointId(1), PointId(2))] } else { vec![] };
    FinStruct::from_parts(pts, edges).expect("two distinct points")
}

impl Law {
    /// Adjacency between two points of different colours.
    pub fn relation(&self, a: View<'_>, b: View<'_>) -> Adj {
        debug_assert_ne!(a.color, b.color);
        let (r, bl) = split(a, b);
        match self {
            Law::Empty => Adj::Forced(false),
            Law::Complete => Adj::Forced(true),
            Law::Bounded { first } => {
                let (f, s) = if *first == Color::Red { (r, bl) } else { (bl, r) };
                let (bf, bs) = (f.base.expect("base"), s.base.expect("base"));
                Adj::Forced(bf < bs)
            }
            Law::Pairs { first, rel } => {
                let (f, s) = if *first == Color::Red { (r, bl) } else { (bl, r) };
                let (qf, qs) = (f.pos.rat().expect("pair"), s.pos.rat().expect("pair"));
                Adj::Forced((qf == qs && rel.matching) || (qs > qf && rel.above) || (qs < qf && rel.below))
            }
            Law::Dense { right, left } => {
                if r.pos < bl.pos {
                    part_adj(*right)
                } else {
                    part_adj(*left)
                }
            }
            Law::BlocksGeneric => Adj::Free,
            Law::Matching2Q => {
                let (qr, qb) = (r.pos.rat().expect("finite"), bl.pos.rat().expect("finite"));
                Adj::Forced(qr.neg() == *qb)
            }
            Law::FiniteNeighbors2 => {
                let (qr, qb) = (r.pos.rat().expect("finite"), bl.pos.rat().expect("finite"));
                let t = qr.neg();
                Adj::Forced(*qb == t || *qb == t.add(&Rat::integer(1)))
            }
            Law::Class(c) => match (c.member(&two_point(a, b, false)), c.member(&two_point(a, b, true))) {
                (true, true) => Adj::Free,
                (with, _) => Adj::Forced(!with),
            },
        }
    }

    /// Whether a point at `z` may coexist with the existing point `y`.
    pub fn compatible(&self, z: View<'_>, y: View<'_>) -> bool {
        match self {
            Law::Class(c) => {
                c.member(&two_point(z, y, false)) || (z.color != y.color && c.member(&two_point(z, y, true)))
            }
            _ => true,
        }
    }

    pub fn constrains_positions(&self) -> bool {
        matches!(self, Law::Class(_))
    }

    /// Positions of colour `c` where adjacency to `x` changes value.
    pub fn breakpoints(&self, x: View<'_>, c: Color, blocks: Option<&BlockMap>) -> Vec<ExtPos> {
        match self {
            Law::Bounded { .. } => {
                let map = blocks.expect("bounded generic needs its block map");
                vec![ExtPos::Finite(map.expose(c, x.base.expect("base")))]
            }
            Law::Matching2Q => x.pos.rat().map(|q| vec![ExtPos::Finite(q.neg())]).unwrap_or_default(),
            Law::FiniteNeighbors2 => {
                let Some(q) = x.pos.rat() else { return vec![] };
                let one = Rat::integer(1);
                if x.color == Color::Red {
                    let t = q.neg();
                    vec![ExtPos::Finite(t.add(&one)), ExtPos::Finite(t)]
                } else {
                    vec![ExtPos::Finite(q.sub(&one).neg()), ExtPos::Finite(q.neg())]
                }
            }
            _ => Vec::new(),
        }
    }

    /// True when no pair is ever a free choice.
    pub fn is_deterministic(&self) -> bool {
        match self {
            Law::BlocksGeneric | Law::Class(_) => false,
            Law::Dense { right, left } => *right != Part::Generic && *left != Part::Generic,
            _ => true,
        }
    }
}
