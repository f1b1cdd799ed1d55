use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Color, ExtPos};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PointId(pub u64);

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Point {
    pub id: PointId,
    pub pos: ExtPos,
    pub color: Color,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructError {
    #[error("duplicate point id {0}")]
    DuplicateId(PointId),
    #[error("two points share position {0}")]
    DuplicatePosition(ExtPos),
    #[error("more than one point at an infinite position")]
    MultipleInfinite,
    #[error("unknown point id {0}")]
    UnknownId(PointId),
    #[error("edge {0}-{1} joins two points of the same colour")]
    MonochromaticEdge(PointId, PointId),
}

/// A finite ordered two-coloured bipartite graph.
///
/// Points are kept sorted by position and edges are stored as `(min id, max id)`,
/// so derived equality is equality of canonical forms.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FinStruct {
    points: Vec<Point>,
    edges: BTreeSet<(PointId, PointId)>,
}

fn edge_key(a: PointId, b: PointId) -> (PointId, PointId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl FinStruct {
    pub fn new() -> Self {
        Self::default()
    }

    /// Validating constructor; points may come in any order.
    pub fn from_parts(
        points: impl IntoIterator<Item = Point>,
        edges: impl IntoIterator<Item = (PointId, PointId)>,
    ) -> Result<Self, StructError> {
        let mut s = FinStruct::new();
        for p in points {
            s.insert_point(p)?;
        }
        for (a, b) in edges {
            s.add_edge(a, b)?;
        }
        Ok(s)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn edges(&self) -> impl Iterator<Item = (PointId, PointId)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = PointId> + '_ {
        self.points.iter().map(|p| p.id)
    }

    pub fn point(&self, id: PointId) -> Option<&Point> {
        self.points.iter().find(|p| p.id == id)
    }

    pub fn require(&self, id: PointId) -> Result<&Point, StructError> {
        self.point(id).ok_or(StructError::UnknownId(id))
    }

    pub fn contains_id(&self, id: PointId) -> bool {
        self.point(id).is_some()
    }

    pub fn has_edge(&self, a: PointId, b: PointId) -> bool {
        self.edges.contains(&edge_key(a, b))
    }

    pub fn count_color(&self, c: Color) -> usize {
        self.points.iter().filter(|p| p.color == c).count()
    }

    /// Index of the first point whose position is `>= pos`.
    pub fn lower_bound(&self, pos: &ExtPos) -> usize {
        self.points.partition_point(|p| &p.pos < pos)
    }

    pub fn point_at(&self, pos: &ExtPos) -> Option<&Point> {
        let i = self.lower_bound(pos);
        self.points.get(i).filter(|p| &p.pos == pos)
    }

    pub fn insert_point(&mut self, p: Point) -> Result<(), StructError> {
        if self.contains_id(p.id) {
            return Err(StructError::DuplicateId(p.id));
        }
        if p.pos.is_infinite() && self.points.iter().any(|q| q.pos.is_infinite()) {
            return Err(StructError::MultipleInfinite);
        }
        let i = self.lower_bound(&p.pos);
        if self.points.get(i).is_some_and(|q| q.pos == p.pos) {
            return Err(StructError::DuplicatePosition(p.pos));
        }
        self.points.insert(i, p);
        Ok(())
    }

    pub fn add_edge(&mut self, a: PointId, b: PointId) -> Result<(), StructError> {
        let ca = self.require(a)?.color;
        let cb = self.require(b)?.color;
        if ca == cb {
            return Err(StructError::MonochromaticEdge(a, b));
        }
        self.edges.insert(edge_key(a, b));
        Ok(())
    }

    /// Restriction to `ids`, keeping the edges among them.
    pub fn induced(&self, ids: &[PointId]) -> Result<FinStruct, StructError> {
        let keep: BTreeSet<PointId> = ids.iter().copied().collect();
        for id in &keep {
            self.require(*id)?;
        }
        Ok(FinStruct {
            points: self.points.iter().filter(|p| keep.contains(&p.id)).cloned().collect(),
            edges: self.edges.iter().filter(|(a, b)| keep.contains(a) && keep.contains(b)).copied().collect(),
        })
    }

    /// Colour sequence and edge pattern indexed by rank in the order. Two
    /// structures are isomorphic exactly when their shapes are equal, since a
    /// finite linear order has no nontrivial automorphism.
    pub fn shape(&self) -> Shape {
        let rank: BTreeMap<PointId, usize> = self.points.iter().enumerate().map(|(i, p)| (p.id, i)).collect();
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|(a, b)| {
                let (x, y) = (rank[a], rank[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        edges.sort_unstable();
        Shape { colors: self.points.iter().map(|p| p.color).collect(), edges }
    }

    /// Copy of the structure with positions replaced by `1/1, 2/1, ...` and ids
    /// by `1, 2, ...` in order.
    pub fn normalized(&self) -> FinStruct {
        let shape = self.shape();
        shape.to_struct()
    }
}

/// Isomorphism-invariant description of a finite ordered coloured graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Shape {
    pub colors: Vec<Color>,
    pub edges: Vec<(usize, usize)>,
}

impl Shape {
    pub fn to_struct(&self) -> FinStruct {
        let points = self
            .colors
            .iter()
            .enumerate()
            .map(|(i, &color)| Point { id: PointId(i as u64 + 1), pos: ExtPos::int(i as i64 + 1), color })
            .collect();
        let edges = self.edges.iter().map(|&(a, b)| (PointId(a as u64 + 1), PointId(b as u64 + 1))).collect();
        FinStruct { points, edges }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(id: u64, pos: i64, color: Color) -> Point {
        Point { id: PointId(id), pos: ExtPos::int(pos), color }
    }

    fn path3() -> FinStruct {
        // blue - red - blue path on three points
        FinStruct::from_parts(
            [pt(1, 0, Color::Blue), pt(2, 1, Color::Red), pt(3, 2, Color::Blue)],
            [(PointId(1), PointId(2)), (PointId(2), PointId(3))],
        )
        .unwrap()
    }

    #[test]
    fn induced_examples() {
        let s = path3();
        let all: Vec<_> = s.ids().collect();
        assert_eq!(s.induced(&all).unwrap(), s);
        assert_eq!(s.induced(&[]).unwrap(), FinStruct::new());
        let ends = s.induced(&[PointId(1), PointId(3)]).unwrap();
        assert_eq!(ends.len(), 2);
        assert_eq!(ends.edge_count(), 0);
        assert_eq!(s.induced(&[PointId(9)]), Err(StructError::UnknownId(PointId(9))));
    }

    #[test]
    fn invariants_enforced() {
        let mut s = FinStruct::new();
        s.insert_point(pt(1, 0, Color::Red)).unwrap();
        assert_eq!(s.insert_point(pt(1, 5, Color::Red)), Err(StructError::DuplicateId(PointId(1))));
        assert!(matches!(s.insert_point(pt(2, 0, Color::Blue)), Err(StructError::DuplicatePosition(_))));
        s.insert_point(pt(2, -3, Color::Red)).unwrap();
        assert_eq!(s.add_edge(PointId(1), PointId(2)), Err(StructError::MonochromaticEdge(PointId(1), PointId(2))));
        assert_eq!(s.points()[0].id, PointId(2));
        s.insert_point(Point { id: PointId(3), pos: ExtPos::PosInf, color: Color::Blue }).unwrap();
        assert_eq!(
            s.insert_point(Point { id: PointId(4), pos: ExtPos::NegInf, color: Color::Blue }),
            Err(StructError::MultipleInfinite)
        );
    }

    #[test]
    fn shape_ignores_labels() {
        let s = path3();
        let t = s.normalized();
        assert_eq!(s.shape(), t.shape());
        assert_eq!(t.points()[0].pos, ExtPos::int(1));
    }
}
