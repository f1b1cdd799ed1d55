//! Every countable homogeneous ordered bipartite graph, by name.
//!
//! Entry identifiers are dotted ASCII strings:
//!
//! ```text
//! i.red | i.blue | i.<red+blue|blue+red>.<empty|complete>
//! ii.<red|blue>
//! iii.<posInf|negInf>.<endpoint colour>.<empty|complete>
//! iv[.br].<empty|complete|unbounded_generic|bounded_generic.<rb|Rb|rB|RB>>
//! v.<rb|br>.<none|R-set>          R-set: M, Above, Below joined by '+'
//! vi.<empty|rightGeneric|rightComplete>+<empty|leftGeneric|leftComplete>
//! ```
//!
//! In case iv the first block is red unless `br` is given; an upper-case letter
//! in the bounded generic suffix marks that colour's block as reversed. In case
//! v the first letter names the colour of the earlier point of each adjacent
//! pair; `Above` relates a point to the other-coloured points of later pairs,
//! `Below` to those of earlier pairs and `M` to its own partner. The `br`
//! relations are the mirror images of the `rb` ones under the colour swap.
//! In case vi the right part holds the edges whose red end is the smaller one.

use std::fmt;
use std::str::FromStr;

use crate::oracle::{BlockMap, EndSide, Law, Origin, Space, StructureOracle};
use crate::order::{Color, ExtPos};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum CaseTag {
    I,
    Ii,
    Iii,
    Iv,
    V,
    Vi,
}

impl CaseTag {
    pub const ALL: [CaseTag; 6] = [CaseTag::I, CaseTag::Ii, CaseTag::Iii, CaseTag::Iv, CaseTag::V, CaseTag::Vi];

    pub fn name(self) -> &'static str {
        match self {
            CaseTag::I => "i",
            CaseTag::Ii => "ii",
            CaseTag::Iii => "iii",
            CaseTag::Iv => "iv",
            CaseTag::V => "v",
            CaseTag::Vi => "vi",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum FinitePoints {
    Red,
    Blue,
    RedBlue,
    BlueRed,
}

impl FinitePoints {
    pub fn name(self) -> &'static str {
        match self {
            FinitePoints::Red => "red",
            FinitePoints::Blue => "blue",
            FinitePoints::RedBlue => "red+blue",
            FinitePoints::BlueRed => "blue+red",
        }
    }

    /// Colours in increasing position.
    pub fn colors(self) -> Vec<Color> {
        match self {
            FinitePoints::Red => vec![Color::Red],
            FinitePoints::Blue => vec![Color::Blue],
            FinitePoints::RedBlue => vec![Color::Red, Color::Blue],
            FinitePoints::BlueRed => vec![Color::Blue, Color::Red],
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Relation {
    Empty,
    Complete,
}

impl Relation {
    pub const ALL: [Relation; 2] = [Relation::Empty, Relation::Complete];

    pub fn name(self) -> &'static str {
        match self {
            Relation::Empty => "empty",
            Relation::Complete => "complete",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum BlockRelation {
    Empty,
    Complete,
    Bounded { red_reversed: bool, blue_reversed: bool },
    Unbounded,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct PairRelations {
    pub matching: bool,
    pub above: bool,
    pub below: bool,
}

impl PairRelations {
    /// All eight subsets, smallest first.
    pub fn all() -> [PairRelations; 8] {
        let s = |matching, above, below| PairRelations { matching, above, below };
        [
            s(false, false, false),
            s(true, false, false),
            s(false, true, false),
            s(false, false, true),
            s(true, true, false),
            s(true, false, true),
            s(false, true, true),
            s(true, true, true),
        ]
    }

    pub fn name(self) -> String {
        let mut parts = Vec::new();
        if self.matching {
            parts.push("M");
        }
        if self.above {
            parts.push("Above");
        }
        if self.below {
            parts.push("Below");
        }
        if parts.is_empty() {
            "none".to_string()
        } else {
            parts.join("+")
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Part {
    Empty,
    Generic,
    Complete,
}

impl Part {
    pub const ALL: [Part; 3] = [Part::Empty, Part::Generic, Part::Complete];

    fn name(self, side: &str) -> String {
        match self {
            Part::Empty => "empty".to_string(),
            Part::Generic => format!("{side}Generic"),
            Part::Complete => format!("{side}Complete"),
        }
    }
}

/// The underlying two-coloured order of a structure.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Reduct {
    Finite(FinitePoints),
    Mono(Color),
    Endpoint { side: EndSide, endpoint: Color },
    Blocks { first: Color },
    Pairs { first: Color },
    Dense,
}

fn side_name(s: EndSide) -> &'static str {
    match s {
        EndSide::PosInf => "posInf",
        EndSide::NegInf => "negInf",
    }
}

fn orientation(first: Color) -> &'static str {
    match first {
        Color::Red => "rb",
        Color::Blue => "br",
    }
}

impl Reduct {
    pub fn case_tag(&self) -> CaseTag {
        match self {
            Reduct::Finite(_) => CaseTag::I,
            Reduct::Mono(_) => CaseTag::Ii,
            Reduct::Endpoint { .. } => CaseTag::Iii,
            Reduct::Blocks { .. } => CaseTag::Iv,
            Reduct::Pairs { .. } => CaseTag::V,
            Reduct::Dense => CaseTag::Vi,
        }
    }

    /// Case-dependent parameters, empty for case vi.
    pub fn params(&self) -> String {
        match self {
            Reduct::Finite(p) => p.name().to_string(),
            Reduct::Mono(c) => c.name().to_string(),
            Reduct::Endpoint { side, endpoint } => format!("{}.{}", side_name(*side), endpoint.name()),
            Reduct::Blocks { first } | Reduct::Pairs { first } => orientation(*first).to_string(),
            Reduct::Dense => String::new(),
        }
    }
}

impl fmt::Display for Reduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.params();
        if p.is_empty() {
            write!(f, "{}", self.case_tag())
        } else {
            write!(f, "{}.{}", self.case_tag(), p)
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum CatalogEntry {
    Finite { points: FinitePoints, relation: Relation },
    Monochrome { color: Color },
    Endpoint { side: EndSide, endpoint: Color, relation: Relation },
    Blocks { first: Color, relation: BlockRelation },
    Pairs { first: Color, relations: PairRelations },
    Dense { right: Part, left: Part },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("reversal does not apply to `{0}`")]
    NotApplicable(String),
}

/// Adjacency of a deterministic entry as a formula in positions and colours.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClosedFormRule {
    /// Every red/blue pair adjacent, or none.
    Constant(bool),
    /// Bounded generic: a first-block point is adjacent to a second-block point
    /// iff its base coordinate is smaller.
    Bounded(BlockMap),
    /// Adjacent pairs: compares the pair of each point.
    Pairs { first: Color, relations: PairRelations },
    /// Dense order: `right` for red below blue, `left` for red above blue.
    Directional { right: bool, left: bool },
}

impl ClosedFormRule {
    pub fn adjacent(&self, a: (&ExtPos, Color), b: (&ExtPos, Color)) -> bool {
        if a.1 == b.1 {
            return false;
        }
        let (r, bl) = if a.1 == Color::Red { (a.0, b.0) } else { (b.0, a.0) };
        match self {
            ClosedFormRule::Constant(v) => *v,
            ClosedFormRule::Bounded(map) => {
                let (f, fc, s, sc) = if map.first == Color::Red {
                    (r, Color::Red, bl, Color::Blue)
                } else {
                    (bl, Color::Blue, r, Color::Red)
                };
                match (f.rat(), s.rat()) {
                    (Some(f), Some(s)) => map.base_of(fc, f) < map.base_of(sc, s),
                    _ => false,
                }
            }
            ClosedFormRule::Pairs { first, relations } => {
                let (f, s) = if *first == Color::Red { (r, bl) } else { (bl, r) };
                match (f.rat(), s.rat()) {
                    (Some(qf), Some(qs)) => {
                        (qf == qs && relations.matching) || (qs > qf && relations.above) || (qs < qf && relations.below)
                    }
                    _ => false,
                }
            }
            ClosedFormRule::Directional { right, left } => {
                if r < bl {
                    *right
                } else {
                    *left
                }
            }
        }
    }
}

impl CatalogEntry {
    /// The complete catalog in a fixed order.
    pub fn all() -> Vec<CatalogEntry> {
        let mut out = vec![
            CatalogEntry::Finite { points: FinitePoints::Red, relation: Relation::Empty },
            CatalogEntry::Finite { points: FinitePoints::Blue, relation: Relation::Empty },
        ];
        for points in [FinitePoints::RedBlue, FinitePoints::BlueRed] {
            for relation in Relation::ALL {
                out.push(CatalogEntry::Finite { points, relation });
            }
        }
        for color in Color::BOTH {
            out.push(CatalogEntry::Monochrome { color });
        }
        for side in [EndSide::PosInf, EndSide::NegInf] {
            for endpoint in Color::BOTH {
                for relation in Relation::ALL {
                    out.push(CatalogEntry::Endpoint { side, endpoint, relation });
                }
            }
        }
        for first in Color::BOTH {
            let mut rels = vec![BlockRelation::Empty, BlockRelation::Complete];
            for (red_reversed, blue_reversed) in [(false, false), (true, false), (false, true), (true, true)] {
                rels.push(BlockRelation::Bounded { red_reversed, blue_reversed });
            }
            rels.push(BlockRelation::Unbounded);
            out.extend(rels.into_iter().map(|relation| CatalogEntry::Blocks { first, relation }));
        }
        for first in Color::BOTH {
            for relations in PairRelations::all() {
                out.push(CatalogEntry::Pairs { first, relations });
            }
        }
        for right in Part::ALL {
            for left in Part::ALL {
                out.push(CatalogEntry::Dense { right, left });
            }
        }
        out
    }

    pub fn reduct(&self) -> Reduct {
        match *self {
            CatalogEntry::Finite { points, .. } => Reduct::Finite(points),
            CatalogEntry::Monochrome { color } => Reduct::Mono(color),
            CatalogEntry::Endpoint { side, endpoint, .. } => Reduct::Endpoint { side, endpoint },
            CatalogEntry::Blocks { first, .. } => Reduct::Blocks { first },
            CatalogEntry::Pairs { first, .. } => Reduct::Pairs { first },
            CatalogEntry::Dense { .. } => Reduct::Dense,
        }
    }

    pub fn case_tag(&self) -> CaseTag {
        self.reduct().case_tag()
    }

    pub fn name(&self) -> String {
        match *self {
            CatalogEntry::Finite { points, relation } => match points {
                FinitePoints::Red | FinitePoints::Blue => format!("i.{}", points.name()),
                _ => format!("i.{}.{}", points.name(), relation.name()),
            },
            CatalogEntry::Monochrome { color } => format!("ii.{}", color.name()),
            CatalogEntry::Endpoint { side, endpoint, relation } => {
                format!("iii.{}.{}.{}", side_name(side), endpoint.name(), relation.name())
            }
            CatalogEntry::Blocks { first, relation } => {
                let prefix = if first == Color::Red { "iv" } else { "iv.br" };
                let rel = match relation {
                    BlockRelation::Empty => "empty".to_string(),
                    BlockRelation::Complete => "complete".to_string(),
                    BlockRelation::Unbounded => "unbounded_generic".to_string(),
                    BlockRelation::Bounded { red_reversed, blue_reversed } => format!(
                        "bounded_generic.{}{}",
                        if red_reversed { 'R' } else { 'r' },
                        if blue_reversed { 'B' } else { 'b' }
                    ),
                };
                format!("{prefix}.{rel}")
            }
            CatalogEntry::Pairs { first, relations } => {
                format!("v.{}.{}", orientation(first), relations.name())
            }
            CatalogEntry::Dense { right, left } => {
                format!("vi.{}+{}", right.name("right"), left.name("left"))
            }
        }
    }

    /// The adjacency formula, or `None` when some pairs are free choices.
    pub fn closed_form(&self) -> Option<ClosedFormRule> {
        match *self {
            CatalogEntry::Finite { relation, .. } | CatalogEntry::Endpoint { relation, .. } => {
                Some(ClosedFormRule::Constant(relation == Relation::Complete))
            }
            CatalogEntry::Monochrome { .. } => Some(ClosedFormRule::Constant(false)),
            CatalogEntry::Blocks { first, relation } => match relation {
                BlockRelation::Empty => Some(ClosedFormRule::Constant(false)),
                BlockRelation::Complete => Some(ClosedFormRule::Constant(true)),
                BlockRelation::Bounded { red_reversed, blue_reversed } => {
                    Some(ClosedFormRule::Bounded(BlockMap { first, red_reversed, blue_reversed }))
                }
                BlockRelation::Unbounded => None,
            },
            CatalogEntry::Pairs { first, relations } => Some(ClosedFormRule::Pairs { first, relations }),
            CatalogEntry::Dense { right, left } => match (right, left) {
                (Part::Generic, _) | (_, Part::Generic) => None,
                _ => Some(ClosedFormRule::Directional { right: right == Part::Complete, left: left == Part::Complete }),
            },
        }
    }

    pub fn is_deterministic(&self) -> bool {
        self.closed_form().is_some()
    }

    /// Toggles the reversal of one colour block of a bounded generic entry.
    pub fn apply_reversal(&self, which: Color) -> Result<CatalogEntry, CatalogError> {
        match *self {
            CatalogEntry::Blocks { first, relation: BlockRelation::Bounded { red_reversed, blue_reversed } } => {
                Ok(CatalogEntry::Blocks {
                    first,
                    relation: BlockRelation::Bounded {
                        red_reversed: red_reversed ^ (which == Color::Red),
                        blue_reversed: blue_reversed ^ (which == Color::Blue),
                    },
                })
            }
            _ => Err(CatalogError::NotApplicable(self.name())),
        }
    }

    pub(crate) fn semantics(&self) -> (Space, Law) {
        let constant = |r: Relation| if r == Relation::Complete { Law::Complete } else { Law::Empty };
        match *self {
            CatalogEntry::Finite { points, relation } => {
                let pts = points.colors().into_iter().enumerate().map(|(i, c)| (ExtPos::int(i as i64), c)).collect();
                (Space::Finite(pts), constant(relation))
            }
            CatalogEntry::Monochrome { color } => (Space::Mono(color), Law::Empty),
            CatalogEntry::Endpoint { side, endpoint, relation } => {
                (Space::Endpoint { side, endpoint }, constant(relation))
            }
            CatalogEntry::Blocks { first, relation } => match relation {
                BlockRelation::Empty => (Space::Blocks { first, bounded: None }, Law::Empty),
                BlockRelation::Complete => (Space::Blocks { first, bounded: None }, Law::Complete),
                BlockRelation::Bounded { red_reversed, blue_reversed } => (
                    Space::Blocks { first, bounded: Some(BlockMap { first, red_reversed, blue_reversed }) },
                    Law::Bounded { first },
                ),
                BlockRelation::Unbounded => (Space::Blocks { first, bounded: None }, Law::BlocksGeneric),
            },
            CatalogEntry::Pairs { first, relations } => (Space::Pairs { first }, Law::Pairs { first, rel: relations }),
            CatalogEntry::Dense { right, left } => (Space::Dense, Law::Dense { right, left }),
        }
    }

    pub fn instantiate(&self, seed: u64) -> StructureOracle {
        let (space, law) = self.semantics();
        StructureOracle::build(Origin::Entry(*self), space, law, seed)
    }
}

/// The complete catalog in a fixed order.
pub fn all_entries() -> Vec<CatalogEntry> {
    CatalogEntry::all()
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for CatalogEntry {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let canonical = match s {
            "iv.bounded_generic" => "iv.bounded_generic.rb",
            "iv.br.bounded_generic" => "iv.br.bounded_generic.rb",
            other => other,
        };
        CatalogEntry::all()
            .into_iter()
            .find(|e| e.name() == canonical)
            .ok_or_else(|| CatalogError::UnknownEntry(s.to_string()))
    }
}
