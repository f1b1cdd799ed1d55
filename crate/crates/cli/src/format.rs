//! The `OBG v1` sample file format.
//!
//! ```text
//! OBG v1
//! # comment
//! p 1 -1/2 r
//! p 2 0/1@pair0 r
//! p 3 0/1@pair1 b
//! p 4 0/1@inf b
//! e 1 4
//! ```
//!
//! Point lines come in position order and edge lines in `(smaller id, larger
//! id)` order; that is the form [`serialize`] writes, and the only form
//! [`parse`] reads back byte for byte.

use std::fmt::Write as _;

use obg_core::order::{ExtPos, Point, PointId, Rat, RatError, Slot, StructError};
use obg_core::{Color, FinStruct};

pub const HEADER: &str = "OBG v1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line 1: expected header `{HEADER}`")]
    Header,
    #[error("line {0}: cannot parse `{1}`")]
    Syntax(usize, String),
    #[error("line {0}: {1}")]
    BadRational(usize, RatError),
    #[error("line {0}: point ids are positive integers")]
    BadId(usize),
    #[error("line {0}: duplicate point id {1}")]
    DuplicateId(usize, PointId),
    #[error("line {0}: position {1} is taken")]
    DuplicatePosition(usize, ExtPos),
    #[error("line {0}: edge {1}-{2} joins two points of the same colour")]
    MonochromaticEdge(usize, PointId, PointId),
    #[error("line {0}: unknown point id {1}")]
    UnknownId(usize, PointId),
    #[error("line {0}: {1}")]
    Structure(usize, StructError),
}

impl FormatError {
    /// Stable code per kind of defect.
    pub fn code(&self) -> &'static str {
        match self {
            FormatError::Header => "E01",
            FormatError::Syntax(..) => "E02",
            FormatError::BadRational(..) => "E03",
            FormatError::BadId(..) => "E04",
            FormatError::DuplicateId(..) => "E05",
            FormatError::DuplicatePosition(..) => "E06",
            FormatError::MonochromaticEdge(..) => "E07",
            FormatError::UnknownId(..) => "E08",
            FormatError::Structure(..) => "E09",
        }
    }
}

fn color_letter(c: Color) -> char {
    c.letter()
}

pub fn serialize(s: &FinStruct) -> String {
    let mut out = format!("{HEADER}\n");
    for p in s.points() {
        writeln!(out, "p {} {} {}", p.id, p.pos, color_letter(p.color)).unwrap();
    }
    for (a, b) in s.edges() {
        writeln!(out, "e {a} {b}").unwrap();
    }
    out
}

fn parse_pos(line: usize, text: &str) -> Result<ExtPos, FormatError> {
    let (q, tag) = match text.split_once('@') {
        Some((q, tag)) => (q, Some(tag)),
        None => (text, None),
    };
    let q: Rat = q.parse().map_err(|e| FormatError::BadRational(line, e))?;
    let infinite = |p: ExtPos| {
        if q == Rat::zero() {
            Ok(p)
        } else {
            Err(FormatError::Syntax(line, text.to_string()))
        }
    };
    match tag {
        None => Ok(ExtPos::Finite(q)),
        Some("inf") => infinite(ExtPos::PosInf),
        Some("ninf") => infinite(ExtPos::NegInf),
        Some("pair0") => Ok(ExtPos::Pair(q, Slot::First)),
        Some("pair1") => Ok(ExtPos::Pair(q, Slot::Second)),
        Some(_) => Err(FormatError::Syntax(line, text.to_string())),
    }
}

fn parse_id(line: usize, text: &str) -> Result<PointId, FormatError> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) || text.starts_with('0') {
        return Err(FormatError::BadId(line));
    }
    text.parse().map(PointId).map_err(|_| FormatError::BadId(line))
}

/// Parses a sample file. Comment lines (`#`) and blank lines are skipped.
pub fn parse(text: &str) -> Result<FinStruct, FormatError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    match lines.next() {
        Some((_, l)) if l.trim_end() == HEADER => {}
        _ => return Err(FormatError::Header),
    }
    let mut s = FinStruct::new();
    for (n, raw) in lines {
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let words: Vec<&str> = l.split_whitespace().collect();
        match words.as_slice() {
            ["p", id, pos, col] => {
                let id = parse_id(n, id)?;
                let pos = parse_pos(n, pos)?;
                let color = match *col {
                    "r" => Color::Red,
                    "b" => Color::Blue,
                    _ => return Err(FormatError::Syntax(n, l.to_string())),
                };
                if s.contains_id(id) {
                    return Err(FormatError::DuplicateId(n, id));
                }
                if s.point_at(&pos).is_some() {
                    return Err(FormatError::DuplicatePosition(n, pos));
                }
                s.insert_point(Point { id, pos, color }).map_err(|e| FormatError::Structure(n, e))?;
            }
            ["e", a, b] => {
                let (a, b) = (parse_id(n, a)?, parse_id(n, b)?);
                for x in [a, b] {
                    if !s.contains_id(x) {
                        return Err(FormatError::UnknownId(n, x));
                    }
                }
                s.add_edge(a, b).map_err(|e| match e {
                    StructError::MonochromaticEdge(x, y) => FormatError::MonochromaticEdge(n, x, y),
                    e => FormatError::Structure(n, e),
                })?;
            }
            _ => return Err(FormatError::Syntax(n, l.to_string())),
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use obg_core::CatalogEntry;
    use proptest::prelude::*;

    const EXAMPLE: &str = "OBG v1\np 1 -1/2 r\np 2 0/1@pair0 r\np 3 0/1@pair1 b\np 4 0/1@inf b\ne 1 4\n";

    #[test]
    fn example_round_trips() {
        let s = parse(EXAMPLE).unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.has_edge(PointId(1), PointId(4)));
        assert_eq!(serialize(&s), EXAMPLE);
    }

    #[test]
    fn comments_and_point_order_are_normalized() {
        let messy = "OBG v1\n# from somewhere\np 2 3/1 b\n\np 1 1/1 r\ne 2 1\n";
        assert_eq!(serialize(&parse(messy).unwrap()), "OBG v1\np 1 1/1 r\np 2 3/1 b\ne 1 2\n");
    }

    #[test]
    fn malformed_files_get_distinct_codes() {
        let code = |t: &str| parse(t).unwrap_err().code();
        let cases = [
            ("OBG v2\n", "E01"),
            ("OBG v1\nq 1 1/1 r\n", "E02"),
            ("OBG v1\np 1 2/4 r\n", "E03"),
            ("OBG v1\np 0 1/1 r\n", "E04"),
            ("OBG v1\np 1 1/1 r\np 1 2/1 b\n", "E05"),
            ("OBG v1\np 1 1/1 r\np 2 1/1 b\n", "E06"),
            ("OBG v1\np 1 1/1 r\np 2 2/1 r\ne 1 2\n", "E07"),
            ("OBG v1\np 1 1/1 r\ne 1 2\n", "E08"),
            ("OBG v1\np 1 0/1@inf r\np 2 0/1@ninf b\n", "E09"),
        ];
        for (text, want) in cases {
            assert_eq!(code(text), want, "{text:?}");
        }
        assert_eq!(code("OBG v1\np 1 1/0 r\n"), "E03");
        assert_eq!(code("OBG v1\np 1 1/1@inf r\n"), "E02");
    }

    proptest! {
        #[test]
        fn oracle_samples_round_trip(k in 0usize..55, seed in 0u64..1000, n in 0usize..14) {
            let e = CatalogEntry::all()[k];
            let s = e.instantiate(seed).grow_to(n).unwrap();
            let text = serialize(&s);
            let back = parse(&text).unwrap();
            prop_assert_eq!(&back, &s);
            prop_assert_eq!(serialize(&back), text);
        }
    }
}
