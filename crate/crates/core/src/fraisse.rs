//! Finite classes of ordered bipartite graphs, brute-force checks of the
//! properties a Fraïssé limit needs, and growable oracles for their limits.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::oracle::{Law, Origin, Space, StructureOracle};
use crate::order::{enumerate_up_to, Color, ExtPos, FinStruct, OrderError, Point, PointId, DEFAULT_ENUMERATION_CAP};

/// Default largest structure size for property checks.
pub const DEFAULT_MAX_SIZE: usize = 4;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ClassDescriptor {
    AllOrdered2ColoredBipartite,
    RedBlockBeforeBlue,
    /// Every edge has its red end below its blue end.
    RightClass,
    /// Every edge has its red end above its blue end.
    LeftClass,
}

impl ClassDescriptor {
    pub const ALL: [ClassDescriptor; 4] = [
        ClassDescriptor::AllOrdered2ColoredBipartite,
        ClassDescriptor::RedBlockBeforeBlue,
        ClassDescriptor::RightClass,
        ClassDescriptor::LeftClass,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassDescriptor::AllOrdered2ColoredBipartite => "allOrdered2ColoredBipartite",
            ClassDescriptor::RedBlockBeforeBlue => "redBlockBeforeBlue",
            ClassDescriptor::RightClass => "rightClass",
            ClassDescriptor::LeftClass => "leftClass",
        }
    }

    pub fn member(self, s: &FinStruct) -> bool {
        let edge_ok = |red_below: bool| {
            s.edges().all(|(a, b)| {
                let (pa, pb) = (s.point(a).expect("edge end"), s.point(b).expect("edge end"));
                let (r, bl) = if pa.color == Color::Red { (pa, pb) } else { (pb, pa) };
                (r.pos < bl.pos) == red_below
            })
        };
        match self {
            ClassDescriptor::AllOrdered2ColoredBipartite => true,
            ClassDescriptor::RedBlockBeforeBlue => {
                let first_blue = s.points().iter().position(|p| p.color == Color::Blue);
                first_blue.is_none_or(|i| s.points()[i..].iter().all(|p| p.color == Color::Blue))
            }
            ClassDescriptor::RightClass => edge_ok(true),
            ClassDescriptor::LeftClass => edge_ok(false),
        }
    }

    /// Growable oracle for the limit of the class: every new point takes any
    /// position and adjacency the class allows, free choices from `seed`.
    pub fn limit_oracle(self, seed: u64) -> StructureOracle {
        StructureOracle::build(Origin::Limit(self), Space::Dense, Law::Class(self), seed)
    }
}

impl fmt::Display for ClassDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassDescriptor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClassDescriptor::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown class `{s}`"))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Property {
    Hp,
    Jep,
    Ap,
}

impl Property {
    pub const ALL: [Property; 3] = [Property::Hp, Property::Jep, Property::Ap];

    pub fn name(self) -> &'static str {
        match self {
            Property::Hp => "HP",
            Property::Jep => "JEP",
            Property::Ap => "AP",
        }
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Property::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown property `{s}`"))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Counterexample {
    /// `member` is in the class but its induced substructure `sub` is not.
    Hereditary { member: FinStruct, sub: FinStruct },
    /// No member embeds both `b` and `c`.
    Joint { b: FinStruct, c: FinStruct },
    /// `a` is the substructure of `b` on its ids, mapped into `c` by `into_c`,
    /// and no member completes the square.
    Amalgam { a: FinStruct, b: FinStruct, c: FinStruct, into_c: Vec<(PointId, PointId)> },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AmalgamReport {
    pub class: String,
    pub property: Property,
    pub max_size: usize,
    pub pass: bool,
    pub counterexample: Option<Counterexample>,
    /// Number of instances examined.
    pub checked: usize,
    /// Instances needing identified points (only when free amalgams failed).
    pub by_identification: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FraisseError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("max size {0} exceeds the cap {1}")]
    TooLarge(usize, usize),
}

/// Checks a property of `c` over all members with at most `max_size` points.
pub fn check_property(c: ClassDescriptor, property: Property, max_size: usize) -> Result<AmalgamReport, FraisseError> {
    check_property_with(c.name(), &|s: &FinStruct| c.member(s), property, max_size)
}

pub(crate) fn check_property_with(
    name: &str,
    member: &(dyn Fn(&FinStruct) -> bool + Sync),
    property: Property,
    max_size: usize,
) -> Result<AmalgamReport, FraisseError> {
    if max_size > 5 {
        return Err(FraisseError::TooLarge(max_size, 5));
    }
    let mut members = vec![FinStruct::new()];
    members.extend(enumerate_up_to(max_size, DEFAULT_ENUMERATION_CAP)?);
    members.retain(|s| member(s));
    let mut report = AmalgamReport {
        class: name.to_string(),
        property,
        max_size,
        pass: true,
        counterexample: None,
        checked: 0,
        by_identification: 0,
    };
    match property {
        Property::Hp => {
            for s in &members {
                let ids: Vec<PointId> = s.ids().collect();
                for mask in 0..(1u32 << ids.len()) {
                    report.checked += 1;
                    let keep: Vec<PointId> = subset(&ids, mask);
                    let sub = s.induced(&keep).expect("own ids");
                    if !member(&sub) {
                        report.pass = false;
                        report.counterexample = Some(Counterexample::Hereditary { member: s.clone(), sub });
                        return Ok(report);
                    }
                }
            }
        }
        Property::Jep => {
            let empty = FinStruct::new();
            for b in &members {
                for c in &members {
                    report.checked += 1;
                    match amalgamate(member, &empty, b, c, &[]) {
                        Some(free) => report.by_identification += usize::from(!free),
                        None => {
                            report.pass = false;
                            report.counterexample = Some(Counterexample::Joint { b: b.clone(), c: c.clone() });
                            return Ok(report);
                        }
                    }
                }
            }
        }
        Property::Ap => {
            let outcomes: Vec<(usize, usize, Option<Counterexample>)> = members
                .par_iter()
                .map(|b| {
                    let mut checked = 0;
                    let mut ident = 0;
                    let ids: Vec<PointId> = b.ids().collect();
                    for mask in 0..(1u32 << ids.len()) {
                        let a = b.induced(&subset(&ids, mask)).expect("own ids");
                        for c in members.iter().filter(|c| c.len() >= a.len()) {
                            for into_c in embeddings(&a, c) {
                                checked += 1;
                                match amalgamate(member, &a, b, c, &into_c) {
                                    Some(free) => ident += usize::from(!free),
                                    None => {
                                        let cx = Counterexample::Amalgam {
                                            a: a.clone(),
                                            b: b.clone(),
                                            c: c.clone(),
                                            into_c,
                                        };
                                        return (checked, ident, Some(cx));
                                    }
                                }
                            }
                        }
                    }
                    (checked, ident, None)
                })
                .collect();
            for (checked, ident, cx) in outcomes {
                report.checked += checked;
                report.by_identification += ident;
                if cx.is_some() && report.counterexample.is_none() {
                    report.pass = false;
                    report.counterexample = cx;
                }
            }
        }
    }
    Ok(report)
}

fn subset(ids: &[PointId], mask: u32) -> Vec<PointId> {
    ids.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &id)| id).collect()
}

/// All embeddings of `a` into `t`, as id pairs in `a`'s position order.
pub fn embeddings(a: &FinStruct, t: &FinStruct) -> Vec<Vec<(PointId, PointId)>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    embed_rec(a, t, 0, 0, &mut cur, &mut out);
    out
}

fn embed_rec(
    a: &FinStruct,
    t: &FinStruct,
    i: usize,
    from: usize,
    cur: &mut Vec<(PointId, PointId)>,
    out: &mut Vec<Vec<(PointId, PointId)>>,
) {
    if i == a.len() {
        out.push(cur.clone());
        return;
    }
    let p = &a.points()[i];
    for j in from..t.len() {
        let q = &t.points()[j];
        if q.color != p.color {
            continue;
        }
        if cur.iter().all(|&(x, y)| a.has_edge(x, p.id) == t.has_edge(y, q.id)) {
            cur.push((p.id, q.id));
            embed_rec(a, t, i + 1, j + 1, cur, out);
            cur.pop();
        }
    }
}

/// Which of the two sides a point of the amalgam comes from.
#[derive(Clone, Copy, Debug)]
enum Token {
    B(usize),
    C(usize),
    Both(usize, usize),
}

/// Searches for a member containing `b` and `c` glued along `a`, where `a` is
/// the substructure of `b` on its own ids and `into_c` maps it into `c`.
/// Returns `Some(true)` for a free amalgam, `Some(false)` if points had to be
/// identified, `None` if there is none.
fn amalgamate(
    member: &(dyn Fn(&FinStruct) -> bool + Sync),
    a: &FinStruct,
    b: &FinStruct,
    c: &FinStruct,
    into_c: &[(PointId, PointId)],
) -> Option<bool> {
    let a_to_c: BTreeMap<PointId, PointId> = into_c.iter().copied().collect();
    // indices of b's and c's points, split into the gaps between the glued points
    let mut b_gaps = vec![Vec::new(); a.len() + 1];
    let mut c_gaps = vec![Vec::new(); a.len() + 1];
    let mut gap = 0;
    for (i, p) in b.points().iter().enumerate() {
        if a.contains_id(p.id) {
            gap += 1;
        } else {
            b_gaps[gap].push(i);
        }
    }
    let c_glued: Vec<PointId> = a.ids().map(|x| a_to_c[&x]).collect();
    gap = 0;
    for (j, p) in c.points().iter().enumerate() {
        if c_glued.contains(&p.id) {
            gap += 1;
        } else {
            c_gaps[gap].push(j);
        }
    }
    for identify in [false, true] {
        let per_gap: Vec<Vec<Vec<Token>>> =
            (0..=a.len()).map(|g| merges(b, c, &b_gaps[g], &c_gaps[g], identify)).collect();
        let glued_b: Vec<usize> = (0..b.len()).filter(|&i| a.contains_id(b.points()[i].id)).collect();
        let mut choice = vec![0usize; per_gap.len()];
        loop {
            let mut order: Vec<Token> = Vec::new();
            for (g, options) in per_gap.iter().enumerate() {
                order.extend(options[choice[g]].iter().copied());
                if g < a.len() {
                    let bi = glued_b[g];
                    let cj = c.points().iter().position(|p| p.id == a_to_c[&b.points()[bi].id]).expect("image");
                    order.push(Token::Both(bi, cj));
                }
            }
            if try_edges(member, b, c, &order) {
                return Some(!identify);
            }
            // next combination of per-gap merges
            let mut g = 0;
            loop {
                if g == choice.len() {
                    break;
                }
                choice[g] += 1;
                if choice[g] < per_gap[g].len() {
                    break;
                }
                choice[g] = 0;
                g += 1;
            }
            if g == choice.len() {
                break;
            }
        }
    }
    None
}

/// All merges of two ordered runs into one, optionally pairing same-coloured
/// points into a single point.
fn merges(b: &FinStruct, c: &FinStruct, bs: &[usize], cs: &[usize], identify: bool) -> Vec<Vec<Token>> {
    if bs.is_empty() {
        return vec![cs.iter().map(|&j| Token::C(j)).collect()];
    }
    if cs.is_empty() {
        return vec![bs.iter().map(|&i| Token::B(i)).collect()];
    }
    let mut out = Vec::new();
    for mut rest in merges(b, c, &bs[1..], cs, identify) {
        rest.insert(0, Token::B(bs[0]));
        out.push(rest);
    }
    for mut rest in merges(b, c, bs, &cs[1..], identify) {
        rest.insert(0, Token::C(cs[0]));
        out.push(rest);
    }
    if identify && b.points()[bs[0]].color == c.points()[cs[0]].color {
        for mut rest in merges(b, c, &bs[1..], &cs[1..], identify) {
            rest.insert(0, Token::Both(bs[0], cs[0]));
            out.push(rest);
        }
    }
    out
}

/// Tries every choice of edges between points known to only one side.
fn try_edges(member: &(dyn Fn(&FinStruct) -> bool + Sync), b: &FinStruct, c: &FinStruct, order: &[Token]) -> bool {
    let color = |t: &Token| match *t {
        Token::B(i) | Token::Both(i, _) => b.points()[i].color,
        Token::C(j) => c.points()[j].color,
    };
    let b_of = |t: &Token| match *t {
        Token::B(i) | Token::Both(i, _) => Some(b.points()[i].id),
        Token::C(_) => None,
    };
    let c_of = |t: &Token| match *t {
        Token::C(j) | Token::Both(_, j) => Some(c.points()[j].id),
        Token::B(_) => None,
    };
    let mut fixed = Vec::new();
    let mut open = Vec::new();
    for x in 0..order.len() {
        for y in (x + 1)..order.len() {
            if color(&order[x]) == color(&order[y]) {
                continue;
            }
            let from_b = b_of(&order[x]).zip(b_of(&order[y])).map(|(p, q)| b.has_edge(p, q));
            let from_c = c_of(&order[x]).zip(c_of(&order[y])).map(|(p, q)| c.has_edge(p, q));
            match (from_b, from_c) {
                (Some(u), Some(v)) if u != v => return false,
                (Some(u), _) | (None, Some(u)) => {
                    if u {
                        fixed.push((x, y));
                    }
                }
                (None, None) => open.push((x, y)),
            }
        }
    }
    let points: Vec<Point> = order
        .iter()
        .enumerate()
        .map(|(k, t)| Point { id: PointId(k as u64 + 1), pos: ExtPos::int(k as i64 + 1), color: color(t) })
        .collect();
    for mask in 0..(1u64 << open.len()) {
        let edges = fixed
            .iter()
            .chain(open.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, e)| e))
            .map(|&(x, y)| (PointId(x as u64 + 1), PointId(y as u64 + 1)));
        let d = FinStruct::from_parts(points.clone(), edges).expect("bipartite by construction");
        if member(&d) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two(first: Color, second: Color, edge: bool) -> FinStruct {
        let pts = [
            Point { id: PointId(1), pos: ExtPos::int(0), color: first },
            Point { id: PointId(2), pos: ExtPos::int(1), color: second },
        ];
        let edges: Vec<_> = if edge { vec![(PointId(1), PointId(2))] } else { vec![] };
        FinStruct::from_parts(pts, edges).unwrap()
    }

    #[test]
    fn membership_examples() {
        assert!(ClassDescriptor::RedBlockBeforeBlue.member(&two(Color::Red, Color::Blue, false)));
        assert!(!ClassDescriptor::RedBlockBeforeBlue.member(&two(Color::Blue, Color::Red, false)));
        assert!(!ClassDescriptor::RightClass.member(&two(Color::Blue, Color::Red, true)));
        assert!(ClassDescriptor::LeftClass.member(&two(Color::Blue, Color::Red, true)));
        assert!(ClassDescriptor::RightClass.member(&two(Color::Blue, Color::Red, false)));
    }

    #[test]
    fn embeddings_of_small_structures() {
        let rb = two(Color::Red, Color::Blue, true);
        assert_eq!(embeddings(&FinStruct::new(), &rb).len(), 1);
        assert_eq!(embeddings(&rb, &rb).len(), 1);
        assert!(embeddings(&rb, &two(Color::Red, Color::Blue, false)).is_empty());
    }

    #[test]
    fn classes_pass_at_size_three() {
        for c in ClassDescriptor::ALL {
            for p in Property::ALL {
                let r = check_property(c, p, 3).unwrap();
                assert!(r.pass, "{c} {}: {:?}", p.name(), r.counterexample);
                assert_eq!(r.by_identification, 0);
            }
        }
    }

    #[test]
    fn broken_class_fails_with_checkable_counterexample() {
        // at most one edge: hereditary, but two edges over a common point cannot be amalgamated
        let at_most_one = |s: &FinStruct| s.edge_count() <= 1;
        let r = check_property_with("atMostOneEdge", &at_most_one, Property::Hp, 3).unwrap();
        assert!(r.pass);
        let r = check_property_with("atMostOneEdge", &at_most_one, Property::Jep, 3).unwrap();
        let Some(Counterexample::Joint { b, c }) = r.counterexample else { panic!("JEP should fail") };
        assert!(at_most_one(&b) && at_most_one(&c));
        assert_eq!(b.edge_count() + c.edge_count(), 2);
        let r = check_property_with("atMostOneEdge", &at_most_one, Property::Ap, 3).unwrap();
        assert!(!r.pass);
        let Some(Counterexample::Amalgam { a, b, c, into_c }) = r.counterexample else { panic!() };
        assert!(crate::order::is_partial_iso(&into_c, &a, &c).unwrap());
        assert_eq!(b.induced(&a.ids().collect::<Vec<_>>()).unwrap(), a);
    }

    #[test]
    fn identification_rescues_a_class_without_free_amalgams() {
        // a single red point at most: two reds over nothing must be glued
        let one_red = |s: &FinStruct| s.count_color(Color::Red) <= 1 && s.count_color(Color::Blue) == 0;
        let r = check_property_with("oneRed", &one_red, Property::Ap, 2).unwrap();
        assert!(r.pass);
        assert!(r.by_identification > 0);
    }

    #[test]
    fn limit_samples_stay_in_class() {
        for c in ClassDescriptor::ALL {
            let mut o = c.limit_oracle(7);
            for n in 1..=16 {
                let s = o.grow_to(n).unwrap();
                assert!(c.member(&s), "{c} at {n}");
            }
        }
    }
}
