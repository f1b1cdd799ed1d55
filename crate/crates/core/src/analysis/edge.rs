use crate::catalog::{BlockRelation, CatalogEntry, FinitePoints, PairRelations, Part, Reduct, Relation};
use crate::oracle::{Sign, StructureOracle, WitnessSpec};
use crate::order::{Color, Interval, PointId};

use super::{AnalysisError, Evidence, Prober, ReductVerdict};

/// The full catalog entry an oracle appears to be, with the probes behind it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgeVerdict {
    pub entry: CatalogEntry,
    pub probes: Evidence,
    pub calls: u64,
}

fn relation(adj: bool) -> Relation {
    if adj {
        Relation::Complete
    } else {
        Relation::Empty
    }
}

fn need(p: Option<PointId>, what: &str) -> Result<PointId, AnalysisError> {
    p.ok_or_else(|| AnalysisError::Inconclusive(format!("no {what}")))
}

/// Decides the edge relation on top of a known reduct.
pub fn edge_classify(o: &mut StructureOracle, r: &ReductVerdict, budget: u64) -> Result<EdgeVerdict, AnalysisError> {
    let mut p = Prober::new(o, budget);
    let entry = match r.reduct {
        Reduct::Finite(points) => match points {
            FinitePoints::Red | FinitePoints::Blue => CatalogEntry::Finite { points, relation: Relation::Empty },
            _ => {
                let a = need(p.between(None, None, Color::Red)?, "red point")?;
                let b = need(p.between(None, None, Color::Blue)?, "blue point")?;
                CatalogEntry::Finite { points, relation: relation(p.adjacent(a, b)?) }
            }
        },
        Reduct::Mono(color) => CatalogEntry::Monochrome { color },
        Reduct::Endpoint { side, endpoint } => {
            let z = need(p.between(None, None, endpoint)?, "endpoint")?;
            let x = need(p.between(None, None, endpoint.other())?, "point")?;
            CatalogEntry::Endpoint { side, endpoint, relation: relation(p.adjacent(z, x)?) }
        }
        Reduct::Blocks { first } => CatalogEntry::Blocks { first, relation: blocks(&mut p, first)? },
        Reduct::Pairs { first } => CatalogEntry::Pairs { first, relations: pairs(&mut p, first)? },
        Reduct::Dense => dense(&mut p)?,
    };
    let calls = p.spent();
    Ok(EdgeVerdict { entry, probes: Evidence(p.log), calls })
}

fn blocks(p: &mut Prober<'_>, first: Color) -> Result<BlockRelation, AnalysisError> {
    let second = first.other();
    let a = need(p.between(None, None, first)?, "first-block point")?;
    let spec = |x: PointId, s: Sign, c: Color| WitnessSpec::new(c, Interval::full(), vec![(x, s)]);
    let plus = p.witness(&spec(a, Sign::Plus, second))?;
    let minus = p.witness(&spec(a, Sign::Minus, second))?;
    let (plus, minus) = match (plus, minus) {
        (None, _) => return Ok(BlockRelation::Empty),
        (_, None) => return Ok(BlockRelation::Complete),
        (Some(x), Some(y)) => (x, y),
    };
    // two neighbourhoods that are not nested
    let a2 = need(p.between(Some(p.pos(a)), None, first)?, "second first-block point")?;
    let cross = |s1, s2| WitnessSpec::new(second, Interval::full(), vec![(a, s1), (a2, s2)]);
    let one = p.witness(&cross(Sign::Plus, Sign::Minus))?;
    let other = p.witness(&cross(Sign::Minus, Sign::Plus))?;
    if one.is_some() && other.is_some() {
        return Ok(BlockRelation::Unbounded);
    }
    // a neighbourhood that is a final segment means the second block keeps its order
    let second_reversed = p.pos(plus) < p.pos(minus);
    let fp = need(p.witness(&spec(plus, Sign::Plus, first))?, "neighbour")?;
    let fm = need(p.witness(&spec(plus, Sign::Minus, first))?, "non-neighbour")?;
    let first_reversed = p.pos(fp) > p.pos(fm);
    let (red_reversed, blue_reversed) =
        if first == Color::Red { (first_reversed, second_reversed) } else { (second_reversed, first_reversed) };
    Ok(BlockRelation::Bounded { red_reversed, blue_reversed })
}

fn pairs(p: &mut Prober<'_>, first: Color) -> Result<PairRelations, AnalysisError> {
    let second = first.other();
    let a = need(p.between(None, None, first)?, "point")?;
    let pa = p.pos(a);
    let partner = need(p.between(Some(pa.clone()), None, second)?, "partner")?;
    let later = need(p.between(Some(p.pos(partner)), None, second)?, "later point")?;
    let earlier = need(p.between(None, Some(pa), second)?, "earlier point")?;
    Ok(PairRelations {
        matching: p.adjacent(a, partner)?,
        above: p.adjacent(a, later)?,
        below: p.adjacent(a, earlier)?,
    })
}

fn dense(p: &mut Prober<'_>) -> Result<CatalogEntry, AnalysisError> {
    let a = need(p.between(None, None, Color::Red)?, "red point")?;
    let pa = p.pos(a);
    let mut parts = Vec::new();
    for interval in [Interval::above(pa.clone()), Interval::below(pa)] {
        let spec = |s| WitnessSpec::new(Color::Blue, interval.clone(), vec![(a, s)]);
        let plus = p.witness(&spec(Sign::Plus))?.is_some();
        let minus = p.witness(&spec(Sign::Minus))?.is_some();
        parts.push(match (plus, minus) {
            (true, true) => Part::Generic,
            (true, false) => Part::Complete,
            (false, true) => Part::Empty,
            (false, false) => return Err(AnalysisError::Inconclusive("no blue point on one side".into())),
        });
    }
    Ok(CatalogEntry::Dense { right: parts[0], left: parts[1] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::classify;
    use crate::catalog::all_entries;

    #[test]
    fn round_trip_every_entry() {
        for e in all_entries() {
            for seed in 0..3 {
                let (_, v) = classify(&mut e.instantiate(seed), 200).unwrap();
                assert_eq!(v.entry, e, "seed {seed}\n{}", v.probes);
            }
        }
    }

    #[test]
    fn examples() {
        let guess = |n: &str| {
            let e: CatalogEntry = n.parse().unwrap();
            classify(&mut e.instantiate(4), 200).unwrap().1.entry.name()
        };
        assert_eq!(guess("iv.bounded_generic"), "iv.bounded_generic.rb");
        assert_eq!(guess("iv.unbounded_generic"), "iv.unbounded_generic");
        assert_eq!(guess("v.rb.Above"), "v.rb.Above");
    }
}
