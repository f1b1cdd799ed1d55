use crate::catalog::{FinitePoints, Reduct};
use crate::oracle::{EndSide, StructureOracle};
use crate::order::{Color, ExtPos, PointId};

use super::{AnalysisError, Evidence, Prober};

/// The underlying coloured order of an oracle and the queries that decided it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReductVerdict {
    pub reduct: Reduct,
    pub evidence: Evidence,
    /// Oracle calls spent.
    pub calls: u64,
}

/// Up to two points of colour `c`: `[]`, `[x]` or `[x, y]`.
fn two_of(p: &mut Prober<'_>, c: Color) -> Result<Vec<PointId>, AnalysisError> {
    let Some(x) = p.between(None, None, c)? else { return Ok(vec![]) };
    let px = p.pos(x);
    if let Some(y) = p.between(Some(px.clone()), None, c)? {
        return Ok(vec![x, y]);
    }
    Ok(match p.between(None, Some(px), c)? {
        Some(y) => vec![y, x],
        None => vec![x],
    })
}

/// A point of colour `c` whose neighbourhood up to the next point is empty,
/// together with that next point (of the other colour).
fn successor(p: &mut Prober<'_>, x: PointId, c: Color) -> Result<Option<PointId>, AnalysisError> {
    let px = p.pos(x);
    let Some(s) = p.between(Some(px.clone()), None, c.other())? else { return Ok(None) };
    let ps = p.pos(s);
    for col in [Color::Red, Color::Blue] {
        if p.between(Some(px.clone()), Some(ps.clone()), col)?.is_some() {
            return Ok(None);
        }
    }
    Ok(Some(s))
}

/// Decides which underlying two-coloured order the oracle presents.
///
/// Probes: up to two points of each colour (finite, monochrome and endpoint
/// cases), absence of the second colour below a point of the first (block
/// cases), then whether a point's next point of the other colour is an
/// immediate successor (paired case) or not (dense case).
pub fn reduct_classify(o: &mut StructureOracle, budget: u64) -> Result<ReductVerdict, AnalysisError> {
    if budget < 8 {
        return Err(AnalysisError::BudgetExceeded(format!("budget {budget} is below the minimum 8")));
    }
    let mut p = Prober::new(o, budget);
    let reds = two_of(&mut p, Color::Red)?;
    let blues = two_of(&mut p, Color::Blue)?;
    let reduct = match (reds.len(), blues.len()) {
        (0, 0) => return Err(AnalysisError::Inconclusive("the structure has no points".into())),
        (1, 0) => Reduct::Finite(FinitePoints::Red),
        (0, 1) => Reduct::Finite(FinitePoints::Blue),
        (1, 1) => {
            if p.pos(reds[0]) < p.pos(blues[0]) {
                Reduct::Finite(FinitePoints::RedBlue)
            } else {
                Reduct::Finite(FinitePoints::BlueRed)
            }
        }
        (_, 0) => Reduct::Mono(Color::Red),
        (0, _) => Reduct::Mono(Color::Blue),
        (1, _) | (_, 1) => {
            let (z, x, endpoint) =
                if reds.len() == 1 { (reds[0], blues[0], Color::Red) } else { (blues[0], reds[0], Color::Blue) };
            let side = if p.pos(z) > p.pos(x) { EndSide::PosInf } else { EndSide::NegInf };
            Reduct::Endpoint { side, endpoint }
        }
        _ => classify_infinite(&mut p, &reds, &blues)?,
    };
    let calls = p.spent();
    Ok(ReductVerdict { reduct, evidence: Evidence(p.log), calls })
}

fn classify_infinite(p: &mut Prober<'_>, reds: &[PointId], blues: &[PointId]) -> Result<Reduct, AnalysisError> {
    for (first, f, s) in [(Color::Red, reds[0], blues[0]), (Color::Blue, blues[0], reds[0])] {
        let second = first.other();
        let below_f: Option<ExtPos> = Some(p.pos(f));
        let above_s: Option<ExtPos> = Some(p.pos(s));
        if p.between(None, below_f, second)?.is_none() && p.between(above_s, None, first)?.is_none() {
            return Ok(Reduct::Blocks { first });
        }
    }
    for (first, x) in [(Color::Red, reds[0]), (Color::Blue, blues[0])] {
        if successor(p, x, first)?.is_some() {
            return Ok(Reduct::Pairs { first });
        }
    }
    Ok(Reduct::Dense)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{all_entries, CatalogEntry};

    #[test]
    fn every_entry_gets_its_reduct() {
        for e in all_entries() {
            for seed in 0..3 {
                let v = reduct_classify(&mut e.instantiate(seed), 64).unwrap();
                assert_eq!(v.reduct, e.reduct(), "{e} seed {seed}\n{}", v.evidence);
            }
        }
    }

    #[test]
    fn examples() {
        let r = |n: &str| reduct_classify(&mut n.parse::<CatalogEntry>().unwrap().instantiate(1), 64).unwrap().reduct;
        assert_eq!(r("iv.empty"), Reduct::Blocks { first: Color::Red });
        assert_eq!(r("v.rb.M"), Reduct::Pairs { first: Color::Red });
        assert_eq!(r("vi.rightGeneric+leftComplete"), Reduct::Dense);
    }

    #[test]
    fn budget_is_enforced() {
        let mut o = "vi.empty+empty".parse::<CatalogEntry>().unwrap().instantiate(1);
        assert!(matches!(reduct_classify(&mut o, 4), Err(AnalysisError::BudgetExceeded(_))));
        assert!(matches!(reduct_classify(&mut o, 9), Err(AnalysisError::BudgetExceeded(_))));
    }

    #[test]
    fn paired_verdict_is_backed_by_empty_gaps() {
        // replay: every successor probe that led to a paired verdict saw no point in the gap
        for e in all_entries().into_iter().filter(|e| matches!(e.reduct(), Reduct::Pairs { .. })) {
            let v = reduct_classify(&mut e.instantiate(2), 64).unwrap();
            let last_two: Vec<&String> = v.evidence.0.iter().rev().take(2).collect();
            assert!(last_two.iter().all(|l| l.ends_with("= none")), "{}", v.evidence);
        }
    }
}
