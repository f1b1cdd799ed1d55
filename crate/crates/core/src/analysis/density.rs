use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::{CatalogEntry, Part, Reduct};
use crate::oracle::{EndSide, Origin, Sign, StructureOracle, WitnessSpec};
use crate::order::{Color, ExtPos, Interval, Point, PointId, Slot};

use super::AnalysisError;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DensityReport {
    /// Specs sent to the oracle.
    pub specs: usize,
    /// Specs that failed, with the reason.
    pub failures: Vec<(WitnessSpec, String)>,
}

impl DensityReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Whether a spec with constraints at these positions asks for something the
/// structure is claimed to always have: for the dense order a constraint may
/// only sit on a side whose part is generic.
fn in_generic_region(entry: Option<&CatalogEntry>, c: Color, cell: &Interval, constraint_pos: &[ExtPos]) -> bool {
    let Some(CatalogEntry::Dense { right, left }) = entry else { return true };
    constraint_pos.iter().all(|p| {
        let below = cell.lo.as_ref().is_some_and(|lo| p <= lo);
        // a constraint below a blue witness or above a red one is a right-part pair
        let right_pair = below == (c == Color::Blue);
        let part = if right_pair { right } else { left };
        *part == Part::Generic
    })
}

/// Random witness requests with at most `max_constraints` constraints, each in
/// a cell of the sample where the witness colour occurs and where the
/// requested pattern is free. Every request must be met, strictly inside its
/// interval.
pub fn witness_density(
    o: &mut StructureOracle,
    specs: usize,
    max_constraints: usize,
    seed: u64,
) -> Result<DensityReport, AnalysisError> {
    let entry = match o.origin() {
        Origin::Entry(e) => Some(*e),
        _ => None,
    };
    let s = o.grow_to(12)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = DensityReport::default();
    let mut attempts = 0;
    while report.specs < specs {
        attempts += 1;
        if attempts > 50 * specs + 100 {
            return Err(AnalysisError::Inconclusive("too few valid witness requests".into()));
        }
        let c = if rng.gen_bool(0.5) { Color::Red } else { Color::Blue };
        let mut others: Vec<&Point> = s.points().iter().filter(|p| p.color != c).collect();
        others.shuffle(&mut rng);
        let m = rng.gen_range(0..=max_constraints.min(others.len()));
        let chosen = &others[..m];
        let i = rng.gen_range(0..=s.len());
        let cell = Interval {
            lo: i.checked_sub(1).map(|j| s.points()[j].pos.clone()),
            hi: s.points().get(i).map(|p| p.pos.clone()),
        };
        let positions: Vec<ExtPos> = chosen.iter().map(|p| p.pos.clone()).collect();
        if !in_generic_region(entry.as_ref(), c, &cell, &positions) {
            continue;
        }
        if o.clone().exists_between(cell.lo.clone(), cell.hi.clone(), c)?.is_none() {
            continue;
        }
        let constraints: Vec<(PointId, Sign)> = chosen.iter().map(|p| (p.id, Sign::of(rng.gen_bool(0.5)))).collect();
        let w = WitnessSpec::new(c, cell, constraints);
        report.specs += 1;
        match o.realize_witness(&w)? {
            None => report.failures.push((w, "no witness".into())),
            Some(z) => {
                let pz = o.point(z)?.pos.clone();
                if !w.interval.contains(&pz) {
                    report.failures.push((w, format!("{z} at {pz} outside the interval")));
                    continue;
                }
                for &(x, sign) in &w.constraints {
                    if !sign.holds(o.adjacent(z, x)?) {
                        report.failures.push((w.clone(), format!("{z} breaks the constraint on {x}")));
                        break;
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Checks that a catalog oracle's sample has the shape of its underlying
/// order and that each colour occurs in exactly the cells where the order
/// puts it. Returns the number of cells checked.
pub fn check_reduct_contract(o: &mut StructureOracle, n: usize) -> Result<usize, String> {
    let Origin::Entry(e) = *o.origin() else { return Ok(0) };
    let s = o.grow_to(n).map_err(|x| x.to_string())?;
    let pts = s.points();
    match e.reduct() {
        Reduct::Blocks { first } => {
            if let Some(i) = pts.iter().position(|p| p.color != first) {
                if pts[i..].iter().any(|p| p.color == first) {
                    return Err(format!("{e}: blocks interleave"));
                }
            }
        }
        Reduct::Pairs { first }
            if pts.len() % 2 != 0 || pts.chunks(2).any(|w| w[0].color != first || w[1].color == first) =>
        {
            return Err(format!("{e}: sample is not a sequence of pairs"));
        }
        _ => {}
    }
    let mut checked = 0;
    for i in 0..=pts.len() {
        let lo = i.checked_sub(1).map(|j| &pts[j]);
        let hi = pts.get(i);
        for c in Color::BOTH {
            let expect = match e.reduct() {
                Reduct::Finite(_) => false,
                Reduct::Mono(col) => c == col,
                Reduct::Endpoint { side, endpoint } => {
                    let (outer, inner) = match side {
                        EndSide::PosInf => (hi, lo),
                        EndSide::NegInf => (lo, hi),
                    };
                    if c == endpoint {
                        outer.is_none() && !pts.iter().any(|p| p.color == endpoint)
                    } else {
                        inner.is_none_or(|p| p.color != endpoint)
                    }
                }
                Reduct::Blocks { first } => {
                    if c == first {
                        lo.is_none_or(|p| p.color == first)
                    } else {
                        hi.is_none_or(|p| p.color != first)
                    }
                }
                Reduct::Pairs { .. } => !matches!(lo.map(|p| &p.pos), Some(ExtPos::Pair(_, Slot::First))),
                Reduct::Dense => true,
            };
            let got = o
                .clone()
                .exists_between(lo.map(|p| p.pos.clone()), hi.map(|p| p.pos.clone()), c)
                .map_err(|x| x.to_string())?
                .is_some();
            if got != expect {
                return Err(format!("{e}: {c} between {lo:?} and {hi:?}: expected {expect}, got {got}"));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::all_entries;

    #[test]
    fn generic_entries_are_dense_in_witnesses() {
        for name in
            ["iv.unbounded_generic", "vi.rightGeneric+empty", "vi.empty+leftGeneric", "vi.rightGeneric+leftGeneric"]
        {
            let mut o = name.parse::<CatalogEntry>().unwrap().instantiate(11);
            let r = witness_density(&mut o, 100, 3, 11).unwrap();
            assert!(r.pass(), "{name}: {:?}", r.failures.first());
        }
    }

    #[test]
    fn complete_parts_refuse_free_patterns() {
        let mut o = "vi.rightComplete+leftGeneric".parse::<CatalogEntry>().unwrap().instantiate(3);
        let r = witness_density(&mut o, 60, 2, 3).unwrap();
        assert!(r.pass());
    }

    #[test]
    fn every_entry_keeps_its_reduct_contract() {
        for e in all_entries() {
            for seed in 0..2 {
                check_reduct_contract(&mut e.instantiate(seed), 12).unwrap();
            }
        }
    }
}
