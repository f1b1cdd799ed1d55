use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracle::{Sign, StructureOracle, WitnessSpec};
use crate::order::{is_partial_iso, Color, FinStruct, Interval, PointId};

use super::AnalysisError;

/// Default oracle-call budget of one comparison.
pub const DEFAULT_BNF_BUDGET: u64 = 2000;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    A,
    B,
}

/// A one-point extension type over the current partial map that one side
/// realizes and the other does not.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Challenge {
    /// The side that realizes it.
    pub realized_on: Side,
    /// The partial map, sorted by position.
    pub pairs: Vec<(PointId, PointId)>,
    pub config_a: FinStruct,
    pub config_b: FinStruct,
    pub spec_a: WitnessSpec,
    pub spec_b: WitnessSpec,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BnfOutcome {
    /// Told apart when extending a map of `depth - 1` pairs.
    Distinguished {
        depth: usize,
        challenge: Box<Challenge>,
    },
    Indistinguishable {
        depth: usize,
    },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BnfResult {
    pub outcome: BnfOutcome,
    pub calls: u64,
}

impl BnfResult {
    pub fn distinguished_at(&self) -> Option<usize> {
        match self.outcome {
            BnfOutcome::Distinguished { depth, .. } => Some(depth),
            BnfOutcome::Indistinguishable { .. } => None,
        }
    }
}

/// Spec of colour `c` in cell `cell` of the sorted domain `dom`, with signs
/// given by the bits of `mask` over the domain points of the other colour.
fn spec_for(o: &StructureOracle, dom: &[PointId], c: Color, cell: usize, mask: u32) -> WitnessSpec {
    let pos = |id: PointId| o.point(id).expect("domain point").pos.clone();
    let lo = cell.checked_sub(1).map(|i| pos(dom[i]));
    let hi = dom.get(cell).map(|&id| pos(id));
    let constraints = dom
        .iter()
        .filter(|&&id| o.point(id).expect("domain point").color != c)
        .enumerate()
        .map(|(k, &id)| (id, Sign::of(mask >> k & 1 == 1)))
        .collect();
    WitnessSpec::new(c, Interval { lo, hi }, constraints)
}

fn realizable(o: &StructureOracle, w: &WitnessSpec) -> Result<bool, AnalysisError> {
    Ok(o.clone().realize_witness(w)?.is_some())
}

/// Plays `depth` rounds of the back-and-forth game between two oracles.
///
/// Each round lists every one-point extension type over the current map
/// (colour, cell between mapped points, adjacency to every mapped point of the
/// other colour) and asks both sides whether they realize it. A type realized
/// on exactly one side ends the game. Otherwise one type realized on both
/// sides is picked from the seeded stream and added to the map.
pub fn back_and_forth(
    a: &mut StructureOracle,
    b: &mut StructureOracle,
    depth: usize,
    seed: u64,
    budget: u64,
) -> Result<BnfResult, AnalysisError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(PointId, PointId)> = Vec::new();
    let mut calls = 0u64;
    for round in 1..=depth {
        let dom_a: Vec<PointId> = pairs.iter().map(|p| p.0).collect();
        let dom_b: Vec<PointId> = pairs.iter().map(|p| p.1).collect();
        let mut common = Vec::new();
        for c in Color::BOTH {
            let m = dom_a.iter().filter(|&&id| a.point(id).expect("mapped").color != c).count();
            for cell in 0..=pairs.len() {
                for mask in 0..(1u32 << m) {
                    calls += 2;
                    if calls > budget {
                        return Err(AnalysisError::BudgetExceeded(format!("{budget} oracle calls")));
                    }
                    let wa = spec_for(a, &dom_a, c, cell, mask);
                    let wb = spec_for(b, &dom_b, c, cell, mask);
                    let (ra, rb) = (realizable(a, &wa)?, realizable(b, &wb)?);
                    if ra != rb {
                        let challenge = Challenge {
                            realized_on: if ra { Side::A } else { Side::B },
                            config_a: a.sample().induced(&dom_a).expect("mapped ids"),
                            config_b: b.sample().induced(&dom_b).expect("mapped ids"),
                            pairs,
                            spec_a: wa,
                            spec_b: wb,
                        };
                        return Ok(BnfResult {
                            outcome: BnfOutcome::Distinguished { depth: round, challenge: Box::new(challenge) },
                            calls,
                        });
                    }
                    if ra {
                        common.push((wa, wb));
                    }
                }
            }
        }
        if common.is_empty() {
            // both structures are exhausted and matched point for point
            break;
        }
        let (wa, wb) = &common[rng.gen_range(0..common.len())];
        let x = a.realize_witness(wa)?.expect("checked on a copy");
        let y = b.realize_witness(wb)?.expect("checked on a copy");
        let at = pairs.partition_point(|&(p, _)| a.point(p).expect("mapped").pos < a.point(x).expect("new").pos);
        pairs.insert(at, (x, y));
    }
    Ok(BnfResult { outcome: BnfOutcome::Indistinguishable { depth }, calls })
}

/// Re-checks a distinguishing challenge: the map is a partial isomorphism, the
/// two specs are images of each other under it, and exactly the named side
/// realizes its spec.
pub fn verify_distinguished(a: &StructureOracle, b: &StructureOracle, c: &Challenge) -> bool {
    if !is_partial_iso(&c.pairs, a.sample(), b.sample()).unwrap_or(false) {
        return false;
    }
    let image = |id: PointId| c.pairs.iter().find(|p| p.0 == id).map(|p| p.1);
    let dom_a: Vec<PointId> = c.pairs.iter().map(|p| p.0).collect();
    let dom_b: Vec<PointId> = c.pairs.iter().map(|p| p.1).collect();
    let mapped = c.spec_a.color == c.spec_b.color
        && c.spec_a.constraints.len() == c.spec_b.constraints.len()
        && c.spec_a
            .constraints
            .iter()
            .zip(&c.spec_b.constraints)
            .all(|(&(x, s), &(y, t))| image(x) == Some(y) && s == t);
    let bounds = |w: &WitnessSpec, o: &StructureOracle, dom: &[PointId]| {
        let idx = |p: &Option<crate::order::ExtPos>| {
            p.as_ref().map(|p| dom.iter().position(|&d| &o.point(d).expect("mapped").pos == p))
        };
        (idx(&w.interval.lo), idx(&w.interval.hi))
    };
    let ra = realizable(a, &c.spec_a).unwrap_or(false);
    let rb = realizable(b, &c.spec_b).unwrap_or(false);
    mapped
        && bounds(&c.spec_a, a, &dom_a) == bounds(&c.spec_b, b, &dom_b)
        && ra != rb
        && ra == (c.realized_on == Side::A)
}
