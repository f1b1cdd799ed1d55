use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracle::{Sign, StructureOracle, WitnessSpec};
use crate::order::{is_partial_iso, FinStruct, Interval, PartialIso, PointId};

use super::AnalysisError;

/// A partial isomorphism of a sample into itself and a point it cannot be
/// extended to.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtensionCounterexample {
    /// The sample both sides of `p` live in.
    pub sample: FinStruct,
    pub p: PartialIso,
    pub a: PointId,
    /// What an image of `a` would have to satisfy; the oracle has no such point.
    pub spec: WitnessSpec,
}

impl ExtensionCounterexample {
    /// Domain, range and `a` as one induced structure.
    pub fn support(&self) -> FinStruct {
        let mut ids: Vec<PointId> = self.p.domain().chain(self.p.range()).collect();
        ids.push(self.a);
        ids.sort();
        ids.dedup();
        self.sample.induced(&ids).expect("sample ids")
    }

    /// Number of points of the extended partial map.
    pub fn size(&self) -> usize {
        self.p.len() + 1
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum HomogeneityReport {
    NoCounterexampleFound { trials: usize, sample_size: usize },
    Counterexample { trials: usize, found: Box<ExtensionCounterexample> },
}

impl HomogeneityReport {
    pub fn trials(&self) -> usize {
        match self {
            HomogeneityReport::NoCounterexampleFound { trials, .. }
            | HomogeneityReport::Counterexample { trials, .. } => *trials,
        }
    }

    pub fn counterexample(&self) -> Option<&ExtensionCounterexample> {
        match self {
            HomogeneityReport::Counterexample { found, .. } => Some(found),
            _ => None,
        }
    }
}

/// The spec an image of `a` must meet: between the images of `a`'s nearest
/// domain neighbours, adjacent to exactly the images of its domain neighbours.
pub fn forced_spec(s: &FinStruct, pairs: &[(PointId, PointId)], a: PointId) -> WitnessSpec {
    let pa = s.point(a).expect("sample point");
    let mut lo: Option<(&crate::order::ExtPos, PointId)> = None;
    let mut hi: Option<(&crate::order::ExtPos, PointId)> = None;
    let mut constraints = Vec::new();
    for &(x, y) in pairs {
        let px = s.point(x).expect("sample point");
        if px.pos < pa.pos && lo.is_none_or(|(l, _)| l < &px.pos) {
            lo = Some((&px.pos, y));
        }
        if px.pos > pa.pos && hi.is_none_or(|(h, _)| h > &px.pos) {
            hi = Some((&px.pos, y));
        }
        if px.color != pa.color {
            constraints.push((y, Sign::of(s.has_edge(a, x))));
        }
    }
    constraints.sort();
    let img = |b: Option<(&crate::order::ExtPos, PointId)>| b.map(|(_, y)| s.point(y).expect("image").pos.clone());
    WitnessSpec::new(pa.color, Interval { lo: img(lo), hi: img(hi) }, constraints)
}

/// Random embedding of `s` restricted to `dom` into `s`, by randomized search.
fn random_embedding(s: &FinStruct, dom: &[PointId], rng: &mut ChaCha8Rng) -> Option<Vec<(PointId, PointId)>> {
    fn go(
        s: &FinStruct,
        dom: &[PointId],
        from: usize,
        cur: &mut Vec<(PointId, PointId)>,
        rng: &mut ChaCha8Rng,
        tries: &mut usize,
    ) -> bool {
        if cur.len() == dom.len() {
            return true;
        }
        *tries += 1;
        if *tries > 10_000 {
            return false;
        }
        let x = s.point(dom[cur.len()]).expect("domain point");
        let mut options: Vec<usize> = (from..s.len())
            .filter(|&j| {
                let y = &s.points()[j];
                y.color == x.color && cur.iter().all(|&(u, v)| s.has_edge(u, x.id) == s.has_edge(v, y.id))
            })
            .collect();
        options.shuffle(rng);
        for j in options {
            cur.push((x.id, s.points()[j].id));
            if go(s, dom, j + 1, cur, rng, tries) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = Vec::new();
    let mut tries = 0;
    go(s, dom, 0, &mut cur, rng, &mut tries).then_some(cur)
}

fn try_extend(
    o: &StructureOracle,
    s: &FinStruct,
    pairs: Vec<(PointId, PointId)>,
    a: PointId,
) -> Result<Option<ExtensionCounterexample>, AnalysisError> {
    let spec = forced_spec(s, &pairs, a);
    let mut probe = o.clone();
    if probe.realize_witness(&spec)?.is_some() {
        return Ok(None);
    }
    let p = PartialIso::try_new(pairs, s, s).expect("embeddings are partial isomorphisms");
    Ok(Some(ExtensionCounterexample { sample: s.clone(), p, a, spec }))
}

/// Drops pairs from the map one at a time while it still fails to extend.
fn shrink(
    o: &StructureOracle,
    s: &FinStruct,
    mut c: ExtensionCounterexample,
) -> Result<ExtensionCounterexample, AnalysisError> {
    let mut i = 0;
    while i < c.p.len() {
        let mut pairs = c.p.pairs().to_vec();
        pairs.remove(i);
        match try_extend(o, s, pairs, c.a)? {
            Some(smaller) => c = smaller,
            None => i += 1,
        }
    }
    Ok(c)
}

/// Searches for a finite partial isomorphism that does not extend by one point.
///
/// The sample is grown to `max(2 * sample_size, 12)` points, then each of
/// those points gets a neighbour where one exists. Each trial picks a
/// domain of fewer than `sample_size` points, a point `a` outside it and a
/// random embedding of the domain into the sample, then asks a copy of the
/// oracle for an image of `a`. Only a definite `None` counts as a
/// counterexample, which is then shrunk by dropping pairs it does not need;
/// otherwise the report only says none was found.
pub fn one_point_extension_test(
    o: &mut StructureOracle,
    sample_size: usize,
    trials: usize,
    seed: u64,
) -> Result<HomogeneityReport, AnalysisError> {
    if sample_size > 8 {
        return Err(AnalysisError::BudgetExceeded(format!("sample size {sample_size} above 8")));
    }
    let grown = o.grow_to((2 * sample_size).max(12))?;
    for x in grown.points() {
        let w = WitnessSpec::new(x.color.other(), Interval::full(), vec![(x.id, Sign::Plus)]);
        o.realize_witness(&w)?;
    }
    let s = o.sample_snapshot();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ids: Vec<PointId> = s.ids().collect();
    for t in 0..trials {
        if ids.is_empty() || sample_size == 0 {
            break;
        }
        let d = rng.gen_range(0..sample_size.min(ids.len()));
        let mut picked = ids.clone();
        picked.shuffle(&mut rng);
        let a = picked[d];
        let mut dom: Vec<PointId> = picked[..d].to_vec();
        dom.sort_by(|x, y| s.point(*x).unwrap().pos.cmp(&s.point(*y).unwrap().pos));
        let Some(pairs) = random_embedding(&s, &dom, &mut rng) else { continue };
        if let Some(found) = try_extend(o, &s, pairs, a)? {
            let found = shrink(o, &s, found)?;
            return Ok(HomogeneityReport::Counterexample { trials: t + 1, found: Box::new(found) });
        }
    }
    Ok(HomogeneityReport::NoCounterexampleFound { trials, sample_size })
}

/// Exhaustive version over domains of at most `max_domain` points of the
/// current sample, every point outside and every embedding.
pub fn exhaustive_extension_search(
    o: &StructureOracle,
    max_domain: usize,
) -> Result<Option<ExtensionCounterexample>, AnalysisError> {
    let s = o.sample_snapshot();
    let ids: Vec<PointId> = s.ids().collect();
    let n = ids.len();
    for d in 0..=max_domain.min(n.saturating_sub(1)) {
        for mask in 0u64..(1 << n) {
            if mask.count_ones() as usize != d {
                continue;
            }
            let dom: Vec<PointId> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| s.points()[i].id).collect();
            let sub = s.induced(&dom).expect("sample ids");
            for target in crate::fraisse::embeddings(&sub, &s) {
                for &a in ids.iter().filter(|a| !dom.contains(a)) {
                    if let Some(found) = try_extend(o, &s, target.clone(), a)? {
                        return Ok(Some(found));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Re-checks a counterexample from scratch against the oracle.
pub fn verify_counterexample(o: &StructureOracle, c: &ExtensionCounterexample) -> bool {
    let s = &c.sample;
    let live = o.sample();
    let same_points = s.points().iter().all(|p| live.point(p.id) == Some(p))
        && s.points().iter().all(|p| s.points().iter().all(|q| s.has_edge(p.id, q.id) == live.has_edge(p.id, q.id)));
    let pairs = c.p.pairs();
    same_points
        && is_partial_iso(pairs, s, s).unwrap_or(false)
        && s.contains_id(c.a)
        && c.p.image(c.a).is_none()
        && forced_spec(s, pairs, c.a) == c.spec
        && matches!(o.clone().realize_witness(&c.spec), Ok(None))
}
