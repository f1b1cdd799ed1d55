use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use obg_core::analysis::{
    back_and_forth, check_reduct_contract, classify, one_point_extension_test, verify_counterexample,
    verify_distinguished, witness_density, AnalysisError, BnfOutcome, HomogeneityReport,
};
use obg_core::catalog::all_entries;
use obg_core::fixtures::Fixture;
use obg_core::fraisse::{check_property, ClassDescriptor, Counterexample, Property};
use obg_core::oracle::EndSide;
use obg_core::order::ExtPos;
use obg_core::{CatalogEntry, Color, FinStruct, StructureOracle};

use crate::format::{parse, serialize};
use crate::report::{Report, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        3
    }
}

/// Anything that can back an oracle: a catalog entry, a fixture
/// (`fixture:<name>`) or the limit of a class (`limit:<class>`).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Source {
    Entry(CatalogEntry),
    Fixture(Fixture),
    Limit(ClassDescriptor),
}

impl Source {
    pub fn oracle(self, seed: u64) -> StructureOracle {
        match self {
            Source::Entry(e) => e.instantiate(seed),
            Source::Fixture(f) => f.instantiate(seed),
            Source::Limit(c) => c.limit_oracle(seed),
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Entry(e) => write!(f, "{e}"),
            Source::Fixture(x) => write!(f, "fixture:{x}"),
            Source::Limit(c) => write!(f, "limit:{}", c.name()),
        }
    }
}

impl FromStr for Source {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.starts_with("fixture:") {
            return s.parse().map(Source::Fixture).map_err(CliError::Usage);
        }
        if let Some(c) = s.strip_prefix("limit:") {
            return c.parse().map(Source::Limit).map_err(CliError::Usage);
        }
        s.parse().map(Source::Entry).map_err(|e: obg_core::catalog::CatalogError| CliError::Usage(e.to_string()))
    }
}

pub fn catalog_list() -> String {
    all_entries().iter().map(|e| format!("{e}\n")).collect()
}

/// Snapshot of the oracle grown to `size` points, as sample-file text.
pub fn sample(src: Source, size: usize, seed: u64) -> Result<(String, Report), CliError> {
    let s = src.oracle(seed).grow_to(size).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut r = Report::new();
    r.field("entry", src).field("seed", seed).field("points", s.len()).field("edges", s.edge_count());
    let body = serialize(&s);
    let (header, rest) = body.split_once('\n').expect("header line");
    Ok((format!("{header}\n# {src} seed {seed}\n{rest}"), r))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Homogeneity,
    Density,
    ClosedForm,
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "homogeneity" => Ok(Suite::Homogeneity),
            "density" => Ok(Suite::Density),
            "closedform" => Ok(Suite::ClosedForm),
            _ => Err(CliError::Usage(format!("unknown suite `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct TestOptions {
    pub sample_size: usize,
    pub trials: usize,
    pub seed: u64,
    pub max_constraints: usize,
    pub specs: usize,
}

impl Default for TestOptions {
    fn default() -> Self {
        TestOptions { sample_size: 6, trials: 200, seed: 0, max_constraints: 3, specs: 500 }
    }
}

struct Outcome {
    /// `None` when the suite does not apply.
    pass: Option<bool>,
    detail: String,
    block: Option<(String, String)>,
}

impl Outcome {
    fn skip(why: &str) -> Self {
        Outcome { pass: None, detail: format!("n/a ({why})"), block: None }
    }

    fn error(e: impl fmt::Display) -> Self {
        Outcome { pass: Some(false), detail: format!("error ({e})"), block: None }
    }
}

fn homogeneity(src: Source, opt: &TestOptions) -> Outcome {
    let mut o = src.oracle(opt.seed);
    match one_point_extension_test(&mut o, opt.sample_size, opt.trials, opt.seed) {
        Err(e) => Outcome::error(e),
        Ok(HomogeneityReport::NoCounterexampleFound { trials, sample_size }) => Outcome {
            pass: Some(true),
            detail: format!("no counterexample in {trials} trials at sample size {sample_size}"),
            block: None,
        },
        Ok(HomogeneityReport::Counterexample { trials, found }) => {
            let map: Vec<String> = found.p.pairs().iter().map(|(x, y)| format!("{x}->{y}")).collect();
            let verified = verify_counterexample(&o, &found);
            let body = format!(
                "# map {}\n# extend {}\n# no point {}\n# verified {verified}\n{}",
                if map.is_empty() { "(empty)".to_string() } else { map.join(" ") },
                found.a,
                found.spec,
                serialize(&found.support())
            );
            Outcome {
                pass: Some(false),
                detail: format!("counterexample of size {} after {trials} trials", found.size()),
                block: Some((format!("counterexample {src}"), body)),
            }
        }
    }
}

fn density(src: Source, opt: &TestOptions) -> Outcome {
    let contract = match check_reduct_contract(&mut src.oracle(opt.seed), 12) {
        Ok(n) => n,
        Err(e) => return Outcome { pass: Some(false), detail: format!("order contract broken: {e}"), block: None },
    };
    let mut o = src.oracle(opt.seed);
    if o.is_deterministic() {
        return Outcome {
            pass: Some(true),
            detail: format!("order contract holds on {contract} cells; no generic part"),
            block: None,
        };
    }
    match witness_density(&mut o, opt.specs, opt.max_constraints, opt.seed) {
        Err(e) => Outcome::error(e),
        Ok(r) => Outcome {
            pass: Some(r.pass()),
            detail: match r.failures.first() {
                None => format!("{} witness requests met, order contract holds on {contract} cells", r.specs),
                Some((w, why)) => format!("{} of {} requests failed, first: {w}: {why}", r.failures.len(), r.specs),
            },
            block: None,
        },
    }
}

fn closed_form(src: Source, opt: &TestOptions) -> Outcome {
    let Source::Entry(e) = src else { return Outcome::skip("not a catalog entry") };
    let Some(rule) = e.closed_form() else { return Outcome::skip("no closed form") };
    let s = match e.instantiate(opt.seed).grow_to(12) {
        Ok(s) => s,
        Err(err) => return Outcome::error(err),
    };
    let mut pairs = 0;
    for x in s.points() {
        for y in s.points() {
            pairs += 1;
            if s.has_edge(x.id, y.id) != rule.adjacent((&x.pos, x.color), (&y.pos, y.color)) {
                return Outcome {
                    pass: Some(false),
                    detail: format!("mismatch at {} and {}", x.id, y.id),
                    block: None,
                };
            }
        }
    }
    Outcome { pass: Some(true), detail: format!("{pairs} ordered pairs agree"), block: None }
}

/// Runs a suite on one source or, for `all`, on every catalog entry.
pub fn test(selection: &str, suite: Suite, opt: &TestOptions) -> Result<Report, CliError> {
    let sources: Vec<Source> = if selection == "all" {
        all_entries().into_iter().map(Source::Entry).collect()
    } else {
        vec![selection.parse()?]
    };
    let run = |src: &Source| match suite {
        Suite::Homogeneity => homogeneity(*src, opt),
        Suite::Density => density(*src, opt),
        Suite::ClosedForm => closed_form(*src, opt),
    };
    let outcomes: Vec<Outcome> = sources.par_iter().map(run).collect();
    let mut r = Report::new();
    r.field("suite", format!("{suite:?}").to_lowercase()).field("seed", opt.seed);
    let mut failed = 0;
    for (src, o) in sources.iter().zip(outcomes) {
        let tag = match o.pass {
            Some(true) => "pass",
            Some(false) => "fail",
            None => "skip",
        };
        r.field(src.to_string(), format!("{tag}: {}", o.detail));
        if o.pass == Some(false) {
            failed += 1;
        }
        if let Some((title, body)) = o.block {
            r.block(title, body);
        }
    }
    r.field("failed", failed);
    r.verdict = Verdict::of(failed == 0);
    Ok(r)
}

/// Classifies a live oracle. The verdict is `pass` when the answer names the
/// entry the oracle was built from.
pub fn classify_source(src: Source, budget: u64, seed: u64) -> Report {
    let mut o = src.oracle(seed);
    let mut r = Report::new();
    r.field("input", src).field("seed", seed);
    match classify(&mut o, budget) {
        Ok((rv, ev)) => {
            r.field("reduct", rv.reduct.case_tag())
                .field("underlying", rv.reduct)
                .field("entry", ev.entry)
                .field("calls", rv.calls + ev.calls);
            for (i, line) in rv.evidence.0.iter().chain(&ev.probes.0).enumerate() {
                r.field(format!("probe.{}", i + 1), line);
            }
            r.verdict = match src {
                Source::Entry(e) => Verdict::of(e == ev.entry),
                _ => Verdict::Inconclusive,
            };
        }
        Err(e) => {
            r.field("error", &e);
            r.verdict = match e {
                AnalysisError::Oracle(_) => Verdict::Fail,
                _ => Verdict::Inconclusive,
            };
        }
    }
    r
}

/// Underlying order suggested by a finite sample alone.
pub fn guess_reduct(s: &FinStruct) -> Option<String> {
    let pts = s.points();
    let first = pts.first()?;
    if let Some(p) = pts.iter().find(|p| p.pos.is_infinite()) {
        let side = if p.pos == ExtPos::PosInf { EndSide::PosInf } else { EndSide::NegInf };
        return Some(format!("iii.{}.{}", if side == EndSide::PosInf { "posInf" } else { "negInf" }, p.color));
    }
    if let Some(p) = pts.iter().find(|p| matches!(p.pos, ExtPos::Pair(_, obg_core::order::Slot::First))) {
        return Some(format!("v.{}{}", p.color.letter(), p.color.other().letter()));
    }
    if pts.iter().all(|p| p.color == first.color) {
        return Some(format!("ii.{}", first.color));
    }
    let split = pts.iter().position(|p| p.color != first.color).unwrap_or(pts.len());
    if pts[split..].iter().all(|p| p.color != first.color) {
        let block = if first.color == Color::Red { "rb" } else { "br" };
        return Some(format!("iv.{block}"));
    }
    Some("vi".to_string())
}

/// Reduct-level guess from a sample file. A finite sample cannot show density,
/// so the verdict is always inconclusive.
pub fn classify_file(text: &str) -> Result<Report, CliError> {
    let s = parse(text).map_err(|e| CliError::Usage(format!("{}: {e}", e.code())))?;
    let mut r = Report::new();
    r.field("mode", "evidence-only").field("points", s.len()).field("edges", s.edge_count());
    match guess_reduct(&s) {
        Some(g) => {
            r.field("reduct", g.split('.').next().unwrap_or("")).field("underlying", g);
        }
        None => {
            r.field("reduct", "unknown");
        }
    }
    r.field("entry", "unknown");
    r.verdict = Verdict::Inconclusive;
    Ok(r)
}

/// Back-and-forth comparison. `expect` is whether the two should be told
/// apart; it defaults to whether they are different catalog entries.
pub fn distinguish(a: Source, b: Source, depth: usize, seed: u64, budget: u64, expect: Option<bool>) -> Report {
    let (mut x, mut y) = (a.oracle(seed), b.oracle(seed));
    let mut r = Report::new();
    r.field("left", a).field("right", b).field("depth", depth).field("seed", seed);
    let expect = expect.unwrap_or(a != b);
    match back_and_forth(&mut x, &mut y, depth, seed, budget) {
        Err(e) => {
            r.field("error", e);
            r.verdict = Verdict::Inconclusive;
        }
        Ok(res) => {
            r.field("calls", res.calls);
            match &res.outcome {
                BnfOutcome::Indistinguishable { depth } => {
                    r.field("outcome", "indistinguishable").field("rounds", depth);
                    r.verdict = Verdict::of(!expect);
                }
                BnfOutcome::Distinguished { depth, challenge } => {
                    let map: Vec<String> = challenge.pairs.iter().map(|(p, q)| format!("{p}->{q}")).collect();
                    r.field("outcome", "distinguished")
                        .field("at_depth", depth)
                        .field("map", if map.is_empty() { "(empty)".to_string() } else { map.join(" ") })
                        .field("realized_on", format!("{:?}", challenge.realized_on).to_lowercase())
                        .field("left_spec", &challenge.spec_a)
                        .field("right_spec", &challenge.spec_b)
                        .field("verified", verify_distinguished(&x, &y, challenge));
                    r.block("configuration left", serialize(&challenge.config_a));
                    r.block("configuration right", serialize(&challenge.config_b));
                    r.verdict = Verdict::of(expect);
                }
            }
        }
    }
    r
}

fn show_counterexample(c: &Counterexample) -> Vec<(String, String)> {
    match c {
        Counterexample::Hereditary { member, sub } => {
            vec![("member".into(), serialize(member)), ("substructure outside the class".into(), serialize(sub))]
        }
        Counterexample::Joint { b, c } => vec![("B".into(), serialize(b)), ("C".into(), serialize(c))],
        Counterexample::Amalgam { a, b, c, into_c } => {
            let map: Vec<String> = into_c.iter().map(|(x, y)| format!("{x}->{y}")).collect();
            vec![
                ("A".into(), serialize(a)),
                ("B".into(), serialize(b)),
                (format!("C, A embedded by {}", map.join(" ")), serialize(c)),
            ]
        }
    }
}

pub fn fraisse(class: ClassDescriptor, properties: &[Property], max_size: usize) -> Report {
    let mut r = Report::new();
    r.field("class", class.name())
        .field("max_size", max_size)
        .field("scope", format!("every member up to {max_size} points; evidence, not a proof"));
    let mut verdict = Verdict::Pass;
    for &p in properties {
        match check_property(class, p, max_size) {
            Err(e) => {
                r.field(p.name(), format!("error ({e})"));
                verdict = Verdict::Inconclusive;
            }
            Ok(rep) => {
                let mut detail = format!("{} ({} instances", if rep.pass { "pass" } else { "fail" }, rep.checked);
                if p == Property::Ap {
                    detail.push_str(&format!(", {} by identifying points", rep.by_identification));
                }
                detail.push(')');
                r.field(p.name(), detail);
                if !rep.pass && verdict == Verdict::Pass {
                    verdict = Verdict::Fail;
                }
                if let Some(c) = &rep.counterexample {
                    for (title, body) in show_counterexample(c) {
                        r.block(format!("{} {title}", p.name()), body);
                    }
                }
            }
        }
    }
    r.verdict = verdict;
    r
}
