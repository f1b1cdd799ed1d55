//! Probing algorithms: classification of an oracle, homogeneity testing by
//! one-point extensions, and back-and-forth comparison of two oracles.

mod bnf;
mod density;
mod edge;
mod homogeneity;
mod reduct;

use std::fmt;

use crate::oracle::{OracleError, StructureOracle, WitnessSpec};
use crate::order::{Color, ExtPos, PointId};

pub use bnf::{back_and_forth, verify_distinguished, BnfOutcome, BnfResult, Challenge, Side, DEFAULT_BNF_BUDGET};
pub use density::{check_reduct_contract, witness_density, DensityReport};
pub use edge::{edge_classify, EdgeVerdict};
pub use homogeneity::{
    exhaustive_extension_search, one_point_extension_test, verify_counterexample, ExtensionCounterexample,
    HomogeneityReport,
};
pub use reduct::{reduct_classify, ReductVerdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

/// Default number of oracle calls a classification may spend.
pub const DEFAULT_CLASSIFY_BUDGET: u64 = 200;

/// Both classification stages in sequence.
pub fn classify(o: &mut StructureOracle, budget: u64) -> Result<(ReductVerdict, EdgeVerdict), AnalysisError> {
    let r = reduct_classify(o, budget)?;
    let e = edge_classify(o, &r, budget)?;
    Ok((r, e))
}

/// Oracle wrapper that logs every query and enforces a call budget.
pub(crate) struct Prober<'a> {
    pub o: &'a mut StructureOracle,
    start: u64,
    budget: u64,
    pub log: Vec<String>,
}

fn show(o: &StructureOracle, r: Option<PointId>) -> String {
    match r {
        Some(id) => format!("{id}@{}", o.point(id).map(|p| p.pos.to_string()).unwrap_or_default()),
        None => "none".to_string(),
    }
}

fn bound(b: &Option<ExtPos>) -> String {
    b.as_ref().map_or_else(|| "-".to_string(), |p| p.to_string())
}

impl<'a> Prober<'a> {
    pub fn new(o: &'a mut StructureOracle, budget: u64) -> Self {
        let start = o.calls();
        Prober { o, start, budget, log: Vec::new() }
    }

    fn charge(&self) -> Result<(), AnalysisError> {
        if self.o.calls() - self.start >= self.budget {
            return Err(AnalysisError::BudgetExceeded(format!("{} oracle calls", self.budget)));
        }
        Ok(())
    }

    pub fn between(
        &mut self,
        lo: Option<ExtPos>,
        hi: Option<ExtPos>,
        c: Color,
    ) -> Result<Option<PointId>, AnalysisError> {
        self.charge()?;
        let line = format!("exists_between({}, {}, {c})", bound(&lo), bound(&hi));
        let r = self.o.exists_between(lo, hi, c)?;
        self.log.push(format!("{line} = {}", show(self.o, r)));
        Ok(r)
    }

    pub fn witness(&mut self, w: &WitnessSpec) -> Result<Option<PointId>, AnalysisError> {
        self.charge()?;
        let r = self.o.realize_witness(w)?;
        self.log.push(format!("realize_witness({w}) = {}", show(self.o, r)));
        Ok(r)
    }

    pub fn adjacent(&mut self, a: PointId, b: PointId) -> Result<bool, AnalysisError> {
        self.charge()?;
        let r = self.o.adjacent(a, b)?;
        self.log.push(format!("adjacent({a}, {b}) = {r}"));
        Ok(r)
    }

    pub fn pos(&self, id: PointId) -> ExtPos {
        self.o.point(id).expect("returned by the oracle").pos.clone()
    }

    pub fn spent(&self) -> u64 {
        self.o.calls() - self.start
    }
}

/// Evidence lines, one query each.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Evidence(pub Vec<String>);

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.0 {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}
