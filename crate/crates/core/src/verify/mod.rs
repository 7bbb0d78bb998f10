//! Reproduction checks: catalog counts, spectral dichotomy, screening by
//! catalog, fat-graph classifications, cover uniqueness and the sum table.

pub mod catalog;
pub mod claims;
pub mod table;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::enumeration::write_graph6;
use crate::graph::HoffmanGraph;

pub use catalog::{CatalogEntry, CatalogError, MfsCatalog};
pub use claims::*;
pub use table::{table_rows, verify_table, verify_table_row, TableRow};

/// Checks selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Claim {
    /// Exactly two connected five-vertex graphs are not line graphs.
    FiveVertex,
    /// Catalog sizes per order.
    CatalogCounts,
    /// Every sum in each table row contains a listed forbidden subgraph.
    SumTable,
    /// Two-slim fat graphs: exactly three classes.
    TwoSlimFat,
    /// Apex-over-part fat graphs: exactly three classes.
    ApexFat,
    /// Single-fat graphs with overlapping parts contain a listed graph.
    SingleFat,
    /// Connected line graphs of a given order have one cover class.
    CoverUniqueness,
    /// One catalog member lies below `−1 − √2`, the rest at or above.
    Eigen,
    /// Screening by catalog agrees with cover search.
    ScreenOracle,
}

impl Claim {
    pub const ALL: [Claim; 9] = [
        Claim::FiveVertex,
        Claim::CatalogCounts,
        Claim::SumTable,
        Claim::TwoSlimFat,
        Claim::ApexFat,
        Claim::SingleFat,
        Claim::CoverUniqueness,
        Claim::Eigen,
        Claim::ScreenOracle,
    ];

    /// Command-line identifier.
    pub fn id(self) -> &'static str {
        match self {
            Claim::FiveVertex => "eq2",
            Claim::CatalogCounts => "prop2.1",
            Claim::SumTable => "table1",
            Claim::TwoSlimFat => "lemma4.10",
            Claim::ApexFat => "lemma4.11",
            Claim::SingleFat => "lemma4.12",
            Claim::CoverUniqueness => "uniqueness",
            Claim::Eigen => "eigen",
            Claim::ScreenOracle => "oracle",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Claim::ALL.into_iter().find(|c| c.id() == s).ok_or_else(|| {
            let ids: Vec<_> = Claim::ALL.iter().map(|c| c.id()).collect();
            format!("unknown claim {s:?}; expected one of {}", ids.join("|"))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Confirmed,
    Refuted,
}

/// A graph attached to a report, in text and (for slim graphs) graph6 form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub graph: String,
    pub graph6: Option<String>,
    pub reason: String,
}

impl Counterexample {
    pub fn new(g: &HoffmanGraph, reason: impl Into<String>) -> Self {
        let graph6 = if g.is_slim_graph() { write_graph6(g).ok() } else { None };
        Counterexample { graph: g.to_text(), graph6, reason: reason.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    pub status: Status,
    pub counts: BTreeMap<String, u64>,
    pub counterexample: Option<Counterexample>,
    pub notes: Vec<String>,
    pub runtime_ms: u64,
}

impl VerificationReport {
    pub(crate) fn new(claim: impl Into<String>) -> Self {
        VerificationReport {
            claim: claim.into(),
            status: Status::Confirmed,
            counts: BTreeMap::new(),
            counterexample: None,
            notes: Vec::new(),
            runtime_ms: 0,
        }
    }

    pub fn confirmed(&self) -> bool {
        self.status == Status::Confirmed
    }

    pub(crate) fn count(&mut self, key: impl Into<String>, value: usize) {
        self.counts.insert(key.into(), value as u64);
    }

    pub(crate) fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    /// Marks the report refuted. Keeps the first counterexample.
    pub(crate) fn refute(&mut self, cx: Option<Counterexample>, msg: impl Into<String>) {
        self.status = Status::Refuted;
        self.notes.push(msg.into());
        if self.counterexample.is_none() {
            self.counterexample = cx;
        }
    }

    pub(crate) fn timed<F: FnOnce(&mut Self)>(claim: impl Into<String>, f: F) -> Self {
        let start = std::time::Instant::now();
        let mut r = Self::new(claim);
        f(&mut r);
        r.runtime_ms = start.elapsed().as_millis() as u64;
        r
    }

    /// One line: claim, status and counts.
    pub fn summary(&self) -> String {
        let status = match self.status {
            Status::Confirmed => "confirmed",
            Status::Refuted => "REFUTED",
        };
        let counts: Vec<String> = self.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}: {} [{}]", self.claim, status, counts.join(", "))
    }
}
