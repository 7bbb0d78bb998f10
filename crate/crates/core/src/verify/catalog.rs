//! The catalog of minimal forbidden subgraphs: connected slim graphs that
//! are not `{H2, H3, H5}`-line graphs while every one-vertex-deleted
//! subgraph is.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::bits::bit;
use crate::canon::{canonical_form, canonical_graph, CanonicalForm};
use crate::embed::contains_induced;
use crate::enumeration::{connected_slim_graphs, for_each_connected, parse_graph6, write_graph6, Graph6Error};
use crate::graph::HoffmanGraph;
use crate::recognition::{is_h_line, is_h_line_graph, StrictCover};
use crate::spectral::{certify, EigenInterval, Threshold};

/// Largest order for which members exist; beyond it the catalog is known to
/// be empty.
pub const LARGEST_MEMBER_ORDER: usize = 9;
pub const MAX_CATALOG_ORDER: usize = 10;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("catalog covers orders up to {n_max}, graph has {order} vertices")]
    IncompleteCatalog { n_max: usize, order: usize },
    #[error("catalog order bound must be between 1 and {MAX_CATALOG_ORDER}, got {0}")]
    BadOrder(usize),
    #[error("input graph is not slim")]
    NotSlim,
    #[error("catalog checksum mismatch: stored {stored}, computed {computed}")]
    ChecksumMismatch { stored: String, computed: String },
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parsing {path}: {msg}")]
    Format { path: String, msg: String },
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub order: usize,
    pub canonical_form: CanonicalForm,
    /// Canonically labelled slim graph.
    pub graph: HoffmanGraph,
    /// A strict cover of the graph minus vertex `v`, for every `v`.
    pub witnesses: Vec<StrictCover>,
    pub eigen: EigenInterval,
    pub threshold: Threshold,
}

impl CatalogEntry {
    pub fn graph6(&self) -> String {
        write_graph6(&self.graph).expect("catalog members are small slim graphs")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MfsCatalog {
    pub n_max: usize,
    /// Sorted by order, then canonical form.
    pub members: Vec<CatalogEntry>,
    pub checksum: String,
    /// Graphs on which the two minimality filters disagreed (expected
    /// empty).
    pub filter_disagreements: Vec<HoffmanGraph>,
}

/// `graph` must be canonically labelled so the witnesses refer to the
/// stored labelling.
fn new_entry(graph: HoffmanGraph, witnesses: Vec<StrictCover>) -> CatalogEntry {
    let (eigen, threshold) = certify(&graph).expect("members are nonempty");
    CatalogEntry { order: graph.order(), canonical_form: canonical_form(&graph), graph, witnesses, eigen, threshold }
}

fn deletion_witnesses(g: &HoffmanGraph) -> Option<Vec<StrictCover>> {
    (0..g.order()).map(|v| is_h_line(&g.delete_slim(bit(v)).expect("slim vertex"))).collect()
}

fn checksum(n_max: usize, members: &[CatalogEntry]) -> String {
    let mut h = Sha256::new();
    h.update(format!("n_max={n_max}\n"));
    for m in members {
        h.update(format!("{} {}\n", m.order, m.canonical_form.to_hex()));
    }
    hex::encode(h.finalize())
}

impl MfsCatalog {
    /// Builds the catalog for orders `1..=n_max`.
    pub fn build(n_max: usize) -> Result<Self, CatalogError> {
        if !(1..=MAX_CATALOG_ORDER).contains(&n_max) {
            return Err(CatalogError::BadOrder(n_max));
        }
        let mut members: Vec<CatalogEntry> = Vec::new();
        let mut disagreements = Vec::new();
        for n in 1..=n_max {
            let smaller: Vec<HoffmanGraph> = members.iter().map(|m| m.graph.clone()).collect();
            let found: Mutex<Vec<CatalogEntry>> = Mutex::new(Vec::new());
            let bad: Mutex<Vec<HoffmanGraph>> = Mutex::new(Vec::new());
            let visit = |g: &HoffmanGraph| {
                if is_h_line_graph(g) {
                    return;
                }
                let cg = canonical_graph(g);
                let by_deletion = deletion_witnesses(&cg);
                let by_embedding = !smaller.iter().any(|m| contains_induced(&cg, m));
                if by_deletion.is_some() != by_embedding {
                    bad.lock().unwrap().push(cg.clone());
                }
                if let Some(w) = by_deletion {
                    found.lock().unwrap().push(new_entry(cg, w));
                }
            };
            if n == MAX_CATALOG_ORDER {
                for_each_connected(n, visit);
            } else {
                connected_slim_graphs(n).graphs.par_iter().for_each(visit);
            }
            let mut level = found.into_inner().unwrap();
            level.sort_by(|a, b| a.canonical_form.cmp(&b.canonical_form));
            members.extend(level);
            let mut b = bad.into_inner().unwrap();
            b.sort_by_key(canonical_form);
            disagreements.extend(b);
        }
        let checksum = checksum(n_max, &members);
        Ok(MfsCatalog { n_max, members, checksum, filter_disagreements: disagreements })
    }

    pub fn counts(&self) -> BTreeMap<usize, usize> {
        let mut c: BTreeMap<usize, usize> = (1..=self.n_max).map(|n| (n, 0)).collect();
        for m in &self.members {
            *c.entry(m.order).or_default() += 1;
        }
        c
    }

    pub fn of_order(&self, n: usize) -> impl Iterator<Item = (usize, &CatalogEntry)> {
        self.members.iter().enumerate().filter(move |(_, m)| m.order == n)
    }

    pub fn index_of(&self, form: &CanonicalForm) -> Option<usize> {
        self.members.iter().position(|m| &m.canonical_form == form)
    }

    /// Indices of members contained in `g` as induced subgraphs.
    pub fn contained_in(&self, g: &HoffmanGraph) -> Vec<usize> {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, m)| m.order <= g.order() && contains_induced(g, &m.graph))
            .map(|(i, _)| i)
            .collect()
    }

    /// True iff no member embeds into `g`, i.e. `g` is an
    /// `{H2, H3, H5}`-line graph. Needs members up to `|g|` (or up to the
    /// largest member order).
    pub fn screen(&self, g: &HoffmanGraph) -> Result<bool, CatalogError> {
        if !g.is_slim_graph() {
            return Err(CatalogError::NotSlim);
        }
        let needed = g.order().min(LARGEST_MEMBER_ORDER);
        if self.n_max < needed {
            return Err(CatalogError::IncompleteCatalog { n_max: self.n_max, order: g.order() });
        }
        Ok(!self.members.iter().any(|m| m.order <= g.order() && contains_induced(g, &m.graph)))
    }

    /// Writes `catalog.json`, `g6/n<k>.g6` and `witness/<index>.json` under
    /// `dir`.
    pub fn save(&self, dir: &Path) -> Result<(), CatalogError> {
        let io = |path: &Path| {
            let p = path.display().to_string();
            move |source| CatalogError::Io { path: p, source }
        };
        fs::create_dir_all(dir.join("g6")).map_err(io(dir))?;
        fs::create_dir_all(dir.join("witness")).map_err(io(dir))?;
        let summary = CatalogFile {
            n_max: self.n_max,
            checksum: self.checksum.clone(),
            counts: self.counts(),
            members: self
                .members
                .iter()
                .enumerate()
                .map(|(i, m)| MemberRecord {
                    index: i,
                    order: m.order,
                    graph6: m.graph6(),
                    canonical_form: m.canonical_form.clone(),
                    threshold: m.threshold,
                    eigen: m.eigen.clone(),
                })
                .collect(),
        };
        let path = dir.join("catalog.json");
        let text = serde_json::to_string_pretty(&summary).expect("catalog serialises");
        fs::write(&path, text + "\n").map_err(io(&path))?;
        for n in 1..=self.n_max {
            let path = dir.join("g6").join(format!("n{n}.g6"));
            let lines: String = self.of_order(n).map(|(_, m)| m.graph6() + "\n").collect();
            fs::write(&path, lines).map_err(io(&path))?;
        }
        for (i, m) in self.members.iter().enumerate() {
            let path = dir.join("witness").join(format!("{i}.json"));
            let text = serde_json::to_string(&m.witnesses).expect("witnesses serialise");
            fs::write(&path, text + "\n").map_err(io(&path))?;
        }
        Ok(())
    }

    /// Reads a catalog written by [`save`](Self::save), re-deriving canonical
    /// forms and checking the stored checksum.
    pub fn load(dir: &Path) -> Result<Self, CatalogError> {
        let read = |path: &Path| {
            fs::read_to_string(path).map_err(|source| CatalogError::Io { path: path.display().to_string(), source })
        };
        let path = dir.join("catalog.json");
        let file: CatalogFile = serde_json::from_str(&read(&path)?)
            .map_err(|e| CatalogError::Format { path: path.display().to_string(), msg: e.to_string() })?;
        let mut members = Vec::with_capacity(file.members.len());
        for rec in &file.members {
            let g = parse_graph6(&rec.graph6)?;
            let wpath = dir.join("witness").join(format!("{}.json", rec.index));
            let witnesses: Vec<StrictCover> = serde_json::from_str(&read(&wpath)?)
                .map_err(|e| CatalogError::Format { path: wpath.display().to_string(), msg: e.to_string() })?;
            members.push(CatalogEntry {
                order: g.order(),
                canonical_form: canonical_form(&g),
                graph: g,
                witnesses,
                eigen: rec.eigen.clone(),
                threshold: rec.threshold,
            });
        }
        let computed = checksum(file.n_max, &members);
        if computed != file.checksum {
            return Err(CatalogError::ChecksumMismatch { stored: file.checksum, computed });
        }
        Ok(MfsCatalog { n_max: file.n_max, members, checksum: computed, filter_disagreements: Vec::new() })
    }
}

#[derive(Serialize, Deserialize)]
struct CatalogFile {
    n_max: usize,
    checksum: String,
    counts: BTreeMap<usize, usize>,
    members: Vec<MemberRecord>,
}

#[derive(Serialize, Deserialize)]
struct MemberRecord {
    index: usize,
    order: usize,
    graph6: String,
    canonical_form: CanonicalForm,
    threshold: Threshold,
    eigen: EigenInterval,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn small_catalog() {
        let c = MfsCatalog::build(6).unwrap();
        assert_eq!(c.counts().get(&5), Some(&2));
        assert_eq!(c.counts().get(&6), Some(&28));
        assert!(c.filter_disagreements.is_empty());
        for m in &c.members {
            assert_eq!(m.witnesses.len(), m.order);
            for (v, w) in m.witnesses.iter().enumerate() {
                assert!(w.is_valid());
                assert_eq!(w.base, m.graph.delete_slim(bit(v)).unwrap());
            }
        }
        assert_eq!(c.checksum, MfsCatalog::build(6).unwrap().checksum);
    }

    #[test]
    fn screening() {
        let c = MfsCatalog::build(6).unwrap();
        assert!(c.screen(&complete(6)).unwrap());
        assert!(c.screen(&cycle(5)).unwrap());
        for m in &c.members {
            assert!(!c.screen(&m.graph).unwrap());
        }
        assert!(matches!(c.screen(&cycle(7)), Err(CatalogError::IncompleteCatalog { .. })));
        assert!(matches!(MfsCatalog::build(0), Err(CatalogError::BadOrder(0))));
    }

    #[test]
    fn save_and_load() {
        let c = MfsCatalog::build(5).unwrap();
        let dir = std::env::temp_dir().join(format!("hoffman-catalog-{}", std::process::id()));
        c.save(&dir).unwrap();
        let back = MfsCatalog::load(&dir).unwrap();
        assert_eq!(back.members, c.members);
        assert_eq!(back.checksum, c.checksum);
        // tampering is detected
        let path = dir.join("catalog.json");
        let text = fs::read_to_string(&path).unwrap().replacen(&c.checksum, &"0".repeat(64), 1);
        fs::write(&path, text).unwrap();
        assert!(matches!(MfsCatalog::load(&dir), Err(CatalogError::ChecksumMismatch { .. })));
        fs::remove_dir_all(&dir).unwrap();
    }
}
