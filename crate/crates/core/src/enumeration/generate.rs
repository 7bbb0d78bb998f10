//! Isomorph-free generation of slim graphs by canonical augmentation.
//!
//! Children of a parent on `n − 1` vertices are formed by adding vertex
//! `n − 1` with every admissible neighbourhood. A child is kept only when
//! the new vertex lies in the automorphism orbit of the child's canonical
//! deletion vertex; isomorphic children of one parent are then merged by
//! canonical form. Every isomorphism class is produced exactly once.
//!
//! For connected generation the canonical deletion vertex is chosen among
//! non-cut vertices, which every connected graph has.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::bits::{bit, low_mask, ones};
use crate::canon::{canonical_labeling, CanonicalForm};
use crate::graph::{component_of, HoffmanGraph};

/// An ordered sequence of pairwise non-isomorphic graphs.
#[derive(Clone, Debug, Default)]
pub struct GraphStream {
    pub graphs: Vec<HoffmanGraph>,
}

impl GraphStream {
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, HoffmanGraph> {
        self.graphs.iter()
    }
}

impl IntoIterator for GraphStream {
    type Item = HoffmanGraph;
    type IntoIter = std::vec::IntoIter<HoffmanGraph>;

    fn into_iter(self) -> Self::IntoIter {
        self.graphs.into_iter()
    }
}

impl FromIterator<HoffmanGraph> for GraphStream {
    fn from_iter<T: IntoIterator<Item = HoffmanGraph>>(iter: T) -> Self {
        GraphStream { graphs: iter.into_iter().collect() }
    }
}

pub const MAX_GENERATED_ORDER: usize = 10;

/// One representative of every isomorphism class of connected graphs on
/// `n` vertices.
pub fn connected_slim_graphs(n: usize) -> GraphStream {
    generate(n, true)
}

/// One representative of every isomorphism class of graphs on `n`
/// vertices.
pub fn all_slim_graphs(n: usize) -> GraphStream {
    generate(n, false)
}

/// Calls `f` on one representative of every isomorphism class of connected
/// graphs on `n` vertices without holding the last level in memory. Calls
/// come from worker threads in no particular order.
pub fn for_each_connected<F: Fn(&HoffmanGraph) + Sync>(n: usize, f: F) {
    assert!((1..=MAX_GENERATED_ORDER).contains(&n), "generation is limited to 1..={MAX_GENERATED_ORDER} vertices");
    if n == 1 {
        f(&HoffmanGraph::slim(1, &[]).unwrap());
        return;
    }
    let parents = generate(n - 1, true);
    parents.graphs.par_iter().for_each(|p| {
        for c in children(p, true) {
            f(&c);
        }
    });
}

fn generate(n: usize, connected: bool) -> GraphStream {
    assert!(n <= MAX_GENERATED_ORDER, "generation is limited to {MAX_GENERATED_ORDER} vertices");
    if n == 0 {
        return if connected { GraphStream::default() } else { [HoffmanGraph::empty()].into_iter().collect() };
    }
    let mut level: Vec<HoffmanGraph> = vec![HoffmanGraph::slim(1, &[]).unwrap()];
    for _ in 2..=n {
        level = level
            .par_iter()
            .map(|p| children(p, connected))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect();
    }
    GraphStream { graphs: level }
}

fn children(parent: &HoffmanGraph, connected: bool) -> Vec<HoffmanGraph> {
    let m = parent.order();
    let new = m;
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    let mut out = Vec::new();
    let start = if connected { 1u64 } else { 0 };
    for nb in start..(1u64 << m) {
        let mut adj: Vec<u64> = parent.rows().to_vec();
        for u in ones(nb) {
            adj[u] |= bit(new);
        }
        adj.push(nb);
        let child = HoffmanGraph::from_rows_unchecked(m + 1, 0, adj);
        if let Some(form) = accept(&child, new, connected) {
            if seen.insert(form) {
                out.push(child);
            }
        }
    }
    out
}

/// Returns the child's canonical form when `new` is in the orbit of the
/// canonical deletion vertex.
fn accept(child: &HoffmanGraph, new: usize, connected: bool) -> Option<CanonicalForm> {
    let n = child.order();
    let lab = canonical_labeling(child, None);
    let all = low_mask(n);
    // candidate deletion vertices, scanned from the last canonical position
    let deletion = lab
        .order
        .iter()
        .rev()
        .copied()
        .find(|&v| !connected || is_non_cut(child, v, all))
        .expect("connected graphs have a non-cut vertex");
    if deletion == new {
        return Some(lab.form);
    }
    // quick invariant filters before the orbit test
    if child.degree(deletion) != child.degree(new) {
        return None;
    }
    let colour = |v: usize| {
        let mut c = vec![0u32; n];
        c[v] = 1;
        c
    };
    let a = canonical_labeling(child, Some(&colour(deletion))).form;
    let b = canonical_labeling(child, Some(&colour(new))).form;
    (a == b).then_some(lab.form)
}

fn is_non_cut(g: &HoffmanGraph, v: usize, all: u64) -> bool {
    let rest = all & !bit(v);
    rest == 0 || component_of(g.rows(), rest.trailing_zeros() as usize, rest) == rest
}
