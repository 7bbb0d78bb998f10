//! The Hoffman graph data model.
//!
//! A Hoffman graph is a simple graph whose vertices are labelled slim or fat.
//! Fat vertices are pairwise non-adjacent and each one has at least one slim
//! neighbour. Slim vertices are stored first (`0..slim_count`), fat vertices
//! after them, so every slim-only restriction is a contiguous low mask.
//!
//! Adjacency is kept as one `u64` row per vertex, which caps the order at 64.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{bit, count, low_mask, ones};

pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("fat vertices {0} and {1} are adjacent")]
    FatFatEdge(usize, usize),
    #[error("fat vertex {0} has no slim neighbour")]
    IsolatedFat(usize),
    #[error("vertex index {index} out of range for a graph of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("{0} vertices exceed the supported maximum of {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("vertex {0} is not slim")]
    NotSlim(usize),
    #[error("graph is not connected")]
    NotConnected,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A two-coloured simple graph satisfying the Hoffman conditions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HoffmanGraph {
    slim: usize,
    fat: usize,
    adj: Vec<u64>,
}

impl HoffmanGraph {
    /// Builds a Hoffman graph from an edge list, validating both Hoffman
    /// conditions.
    pub fn build(
        slim_count: usize,
        fat_count: usize,
        edges: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        let n = slim_count + fat_count;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::IndexOutOfRange { index: w, order: n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u] |= bit(v);
            adj[v] |= bit(u);
        }
        Self::from_rows(slim_count, fat_count, adj)
    }

    /// An ordinary graph, i.e. a Hoffman graph without fat vertices.
    pub fn slim(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::build(n, 0, edges)
    }

    /// The empty graph.
    pub fn empty() -> Self {
        HoffmanGraph { slim: 0, fat: 0, adj: Vec::new() }
    }

    /// Builds from symmetric adjacency rows and validates.
    pub fn from_rows(slim_count: usize, fat_count: usize, adj: Vec<u64>) -> Result<Self, GraphError> {
        let n = slim_count + fat_count;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        if adj.len() != n {
            return Err(GraphError::IndexOutOfRange { index: adj.len(), order: n });
        }
        let all = low_mask(n);
        for (v, &row) in adj.iter().enumerate() {
            if row & !all != 0 {
                let index = (row & !all).trailing_zeros() as usize;
                return Err(GraphError::IndexOutOfRange { index, order: n });
            }
            if row & bit(v) != 0 {
                return Err(GraphError::SelfLoop(v));
            }
            for u in ones(row) {
                if adj[u] & bit(v) == 0 {
                    return Err(GraphError::Parse {
                        line: 0,
                        msg: format!("asymmetric adjacency between {v} and {u}"),
                    });
                }
            }
        }
        let g = HoffmanGraph { slim: slim_count, fat: fat_count, adj };
        g.check_hoffman()?;
        Ok(g)
    }

    /// Internal constructor for rows already known to be valid.
    pub(crate) fn from_rows_unchecked(slim: usize, fat: usize, adj: Vec<u64>) -> Self {
        debug_assert!(HoffmanGraph { slim, fat, adj: adj.clone() }.check_hoffman().is_ok());
        HoffmanGraph { slim, fat, adj }
    }

    fn check_hoffman(&self) -> Result<(), GraphError> {
        let slim_mask = self.slim_mask();
        for f in self.fat_vertices() {
            let row = self.adj[f];
            if row & !slim_mask != 0 {
                let other = (row & !slim_mask).trailing_zeros() as usize;
                return Err(GraphError::FatFatEdge(f.min(other), f.max(other)));
            }
            if row == 0 {
                return Err(GraphError::IsolatedFat(f));
            }
        }
        Ok(())
    }

    #[inline]
    pub fn slim_count(&self) -> usize {
        self.slim
    }

    #[inline]
    pub fn fat_count(&self) -> usize {
        self.fat
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.slim + self.fat
    }

    pub fn is_empty(&self) -> bool {
        self.order() == 0
    }

    /// True when there are no fat vertices.
    pub fn is_slim_graph(&self) -> bool {
        self.fat == 0
    }

    #[inline]
    pub fn is_slim(&self, v: usize) -> bool {
        v < self.slim
    }

    #[inline]
    pub fn slim_mask(&self) -> u64 {
        low_mask(self.slim)
    }

    #[inline]
    pub fn fat_mask(&self) -> u64 {
        low_mask(self.order()) & !self.slim_mask()
    }

    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.order())
    }

    pub fn fat_vertices(&self) -> std::ops::Range<usize> {
        self.slim..self.order()
    }

    #[inline]
    pub fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn slim_neighbours(&self, v: usize) -> u64 {
        self.adj[v] & self.slim_mask()
    }

    #[inline]
    pub fn fat_neighbours(&self, v: usize) -> u64 {
        self.adj[v] & self.fat_mask()
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        count(self.adj[v])
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| count(*r)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order() {
            for v in ones(self.adj[u] & !low_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    fn check_slim_set(&self, set: u64) -> Result<(), GraphError> {
        let stray = set & !self.slim_mask();
        if stray == 0 {
            return Ok(());
        }
        let index = stray.trailing_zeros() as usize;
        if index >= self.order() {
            Err(GraphError::IndexOutOfRange { index, order: self.order() })
        } else {
            Err(GraphError::NotSlim(index))
        }
    }

    /// Induced subgraph on `set`, keeping relative vertex order. Fails if a
    /// retained fat vertex would lose all its slim neighbours.
    pub fn induced(&self, set: u64) -> Result<HoffmanGraph, GraphError> {
        if set & !self.vertex_mask() != 0 {
            let index = (set & !self.vertex_mask()).trailing_zeros() as usize;
            return Err(GraphError::IndexOutOfRange { index, order: self.order() });
        }
        let keep: Vec<usize> = ones(set).collect();
        let mut pos = [usize::MAX; MAX_VERTICES];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| ones(self.adj[v] & set).fold(0u64, |m, u| m | bit(pos[u])))
            .collect();
        let slim = count(set & self.slim_mask());
        HoffmanGraph::from_rows(slim, keep.len() - slim, adj)
    }

    /// Vertex mask of `⟪S⟫`: `S` plus every fat neighbour of `S`.
    pub fn slim_closure_mask(&self, slim_set: u64) -> u64 {
        ones(slim_set).fold(slim_set, |m, v| m | self.fat_neighbours(v))
    }

    /// `⟪S⟫_H`: the subgraph induced on `S` together with all fat neighbours
    /// of `S`.
    pub fn induced_slim_closure(&self, slim_set: u64) -> Result<HoffmanGraph, GraphError> {
        self.check_slim_set(slim_set)?;
        self.induced(self.slim_closure_mask(slim_set))
    }

    /// `H − S = ⟪V_s(H) \ S⟫_H`. Fat vertices left without slim neighbours
    /// are dropped.
    pub fn delete_slim(&self, slim_set: u64) -> Result<HoffmanGraph, GraphError> {
        self.check_slim_set(slim_set)?;
        self.induced_slim_closure(self.slim_mask() & !slim_set)
    }

    /// The slim subgraph: the ordinary graph induced on the slim vertices.
    pub fn slim_subgraph(&self) -> HoffmanGraph {
        let m = self.slim_mask();
        let adj = self.adj[..self.slim].iter().map(|r| r & m).collect();
        HoffmanGraph { slim: self.slim, fat: 0, adj }
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`. The permutation must
    /// map slim vertices onto slim positions.
    pub fn permuted(&self, perm: &[usize]) -> HoffmanGraph {
        assert_eq!(perm.len(), self.order());
        let mut adj = vec![0u64; self.order()];
        for v in 0..self.order() {
            assert_eq!(perm[v] < self.slim, v < self.slim, "permutation must preserve colours");
            adj[perm[v]] = ones(self.adj[v]).fold(0, |m, u| m | bit(perm[u]));
        }
        HoffmanGraph { slim: self.slim, fat: self.fat, adj }
    }

    /// Disjoint union; slim vertices of `self` come first, then those of
    /// `other`, then fat vertices in the same order.
    pub fn disjoint_union(&self, other: &HoffmanGraph) -> Result<HoffmanGraph, GraphError> {
        let slim = self.slim + other.slim;
        let fat = self.fat + other.fat;
        if slim + fat > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(slim + fat));
        }
        let map_a = |v: usize| if v < self.slim { v } else { slim + (v - self.slim) };
        let map_b = |v: usize| {
            if v < other.slim {
                self.slim + v
            } else {
                slim + self.fat + (v - other.slim)
            }
        };
        let mut adj = vec![0u64; slim + fat];
        for v in 0..self.order() {
            adj[map_a(v)] = ones(self.adj[v]).fold(0, |m, u| m | bit(map_a(u)));
        }
        for v in 0..other.order() {
            adj[map_b(v)] = ones(other.adj[v]).fold(0, |m, u| m | bit(map_b(u)));
        }
        Ok(HoffmanGraph { slim, fat, adj })
    }

    /// Vertex masks of the connected components of the underlying uncoloured
    /// graph, ordered by least vertex.
    pub fn connected_components(&self) -> Vec<u64> {
        components_within(&self.adj, self.vertex_mask())
    }

    pub fn is_connected(&self) -> bool {
        self.order() == 0 || component_of(&self.adj, 0, self.vertex_mask()) == self.vertex_mask()
    }

    /// A non-adjacent pair `{x, y}` whose removal keeps a connected slim graph
    /// connected. Returns `None` for complete graphs and cycles, where no
    /// such pair exists.
    pub fn find_deletable_nonadjacent_pair(&self) -> Result<Option<(usize, usize)>, GraphError> {
        if !self.is_slim_graph() {
            return Err(GraphError::NotSlim(self.slim));
        }
        if !self.is_connected() {
            return Err(GraphError::NotConnected);
        }
        let all = self.vertex_mask();
        for x in 0..self.slim {
            for y in ones(all & !self.adj[x] & !low_mask(x + 1)) {
                let rest = all & !bit(x) & !bit(y);
                if rest == 0 || component_of(&self.adj, rest.trailing_zeros() as usize, rest) == rest {
                    return Ok(Some((x, y)));
                }
            }
        }
        Ok(None)
    }

    /// Text serialisation: `s=<slim> f=<fat>` followed by one `u v` line per
    /// edge (`u < v`, lexicographic order).
    pub fn to_text(&self) -> String {
        let mut out = format!("s={} f={}\n", self.slim, self.fat);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<HoffmanGraph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or(GraphError::Parse { line: 1, msg: "missing header".into() })?;
        let bad_header = || GraphError::Parse { line: hl, msg: format!("bad header {header:?}") };
        let mut parts = header.split_whitespace();
        let slim = parts
            .next()
            .and_then(|p| p.strip_prefix("s="))
            .and_then(|p| p.parse::<usize>().ok())
            .ok_or_else(bad_header)?;
        let fat = parts
            .next()
            .and_then(|p| p.strip_prefix("f="))
            .and_then(|p| p.parse::<usize>().ok())
            .ok_or_else(bad_header)?;
        if parts.next().is_some() {
            return Err(bad_header());
        }
        let mut edges = Vec::new();
        for (ln, line) in lines {
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|e| GraphError::Parse { line: ln, msg: e.to_string() })?;
            match nums.as_slice() {
                [u, v] => edges.push((*u, *v)),
                _ => return Err(GraphError::Parse { line: ln, msg: format!("expected `u v`, got {line:?}") }),
            }
        }
        HoffmanGraph::build(slim, fat, &edges)
    }

    /// Graphviz rendering: slim vertices as small filled dots, fat vertices
    /// as large filled dots.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n  node [label=\"\", style=filled, color=black, shape=circle];\n");
        for v in 0..self.order() {
            let width = if self.is_slim(v) { "0.12" } else { "0.35" };
            let tag = if self.is_slim(v) { 's' } else { 'f' };
            out.push_str(&format!("  {v} [width={width}, tooltip=\"{tag}{v}\"];\n"));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Component containing `start`, restricted to `within`.
pub(crate) fn component_of(adj: &[u64], start: usize, within: u64) -> u64 {
    let mut seen = bit(start);
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in ones(frontier) {
            next |= adj[v];
        }
        next &= within & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

pub(crate) fn components_within(adj: &[u64], within: u64) -> Vec<u64> {
    let mut rest = within;
    let mut out = Vec::new();
    while rest != 0 {
        let c = component_of(adj, rest.trailing_zeros() as usize, rest);
        out.push(c);
        rest &= !c;
    }
    out
}

impl fmt::Debug for HoffmanGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HoffmanGraph(s={}, f={}, edges={:?})", self.slim, self.fat, self.edges())
    }
}

impl fmt::Display for HoffmanGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for HoffmanGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        HoffmanGraph::from_text(s)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    slim: usize,
    fat: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for HoffmanGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphRepr { slim: self.slim, fat: self.fat, edges: self.edges() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HoffmanGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = GraphRepr::deserialize(d)?;
        HoffmanGraph::build(r.slim, r.fat, &r.edges).map_err(serde::de::Error::custom)
    }
}

/// Common named slim graphs.
pub mod named {
    use super::HoffmanGraph;

    pub fn complete(n: usize) -> HoffmanGraph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        HoffmanGraph::slim(n, &e).expect("complete graph")
    }

    pub fn cycle(n: usize) -> HoffmanGraph {
        assert!(n >= 3);
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        HoffmanGraph::slim(n, &e).expect("cycle")
    }

    pub fn path(n: usize) -> HoffmanGraph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        HoffmanGraph::slim(n, &e).expect("path")
    }

    pub fn edgeless(n: usize) -> HoffmanGraph {
        HoffmanGraph::slim(n, &[]).expect("edgeless")
    }
}
