//! Induced, colour-preserving subgraph embeddings.

use serde::{Deserialize, Serialize};

use crate::bits::{bit, ones};
use crate::graph::HoffmanGraph;

/// Injective map from pattern vertices to host vertices preserving colour,
/// adjacency and non-adjacency. `map[p]` is the host vertex for `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    pub fn identity(n: usize) -> Self {
        Embedding { map: (0..n).collect() }
    }

    /// Checks the embedding conditions against the two graphs.
    pub fn is_valid(&self, pattern: &HoffmanGraph, host: &HoffmanGraph) -> bool {
        if self.map.len() != pattern.order() {
            return false;
        }
        let mut used = 0u64;
        for (p, &h) in self.map.iter().enumerate() {
            if h >= host.order() || used & bit(h) != 0 || pattern.is_slim(p) != host.is_slim(h) {
                return false;
            }
            used |= bit(h);
        }
        for p in 0..pattern.order() {
            for q in p + 1..pattern.order() {
                if pattern.adjacent(p, q) != host.adjacent(self.map[p], self.map[q]) {
                    return false;
                }
            }
        }
        true
    }

    /// Host vertex set covered by the image.
    pub fn image(&self) -> u64 {
        self.map.iter().fold(0, |m, &h| m | bit(h))
    }
}

/// Finds an induced colour-preserving embedding of `pattern` into `host`.
pub fn find_embedding(pattern: &HoffmanGraph, host: &HoffmanGraph) -> Option<Embedding> {
    let mut m = Matcher::new(pattern, host)?;
    if m.extend(0) {
        Some(Embedding { map: m.map })
    } else {
        None
    }
}

pub fn contains_induced(host: &HoffmanGraph, pattern: &HoffmanGraph) -> bool {
    find_embedding(pattern, host).is_some()
}

struct Matcher<'a> {
    pattern: &'a HoffmanGraph,
    host: &'a HoffmanGraph,
    order: Vec<usize>,
    domain: Vec<u64>,
    map: Vec<usize>,
    used: u64,
}

impl<'a> Matcher<'a> {
    fn new(pattern: &'a HoffmanGraph, host: &'a HoffmanGraph) -> Option<Self> {
        if pattern.slim_count() > host.slim_count() || pattern.fat_count() > host.fat_count() {
            return None;
        }
        let np = pattern.order();
        let mut domain = vec![0u64; np];
        for p in 0..np {
            let colour = if pattern.is_slim(p) { host.slim_mask() } else { host.fat_mask() };
            let dp = pattern.degree(p);
            let ds = (pattern.row(p) & pattern.slim_mask()).count_ones();
            let df = (pattern.row(p) & pattern.fat_mask()).count_ones();
            domain[p] = ones(colour)
                .filter(|&h| {
                    host.degree(h) >= dp
                        && host.slim_neighbours(h).count_ones() >= ds
                        && host.fat_neighbours(h).count_ones() >= df
                })
                .fold(0, |m, h| m | bit(h));
            if domain[p] == 0 {
                return None;
            }
        }
        // connected-first order: most constrained start, then grow by
        // neighbours already placed
        let mut order = Vec::with_capacity(np);
        let mut placed = 0u64;
        while order.len() < np {
            let next = (0..np)
                .filter(|&p| placed & bit(p) == 0)
                .max_by_key(|&p| {
                    (
                        (pattern.row(p) & placed).count_ones(),
                        pattern.degree(p),
                        std::cmp::Reverse(domain[p].count_ones()),
                        std::cmp::Reverse(p),
                    )
                })
                .unwrap();
            order.push(next);
            placed |= bit(next);
        }
        Some(Matcher { pattern, host, order, domain, map: vec![usize::MAX; np], used: 0 })
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let p = self.order[depth];
        let mut cand = self.domain[p] & !self.used;
        for &q in &self.order[..depth] {
            let hq = self.map[q];
            if self.pattern.adjacent(p, q) {
                cand &= self.host.row(hq);
            } else {
                cand &= !self.host.row(hq);
            }
            if cand == 0 {
                return false;
            }
        }
        for h in ones(cand) {
            self.map[p] = h;
            self.used |= bit(h);
            if self.extend(depth + 1) {
                return true;
            }
            self.used &= !bit(h);
        }
        self.map[p] = usize::MAX;
        false
    }
}
