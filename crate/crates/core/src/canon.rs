//! Canonical labelling of Hoffman graphs.
//!
//! Colour refinement on an ordered partition (slim cell before fat cell),
//! followed by an individualise-and-refine search tree. The leaf with the
//! lexicographically largest relabelled adjacency is the canonical one.
//! Subtrees are pruned with twin transpositions and with automorphisms
//! discovered at equal leaves.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bits::{bit, count, ones};
use crate::graph::HoffmanGraph;

/// Opaque isomorphism invariant: equal iff the graphs are isomorphic by a
/// map sending slim to slim and fat to fat.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self, hex::FromHexError> {
        hex::decode(s).map(CanonicalForm)
    }

    /// Slim vertex count recorded in the form.
    pub fn slim_count(&self) -> usize {
        self.0[0] as usize
    }

    pub fn fat_count(&self) -> usize {
        self.0[1] as usize
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for CanonicalForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CanonicalForm::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

/// Result of canonical labelling.
#[derive(Clone, Debug)]
pub struct Labeling {
    /// `order[i]` is the vertex placed at canonical position `i`.
    pub order: Vec<usize>,
    pub form: CanonicalForm,
}

impl Labeling {
    /// Inverse of `order`: canonical position of each vertex.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

pub fn canonical_form(g: &HoffmanGraph) -> CanonicalForm {
    canonical_labeling(g, None).form
}

/// The canonical representative of the isomorphism class of `g`.
pub fn canonical_graph(g: &HoffmanGraph) -> HoffmanGraph {
    let lab = canonical_labeling(g, None);
    g.permuted(&lab.positions())
}

/// Canonical labelling, optionally refining the slim/fat colouring by an
/// extra vertex colouring. With extra colours the form also records the
/// colour class sizes, so forms are comparable only between colourings
/// using the same palette.
pub fn canonical_labeling(g: &HoffmanGraph, colors: Option<&[u32]>) -> Labeling {
    let n = g.order();
    let mut keys: Vec<(bool, u32)> = (0..n)
        .map(|v| (!g.is_slim(v), colors.map_or(0, |c| c[v])))
        .collect();
    let mut distinct = keys.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let cells: Vec<u64> = distinct
        .iter()
        .map(|k| {
            keys.iter()
                .enumerate()
                .filter(|(_, kk)| *kk == k)
                .fold(0u64, |m, (v, _)| m | bit(v))
        })
        .collect();
    keys.clear();

    let mut search = Search {
        adj: g.rows(),
        best: None,
        best_order: Vec::new(),
        automorphisms: Vec::new(),
    };
    let mut prefix = Vec::new();
    search.descend(cells.clone(), &mut prefix);
    let (rows, order) = (search.best.unwrap_or_default(), search.best_order);

    let mut bytes = Vec::with_capacity(2 + n * n.div_ceil(8));
    bytes.push(g.slim_count() as u8);
    bytes.push(g.fat_count() as u8);
    let width = n.div_ceil(8);
    for r in &rows {
        bytes.extend_from_slice(&r.to_le_bytes()[..width]);
    }
    if colors.is_some() {
        for c in &cells {
            bytes.push(count(*c) as u8);
        }
    }
    Labeling { order, form: CanonicalForm(bytes) }
}

const MAX_AUTOMORPHISMS: usize = 128;

struct Search<'a> {
    adj: &'a [u64],
    best: Option<Vec<u64>>,
    best_order: Vec<usize>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, mut cells: Vec<u64>, prefix: &mut Vec<usize>) {
        refine(self.adj, &mut cells);
        if cells.iter().all(|c| c.count_ones() == 1) {
            self.leaf(&cells);
            return;
        }
        let (ti, target) = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|(i, c)| (c.count_ones(), *i))
            .map(|(i, c)| (i, *c))
            .expect("non-discrete partition");

        let mut tried: u64 = 0;
        for v in ones(target) {
            if self.equivalent_to_tried(v, tried, prefix) {
                continue;
            }
            tried |= bit(v);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..ti]);
            next.push(bit(v));
            next.push(target & !bit(v));
            next.extend_from_slice(&cells[ti + 1..]);
            prefix.push(v);
            self.descend(next, prefix);
            prefix.pop();
        }
    }

    /// True when `v` is interchangeable with an already explored sibling,
    /// either as its twin or through a known automorphism fixing the prefix.
    fn equivalent_to_tried(&self, v: usize, tried: u64, prefix: &[usize]) -> bool {
        if tried == 0 {
            return false;
        }
        for u in ones(tried) {
            if self.adj[u] & !bit(v) == self.adj[v] & !bit(u) {
                return true;
            }
        }
        let n = self.adj.len();
        let gens: Vec<&Vec<usize>> = self
            .automorphisms
            .iter()
            .filter(|p| prefix.iter().all(|&x| p[x] == x))
            .collect();
        if gens.is_empty() {
            return false;
        }
        // orbit of v under the pointwise stabiliser of the prefix
        let mut orbit = bit(v);
        let mut frontier = vec![v];
        while let Some(x) = frontier.pop() {
            for p in &gens {
                let y = p[x];
                if orbit & bit(y) == 0 {
                    orbit |= bit(y);
                    frontier.push(y);
                }
            }
        }
        debug_assert!(orbit.count_ones() as usize <= n);
        orbit & tried != 0
    }

    fn leaf(&mut self, cells: &[u64]) {
        let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let mut pos = [0usize; 64];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let rows: Vec<u64> = order
            .iter()
            .map(|&v| ones(self.adj[v]).fold(0u64, |m, u| m | bit(pos[u])))
            .collect();
        match &self.best {
            None => {
                self.best = Some(rows);
                self.best_order = order;
            }
            Some(best) => match rows.cmp(best) {
                std::cmp::Ordering::Greater => {
                    self.best = Some(rows);
                    self.best_order = order;
                }
                std::cmp::Ordering::Equal => {
                    if self.automorphisms.len() < MAX_AUTOMORPHISMS {
                        let mut perm = vec![0; order.len()];
                        for (i, &v) in self.best_order.iter().enumerate() {
                            perm[v] = order[i];
                        }
                        self.automorphisms.push(perm);
                    }
                }
                std::cmp::Ordering::Less => {}
            },
        }
    }
}

/// Refines an ordered partition to the coarsest equitable refinement.
/// Cells split by neighbour count into each splitter cell, buckets in
/// ascending count order, so the result is isomorphism-equivariant.
pub(crate) fn refine(adj: &[u64], cells: &mut Vec<u64>) {
    let mut buckets = [0u64; 65];
    loop {
        let mut changed = false;
        let mut si = 0;
        while si < cells.len() {
            let splitter = cells[si];
            let mut ci = 0;
            while ci < cells.len() {
                let cell = cells[ci];
                if cell.count_ones() == 1 {
                    ci += 1;
                    continue;
                }
                let mut lo = 64usize;
                let mut hi = 0usize;
                for v in ones(cell) {
                    let k = (adj[v] & splitter).count_ones() as usize;
                    buckets[k] |= bit(v);
                    lo = lo.min(k);
                    hi = hi.max(k);
                }
                if lo == hi {
                    buckets[lo] = 0;
                    ci += 1;
                    continue;
                }
                let mut parts = Vec::new();
                for b in buckets.iter_mut().take(hi + 1).skip(lo) {
                    if *b != 0 {
                        parts.push(*b);
                        *b = 0;
                    }
                }
                let added = parts.len();
                cells.splice(ci..=ci, parts);
                ci += added;
                changed = true;
            }
            si += 1;
        }
        if !changed {
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn h3() -> HoffmanGraph {
        HoffmanGraph::build(2, 1, &[(0, 2), (1, 2)]).unwrap()
    }

    fn h2() -> HoffmanGraph {
        HoffmanGraph::build(1, 2, &[(0, 1), (0, 2)]).unwrap()
    }

    fn random_graph(rng: &mut ChaCha8Rng, slim: usize, fat: usize, p: f64) -> HoffmanGraph {
        let n = slim + fat;
        let mut e = Vec::new();
        for u in 0..slim {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    e.push((u, v));
                }
            }
        }
        for f in slim..n {
            if slim > 0 && !e.iter().any(|&(a, b)| a == f || b == f) {
                e.push((rng.gen_range(0..slim), f));
            }
        }
        HoffmanGraph::build(slim, fat, &e).unwrap()
    }

    fn random_colour_preserving_perm(rng: &mut ChaCha8Rng, g: &HoffmanGraph) -> Vec<usize> {
        let mut s: Vec<usize> = (0..g.slim_count()).collect();
        let mut f: Vec<usize> = g.fat_vertices().collect();
        s.shuffle(rng);
        f.shuffle(rng);
        s.extend(f);
        s
    }

    #[test]
    fn relabelled_h3_has_same_form() {
        let a = h3();
        let b = HoffmanGraph::build(2, 1, &[(1, 2), (0, 2)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert_ne!(canonical_form(&a), canonical_form(&h2()));
    }

    #[test]
    fn colour_matters() {
        // path s-f-s versus f-s-f style: same shape, different colours
        let sfs = h3();
        let fsf = h2();
        assert_ne!(canonical_form(&sfs), canonical_form(&fsf));
        assert_eq!(canonical_form(&sfs).slim_count(), 2);
    }

    #[test]
    fn permutation_stability_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let slim = rng.gen_range(0..10);
            let fat = if slim == 0 { 0 } else { rng.gen_range(0..5) };
            let g = random_graph(&mut rng, slim, fat, 0.4);
            let p = random_colour_preserving_perm(&mut rng, &g);
            let h = g.permuted(&p);
            assert_eq!(canonical_form(&g), canonical_form(&h));
            assert_eq!(canonical_graph(&g), canonical_graph(&h));
        }
    }

    #[test]
    fn symmetric_graphs_are_fast_and_stable() {
        for g in [complete(20), edgeless(20), cycle(24)] {
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            let p = random_colour_preserving_perm(&mut rng, &g);
            assert_eq!(canonical_form(&g), canonical_form(&g.permuted(&p)));
        }
        // Petersen graph
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        let pet = HoffmanGraph::slim(10, &e).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = random_colour_preserving_perm(&mut rng, &pet);
        assert_eq!(canonical_form(&pet), canonical_form(&pet.permuted(&p)));
    }

    #[test]
    fn extra_colours_distinguish_orbits() {
        let p = path(4);
        let colour = |v: usize| {
            let mut c = vec![0u32; 4];
            c[v] = 1;
            c
        };
        let f = |v| canonical_labeling(&p, Some(&colour(v))).form;
        assert_eq!(f(0), f(3));
        assert_eq!(f(1), f(2));
        assert_ne!(f(0), f(1));
    }

    #[test]
    fn hex_round_trip() {
        let f = canonical_form(&h3());
        assert_eq!(CanonicalForm::from_hex(&f.to_hex()).unwrap(), f);
        let js = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<CanonicalForm>(&js).unwrap(), f);
    }
}
