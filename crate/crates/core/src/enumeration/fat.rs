//! Generation of small fat Hoffman graphs under structural constraints.
//!
//! Candidates are a slim graph plus a multiset of fat neighbourhoods (slim
//! subsets). Isomorphic candidates are merged by canonical form and the
//! result is sorted by canonical form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bits::{bit, count, low_mask, ones};
use crate::canon::canonical_form;
use crate::enumeration::generate::{all_slim_graphs, GraphStream};
use crate::graph::HoffmanGraph;
use crate::recognition::{is_h_line_graph, PartKind};

/// Constraints for [`fat_hoffman_graphs`]. Every generated graph is fat
/// (each slim vertex has a fat neighbour) unless `fat_degree_min` is 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FatConstraints {
    pub slim_min: usize,
    pub slim_max: usize,
    pub fat_min: usize,
    pub fat_max: usize,
    pub fat_degree_min: usize,
    pub fat_degree_max: usize,
    pub connected: bool,
    /// The slim vertices are pairwise non-adjacent.
    pub independent_slims: bool,
    /// Some slim `s` has two fat neighbours, all other slim vertices but one
    /// are adjacent to `s`, and the closure of the others is `H3` or `H5`.
    pub apex_over_part: bool,
    /// The slim set is covered by two different subsets whose closures are
    /// `H3` or `H5`, and the vertices outside either one are pairwise
    /// adjacent across, except for exactly one pair.
    pub overlapping_parts: bool,
    pub non_h_line: bool,
}

impl FatConstraints {
    fn base(slim: (usize, usize), fat: (usize, usize), degree: (usize, usize)) -> Self {
        FatConstraints {
            slim_min: slim.0,
            slim_max: slim.1,
            fat_min: fat.0,
            fat_max: fat.1,
            fat_degree_min: degree.0,
            fat_degree_max: degree.1,
            connected: true,
            independent_slims: false,
            apex_over_part: false,
            overlapping_parts: false,
            non_h_line: true,
        }
    }

    /// Two non-adjacent slim vertices, at most four fat vertices, fat
    /// degree at most two.
    pub fn two_slim_pair() -> Self {
        FatConstraints { independent_slims: true, ..Self::base((2, 2), (0, 4), (1, 2)) }
    }

    /// Three or four slim vertices, at most two fat vertices, one slim
    /// vertex over an `H3`/`H5` part.
    pub fn apex_over_part() -> Self {
        FatConstraints { apex_over_part: true, ..Self::base((3, 4), (0, 2), (1, 2)) }
    }

    /// Three to six slim vertices on a single fat vertex, covered by two
    /// overlapping `H3`/`H5` parts.
    pub fn single_fat_overlap() -> Self {
        FatConstraints { overlapping_parts: true, ..Self::base((3, 6), (1, 1), (1, 1)) }
    }

    pub fn accepts(&self, g: &HoffmanGraph) -> bool {
        let s = g.slim_count();
        let degrees_ok = ones(g.slim_mask()).all(|v| {
            let d = count(g.fat_neighbours(v));
            d >= self.fat_degree_min && d <= self.fat_degree_max
        });
        (self.slim_min..=self.slim_max).contains(&s)
            && (self.fat_min..=self.fat_max).contains(&g.fat_count())
            && degrees_ok
            && (!self.connected || g.is_connected())
            && (!self.independent_slims || g.slim_subgraph().edge_count() == 0)
            && (!self.apex_over_part || has_apex_over_part(g))
            && (!self.overlapping_parts || has_overlapping_parts(g))
            && (!self.non_h_line || !is_h_line_graph(g))
    }
}

fn closure_is_small_part(g: &HoffmanGraph, set: u64) -> bool {
    let part = g.induced_slim_closure(set).expect("slim set");
    matches!(PartKind::of(&part), Some(PartKind::H3 | PartKind::H5))
}

fn has_apex_over_part(g: &HoffmanGraph) -> bool {
    let all = g.slim_mask();
    ones(all).any(|s| {
        if count(g.fat_neighbours(s)) != 2 {
            return false;
        }
        let others = all & !bit(s);
        let missing = others & !g.slim_neighbours(s);
        count(missing) == 1 && closure_is_small_part(g, others)
    })
}

fn has_overlapping_parts(g: &HoffmanGraph) -> bool {
    let all = g.slim_mask();
    let candidates: Vec<u64> = (1..=all)
        .filter(|&m| m & !all == 0 && matches!(count(m), 2 | 3) && closure_is_small_part(g, m))
        .collect();
    for &v1 in &candidates {
        for &v2 in &candidates {
            if v1 == v2 || v1 | v2 != all {
                continue;
            }
            let a = all & !v2;
            let b = all & !v1;
            let missing: usize = ones(a).map(|x| count(b & !g.slim_neighbours(x))).sum();
            if missing == 1 {
                return true;
            }
        }
    }
    false
}

/// One representative per isomorphism class of graphs meeting `c`.
pub fn fat_hoffman_graphs(c: &FatConstraints) -> GraphStream {
    let mut found: BTreeMap<_, HoffmanGraph> = BTreeMap::new();
    for k in c.slim_min..=c.slim_max {
        let subsets: Vec<u64> = (1..=low_mask(k)).collect();
        for slim in all_slim_graphs(k) {
            let mut fats = Vec::new();
            let mut degree = vec![0usize; k];
            fat_multisets(c, &subsets, 0, &mut fats, &mut degree, &mut |fats| {
                let g = with_fats(&slim, fats);
                if c.accepts(&g) {
                    found.entry(canonical_form(&g)).or_insert(g);
                }
            });
        }
    }
    found.into_values().collect()
}

fn fat_multisets(
    c: &FatConstraints,
    subsets: &[u64],
    start: usize,
    fats: &mut Vec<u64>,
    degree: &mut [usize],
    emit: &mut dyn FnMut(&[u64]),
) {
    if fats.len() >= c.fat_min && degree.iter().all(|&d| d >= c.fat_degree_min) {
        emit(fats);
    }
    if fats.len() == c.fat_max {
        return;
    }
    for i in start..subsets.len() {
        let m = subsets[i];
        if ones(m).any(|v| degree[v] >= c.fat_degree_max) {
            continue;
        }
        for v in ones(m) {
            degree[v] += 1;
        }
        fats.push(m);
        fat_multisets(c, subsets, i, fats, degree, emit);
        fats.pop();
        for v in ones(m) {
            degree[v] -= 1;
        }
    }
}

fn with_fats(slim: &HoffmanGraph, fats: &[u64]) -> HoffmanGraph {
    let k = slim.order();
    let mut adj = slim.rows().to_vec();
    for (j, &m) in fats.iter().enumerate() {
        let f = k + j;
        adj.push(m);
        for v in ones(m) {
            adj[v] |= bit(f);
        }
    }
    HoffmanGraph::from_rows(k, fats.len(), adj).expect("fat neighbourhoods are nonempty")
}
