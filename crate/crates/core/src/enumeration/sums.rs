//! Enumeration of connected sums `G = F ⊎ K` where `K` is a sum of `H1`,
//! `H2`, `H3` and `H5` parts and every fat vertex of `F` is a fat vertex of
//! `K`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::enumeration::generate::GraphStream;
use crate::figures::{h1, h2, h3, h5};
use crate::graph::HoffmanGraph;
use crate::sums::{build_sum, SumError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum KPart {
    H1,
    H2,
    H3,
    H5,
}

impl KPart {
    pub const ALL: [KPart; 4] = [KPart::H1, KPart::H2, KPart::H3, KPart::H5];

    pub fn graph(self) -> HoffmanGraph {
        match self {
            KPart::H1 => h1(),
            KPart::H2 => h2(),
            KPart::H3 => h3(),
            KPart::H5 => h5(),
        }
    }

    fn slims(self) -> usize {
        match self {
            KPart::H3 => 2,
            KPart::H5 => 3,
            _ => 1,
        }
    }

    fn fats(self) -> usize {
        match self {
            KPart::H2 => 2,
            _ => 1,
        }
    }
}

/// All connected `F ⊎ K` with `|V_s(K)| = slim_k`, part classes from
/// `parts`, and `c(K) = components_k`, one per isomorphism class, sorted by
/// canonical form.
pub fn enumerate_sums(f: &HoffmanGraph, slim_k: usize, parts: &[KPart], components_k: usize) -> GraphStream {
    let mut allowed: Vec<KPart> = parts.to_vec();
    allowed.sort();
    allowed.dedup();
    let mut multisets = Vec::new();
    part_multisets(&allowed, 0, slim_k, &mut Vec::new(), &mut multisets);
    let found: Vec<BTreeMap<_, HoffmanGraph>> =
        multisets.par_iter().map(|ms| sums_for_parts(f, ms, components_k)).collect();
    let mut all = BTreeMap::new();
    for m in found {
        for (k, g) in m {
            all.entry(k).or_insert(g);
        }
    }
    all.into_values().collect()
}

fn part_multisets(allowed: &[KPart], start: usize, left: usize, cur: &mut Vec<KPart>, out: &mut Vec<Vec<KPart>>) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    for i in start..allowed.len() {
        if allowed[i].slims() <= left {
            cur.push(allowed[i]);
            part_multisets(allowed, i, left - allowed[i].slims(), cur, out);
            cur.pop();
        }
    }
}

struct Glue<'a> {
    f: &'a HoffmanGraph,
    parts: &'a [KPart],
    /// owning part of each K fat slot
    owner: Vec<usize>,
    components_k: usize,
}

fn sums_for_parts(f: &HoffmanGraph, parts: &[KPart], components_k: usize) -> BTreeMap<crate::CanonicalForm, HoffmanGraph> {
    let owner: Vec<usize> = parts.iter().enumerate().flat_map(|(i, p)| std::iter::repeat_n(i, p.fats())).collect();
    let glue = Glue { f, parts, owner, components_k };
    let mut out = BTreeMap::new();
    let mut class = vec![0usize; glue.owner.len()];
    glue.partition(0, 0, &mut class, &mut out);
    out
}

impl Glue<'_> {
    /// Restricted-growth assignment of K fat slots to classes. A class holds
    /// at most one slot per part, and two parts share at most one class.
    fn partition(&self, i: usize, classes: usize, class: &mut Vec<usize>, out: &mut BTreeMap<crate::CanonicalForm, HoffmanGraph>) {
        if i == self.owner.len() {
            self.finish_k(classes, class, out);
            return;
        }
        for c in 0..=classes {
            if c < classes && !self.can_join(i, c, class) {
                continue;
            }
            class[i] = c;
            self.partition(i + 1, classes.max(c + 1), class, out);
        }
    }

    fn can_join(&self, i: usize, c: usize, class: &[usize]) -> bool {
        let p = self.owner[i];
        for j in 0..i {
            if class[j] != c {
                continue;
            }
            let q = self.owner[j];
            if q == p {
                return false;
            }
            // p and q already share another class
            let shared = (0..i).any(|a| {
                self.owner[a] == p && (0..i).any(|b| self.owner[b] == q && class[a] == class[b] && class[a] != c)
            });
            if shared {
                return false;
            }
        }
        true
    }

    fn finish_k(&self, classes: usize, class: &[usize], out: &mut BTreeMap<crate::CanonicalForm, HoffmanGraph>) {
        // components of K: parts linked by shared classes
        let n = self.parts.len();
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(c: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while c[r] != r {
                r = c[r];
            }
            c[x] = r;
            r
        }
        for a in 0..class.len() {
            for b in a + 1..class.len() {
                if class[a] == class[b] {
                    let (x, y) = (find(&mut comp, self.owner[a]), find(&mut comp, self.owner[b]));
                    comp[x] = y;
                }
            }
        }
        let k_components = (0..n).filter(|&x| find(&mut comp, x) == x).count();
        if k_components != self.components_k {
            return;
        }
        // F fat vertices go to distinct classes
        let mut target = vec![0usize; self.f.fat_count()];
        self.assign_f(0, classes, class, &mut target, out);
    }

    fn assign_f(
        &self,
        j: usize,
        classes: usize,
        class: &[usize],
        target: &mut Vec<usize>,
        out: &mut BTreeMap<crate::CanonicalForm, HoffmanGraph>,
    ) {
        if j == target.len() {
            self.emit(classes, class, target, out);
            return;
        }
        for c in 0..classes {
            if target[..j].contains(&c) {
                continue;
            }
            target[j] = c;
            self.assign_f(j + 1, classes, class, target, out);
        }
    }

    fn emit(&self, classes: usize, class: &[usize], target: &[usize], out: &mut BTreeMap<crate::CanonicalForm, HoffmanGraph>) {
        // component 0 is F, components 1.. are the K parts
        let mut glue: Vec<Vec<(usize, usize)>> = vec![Vec::new(); classes];
        for (fat, &c) in target.iter().enumerate() {
            glue[c].push((0, fat));
        }
        let mut local = vec![0usize; self.parts.len()];
        for (slot, &c) in class.iter().enumerate() {
            let p = self.owner[slot];
            glue[c].push((p + 1, local[p]));
            local[p] += 1;
        }
        let mut components = Vec::with_capacity(self.parts.len() + 1);
        components.push(self.f.clone());
        components.extend(self.parts.iter().map(|p| p.graph()));
        match build_sum(&components, &glue) {
            Ok(sum) => {
                if sum.host.is_connected() {
                    out.entry(canonical_form(&sum.host)).or_insert(sum.host);
                }
            }
            Err(SumError::SharedFatConflict(..)) => {}
            Err(e) => panic!("glue construction is well formed: {e}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recognition::is_h_line_graph;

    #[test]
    fn empty_f_gives_connected_covers() {
        let s = enumerate_sums(&HoffmanGraph::empty(), 1, &KPart::ALL, 1);
        // H1 and H2
        assert_eq!(s.len(), 2);
        let s = enumerate_sums(&HoffmanGraph::empty(), 2, &[KPart::H2], 1);
        // two H2 parts sharing one fat vertex
        assert_eq!(s.len(), 1);
        assert!(s.iter().all(|g| is_h_line_graph(g) && g.is_connected()));
    }

    #[test]
    fn fat_vertices_of_f_are_glued() {
        let f = h1();
        let s = enumerate_sums(&f, 1, &[KPart::H1], 1);
        // F's fat must be K's only fat vertex
        assert_eq!(s.len(), 1);
        let g = &s.graphs[0];
        assert_eq!((g.slim_count(), g.fat_count()), (2, 1));
        assert!(g.adjacent(0, 1));
    }
}
