//! Sums of Hoffman graphs.
//!
//! A graph `H` is the sum of subgraphs `H¹ … Hⁿ` when
//!
//! * (i) their vertex sets cover `V(H)`,
//! * (ii) their slim sets are pairwise disjoint,
//! * (iii) every fat neighbour of a slim vertex of `Hⁱ` lies in `Hⁱ`,
//! * (iv) slim vertices from different parts share at most one fat
//!   neighbour, and share one exactly when they are adjacent.
//!
//! Parts are stored as vertex masks of the host, so the conditions reduce to
//! mask intersections.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{bit, count, ones};
use crate::canon::{canonical_form, CanonicalForm};
use crate::graph::{GraphError, HoffmanGraph, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SumError {
    #[error("slim vertices {0} and {1} from different parts would share two or more fat vertices")]
    SharedFatConflict(usize, usize),
    #[error("glue class {0} identifies two fat vertices of the same component")]
    GlueWithinComponent(usize),
    #[error("glue class {class} refers to a missing fat vertex ({component}, {fat})")]
    BadGlue { class: usize, component: usize, fat: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Which sum condition a candidate decomposition breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SumCondition {
    /// A part is not a Hoffman subgraph (it has a fat vertex without slim
    /// neighbours inside the part) or refers to vertices outside the host.
    PartNotHoffman,
    Cover,
    DisjointSlim,
    FatClosure,
    CrossAdjacency,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumVerdict {
    pub violation: Option<(SumCondition, String)>,
}

impl SumVerdict {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }

    fn fail(c: SumCondition, msg: String) -> Self {
        SumVerdict { violation: Some((c, msg)) }
    }
}

pub fn validate_sum(host: &HoffmanGraph, parts: &[u64]) -> SumVerdict {
    let all = host.vertex_mask();
    for (i, &p) in parts.iter().enumerate() {
        if p & !all != 0 {
            return SumVerdict::fail(SumCondition::PartNotHoffman, format!("part {i} leaves the host"));
        }
        let slim = p & host.slim_mask();
        for f in ones(p & host.fat_mask()) {
            if host.row(f) & slim == 0 {
                return SumVerdict::fail(
                    SumCondition::PartNotHoffman,
                    format!("fat vertex {f} has no slim neighbour in part {i}"),
                );
            }
        }
    }
    let union = parts.iter().fold(0, |m, p| m | p);
    if union != all {
        let v = (all & !union).trailing_zeros();
        return SumVerdict::fail(SumCondition::Cover, format!("vertex {v} lies in no part"));
    }
    let mut seen = 0u64;
    for (i, &p) in parts.iter().enumerate() {
        let s = p & host.slim_mask();
        if s & seen != 0 {
            let v = (s & seen).trailing_zeros();
            return SumVerdict::fail(SumCondition::DisjointSlim, format!("slim vertex {v} lies in part {i} and an earlier part"));
        }
        seen |= s;
    }
    for (i, &p) in parts.iter().enumerate() {
        for x in ones(p & host.slim_mask()) {
            let outside = host.fat_neighbours(x) & !p;
            if outside != 0 {
                return SumVerdict::fail(
                    SumCondition::FatClosure,
                    format!("fat neighbour {} of slim {x} is outside part {i}", outside.trailing_zeros()),
                );
            }
        }
    }
    for (i, &p) in parts.iter().enumerate() {
        for (j, &q) in parts.iter().enumerate().skip(i + 1) {
            for x in ones(p & host.slim_mask()) {
                for y in ones(q & host.slim_mask()) {
                    let shared = count(host.fat_neighbours(x) & host.fat_neighbours(y));
                    if shared > 1 || (shared == 1) != host.adjacent(x, y) {
                        return SumVerdict::fail(
                            SumCondition::CrossAdjacency,
                            format!(
                                "slim {x} (part {i}) and {y} (part {j}) share {shared} fat vertices, adjacent={}",
                                host.adjacent(x, y)
                            ),
                        );
                    }
                }
            }
        }
    }
    SumVerdict { violation: None }
}

/// A host graph together with a valid decomposition into parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumDecomposition {
    pub host: HoffmanGraph,
    /// Vertex lists of the parts, each sorted; parts sorted by least slim
    /// vertex.
    pub parts: Vec<Vec<usize>>,
}

impl SumDecomposition {
    /// Normalises part order and validates.
    pub fn new(host: HoffmanGraph, parts: Vec<u64>) -> Result<Self, SumCondition> {
        let verdict = validate_sum(&host, &parts);
        if let Some((c, _)) = verdict.violation {
            return Err(c);
        }
        Ok(Self::from_masks_unchecked(host, parts))
    }

    pub(crate) fn from_masks_unchecked(host: HoffmanGraph, mut parts: Vec<u64>) -> Self {
        let slim = host.slim_mask();
        parts.sort_by_key(|p| ((p & slim).trailing_zeros(), *p));
        let parts = parts.into_iter().map(|p| ones(p).collect()).collect();
        SumDecomposition { host, parts }
    }

    pub fn part_masks(&self) -> Vec<u64> {
        self.parts.iter().map(|p| p.iter().fold(0, |m, &v| m | bit(v))).collect()
    }

    /// The part as a standalone Hoffman graph.
    pub fn part_graph(&self, i: usize) -> HoffmanGraph {
        self.host.induced(self.part_masks()[i]).expect("parts are Hoffman subgraphs")
    }

    pub fn part_of_slim(&self, v: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(&v))
    }

    pub fn is_valid(&self) -> bool {
        validate_sum(&self.host, &self.part_masks()).is_valid()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("decomposition serialises")
    }
}

/// Builds a sum from components, identifying fat vertices across components
/// according to `fat_glue`. Each glue class lists `(component, local fat
/// index)` pairs, with at most one fat per component; fat vertices in no
/// class stay private. Cross-component slim adjacency follows condition
/// (iv): adjacent iff exactly one shared fat vertex.
///
/// Host layout: slim vertices of the components in order, then the glued
/// fat vertices in order of first appearance (component order, then local
/// fat order).
pub fn build_sum(components: &[HoffmanGraph], fat_glue: &[Vec<(usize, usize)>]) -> Result<SumDecomposition, SumError> {
    let slim_total: usize = components.iter().map(|c| c.slim_count()).sum();
    // map every (component, local fat) to a glue class id
    let mut class_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (ci, class) in fat_glue.iter().enumerate() {
        let mut comps = HashSet::new();
        for &(c, f) in class {
            if c >= components.len() || f >= components[c].fat_count() || class_of.contains_key(&(c, f)) {
                return Err(SumError::BadGlue { class: ci, component: c, fat: f });
            }
            if !comps.insert(c) {
                return Err(SumError::GlueWithinComponent(ci));
            }
            class_of.insert((c, f), ci);
        }
    }
    // assign host fat indices in order of first appearance
    let mut fat_index: BTreeMap<usize, usize> = BTreeMap::new();
    let mut local_to_host: Vec<Vec<usize>> = Vec::with_capacity(components.len());
    let mut next_fat = slim_total;
    let mut slim_offset = 0;
    let mut slim_maps: Vec<Vec<usize>> = Vec::new();
    for (c, comp) in components.iter().enumerate() {
        let mut map = Vec::with_capacity(comp.order());
        for s in 0..comp.slim_count() {
            map.push(slim_offset + s);
        }
        slim_offset += comp.slim_count();
        for f in 0..comp.fat_count() {
            let host_f = match class_of.get(&(c, f)) {
                Some(&cls) => *fat_index.entry(cls).or_insert_with(|| {
                    next_fat += 1;
                    next_fat - 1
                }),
                None => {
                    next_fat += 1;
                    next_fat - 1
                }
            };
            map.push(host_f);
        }
        slim_maps.push(map[..comp.slim_count()].to_vec());
        local_to_host.push(map);
    }
    let n = next_fat;
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n).into());
    }
    let mut adj = vec![0u64; n];
    let mut parts = Vec::with_capacity(components.len());
    for (c, comp) in components.iter().enumerate() {
        let map = &local_to_host[c];
        let mut part = 0u64;
        for (u, v) in comp.edges() {
            adj[map[u]] |= bit(map[v]);
            adj[map[v]] |= bit(map[u]);
        }
        for &h in map {
            part |= bit(h);
        }
        parts.push(part);
    }
    // cross-component slim adjacency from shared fat vertices
    let fat_mask = !crate::bits::low_mask(slim_total);
    for a in 0..components.len() {
        for b in a + 1..components.len() {
            for &x in &slim_maps[a] {
                for &y in &slim_maps[b] {
                    let shared = count(adj[x] & adj[y] & fat_mask);
                    if shared > 1 {
                        return Err(SumError::SharedFatConflict(x, y));
                    }
                    if shared == 1 {
                        adj[x] |= bit(y);
                        adj[y] |= bit(x);
                    }
                }
            }
        }
    }
    let host = HoffmanGraph::from_rows(slim_total, n - slim_total, adj)?;
    let dec = SumDecomposition::from_masks_unchecked(host, parts);
    debug_assert!(dec.is_valid());
    Ok(dec)
}

/// A set of admissible part classes.
#[derive(Clone, Debug)]
pub struct ClassSet {
    forms: HashSet<CanonicalForm>,
    max_slim: usize,
}

impl ClassSet {
    pub fn new<'a, I: IntoIterator<Item = &'a HoffmanGraph>>(graphs: I) -> Self {
        let mut forms = HashSet::new();
        let mut max_slim = 0;
        for g in graphs {
            max_slim = max_slim.max(g.slim_count());
            forms.insert(canonical_form(g));
        }
        ClassSet { forms, max_slim }
    }

    pub fn contains(&self, g: &HoffmanGraph) -> bool {
        g.slim_count() <= self.max_slim && self.forms.contains(&canonical_form(g))
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }
}

/// All decompositions of `host` into parts whose classes lie in `allowed`,
/// up to reordering of parts. Parts are `⟪S⟫` for slim sets `S`, since a
/// part must contain every fat neighbour of its slim vertices and nothing
/// else can have a slim neighbour inside it.
pub fn decompose(host: &HoffmanGraph, allowed: &ClassSet) -> Vec<SumDecomposition> {
    let mut out = Vec::new();
    if allowed.is_empty() {
        return out;
    }
    let mut chosen = Vec::new();
    decompose_rec(host, allowed, host.slim_mask(), &mut chosen, &mut out);
    out
}

fn decompose_rec(
    host: &HoffmanGraph,
    allowed: &ClassSet,
    uncovered: u64,
    chosen: &mut Vec<u64>,
    out: &mut Vec<SumDecomposition>,
) {
    if uncovered == 0 {
        let parts: Vec<u64> = chosen.iter().map(|&s| host.slim_closure_mask(s)).collect();
        if validate_sum(host, &parts).is_valid() {
            out.push(SumDecomposition::from_masks_unchecked(host.clone(), parts));
        }
        return;
    }
    let v = uncovered.trailing_zeros() as usize;
    let rest = uncovered & !bit(v);
    let others: Vec<usize> = ones(rest).collect();
    let k_max = allowed.max_slim.saturating_sub(1).min(others.len());
    for k in 0..=k_max {
        for combo in combinations(&others, k) {
            let s = combo.iter().fold(bit(v), |m, &u| m | bit(u));
            let part = host.induced(host.slim_closure_mask(s)).expect("closure is Hoffman");
            if !allowed.contains(&part) {
                continue;
            }
            chosen.push(s);
            decompose_rec(host, allowed, uncovered & !s, chosen, out);
            chosen.pop();
        }
    }
}

pub(crate) fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::figures::{h1, h2, h3, h5};

    fn family() -> ClassSet {
        ClassSet::new([&h2(), &h3(), &h5()])
    }

    #[test]
    fn validate_examples() {
        let h3 = h3();
        assert!(validate_sum(&h3, &[h3.vertex_mask()]).is_valid());
        // u, v adjacent sharing fat 2
        let adj = HoffmanGraph::build(2, 1, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(validate_sum(&adj, &[0b101, 0b110]).is_valid());
        let nonadj = HoffmanGraph::build(2, 1, &[(0, 2), (1, 2)]).unwrap();
        let v = validate_sum(&nonadj, &[0b101, 0b110]);
        assert_eq!(v.violation.unwrap().0, SumCondition::CrossAdjacency);
        assert_eq!(validate_sum(&nonadj, &[0b101]).violation.unwrap().0, SumCondition::Cover);
        assert_eq!(
            validate_sum(&nonadj, &[0b001, 0b110]).violation.unwrap().0,
            SumCondition::FatClosure
        );
        assert_eq!(
            validate_sum(&nonadj, &[0b101, 0b111]).violation.unwrap().0,
            SumCondition::DisjointSlim
        );
    }

    #[test]
    fn build_sum_examples() {
        let s = build_sum(&[h1(), h1()], &[vec![(0, 0), (1, 0)]]).unwrap();
        assert_eq!((s.host.slim_count(), s.host.fat_count()), (2, 1));
        assert!(s.host.adjacent(0, 1));

        let conflict = build_sum(&[h2(), h2()], &[vec![(0, 0), (1, 0)], vec![(0, 1), (1, 1)]]);
        assert_eq!(conflict.unwrap_err(), SumError::SharedFatConflict(0, 1));

        let s = build_sum(&[h3(), h3()], &[vec![(0, 0), (1, 0)]]).unwrap();
        assert_eq!((s.host.slim_count(), s.host.fat_count()), (4, 1));
        for x in 0..2 {
            for y in 2..4 {
                assert!(s.host.adjacent(x, y));
            }
        }
        assert!(!s.host.adjacent(0, 1) && !s.host.adjacent(2, 3));
        assert!(s.is_valid());

        assert_eq!(
            build_sum(&[h2()], &[vec![(0, 0), (0, 1)]]).unwrap_err(),
            SumError::GlueWithinComponent(0)
        );
        assert!(matches!(build_sum(&[h2()], &[vec![(0, 5)]]), Err(SumError::BadGlue { .. })));
    }

    #[test]
    fn decompose_examples() {
        let h3 = h3();
        let d = decompose(&h3, &family());
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].parts, vec![vec![0, 1, 2]]);

        let h_prime = build_sum(&[h1(), h1()], &[vec![(0, 0), (1, 0)]]).unwrap().host;
        let d = decompose(&h_prime, &ClassSet::new([&h1()]));
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].parts, vec![vec![0, 2], vec![1, 2]]);
        assert!(decompose(&h_prime, &family()).is_empty());
    }

    #[test]
    fn sum_json_is_deterministic() {
        let s = build_sum(&[h3(), h2()], &[vec![(0, 0), (1, 1)]]).unwrap();
        assert_eq!(s.to_json(), s.clone().to_json());
        let back: SumDecomposition = serde_json::from_str(&s.to_json()).unwrap();
        assert_eq!(back, s);
    }
}
