//! Recognition of `{H2, H3, H5}`-line graphs by strict-cover search.
//!
//! A strict cover assigns every slim vertex to a cell:
//!
//! * a single vertex (an `H2` part, two fat neighbours),
//! * a non-adjacent pair (an `H3` part, one shared fat neighbour),
//! * a triple with exactly one edge (an `H5` part, one shared fat
//!   neighbour).
//!
//! Vertices of a two- or three-vertex cell have the same neighbours outside
//! the cell. Contracting cells gives a quotient graph in which every edge
//! must be covered by exactly one fat vertex, each fat vertex spans a clique
//! of cells, and a cell lies in at most as many fat vertices as its part
//! has (two for `H2`, one otherwise). Unused slots become private fat
//! vertices. Fat vertices of the input are pinned: their slim
//! neighbourhoods are prescribed cliques.
//!
//! An `H1` part is an `H2` cell whose second fat vertex is private, so the
//! search for a cover with parts in `{H1, H2, H3, H5}` of a fat input is the
//! same search.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{bit, count, ones};
use crate::embed::Embedding;
use crate::graph::{HoffmanGraph, MAX_VERTICES};
use crate::sums::SumDecomposition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecognitionError {
    #[error("covers are of different base graphs")]
    DifferentBase,
    #[error("vertex {0} is not a slim vertex of the graph")]
    VertexNotInGraph(usize),
    #[error("part {0} is not isomorphic to H2, H3 or H5")]
    NotFamilyPart(usize),
    #[error("cover would need {0} vertices")]
    TooLarge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PartKind {
    H2,
    H3,
    H5,
}

impl PartKind {
    fn slots(self) -> u8 {
        match self {
            PartKind::H2 => 2,
            _ => 1,
        }
    }

    /// Classifies a Hoffman graph as one of the three family parts.
    pub fn of(g: &HoffmanGraph) -> Option<PartKind> {
        let s = g.slim_mask();
        let single_fat = g.fat_count() == 1 && ones(s).all(|v| g.fat_neighbours(v) == g.fat_mask());
        match (g.slim_count(), g.fat_count()) {
            (1, 2) => Some(PartKind::H2),
            (2, 1) if single_fat && !g.adjacent(0, 1) => Some(PartKind::H3),
            (3, 1) if single_fat && g.slim_subgraph().edge_count() == 1 => Some(PartKind::H5),
            _ => None,
        }
    }
}

/// A cover `K` of the base graph `Γ`: `K` is a sum of `H2`, `H3` and `H5`
/// parts with the same slim vertices as `Γ`, and `Γ` is the induced
/// subgraph of `K` on the embedding image.
///
/// Layout of `cover`: slim vertices keep their indices, the fat vertices of
/// `Γ` follow in order, then the added fat vertices sorted by slim
/// neighbourhood.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrictCover {
    pub base: HoffmanGraph,
    pub cover: HoffmanGraph,
    pub decomposition: SumDecomposition,
    pub embedding: Embedding,
}

impl StrictCover {
    /// Slim neighbourhoods of the fat vertices not in the image of the base,
    /// sorted. Two covers of one base are equivalent iff these agree: fat
    /// vertices are determined by their slim neighbourhoods, and an
    /// isomorphism fixing the base fixes the slim vertices.
    pub fn added_fat_key(&self) -> Vec<u64> {
        let image = self.embedding.image();
        let mut key: Vec<u64> = self
            .cover
            .fat_vertices()
            .filter(|&f| image & bit(f) == 0)
            .map(|f| self.cover.row(f))
            .collect();
        key.sort_unstable();
        key
    }

    pub fn part_kinds(&self) -> Vec<PartKind> {
        (0..self.decomposition.parts.len())
            .map(|i| PartKind::of(&self.decomposition.part_graph(i)).expect("cover parts are family parts"))
            .collect()
    }

    /// Full check of the cover conditions.
    pub fn is_valid(&self) -> bool {
        let d = &self.decomposition;
        d.host == self.cover
            && d.is_valid()
            && (0..d.parts.len()).all(|i| PartKind::of(&d.part_graph(i)).is_some())
            && self.cover.slim_count() == self.base.slim_count()
            && self.embedding.is_valid(&self.base, &self.cover)
            && (0..self.base.slim_count()).all(|v| self.embedding.map[v] == v)
    }
}

pub fn covers_equivalent(k: &StrictCover, l: &StrictCover) -> Result<bool, RecognitionError> {
    if k.base != l.base {
        return Err(RecognitionError::DifferentBase);
    }
    let pinned = |c: &StrictCover| -> Vec<u64> { c.embedding.map.iter().map(|&h| c.cover.row(h)).collect() };
    Ok(pinned(k) == pinned(l) && k.added_fat_key() == l.added_fat_key())
}

#[derive(Clone, Copy, Debug)]
struct Cell {
    kind: PartKind,
    slims: u64,
}

/// A solution of the cell search in terms of the base graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct RawCover {
    key: Vec<u64>,
    cells: Vec<(u64, PartKind)>,
}

struct Search<'a> {
    g: &'a HoffmanGraph,
    n: usize,
}

impl<'a> Search<'a> {
    fn new(g: &'a HoffmanGraph) -> Self {
        Search { g, n: g.slim_count() }
    }

    fn outside(&self, v: usize, cell: u64) -> u64 {
        self.g.slim_neighbours(v) & !cell
    }

    /// Vertices of a multi-vertex cell must agree outside it and have the
    /// same, at most one, fat neighbour.
    fn is_module(&self, cell: u64) -> bool {
        let mut it = ones(cell);
        let first = it.next().unwrap();
        let nf = self.g.fat_neighbours(first);
        if count(nf) > 1 {
            return false;
        }
        let out = self.outside(first, cell);
        it.all(|v| self.g.fat_neighbours(v) == nf && self.outside(v, cell) == out)
    }

    fn run<F: FnMut(RawCover) -> ControlFlow<()>>(&self, emit: &mut F) -> ControlFlow<()> {
        let mut cells = Vec::new();
        self.partition(self.g.slim_mask(), &mut cells, emit)
    }

    fn partition<F: FnMut(RawCover) -> ControlFlow<()>>(
        &self,
        left: u64,
        cells: &mut Vec<Cell>,
        emit: &mut F,
    ) -> ControlFlow<()> {
        if left == 0 {
            return self.cover_cells(cells, emit);
        }
        let v = left.trailing_zeros() as usize;
        let rest = left & !bit(v);
        if count(self.g.fat_neighbours(v)) <= 2 {
            cells.push(Cell { kind: PartKind::H2, slims: bit(v) });
            self.partition(rest, cells, emit)?;
            cells.pop();
        }
        if count(self.g.fat_neighbours(v)) > 1 {
            return ControlFlow::Continue(());
        }
        let nv = self.g.slim_neighbours(v);
        for u in ones(rest) {
            let pair = bit(v) | bit(u);
            if nv & bit(u) == 0 && self.is_module(pair) {
                cells.push(Cell { kind: PartKind::H3, slims: pair });
                self.partition(rest & !bit(u), cells, emit)?;
                cells.pop();
            }
            for w in ones(rest & !crate::bits::low_mask(u + 1)) {
                let triple = pair | bit(w);
                let edges = [(v, u), (v, w), (u, w)].iter().filter(|&&(a, b)| self.g.adjacent(a, b)).count();
                if edges == 1 && self.is_module(triple) {
                    cells.push(Cell { kind: PartKind::H5, slims: triple });
                    self.partition(rest & !triple, cells, emit)?;
                    cells.pop();
                }
            }
        }
        ControlFlow::Continue(())
    }

    fn cover_cells<F: FnMut(RawCover) -> ControlFlow<()>>(&self, cells: &[Cell], emit: &mut F) -> ControlFlow<()> {
        let k = cells.len();
        let mut cell_of = vec![0usize; self.n];
        for (i, c) in cells.iter().enumerate() {
            for v in ones(c.slims) {
                cell_of[v] = i;
            }
        }
        // quotient adjacency; cells are modules so one representative suffices
        let mut uncovered = vec![0u64; k];
        for (i, c) in cells.iter().enumerate() {
            let rep = c.slims.trailing_zeros() as usize;
            for u in ones(self.outside(rep, c.slims)) {
                uncovered[i] |= bit(cell_of[u]);
            }
        }
        let mut slots: Vec<u8> = cells.iter().map(|c| c.kind.slots()).collect();
        // pinned fat vertices of the base graph
        for f in self.g.fat_vertices() {
            let nb = self.g.row(f);
            let mut cm = 0u64;
            for v in ones(nb) {
                cm |= bit(cell_of[v]);
            }
            let union = ones(cm).fold(0, |m, i| m | cells[i].slims);
            if union != nb {
                return ControlFlow::Continue(());
            }
            if !self.take_clique(cm, &mut uncovered, &mut slots) {
                return ControlFlow::Continue(());
            }
        }
        let mut fats = Vec::new();
        self.cover_edges(cells, &mut uncovered, &mut slots, &mut fats, emit)
    }

    /// Claims a fat vertex spanning the cell set `cm`: every pair must be an
    /// uncovered quotient edge and every cell needs a free slot.
    fn take_clique(&self, cm: u64, uncovered: &mut [u64], slots: &mut [u8]) -> bool {
        for i in ones(cm) {
            let others = cm & !bit(i);
            if slots[i] == 0 || uncovered[i] & others != others {
                return false;
            }
        }
        for i in ones(cm) {
            slots[i] -= 1;
            uncovered[i] &= !cm;
        }
        true
    }

    fn release_clique(&self, cm: u64, uncovered: &mut [u64], slots: &mut [u8]) {
        for i in ones(cm) {
            slots[i] += 1;
            uncovered[i] |= cm & !bit(i);
        }
    }

    fn cover_edges<F: FnMut(RawCover) -> ControlFlow<()>>(
        &self,
        cells: &[Cell],
        uncovered: &mut Vec<u64>,
        slots: &mut Vec<u8>,
        fats: &mut Vec<u64>,
        emit: &mut F,
    ) -> ControlFlow<()> {
        let Some(c) = (0..cells.len()).find(|&i| uncovered[i] != 0) else {
            return emit(self.finish(cells, slots, fats));
        };
        let u = uncovered[c];
        match slots[c] {
            0 => ControlFlow::Continue(()),
            1 => self.try_cliques(cells, uncovered, slots, fats, emit, &[bit(c) | u]),
            _ => {
                let low = u & u.wrapping_neg();
                let rest = u & !low;
                // every split of the uncovered neighbours into two cliques
                let mut sub = rest;
                loop {
                    let a = bit(c) | low | (rest & !sub);
                    let b = if sub == 0 { 0 } else { bit(c) | sub };
                    let pair: Vec<u64> = [a, b].into_iter().filter(|&m| m != 0).collect();
                    self.try_cliques(cells, uncovered, slots, fats, emit, &pair)?;
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & rest;
                }
                ControlFlow::Continue(())
            }
        }
    }

    fn try_cliques<F: FnMut(RawCover) -> ControlFlow<()>>(
        &self,
        cells: &[Cell],
        uncovered: &mut Vec<u64>,
        slots: &mut Vec<u8>,
        fats: &mut Vec<u64>,
        emit: &mut F,
        cliques: &[u64],
    ) -> ControlFlow<()> {
        let mut taken = 0;
        let mut ok = true;
        for &cm in cliques {
            if self.take_clique(cm, uncovered, slots) {
                fats.push(cm);
                taken += 1;
            } else {
                ok = false;
                break;
            }
        }
        let flow = if ok { self.cover_edges(cells, uncovered, slots, fats, emit) } else { ControlFlow::Continue(()) };
        for _ in 0..taken {
            let cm = fats.pop().unwrap();
            self.release_clique(cm, uncovered, slots);
        }
        flow
    }

    fn finish(&self, cells: &[Cell], slots: &[u8], fats: &[u64]) -> RawCover {
        let slim_of = |cm: u64| ones(cm).fold(0, |m, i| m | cells[i].slims);
        let mut key: Vec<u64> = fats.iter().map(|&cm| slim_of(cm)).collect();
        for (i, c) in cells.iter().enumerate() {
            for _ in 0..slots[i] {
                key.push(c.slims);
            }
        }
        key.sort_unstable();
        let mut cells: Vec<(u64, PartKind)> = cells.iter().map(|c| (c.slims, c.kind)).collect();
        cells.sort_unstable();
        RawCover { key, cells }
    }

    fn materialize(&self, raw: &RawCover) -> Result<StrictCover, RecognitionError> {
        let g = self.g;
        let n = self.n;
        let base_fat = g.fat_count();
        let total = n + base_fat + raw.key.len();
        if total > MAX_VERTICES {
            return Err(RecognitionError::TooLarge(total));
        }
        let mut adj: Vec<u64> = vec![0; total];
        for v in 0..n {
            adj[v] = g.slim_neighbours(v) | g.fat_neighbours(v);
        }
        for f in g.fat_vertices() {
            adj[f] = g.row(f);
        }
        for (j, &m) in raw.key.iter().enumerate() {
            let f = n + base_fat + j;
            adj[f] = m;
            for v in ones(m) {
                adj[v] |= bit(f);
            }
        }
        let cover = HoffmanGraph::from_rows(n, total - n, adj).expect("cover is a Hoffman graph");
        let parts = raw.cells.iter().map(|&(s, _)| cover.slim_closure_mask(s)).collect();
        let decomposition = SumDecomposition::from_masks_unchecked(cover.clone(), parts);
        let sc = StrictCover {
            base: g.clone(),
            cover,
            decomposition,
            embedding: Embedding::identity(g.order()),
        };
        debug_assert!(sc.is_valid());
        Ok(sc)
    }
}

/// Decides whether `g` is a `{H2, H3, H5}`-line graph; returns the least
/// strict cover (by sorted added-fat neighbourhoods) when it is.
pub fn is_h_line(g: &HoffmanGraph) -> Option<StrictCover> {
    let search = Search::new(g);
    let mut best: Option<RawCover> = None;
    let _ = search.run(&mut |raw| {
        if best.as_ref().is_none_or(|b| raw < *b) {
            best = Some(raw);
        }
        ControlFlow::Continue(())
    });
    best.map(|raw| search.materialize(&raw).expect("cover fits in the vertex limit"))
}

/// Membership only; stops at the first cover found.
pub fn is_h_line_graph(g: &HoffmanGraph) -> bool {
    Search::new(g).run(&mut |_| ControlFlow::Break(())).is_break()
}

/// All strict covers of `g` up to equivalence, ordered by added-fat key.
pub fn enumerate_strict_covers(g: &HoffmanGraph) -> Vec<StrictCover> {
    let search = Search::new(g);
    let mut found: BTreeSet<RawCover> = BTreeSet::new();
    let mut keys = BTreeSet::new();
    let _ = search.run(&mut |raw| {
        if keys.insert(raw.key.clone()) {
            found.insert(raw);
        }
        ControlFlow::Continue(())
    });
    found.iter().map(|raw| search.materialize(raw).expect("cover fits in the vertex limit")).collect()
}

/// Number of strict-cover equivalence classes.
pub fn count_cover_classes(g: &HoffmanGraph) -> usize {
    let search = Search::new(g);
    let mut keys = BTreeSet::new();
    let _ = search.run(&mut |raw| {
        keys.insert(raw.key);
        ControlFlow::Continue(())
    });
    keys.len()
}

/// What remains of the part containing a deleted slim vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DeletionCase {
    /// The part disappears (an `H2` part).
    Vanished,
    /// One slim vertex remains; it becomes an `H2` part with a new pendant
    /// fat vertex.
    PendantH2,
    /// Two adjacent slim vertices remain; they become two `H2` parts sharing
    /// the old fat vertex, each with a new pendant fat vertex.
    TwoH2SharingFat,
    /// Two non-adjacent slim vertices remain; they form an `H3` part.
    H3,
}

/// Given a sum `h` of family parts and a slim vertex `x`, builds a strict
/// cover of `h − x` that changes only the part containing `x`.
///
/// The result's base graph is `h − x` with vertices renumbered as by
/// [`HoffmanGraph::delete_slim`].
pub fn delete_vertex_from_cover(
    h: &SumDecomposition,
    x: usize,
) -> Result<(StrictCover, DeletionCase), RecognitionError> {
    let host = &h.host;
    if x >= host.slim_count() {
        return Err(RecognitionError::VertexNotInGraph(x));
    }
    for i in 0..h.parts.len() {
        if PartKind::of(&h.part_graph(i)).is_none() {
            return Err(RecognitionError::NotFamilyPart(i));
        }
    }
    let masks = h.part_masks();
    let p = h.part_of_slim(x).expect("slim vertices lie in a part");
    let rest = masks[p] & host.slim_mask() & !bit(x);
    // renumbering of h − x
    let keep = host.slim_closure_mask(host.slim_mask() & !bit(x));
    let index: Vec<Option<usize>> = {
        let mut next = 0;
        (0..host.order())
            .map(|v| {
                (keep & bit(v) != 0).then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    };
    let base = host.delete_slim(bit(x)).expect("x is slim");
    let case = match count(rest) {
        0 => DeletionCase::Vanished,
        1 => DeletionCase::PendantH2,
        _ => {
            let mut it = ones(rest);
            let (a, b) = (it.next().unwrap(), it.next().unwrap());
            if host.adjacent(a, b) {
                DeletionCase::TwoH2SharingFat
            } else {
                DeletionCase::H3
            }
        }
    };
    let pendants: Vec<usize> = match case {
        DeletionCase::PendantH2 | DeletionCase::TwoH2SharingFat => ones(rest).map(|v| index[v].unwrap()).collect(),
        _ => Vec::new(),
    };
    let n = base.order();
    let total = n + pendants.len();
    if total > MAX_VERTICES {
        return Err(RecognitionError::TooLarge(total));
    }
    let mut adj = base.rows().to_vec();
    adj.resize(total, 0);
    for (j, &v) in pendants.iter().enumerate() {
        adj[n + j] = bit(v);
        adj[v] |= bit(n + j);
    }
    let cover = HoffmanGraph::from_rows(base.slim_count(), total - base.slim_count(), adj)
        .map_err(|_| RecognitionError::TooLarge(total))?;
    let mut parts: Vec<u64> = Vec::new();
    for (i, &m) in masks.iter().enumerate() {
        if i == p {
            continue;
        }
        parts.push(ones(m).fold(0, |acc, v| acc | bit(index[v].expect("other parts survive"))));
    }
    let new_slims: Vec<usize> = ones(rest).map(|v| index[v].unwrap()).collect();
    match case {
        DeletionCase::Vanished => {}
        DeletionCase::H3 => parts.push(cover.slim_closure_mask(bit(new_slims[0]) | bit(new_slims[1]))),
        _ => {
            for &v in &new_slims {
                parts.push(cover.slim_closure_mask(bit(v)));
            }
        }
    }
    let decomposition = SumDecomposition::from_masks_unchecked(cover.clone(), parts);
    let sc = StrictCover { embedding: Embedding::identity(base.order()), base, cover, decomposition };
    debug_assert!(sc.is_valid());
    Ok((sc, case))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::figures::{h1, h2, h3, h5};
    use crate::graph::named::*;
    use crate::sums::build_sum;

    #[test]
    fn small_examples() {
        assert!(is_h_line(&HoffmanGraph::empty()).is_some());
        for n in 1..=7 {
            assert!(is_h_line_graph(&complete(n)), "K{n}");
            assert!(is_h_line_graph(&path(n)), "P{n}");
            if n >= 3 {
                assert!(is_h_line_graph(&cycle(n)), "C{n}");
            }
        }
        let c = is_h_line(&cycle(7)).unwrap();
        assert!(c.is_valid());
        // the claw is the line graph of nothing classical but is covered by
        // an H3 leaf pair
        let claw = HoffmanGraph::slim(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(is_h_line_graph(&claw));
    }

    #[test]
    fn family_parts_and_h1_are_line() {
        for g in [h1(), h2(), h3(), h5()] {
            let c = is_h_line(&g).unwrap();
            assert!(c.is_valid());
        }
    }

    #[test]
    fn two_fat_pair_is_not_line() {
        let f = HoffmanGraph::build(2, 2, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(is_h_line(&f).is_none());
    }

    #[test]
    fn single_vertex_has_one_class() {
        let k1 = complete(1);
        let covers = enumerate_strict_covers(&k1);
        assert_eq!(covers.len(), 1);
        assert_eq!(covers[0].part_kinds(), vec![PartKind::H2]);
    }

    #[test]
    fn equivalence() {
        let c = is_h_line(&cycle(5)).unwrap();
        assert!(covers_equivalent(&c, &c).unwrap());
        let p = cycle(5).permuted(&[0, 1, 2, 4, 3]);
        let other = is_h_line(&p).unwrap();
        assert_eq!(covers_equivalent(&c, &other), Err(RecognitionError::DifferentBase));
        let all = enumerate_strict_covers(&path(3));
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                assert_eq!(covers_equivalent(a, b).unwrap(), i == j);
            }
        }
    }

    #[test]
    fn deletion_cases() {
        let sum = build_sum(&[h2()], &[]).unwrap();
        assert_eq!(delete_vertex_from_cover(&sum, 0).unwrap().1, DeletionCase::Vanished);
        let sum = build_sum(&[h3(), h2()], &[vec![(0, 0), (1, 0)]]).unwrap();
        let (c, case) = delete_vertex_from_cover(&sum, 0).unwrap();
        assert_eq!(case, DeletionCase::PendantH2);
        assert!(c.is_valid());
        let sum = build_sum(&[h5(), h2()], &[vec![(0, 0), (1, 0)]]).unwrap();
        let cases: Vec<_> = (0..3).map(|x| delete_vertex_from_cover(&sum, x).unwrap().1).collect();
        assert_eq!(cases, vec![DeletionCase::H3, DeletionCase::H3, DeletionCase::TwoH2SharingFat]);
        assert_eq!(delete_vertex_from_cover(&sum, 9).unwrap_err(), RecognitionError::VertexNotInGraph(9));
    }
}
