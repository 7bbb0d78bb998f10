use hoffman_core::bits::{bit, ones};
use hoffman_core::enumeration::connected_slim_graphs;
use hoffman_core::figures::family;
use hoffman_core::recognition::{delete_vertex_from_cover, DeletionCase, PartKind};
use hoffman_core::sums::ClassSet;
use hoffman_core::{decompose, enumerate_strict_covers, is_h_line, is_h_line_graph, HoffmanGraph};

/// Naive recognition: try every assignment of at most two fat labels per
/// slim vertex and ask whether the resulting Hoffman graph is a sum of
/// family parts. The only pruning is that adjacent slim vertices of a sum
/// share exactly one fat vertex and any two share at most one.
fn brute_force_h_line(g: &HoffmanGraph) -> bool {
    let n = g.slim_count();
    let allowed = ClassSet::new(family().iter());
    let mut sets = vec![0u64; n];
    fn rec(g: &HoffmanGraph, allowed: &ClassSet, v: usize, labels: usize, sets: &mut Vec<u64>) -> bool {
        let n = g.slim_count();
        if v == n {
            let mut edges = g.edges();
            for (u, &s) in sets.iter().enumerate() {
                edges.extend(ones(s).map(|f| (u, n + f)));
            }
            let host = HoffmanGraph::build(n, labels, &edges).expect("every label is used");
            return !decompose(&host, allowed).is_empty();
        }
        // new labels are introduced in increasing order
        let mut candidates = Vec::new();
        for a in 0..(labels + 1) {
            candidates.push((bit(a), labels.max(a + 1)));
            for b in a + 1..(labels + 2) {
                if b == labels + 1 && a != labels {
                    continue;
                }
                candidates.push((bit(a) | bit(b), labels.max(b + 1)));
            }
        }
        for (s, next) in candidates {
            let ok = (0..v).all(|u| {
                let shared = (sets[u] & s).count_ones();
                shared <= 1 && (!g.adjacent(u, v) || shared == 1)
            });
            if ok {
                sets[v] = s;
                if rec(g, allowed, v + 1, next, sets) {
                    return true;
                }
            }
        }
        false
    }
    rec(g, &allowed, 0, 0, &mut sets)
}

#[test]
fn agrees_with_brute_force_up_to_six_vertices() {
    for n in 1..=6 {
        for g in connected_slim_graphs(n).iter() {
            assert_eq!(is_h_line_graph(g), brute_force_h_line(g), "{g}");
        }
    }
}

#[test]
fn closed_under_vertex_deletion() {
    for n in 2..=7 {
        for g in connected_slim_graphs(n).iter().filter(|g| is_h_line_graph(g)) {
            for v in 0..n {
                let h = g.delete_slim(bit(v)).unwrap();
                assert!(is_h_line_graph(&h), "{g} minus {v}");
            }
        }
    }
}

#[test]
fn closed_under_disjoint_union() {
    let line: Vec<HoffmanGraph> =
        (1..=4).flat_map(|n| connected_slim_graphs(n).into_iter()).filter(is_h_line_graph).collect();
    for a in &line {
        for b in &line {
            assert!(is_h_line_graph(&a.disjoint_union(b).unwrap()));
        }
    }
    // a non-line component spoils the union
    let claw = HoffmanGraph::slim(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
    let bad = connected_slim_graphs(5).into_iter().find(|g| !is_h_line_graph(g)).unwrap();
    assert!(is_h_line_graph(&claw));
    assert!(!is_h_line_graph(&claw.disjoint_union(&bad).unwrap()));
}

#[test]
fn covers_are_sound_and_decompose_uniquely() {
    let allowed = ClassSet::new(family().iter());
    for n in 1..=7 {
        for g in connected_slim_graphs(n).iter() {
            for c in enumerate_strict_covers(g) {
                assert!(c.is_valid(), "{g}");
                assert_eq!(decompose(&c.cover, &allowed).len(), 1, "{}", c.cover);
            }
        }
    }
}

#[test]
fn sum_properties_over_covers() {
    for n in 1..=6 {
        for g in connected_slim_graphs(n).iter() {
            let covers = enumerate_strict_covers(g);
            if !covers.is_empty() {
                assert!(covers.iter().any(|c| c.cover.is_connected()), "no connected cover of {g}");
            }
            for c in &covers {
                let h = &c.cover;
                let slim = h.slim_mask();
                // at most two fat neighbours, at most one shared
                for u in ones(slim) {
                    assert!(h.fat_neighbours(u).count_ones() <= 2);
                    for v in ones(slim & !hoffman_core::bits::low_mask(u + 1)) {
                        assert!((h.fat_neighbours(u) & h.fat_neighbours(v)).count_ones() <= 1);
                    }
                }
                let d = &c.decomposition;
                let masks = d.part_masks();
                // the H2 parts carry every fat vertex of a connected sum
                let kinds = c.part_kinds();
                if h.is_connected() && masks.len() > 1 && kinds.contains(&PartKind::H2) {
                    let h2_fats = masks
                        .iter()
                        .zip(&kinds)
                        .filter(|(_, k)| **k == PartKind::H2)
                        .fold(0, |m, (p, _)| m | (p & h.fat_mask()));
                    assert_eq!(h2_fats, h.fat_mask(), "{h}");
                }
                if h.is_connected() && masks.len() > 1 {
                    assert!(h.slim_subgraph().is_connected());
                }
                // restricting to two parts gives their sum
                for i in 0..masks.len() {
                    for j in i + 1..masks.len() {
                        let pair = h.induced(masks[i] | masks[j]).unwrap();
                        let closure = h.induced_slim_closure((masks[i] | masks[j]) & slim).unwrap();
                        assert_eq!(pair, closure);
                    }
                }
            }
        }
    }
}

#[test]
fn deletion_always_yields_a_cover_of_one_case() {
    let mut seen = std::collections::HashSet::new();
    for n in 1..=6 {
        for g in connected_slim_graphs(n).iter() {
            for c in enumerate_strict_covers(g) {
                for x in 0..n {
                    let (cover, case) = delete_vertex_from_cover(&c.decomposition, x).unwrap();
                    assert!(cover.is_valid());
                    assert_eq!(cover.base, c.cover.delete_slim(bit(x)).unwrap());
                    let kind = PartKind::of(&c.decomposition.part_graph(c.decomposition.part_of_slim(x).unwrap()));
                    let expected: &[DeletionCase] = match kind.unwrap() {
                        PartKind::H2 => &[DeletionCase::Vanished],
                        PartKind::H3 => &[DeletionCase::PendantH2],
                        PartKind::H5 => &[DeletionCase::TwoH2SharingFat, DeletionCase::H3],
                    };
                    assert!(expected.contains(&case));
                    seen.insert(case);
                }
            }
        }
    }
    assert_eq!(seen.len(), 4);
}

#[test]
fn least_cover_is_deterministic() {
    for g in connected_slim_graphs(6).iter().filter(|g| is_h_line_graph(g)) {
        assert_eq!(is_h_line(g), is_h_line(g));
    }
}
