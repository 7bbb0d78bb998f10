use std::collections::BTreeMap;

use hoffman_core::bits::{low_mask, ones};
use hoffman_core::enumeration::KPart;
use hoffman_core::figures::family;
use hoffman_core::recognition::PartKind;
use hoffman_core::sums::{build_sum, ClassSet, SumError};
use hoffman_core::{decompose, validate_sum, SumDecomposition};
use proptest::prelude::*;

const FAMILY: [KPart; 3] = [KPart::H2, KPart::H3, KPart::H5];

/// Parts drawn from `kinds`, with each fat vertex sent to one of `classes`
/// glue classes or left private. Glue assignments that put two fat vertices
/// of one part in the same class are dropped rather than rejected, so most
/// draws build.
fn random_sum(kinds: &[KPart], picks: &[u8], slots: &[u8], classes: u8) -> Result<SumDecomposition, SumError> {
    let parts: Vec<KPart> = picks.iter().map(|&p| kinds[p as usize % kinds.len()]).collect();
    let graphs: Vec<_> = parts.iter().map(|p| p.graph()).collect();
    let mut glue: BTreeMap<u8, Vec<(usize, usize)>> = BTreeMap::new();
    let mut k = 0;
    for (c, g) in graphs.iter().enumerate() {
        for f in 0..g.fat_count() {
            let s = slots.get(k).copied().unwrap_or(0) % (classes + 1);
            k += 1;
            if s == classes {
                continue;
            }
            let class = glue.entry(s).or_default();
            if !class.iter().any(|&(cc, _)| cc == c) {
                class.push((c, f));
            }
        }
    }
    let glue: Vec<Vec<(usize, usize)>> = glue.into_values().filter(|c| c.len() > 1).collect();
    build_sum(&graphs, &glue)
}

fn family_sum() -> impl Strategy<Value = SumDecomposition> {
    (prop::collection::vec(any::<u8>(), 1..=5), prop::collection::vec(any::<u8>(), 10), 1u8..=4)
        .prop_filter_map("conflicting glue", |(picks, slots, classes)| random_sum(&FAMILY, &picks, &slots, classes).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn built_sums_validate(picks in prop::collection::vec(any::<u8>(), 1..=5), slots in prop::collection::vec(any::<u8>(), 10), classes in 1u8..=4) {
        if let Ok(d) = random_sum(&KPart::ALL, &picks, &slots, classes) {
            prop_assert!(validate_sum(&d.host, &d.part_masks()).is_valid());
        }
    }

    #[test]
    fn family_sums_decompose_uniquely(d in family_sum()) {
        let allowed = ClassSet::new(family().iter());
        let found = decompose(&d.host, &allowed);
        prop_assert_eq!(found.len(), 1);
        prop_assert_eq!(&found[0], &d);
    }

    #[test]
    fn slim_vertices_have_few_fat_neighbours(d in family_sum()) {
        let h = &d.host;
        for u in ones(h.slim_mask()) {
            prop_assert!(h.fat_neighbours(u).count_ones() <= 2);
            for v in ones(h.slim_mask() & !low_mask(u + 1)) {
                prop_assert!((h.fat_neighbours(u) & h.fat_neighbours(v)).count_ones() <= 1);
            }
        }
    }

    #[test]
    fn h2_parts_carry_all_fat_vertices(d in family_sum()) {
        let h = &d.host;
        let masks = d.part_masks();
        let h2: Vec<u64> = masks
            .iter()
            .enumerate()
            .filter(|(i, _)| PartKind::of(&d.part_graph(*i)) == Some(PartKind::H2))
            .map(|(_, &m)| m)
            .collect();
        if h.is_connected() && masks.len() > 1 && !h2.is_empty() {
            let fats = h2.iter().fold(0, |m, p| m | p) & h.fat_mask();
            prop_assert_eq!(fats, h.fat_mask());
        }
        // with two or more parts the slim graph of a connected sum is connected
        if h.is_connected() && masks.len() > 1 {
            prop_assert!(h.slim_subgraph().is_connected());
        }
    }

    #[test]
    fn restriction_to_two_parts_is_their_sum(d in family_sum()) {
        let h = &d.host;
        let masks = d.part_masks();
        for i in 0..masks.len() {
            for j in i + 1..masks.len() {
                let union = masks[i] | masks[j];
                let restricted = h.induced_slim_closure(union & h.slim_mask()).unwrap();
                prop_assert_eq!(restricted, h.induced(union).unwrap());
            }
        }
    }
}

#[test]
fn shared_fat_conflict_is_reported() {
    // two H2 parts glued along both fat vertices
    let h2 = KPart::H2.graph();
    let glue = vec![vec![(0, 0), (1, 0)], vec![(0, 1), (1, 1)]];
    assert!(matches!(build_sum(&[h2.clone(), h2], &glue), Err(SumError::SharedFatConflict(_, _))));
}
