use hoffman_core::bits::bit;
use hoffman_core::enumeration::connected_slim_graphs;
use hoffman_core::spectral::{certify, char_poly, smallest_eigenvalue, SpecialMatrix, Threshold};
use hoffman_core::HoffmanGraph;
use nalgebra::DMatrix;
use num_bigint::BigInt;
use proptest::prelude::*;

fn random_graph(slim: usize, fat: usize, a: u64, b: u64) -> HoffmanGraph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..slim {
        for v in u + 1..slim {
            if a & bit(k % 64) != 0 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    let mut fats = 0;
    for f in 0..fat {
        let nbrs: Vec<usize> = (0..slim).filter(|&u| b & bit((f * slim + u) % 64) != 0).collect();
        if !nbrs.is_empty() {
            edges.extend(nbrs.into_iter().map(|u| (u, slim + fats)));
            fats += 1;
        }
    }
    HoffmanGraph::build(slim, fats, &edges).unwrap()
}

fn float_min_eigenvalue(m: &SpecialMatrix) -> f64 {
    let d = DMatrix::from_fn(m.n, m.n, |i, j| m.get(i, j) as f64);
    d.symmetric_eigen().eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Fraction-free Gaussian elimination.
fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k] == BigInt::from(0) {
            match (k + 1..n).find(|&r| a[r][k] != BigInt::from(0)) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::from(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn smallest_eigenvalue_matches_floating_point(s in 1usize..=9, f in 0usize..=3, a in any::<u64>(), b in any::<u64>()) {
        let g = random_graph(s, f, a, b);
        let m = SpecialMatrix::of(&g);
        prop_assert!(m.is_symmetric());
        let e = smallest_eigenvalue(&g).unwrap();
        prop_assert!(e.contains(float_min_eigenvalue(&m), 1e-7), "{} not in [{}, {}]", float_min_eigenvalue(&m), e.lower_f64(), e.upper_f64());
    }

    #[test]
    fn char_poly_matches_determinants(s in 1usize..=7, f in 0usize..=3, a in any::<u64>(), b in any::<u64>()) {
        let g = random_graph(s, f, a, b);
        let m = SpecialMatrix::of(&g);
        let p = char_poly(&m);
        prop_assert_eq!(p.degree(), m.n);
        for x in -4i64..=4 {
            let rows = (0..m.n)
                .map(|i| (0..m.n).map(|j| BigInt::from(if i == j { x } else { 0 } - m.get(i, j))).collect())
                .collect();
            prop_assert_eq!(p.eval(&BigInt::from(x)), bareiss_det(rows));
        }
    }
}

#[test]
fn threshold_agrees_with_floating_point_away_from_ties() {
    let theta = -1.0 - 2f64.sqrt();
    for n in 1..=7 {
        for g in connected_slim_graphs(n).iter() {
            let (e, t) = certify(g).unwrap();
            let x = float_min_eigenvalue(&SpecialMatrix::of(g));
            if (x - theta).abs() > 1e-6 {
                assert_eq!(t == Threshold::Below, x < theta, "{g}");
            } else {
                assert!(e.contains(theta, 1e-7));
            }
        }
    }
}
