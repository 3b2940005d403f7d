use micz_core::report::Status;
use micz_core::reps::algebra::{bracket_formula, cartan, decompose, defining_matrix, exact, labels, ladder, root_vectors};
use micz_core::reps::freudenthal::dimension_by_multiplicities;
use micz_core::reps::{
    abstract_algebra_checks, angular_weights, branch_b_to_d, k_type_table, level_weight, uniqueness_search,
    verify_decompositions, weyl_dimension, Series, Weight,
};
use micz_core::scalar::ring::{rat, ratio};
use micz_core::scalar::Scalar;
use micz_core::ExactValue;
use proptest::prelude::*;

/// Dominant doubled entries of one congruence class, `max ≤ 2·top`.
fn dominant(series: Series, rank: usize, top: i64) -> Vec<Weight> {
    let mut out = Vec::new();
    for parity in [0, 1] {
        let mut rows: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..rank {
            rows = rows
                .into_iter()
                .flat_map(|p| {
                    let hi = p.last().copied().unwrap_or(2 * top);
                    (-2 * top..=hi).filter(|d| (d - parity) % 2 == 0).map(move |d| {
                        let mut q = p.clone();
                        q.push(d);
                        q
                    })
                })
                .collect();
        }
        out.extend(rows.iter().map(|d| Weight::halves(series, d)).filter(Weight::is_dominant));
    }
    out
}

fn b_weight() -> impl Strategy<Value = Weight> {
    (2usize..=3, 0usize..64).prop_map(|(rank, k)| {
        let all = dominant(Series::B, rank, 3);
        all[k % all.len()].clone()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn branching_preserves_dimension(lambda in b_weight()) {
        let parts = branch_b_to_d(&lambda).unwrap();
        let sum: u64 = parts.iter().map(|w| weyl_dimension(w).unwrap()).sum();
        prop_assert_eq!(sum, weyl_dimension(&lambda).unwrap());
        let mut dedup = parts.clone();
        dedup.sort();
        dedup.dedup();
        prop_assert_eq!(dedup.len(), parts.len());
    }
}

#[test]
fn weyl_formula_matches_multiplicity_counting() {
    for series in [Series::B, Series::D] {
        for lambda in dominant(series, 2, 3) {
            assert_eq!(weyl_dimension(&lambda).unwrap(), dimension_by_multiplicities(&lambda).unwrap(), "{series:?} {lambda}");
        }
        for lambda in dominant(series, 3, 1) {
            assert_eq!(weyl_dimension(&lambda).unwrap(), dimension_by_multiplicities(&lambda).unwrap(), "{series:?} {lambda}");
        }
    }
}

#[test]
fn reference_dimensions() {
    assert_eq!(weyl_dimension(&Weight::halves(Series::B, &[0, 0])).unwrap(), 1);
    assert_eq!(weyl_dimension(&Weight::halves(Series::B, &[2, 0])).unwrap(), 5);
    for l in 0..=3i64 {
        let w = Weight::halves(Series::D, &[2 * l, 0]);
        assert_eq!(weyl_dimension(&w).unwrap(), ((l + 1) * (l + 1)) as u64);
        assert_eq!(dimension_by_multiplicities(&w).unwrap(), ((l + 1) * (l + 1)) as u64);
    }
    assert_eq!(weyl_dimension(&level_weight(2, 2, 0)).unwrap(), 14);
    assert_eq!(weyl_dimension(&level_weight(1, 2, 1)).unwrap(), 16);
    assert!(weyl_dimension(&Weight::halves(Series::B, &[0, 2])).is_err());
}

#[test]
fn reference_branchings() {
    let d = |v: &[i64]| Weight::halves(Series::D, v);
    let mut got = branch_b_to_d(&Weight::halves(Series::B, &[2, 0])).unwrap();
    got.sort();
    assert_eq!(got, vec![d(&[0, 0]), d(&[2, 0])]);
    let mut got = branch_b_to_d(&Weight::halves(Series::B, &[1, 1])).unwrap();
    got.sort();
    assert_eq!(got, vec![d(&[1, -1]), d(&[1, 1])]);
    assert_eq!(branch_b_to_d(&Weight::halves(Series::B, &[0, 0, 0])).unwrap(), vec![d(&[0, 0, 0])]);
}

#[test]
fn level_modules_branch_into_angular_momenta() {
    for n in 2..=3 {
        for two_mu in 0..=1 {
            for level in 0..=6 {
                let mut got = branch_b_to_d(&level_weight(level, n, two_mu)).unwrap();
                let mut want: Vec<Weight> = (0..=level).flat_map(|l| angular_weights(l, n, two_mu)).collect();
                got.sort();
                want.sort();
                assert_eq!(got, want, "n={n} 2μ={two_mu} I={level}");
            }
        }
    }
}

#[test]
fn uniqueness_search_finds_one_weight() {
    for n in 2..=3 {
        for two_mu in 0..=1 {
            for level in 0..=6 {
                let (found, searched) = uniqueness_search(level, n, two_mu, 7).unwrap();
                assert_eq!(found, vec![level_weight(level, n, two_mu)], "n={n} 2μ={two_mu} I={level}");
                assert!(searched > 1);
            }
        }
    }
}

#[test]
fn decomposition_suite_passes() {
    for n in 2..=3 {
        for two_mu in 0..=1 {
            let items = verify_decompositions(n, two_mu, 6, false).unwrap();
            assert!(items.iter().all(|i| i.status == Status::Pass), "n={n} 2μ={two_mu}");
            assert_eq!(items.len(), 4 * 7);
        }
    }
}

#[test]
fn k_type_steps_are_unit() {
    for n in 2..=3 {
        for two_mu in 0..=1 {
            let t = k_type_table(n, two_mu, 6).unwrap();
            for w in t.rows.windows(2) {
                assert_eq!(&w[1].spin2 - &w[0].spin2, rat(-1));
            }
        }
    }
    let t = k_type_table(2, 1, 0).unwrap();
    assert_eq!((t.rows[0].spin2.clone(), t.rows[0].dim), (rat(-2), 4));
    assert_eq!(t.rows[0].weight, Weight::halves(Series::B, &[1, 1]));
    assert_eq!(t.highest_weight.entries, vec![rat(-2), ratio(1, 2), ratio(1, 2)]);
    let t = k_type_table(2, 0, 0).unwrap();
    assert_eq!((t.rows[0].spin2.clone(), t.rows[0].dim), (ratio(-3, 2), 1));
}

#[test]
fn structure_constants_from_two_sources() {
    for n in 2..=3 {
        let ls = labels(n);
        assert_eq!(ls.len(), (2 * n + 3) * (2 * n + 2) / 2);
        for &x in &ls {
            for &y in &ls {
                let m = defining_matrix(n, x.0, x.1).commutator(&defining_matrix(n, y.0, y.1));
                assert_eq!(decompose(n, &m).unwrap(), bracket_formula(x, y), "{x:?} {y:?}");
            }
        }
    }
}

#[test]
fn every_root_vector_has_its_root() {
    for n in 2..=3 {
        let hs: Vec<_> = cartan(n).iter().map(exact).collect();
        for rv in root_vectors(n) {
            for (h, a) in hs.iter().zip(&rv.root) {
                let expect = rv.matrix.scale(&ExactValue::from_rational(&rat(*a)));
                assert_eq!(h.commutator(&rv.matrix), expect, "{}", rv.label());
            }
        }
        let h0 = &hs[0];
        for sign in [1, -1] {
            let e = ladder(n, sign);
            assert_eq!(h0.commutator(&e), e.scale(&ExactValue::from_rational(&rat(sign))));
        }
    }
}

#[test]
fn abstract_suite_passes_for_several_seeds() {
    for seed in [0, 1, 99] {
        let items = abstract_algebra_checks(2, seed, false).unwrap();
        assert!(items.iter().all(|i| i.status == Status::Pass));
    }
}
