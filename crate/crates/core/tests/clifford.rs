use micz_core::clifford::{casimir, clifford_relations_hold, gamma_matrices, rep_s2mu, so_relations_hold};
use micz_core::scalar::ring::ratio;
use micz_core::scalar::{Coeff, Ring};
use micz_core::Gaussian;

#[test]
fn clifford_relations_for_n_up_to_four() {
    for n in 2..=4 {
        let g = gamma_matrices(n);
        assert_eq!(g.len(), 2 * n - 1);
        assert_eq!(g[0].rows(), 1 << (n - 1));
        assert!(clifford_relations_hold(&g), "n={n}");
    }
}

#[test]
fn so_brackets_and_hermiticity() {
    for (n, two_mu) in [(2, 1), (3, 1), (2, 2), (2, 0)] {
        let rep = rep_s2mu(n, two_mu).unwrap();
        assert!(so_relations_hold(&rep), "n={n} 2μ={two_mu}");
        for (a, b) in rep.pairs() {
            assert!(rep.gamma_ab(a, b).is_hermitian());
        }
    }
}

/// `Σ_{a<b} γ_ab²` summed entry by entry, against `(2n−1)(2n−2)/8` for the
/// spinor of `so(2n−1)`.
#[test]
fn casimir_against_entrywise_sum_and_closed_form() {
    for (n, expect) in [(2usize, ratio(3, 4)), (3, ratio(5, 2))] {
        let rep = rep_s2mu(n, 1).unwrap();
        let dim = rep.dim;
        let mut acc = vec![vec![Gaussian::zero(); dim]; dim];
        for (a, b) in rep.pairs() {
            let m = rep.gamma_ab(a, b);
            for (i, row) in acc.iter_mut().enumerate() {
                for (j, entry) in row.iter_mut().enumerate() {
                    for k in 0..dim {
                        *entry = entry.plus(&m.get(i, k).times(m.get(k, j)));
                    }
                }
            }
        }
        for (i, row) in acc.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                let want = if i == j { Gaussian::from_rational(expect.clone()) } else { Gaussian::zero() };
                assert_eq!(*entry, want, "n={n} entry ({i},{j})");
            }
        }
        let m = (2 * n - 1) as i64;
        assert_eq!(expect, ratio(m * (m - 1), 8));
        assert_eq!(casimir(&rep).unwrap(), expect);
    }
}

#[test]
fn spin_one_casimir() {
    assert_eq!(casimir(&rep_s2mu(2, 2).unwrap()).unwrap(), ratio(2, 1));
}
