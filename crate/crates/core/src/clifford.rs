//! Gamma matrices of ℝ^{2n−1} and the representations `s^{2μ}` of so(2n−1).
//!
//! Construction: for `n = 1` the single gamma matrix is `[1]`. Passing from
//! `n` to `n + 1`, every existing `γ_a` becomes `γ_a ⊗ σ₁`, then `I ⊗ σ₂` and
//! `I ⊗ σ₃` are appended. For `n = 2` this yields the Pauli triple
//! `(σ₁, σ₂, σ₃)`. The generators are `γ_ab = (i/4)[γ_a, γ_b]`.
//!
//! Indices are 0-based: `a, b ∈ 0..2n−1`.

use crate::error::{Error, Result};
use crate::matrix::{times_i, Matrix};
use crate::scalar::ring::{gauss, rat, ratio, Coeff, Ring};
use crate::{Gaussian, Rational};

fn g(re: i64, im: i64) -> Gaussian {
    gauss(rat(re), rat(im))
}

pub fn pauli() -> [Matrix<Gaussian>; 3] {
    [
        Matrix::from_rows(vec![vec![g(0, 0), g(1, 0)], vec![g(1, 0), g(0, 0)]]),
        Matrix::from_rows(vec![vec![g(0, 0), g(0, -1)], vec![g(0, 1), g(0, 0)]]),
        Matrix::from_rows(vec![vec![g(1, 0), g(0, 0)], vec![g(0, 0), g(-1, 0)]]),
    ]
}

/// The `2n − 1` hermitian gamma matrices of size `2^{n−1}`.
pub fn gamma_matrices(n: usize) -> Vec<Matrix<Gaussian>> {
    assert!(n >= 1);
    let [s1, s2, s3] = pauli();
    let mut gammas = vec![Matrix::identity(1)];
    let mut dim = 1;
    for _ in 1..n {
        let id = Matrix::<Gaussian>::identity(dim);
        let mut next: Vec<_> = gammas.iter().map(|m| m.kron(&s1)).collect();
        next.push(id.kron(&s2));
        next.push(id.kron(&s3));
        gammas = next;
        dim *= 2;
    }
    gammas
}

/// A representation of so(2n−1) by its generators `γ_ab`, `a < b`.
#[derive(Clone, Debug)]
pub struct Rep {
    pub n: usize,
    pub two_mu: u32,
    pub dim: usize,
    gens: Vec<Matrix<Gaussian>>,
}

fn pair_index(m: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < m);
    a * (2 * m - a - 1) / 2 + (b - a - 1)
}

impl Rep {
    /// Number of vector indices, `2n − 1`.
    pub fn rank(&self) -> usize {
        2 * self.n - 1
    }

    /// `γ_ab` with `γ_ba = −γ_ab` and `γ_aa = 0`.
    pub fn gamma_ab(&self, a: usize, b: usize) -> Matrix<Gaussian> {
        let m = self.rank();
        match a.cmp(&b) {
            std::cmp::Ordering::Less => self.gens[pair_index(m, a, b)].clone(),
            std::cmp::Ordering::Greater => self.gens[pair_index(m, b, a)].neg(),
            std::cmp::Ordering::Equal => Matrix::zeros(self.dim, self.dim),
        }
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let m = self.rank();
        (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.iter().all(Matrix::is_zero)
    }
}

/// Spin-½ generators `(i/4)[γ_a, γ_b]`.
fn spinor_generators(n: usize) -> Vec<Matrix<Gaussian>> {
    let gammas = gamma_matrices(n);
    let m = gammas.len();
    let quarter = Gaussian::from_rational(ratio(1, 4));
    let mut out = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            out.push(times_i(&gammas[a].commutator(&gammas[b])).scale(&quarter));
        }
    }
    out
}

/// Spin-1 generators of so(3): `γ_ab = −ε_abc J_c` with `(J_c)_{jk} = −i ε_cjk`.
/// The sign matches the spin-½ case, where `(i/4)[σ_a, σ_b] = −ε_abc σ_c/2`.
fn spin_one_generators() -> Vec<Matrix<Gaussian>> {
    let eps = |a: usize, b: usize, c: usize| -> i64 {
        match (a, b, c) {
            (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
            (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
            _ => 0,
        }
    };
    let j: Vec<Matrix<Gaussian>> =
        (0..3).map(|c| Matrix::from_fn(3, 3, |x, y| g(0, -eps(c, x, y)))).collect();
    let mut out = Vec::new();
    for a in 0..3 {
        for b in a + 1..3 {
            let mut acc = Matrix::zeros(3, 3);
            for (c, jc) in j.iter().enumerate() {
                let e = eps(a, b, c);
                if e != 0 {
                    acc = acc.sub(&jc.scale(&g(e, 0)));
                }
            }
            out.push(acc);
        }
    }
    out
}

/// The representation `s^{2μ}`: trivial for `2μ = 0`, spinor for `2μ = 1`,
/// and for `n = 2` only, spin one for `2μ = 2`.
pub fn rep_s2mu(n: usize, two_mu: u32) -> Result<Rep> {
    if n < 2 {
        return Err(Error::UnsupportedRep { n, two_mu });
    }
    let count = (2 * n - 1) * (2 * n - 2) / 2;
    let (dim, gens) = match (n, two_mu) {
        (_, 0) => (1, vec![Matrix::zeros(1, 1); count]),
        (_, 1) => (1 << (n - 1), spinor_generators(n)),
        (2, 2) => (3, spin_one_generators()),
        _ => return Err(Error::UnsupportedRep { n, two_mu }),
    };
    Ok(Rep { n, two_mu, dim, gens })
}

/// `λ` with `Σ_{a<b} γ_ab² = λ·I`.
pub fn casimir(rep: &Rep) -> Result<Rational> {
    let mut acc = Matrix::<Gaussian>::zeros(rep.dim, rep.dim);
    for (a, b) in rep.pairs() {
        let m = rep.gamma_ab(a, b);
        acc = acc.add(&m.mul(&m));
    }
    match acc.as_scalar() {
        Some(z) if z.im.is_zero() => Ok(z.re),
        _ => Err(Error::NotScalar),
    }
}

fn delta(a: usize, b: usize) -> i64 {
    (a == b) as i64
}

/// `[γ_ab, γ_cd] − i(δ_ac γ_db + δ_bd γ_ca − δ_ad γ_cb − δ_bc γ_da)`.
pub fn bracket_residual(rep: &Rep, a: usize, b: usize, c: usize, d: usize) -> Matrix<Gaussian> {
    let lhs = rep.gamma_ab(a, b).commutator(&rep.gamma_ab(c, d));
    let mut rhs = Matrix::zeros(rep.dim, rep.dim);
    for (k, (x, y)) in [(delta(a, c), (d, b)), (delta(b, d), (c, a)), (-delta(a, d), (c, b)), (-delta(b, c), (d, a))] {
        if k != 0 {
            rhs = rhs.add(&rep.gamma_ab(x, y).scale(&g(k, 0)));
        }
    }
    lhs.sub(&times_i(&rhs))
}

/// Every so(2n−1) bracket relation holds exactly.
pub fn so_relations_hold(rep: &Rep) -> bool {
    let m = rep.rank();
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    if !bracket_residual(rep, a, b, c, d).is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `{γ_a, γ_b} = 2δ_ab I` and hermiticity.
pub fn clifford_relations_hold(gammas: &[Matrix<Gaussian>]) -> bool {
    let dim = gammas.first().map_or(0, Matrix::rows);
    let two = Matrix::scalar(dim, g(2, 0));
    let zero = Matrix::zeros(dim, dim);
    gammas.iter().all(Matrix::is_hermitian)
        && gammas.iter().enumerate().all(|(a, ga)| {
            gammas.iter().enumerate().all(|(b, gb)| {
                let ac = ga.anticommutator(gb);
                if a == b {
                    ac == two
                } else {
                    ac == zero
                }
            })
        })
}

/// `γ_1 γ_2 ⋯ γ_{2n−1}`; a scalar multiple of the identity.
pub fn gamma_product(n: usize) -> Matrix<Gaussian> {
    let gammas = gamma_matrices(n);
    let dim = gammas[0].rows();
    gammas.iter().fold(Matrix::identity(dim), |acc, m| acc.mul(m))
}

pub fn to_float(m: &Matrix<Gaussian>) -> Matrix<crate::FloatValue> {
    m.embed()
}
