//! The abstract algebra `so(2, 2n+1)` in its `(2n+3)`-dimensional defining
//! representation, labels `A ∈ {−1, 0, …, 2n+1}`.

use crate::matrix::Matrix;
use crate::micz::GenIndex;
use crate::scalar::ring::{imag, rat, ratio};
use crate::scalar::{Coeff, Ring, Scalar};
use crate::{ExactValue, Gaussian};

pub type Mat = Matrix<ExactValue>;

fn eta(a: i32, b: i32) -> i64 {
    if a == b {
        GenIndex(a).eta()
    } else {
        0
    }
}

pub fn indices(n: usize) -> Vec<i32> {
    (-1..=(2 * n as i32 + 1)).collect()
}

/// Pairs `A < B`.
pub fn labels(n: usize) -> Vec<(i32, i32)> {
    let idx = indices(n);
    idx.iter().flat_map(|&a| idx.iter().filter(move |&&b| a < b).map(move |&b| (a, b))).collect()
}

/// The endomorphism `η^{JJ}[M_AB]_JK` with `[M_AB]_JK = −i(η_AJ η_BK − η_BJ η_AK)`.
/// The components are those of a bilinear form; raising the row index makes
/// matrix products contract through `η`.
pub fn defining_matrix(n: usize, a: i32, b: i32) -> Matrix<Gaussian> {
    let idx = indices(n);
    let minus_i = imag().negate();
    Matrix::from_fn(idx.len(), idx.len(), |j, k| {
        let (j, k) = (idx[j], idx[k]);
        let lowered = eta(a, j) * eta(b, k) - eta(b, j) * eta(a, k);
        Coeff::scale(&minus_i, &rat(GenIndex(j).eta() * lowered))
    })
}

/// A linear combination `Σ c·M_AB` over labels `A < B`.
pub type Combination = Vec<(Gaussian, (i32, i32))>;

fn push(out: &mut Combination, c: Gaussian, a: i32, b: i32) {
    if c.is_zero() || a == b {
        return;
    }
    let (c, key) = if a < b { (c, (a, b)) } else { (c.negate(), (b, a)) };
    match out.iter_mut().find(|(_, k)| *k == key) {
        Some(entry) => entry.0 = entry.0.plus(&c),
        None => out.push((c, key)),
    }
    out.retain(|(c, _)| !c.is_zero());
}

/// `[M_AB, M_A′B′] = i(η_AA′ M_BB′ + η_BB′ M_AA′ − η_AB′ M_BA′ − η_BA′ M_AB′)`.
pub fn bracket_formula((a, b): (i32, i32), (a2, b2): (i32, i32)) -> Combination {
    let i = imag();
    let mut out = Combination::new();
    push(&mut out, Coeff::scale(&i, &rat(eta(a, a2))), b, b2);
    push(&mut out, Coeff::scale(&i, &rat(eta(b, b2))), a, a2);
    push(&mut out, Coeff::scale(&i, &rat(-eta(a, b2))), b, a2);
    push(&mut out, Coeff::scale(&i, &rat(-eta(b, a2))), a, b2);
    out.sort_by_key(|(_, k)| *k);
    out
}

/// Coordinates of `x` in the basis `M_AB`, `None` when `x` is outside the
/// span.
pub fn decompose(n: usize, x: &Matrix<Gaussian>) -> Option<Combination> {
    let mut out = Combination::new();
    let mut rebuilt = Matrix::zeros(x.rows(), x.cols());
    for (a, b) in labels(n) {
        let (p, q) = (GenIndex(a).position(), GenIndex(b).position());
        let unit = defining_matrix(n, a, b).get(p, q).clone();
        let c = x.get(p, q).times(&Coeff::inv(&unit)?);
        if !c.is_zero() {
            rebuilt.add_assign(&defining_matrix(n, a, b).scale(&c));
            out.push((c, (a, b)));
        }
    }
    (rebuilt == *x).then_some(out)
}

pub fn exact(m: &Matrix<Gaussian>) -> Mat {
    m.map(ExactValue::from_gaussian)
}

/// `H₀ = M_{−1,0}`, `H_j = −M_{2j−1,2j}`.
pub fn cartan(n: usize) -> Vec<Matrix<Gaussian>> {
    let mut out = vec![defining_matrix(n, -1, 0)];
    for j in 1..=n as i32 {
        out.push(defining_matrix(n, 2 * j - 1, 2 * j).neg());
    }
    out
}

/// A root vector with its root in the coordinates `(e⁰, …, eⁿ)`.
pub struct RootVector {
    pub root: Vec<i64>,
    pub matrix: Mat,
}

impl RootVector {
    pub fn label(&self) -> String {
        let mut s = String::new();
        for (j, c) in self.root.iter().enumerate() {
            match c {
                1 => s += &format!("+e{j}"),
                -1 => s += &format!("-e{j}"),
                _ => {}
            }
        }
        s
    }
}

/// `E_{ηe^j+η′e^k}` for `j < k` and `E_{ηe^j}`, the short ones carrying
/// `1/√2`.
pub fn root_vectors(n: usize) -> Vec<RootVector> {
    let i = imag();
    let m = |a: i32, b: i32| defining_matrix(n, a, b);
    let top = 2 * n as i32 + 1;
    let mut out = Vec::new();
    for j in 0..=n as i32 {
        for k in j + 1..=n as i32 {
            for eta in [1i64, -1] {
                for eta2 in [1i64, -1] {
                    let sum = m(2 * j - 1, 2 * k - 1)
                        .add(&m(2 * j, 2 * k - 1).scale(&Coeff::scale(&i, &rat(eta))))
                        .add(&m(2 * j - 1, 2 * k).scale(&Coeff::scale(&i, &rat(eta2))))
                        .sub(&m(2 * j, 2 * k).scale(&Gaussian::from_int(eta * eta2)));
                    let mut root = vec![0; n + 1];
                    root[j as usize] = eta;
                    root[k as usize] = eta2;
                    out.push(RootVector { root, matrix: exact(&sum.scale(&Gaussian::from_rational(ratio(1, 2)))) });
                }
            }
        }
    }
    let inv_sqrt2 = ExactValue::sqrt(&rat(2)).scale_rational(&ratio(1, 2));
    for j in 0..=n as i32 {
        for eta in [1i64, -1] {
            let sum = m(2 * j - 1, top).add(&m(2 * j, top).scale(&Coeff::scale(&i, &rat(eta))));
            let mut root = vec![0; n + 1];
            root[j as usize] = eta;
            out.push(RootVector { root, matrix: exact(&sum).scale(&inv_sqrt2) });
        }
    }
    out
}

/// `E_± = (M_{−1,D+1} ± i M_{0,D+1})/√2`.
pub fn ladder(n: usize, sign: i64) -> Mat {
    let top = 2 * n as i32 + 1;
    let sum = defining_matrix(n, -1, top).add(&defining_matrix(n, 0, top).scale(&Coeff::scale(&imag(), &rat(sign))));
    exact(&sum).scale(&ExactValue::sqrt(&rat(2)).scale_rational(&ratio(1, 2)))
}

/// Rank over `ℚ(i)` of a set of matrices, by elimination on their entries.
pub fn rank(ms: &[Matrix<Gaussian>]) -> usize {
    let mut rows: Vec<Vec<Gaussian>> = ms.iter().map(|m| m.entries().to_vec()).collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Coeff::inv(&rows[r][c]).expect("nonzero pivot");
        let pivot: Vec<Gaussian> = rows[r].iter().map(|x| x.times(&inv)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = x.minus(&f.times(y));
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_matches_matrices_for_a_sample() {
        let n = 2;
        let x = defining_matrix(n, -1, 1).commutator(&defining_matrix(n, 1, 3));
        assert_eq!(decompose(n, &x).unwrap(), bracket_formula((-1, 1), (1, 3)));
    }

    #[test]
    fn h0_raises_e0_plus_e1() {
        let n = 2;
        let h0 = exact(&cartan(n)[0]);
        let e = root_vectors(n).into_iter().find(|r| r.root == vec![1, 1, 0]).unwrap();
        assert_eq!(h0.commutator(&e.matrix), e.matrix);
    }
}
