//! Weights of `B_n`, `D_n` and the noncompact algebra, with the Weyl
//! dimension formula over explicit positive-root lists.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::ring::{rat, ratio};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Series {
    B,
    D,
    /// Weights of the full algebra, ordered `(H₀, H₁, …, H_n)`.
    G,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    pub series: Series,
    pub entries: Vec<Rational>,
}

impl Weight {
    pub fn new(series: Series, entries: Vec<Rational>) -> Self {
        Weight { series, entries }
    }

    /// From doubled entries, so `(3, 1)` is `(3/2, 1/2)`.
    pub fn halves(series: Series, doubled: &[i64]) -> Self {
        Weight::new(series, doubled.iter().map(|&k| ratio(k, 2)).collect())
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// All entries integral, or all half-odd-integral.
    pub fn uniform_class(&self) -> bool {
        let two = rat(2);
        let doubled: Vec<_> = self.entries.iter().map(|e| e * &two).collect();
        doubled.iter().all(|d| d.is_integer()) && {
            let odd = |d: &Rational| !(d.to_integer() % 2i32).is_zero();
            doubled.iter().all(odd) || !doubled.iter().any(odd)
        }
    }

    pub fn is_dominant(&self) -> bool {
        let e = &self.entries;
        if e.is_empty() || !self.uniform_class() {
            return false;
        }
        let ordered = e.windows(2).all(|w| w[0] >= w[1]);
        let last = e.last().unwrap();
        match self.series {
            Series::B => ordered && !last.is_negative(),
            Series::D => ordered && (e.len() < 2 || e[e.len() - 2] >= last.abs()),
            Series::G => false,
        }
    }

    fn require_dominant(&self) -> Result<()> {
        if self.is_dominant() {
            Ok(())
        } else {
            Err(Error::NonDominant(self.to_string()))
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `e_i ± e_j` for `i < j`, plus `e_i` for `B_n`.
pub fn positive_roots(series: Series, rank: usize) -> Vec<Vec<Rational>> {
    let unit = |i: usize, c: i64| {
        let mut v = vec![rat(0); rank];
        v[i] = rat(c);
        v
    };
    let mut roots = Vec::new();
    for i in 0..rank {
        for j in i + 1..rank {
            for s in [-1, 1] {
                let mut v = unit(i, 1);
                v[j] = rat(s);
                roots.push(v);
            }
        }
    }
    if series == Series::B {
        roots.extend((0..rank).map(|i| unit(i, 1)));
    }
    roots
}

/// Half the sum of the positive roots.
pub fn rho(series: Series, rank: usize) -> Vec<Rational> {
    let mut r = vec![rat(0); rank];
    for a in positive_roots(series, rank) {
        for (x, y) in r.iter_mut().zip(&a) {
            *x += y;
        }
    }
    r.into_iter().map(|x| x / rat(2)).collect()
}

/// `∏_{α>0} ⟨λ+ρ, α⟩ / ⟨ρ, α⟩`.
pub fn weyl_dimension(lambda: &Weight) -> Result<u64> {
    lambda.require_dominant()?;
    let rank = lambda.rank();
    let rho = rho(lambda.series, rank);
    let shifted: Vec<Rational> = lambda.entries.iter().zip(&rho).map(|(l, r)| l + r).collect();
    let mut dim = rat(1);
    for a in positive_roots(lambda.series, rank) {
        dim *= dot(&shifted, &a) / dot(&rho, &a);
    }
    assert!(dim.is_integer() && dim.is_positive(), "Weyl formula gave {dim} for {lambda}");
    Ok(dim.to_integer().try_into().expect("dimension fits in u64"))
}

/// `D_n` weights `m` interlacing `λ₁ ≥ m₁ ≥ λ₂ ≥ … ≥ λ_n ≥ |m_n|`, in the
/// congruence class of `λ`.
pub fn branch_b_to_d(lambda: &Weight) -> Result<Vec<Weight>> {
    if lambda.series != Series::B {
        return Err(Error::NonDominant(format!("{lambda} is not a B weight")));
    }
    lambda.require_dominant()?;
    let l = &lambda.entries;
    let n = l.len();
    let range = |lo: &Rational, hi: &Rational| -> Vec<Rational> {
        let mut v = Vec::new();
        let mut x = lo.clone();
        while &x <= hi {
            v.push(x.clone());
            x += rat(1);
        }
        v
    };
    let mut out: Vec<Vec<Rational>> = vec![Vec::new()];
    for i in 0..n {
        let choices = if i + 1 < n { range(&l[i + 1], &l[i]) } else { range(&-&l[i], &l[i]) };
        out = out
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c.clone());
                    p
                })
            })
            .collect();
    }
    Ok(out.into_iter().map(|m| Weight::new(Series::D, m)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(doubled: &[i64]) -> Weight {
        Weight::halves(Series::B, doubled)
    }

    fn d(doubled: &[i64]) -> Weight {
        Weight::halves(Series::D, doubled)
    }

    #[test]
    fn small_dimensions() {
        assert_eq!(weyl_dimension(&b(&[0, 0])).unwrap(), 1);
        assert_eq!(weyl_dimension(&b(&[2, 0])).unwrap(), 5);
        assert_eq!(weyl_dimension(&b(&[1, 1])).unwrap(), 4);
        assert_eq!(weyl_dimension(&b(&[2, 0, 0])).unwrap(), 7);
        assert_eq!(weyl_dimension(&b(&[1, 1, 1])).unwrap(), 8);
        for l in 0..5 {
            assert_eq!(weyl_dimension(&d(&[2 * l, 0])).unwrap(), ((l + 1) * (l + 1)) as u64);
        }
        assert_eq!(weyl_dimension(&d(&[3, 1])).unwrap(), 6);
        assert_eq!(weyl_dimension(&d(&[2, 0, 0])).unwrap(), 6);
    }

    #[test]
    fn rejects_non_dominant() {
        assert!(weyl_dimension(&b(&[0, 2])).is_err());
        assert!(weyl_dimension(&b(&[2, 1])).is_err());
        assert!(weyl_dimension(&b(&[2, -2])).is_err());
        assert!(weyl_dimension(&d(&[1, -1])).is_ok());
    }

    #[test]
    fn branching_examples() {
        assert_eq!(branch_b_to_d(&b(&[2, 0])).unwrap(), vec![d(&[0, 0]), d(&[2, 0])]);
        assert_eq!(branch_b_to_d(&b(&[1, 1])).unwrap(), vec![d(&[1, -1]), d(&[1, 1])]);
        assert_eq!(branch_b_to_d(&b(&[0, 0, 0])).unwrap(), vec![d(&[0, 0, 0])]);
    }
}
