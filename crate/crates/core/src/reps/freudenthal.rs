//! Weight multiplicities by Freudenthal's recursion, and dimensions as the
//! sum of multiplicities over Weyl orbits of dominant weights. Shares no code
//! with the product formula beyond the root lists.

use std::collections::{BTreeSet, HashMap};

use num_traits::{Signed, Zero};

use super::weight::{dot, positive_roots, rho, Series, Weight};
use crate::error::{Error, Result};
use crate::scalar::ring::rat;
use crate::Rational;

type W = Vec<Rational>;

/// Coefficients of `v` in the simple roots, if `v` lies in the root lattice.
fn simple_coefficients(series: Series, v: &[Rational]) -> Option<Vec<Rational>> {
    let n = v.len();
    let partial: Vec<Rational> = v.iter().scan(rat(0), |acc, x| {
        *acc += x;
        Some(acc.clone())
    }).collect();
    let c = match series {
        // e_i − e_{i+1}, e_n
        Series::B => partial,
        // e_i − e_{i+1}, e_{n−1} + e_n
        Series::D if n >= 2 => {
            let mut c = partial[..n - 2].to_vec();
            c.push((&partial[n - 2] - &v[n - 1]) / rat(2));
            c.push(&partial[n - 1] / rat(2));
            c
        }
        _ => return None,
    };
    c.iter().all(Rational::is_integer).then_some(c)
}

/// `μ ≤ λ` in the dominance order.
fn below(series: Series, lambda: &[Rational], mu: &[Rational]) -> bool {
    let diff: W = lambda.iter().zip(mu).map(|(a, b)| a - b).collect();
    simple_coefficients(series, &diff).is_some_and(|c| c.iter().all(|x| !x.is_negative()))
}

/// The dominant Weyl conjugate of `mu`.
fn dominant(series: Series, mu: &[Rational]) -> W {
    let mut a: W = mu.iter().map(Signed::abs).collect();
    a.sort_by(|x, y| y.cmp(x));
    if series == Series::D {
        let negatives = mu.iter().filter(|x| x.is_negative()).count();
        let last = a.len() - 1;
        if negatives % 2 == 1 && !mu.iter().any(Zero::is_zero) {
            a[last] = -a[last].clone();
        }
    }
    a
}

/// The Weyl orbit: signed permutations, with an even number of sign
/// changes for `D_n`.
pub fn orbit(series: Series, mu: &[Rational]) -> BTreeSet<W> {
    let n = mu.len();
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        perms = perms
            .into_iter()
            .flat_map(|p| (0..n).filter(|i| !p.contains(i)).map(|i| [p.clone(), vec![i]].concat()).collect::<Vec<_>>())
            .collect();
    }
    let mut out = BTreeSet::new();
    for p in &perms {
        for signs in 0u32..(1 << n) {
            if series == Series::D && signs.count_ones() % 2 == 1 {
                continue;
            }
            let w = p
                .iter()
                .enumerate()
                .map(|(k, &i)| if signs >> k & 1 == 1 { -mu[i].clone() } else { mu[i].clone() })
                .collect();
            out.insert(w);
        }
    }
    out
}

pub struct Multiplicities {
    series: Series,
    lambda: W,
    roots: Vec<W>,
    norm: Rational,
    rho: W,
    memo: HashMap<W, Rational>,
}

impl Multiplicities {
    pub fn new(lambda: &Weight) -> Result<Self> {
        if !lambda.is_dominant() {
            return Err(Error::NonDominant(lambda.to_string()));
        }
        let series = lambda.series;
        let rank = lambda.rank();
        let rho = rho(series, rank);
        let shifted: W = lambda.entries.iter().zip(&rho).map(|(a, b)| a + b).collect();
        Ok(Multiplicities {
            series,
            lambda: lambda.entries.clone(),
            roots: positive_roots(series, rank),
            norm: dot(&shifted, &shifted),
            rho,
            memo: HashMap::new(),
        })
    }

    /// `m(μ)` for any weight `μ`.
    pub fn get(&mut self, mu: &[Rational]) -> Rational {
        let dom = dominant(self.series, mu);
        if !below(self.series, &self.lambda, &dom) {
            return rat(0);
        }
        if dom == self.lambda {
            return rat(1);
        }
        if let Some(m) = self.memo.get(&dom) {
            return m.clone();
        }
        let mut sum = rat(0);
        for a in self.roots.clone() {
            let mut nu: W = dom.clone();
            loop {
                for (x, y) in nu.iter_mut().zip(&a) {
                    *x += y;
                }
                if !below(self.series, &self.lambda, &nu) {
                    break;
                }
                let m = self.get(&nu.clone());
                sum += m * dot(&nu, &a);
            }
        }
        let shifted: W = dom.iter().zip(&self.rho).map(|(a, b)| a + b).collect();
        let m = rat(2) * sum / (&self.norm - dot(&shifted, &shifted));
        assert!(m.is_integer() && !m.is_negative(), "multiplicity {m} at {dom:?}");
        self.memo.insert(dom, m.clone());
        m
    }

    /// Dominant weights below `λ` with their multiplicities.
    pub fn dominant_weights(&mut self) -> Vec<(W, Rational)> {
        let n = self.lambda.len();
        let top = self.lambda[0].clone();
        let mut candidates: Vec<W> = vec![vec![]];
        for _ in 0..n {
            candidates = candidates
                .into_iter()
                .flat_map(|p| {
                    let hi = p.last().cloned().unwrap_or_else(|| top.clone());
                    let mut x = self.lambda[0].clone() - self.lambda[0].floor();
                    let mut v = Vec::new();
                    while x <= hi {
                        v.push([p.clone(), vec![x.clone()]].concat());
                        x += rat(1);
                    }
                    v
                })
                .collect();
        }
        let mut out = Vec::new();
        for w in candidates {
            let mut variants = vec![w.clone()];
            if self.series == Series::D && !w[n - 1].is_zero() {
                let mut f = w.clone();
                f[n - 1] = -f[n - 1].clone();
                variants.push(f);
            }
            for v in variants {
                let m = self.get(&v);
                if m.is_positive() {
                    out.push((v, m));
                }
            }
        }
        out
    }
}

/// `Σ_{μ dominant} m(μ)·|W·μ|`.
pub fn dimension_by_multiplicities(lambda: &Weight) -> Result<u64> {
    let mut mult = Multiplicities::new(lambda)?;
    let mut total = rat(0);
    for (w, m) in mult.dominant_weights() {
        total += m * rat(orbit(lambda.series, &w).len() as i64);
    }
    Ok(total.to_integer().try_into().expect("dimension fits in u64"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::weight::weyl_dimension;

    #[test]
    fn defining_and_spin_modules() {
        assert_eq!(dimension_by_multiplicities(&Weight::halves(Series::B, &[2, 0])).unwrap(), 5);
        assert_eq!(dimension_by_multiplicities(&Weight::halves(Series::B, &[1, 1])).unwrap(), 4);
        assert_eq!(dimension_by_multiplicities(&Weight::halves(Series::D, &[2, 0])).unwrap(), 4);
        assert_eq!(dimension_by_multiplicities(&Weight::halves(Series::D, &[1, -1])).unwrap(), 2);
    }

    #[test]
    fn adjoint_of_b2_has_zero_weight_multiplicity_two() {
        let mut m = Multiplicities::new(&Weight::halves(Series::B, &[2, 2])).unwrap();
        assert_eq!(m.get(&[rat(0), rat(0)]), rat(2));
    }

    #[test]
    fn agrees_with_product_formula_on_rank_two() {
        for series in [Series::B, Series::D] {
            for a in 0..=6 {
                for b in -6..=a {
                    let w = Weight::halves(series, &[a, b]);
                    if w.is_dominant() {
                        assert_eq!(dimension_by_multiplicities(&w).unwrap(), weyl_dimension(&w).unwrap(), "{series:?} {w}");
                    }
                }
            }
        }
    }
}
