//! Normal-ordered radial operators `Σ_j c_j(r) (d/dr)^j` with Laurent
//! polynomial coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::function::RadialFunction;
use crate::scalar::{Coeff, Ring};
use crate::{Gaussian, Rational};

type Laurent = BTreeMap<i64, Gaussian>;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RadialOp {
    /// `terms[j]` is the coefficient of `(d/dr)^j`, keyed by powers of `r`.
    terms: Vec<Laurent>,
}

fn add_term(l: &mut Laurent, p: i64, c: Gaussian) {
    let e = l.entry(p).or_insert_with(<Gaussian as Ring>::zero);
    *e = e.plus(&c);
    if e.is_zero() {
        l.remove(&p);
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

impl RadialOp {
    pub fn zero() -> Self {
        RadialOp::default()
    }

    /// `c · r^p`.
    pub fn power(p: i64, c: Gaussian) -> Self {
        Self::term(0, p, c)
    }

    pub fn rational_power(p: i64, q: Rational) -> Self {
        Self::power(p, Gaussian::from_rational(q))
    }

    pub fn identity() -> Self {
        Self::power(0, <Gaussian as Ring>::one())
    }

    /// `c · r^p (d/dr)^j`.
    pub fn term(j: usize, p: i64, c: Gaussian) -> Self {
        let mut op = RadialOp { terms: vec![Laurent::new(); j + 1] };
        add_term(&mut op.terms[j], p, c);
        op.trim()
    }

    pub fn d() -> Self {
        Self::term(1, 0, <Gaussian as Ring>::one())
    }

    fn trim(mut self) -> Self {
        while self.terms.last().is_some_and(BTreeMap::is_empty) {
            self.terms.pop();
        }
        self
    }

    pub fn order(&self) -> Option<usize> {
        self.terms.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, j: usize) -> Option<&Laurent> {
        self.terms.get(j)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        if out.terms.len() < o.terms.len() {
            out.terms.resize(o.terms.len(), Laurent::new());
        }
        for (j, l) in o.terms.iter().enumerate() {
            for (p, c) in l {
                add_term(&mut out.terms[j], *p, c.clone());
            }
        }
        out.trim()
    }

    pub fn scale(&self, k: &Gaussian) -> Self {
        let terms = self.terms.iter().map(|l| l.iter().map(|(p, c)| (*p, c.times(k))).collect()).collect();
        RadialOp { terms }.trim()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&<Gaussian as Ring>::one().negate()))
    }

    /// `(d/dr)^i` of a Laurent polynomial.
    fn derive(l: &Laurent, i: usize) -> Laurent {
        let mut out = l.clone();
        for _ in 0..i {
            let mut next = Laurent::new();
            for (p, c) in &out {
                if *p != 0 {
                    add_term(&mut next, p - 1, Coeff::scale(c, &Rational::from_integer(BigInt::from(*p))));
                }
            }
            out = next;
        }
        out
    }

    /// Normal-ordered `self ∘ o`, using
    /// `(d/dr)^i ∘ b = Σ_k C(i,k) b^{(k)} (d/dr)^{i−k}`.
    pub fn compose(&self, o: &Self) -> Self {
        let mut out = RadialOp::zero();
        for (i, a) in self.terms.iter().enumerate() {
            for (j, b) in o.terms.iter().enumerate() {
                for k in 0..=i {
                    let db = Self::derive(b, k);
                    let bin = Rational::from_integer(BigInt::from(binomial(i, k)));
                    let mut prod = Laurent::new();
                    for (pa, ca) in a {
                        for (pb, cb) in &db {
                            add_term(&mut prod, pa + pb, Coeff::scale(&ca.times(cb), &bin));
                        }
                    }
                    out = out.add(&RadialOp { terms: Self::placed(i - k + j, prod) });
                }
            }
        }
        out
    }

    fn placed(j: usize, l: Laurent) -> Vec<Laurent> {
        let mut terms = vec![Laurent::new(); j + 1];
        terms[j] = l;
        terms
    }

    /// `r^{−1/2} ∘ self ∘ r^{1/2}`, from
    /// `r^{−1/2} (d/dr)^j r^{1/2} = Σ_i C(j,i) (1/2)_i↓ r^{−i} (d/dr)^{j−i}`.
    pub fn conjugate_sqrt_r(&self) -> Self {
        let mut out = RadialOp::zero();
        for (j, a) in self.terms.iter().enumerate() {
            let mut falling = <Rational as Ring>::one();
            for i in 0..=j {
                let k = &falling * Rational::from_integer(BigInt::from(binomial(j, i)));
                let mut l = Laurent::new();
                for (p, c) in a {
                    add_term(&mut l, p - i as i64, Coeff::scale(c, &k));
                }
                out = out.add(&RadialOp { terms: Self::placed(j - i, l) });
                falling *= Rational::new(BigInt::from(1), BigInt::from(2)) - Rational::from_integer(BigInt::from(i));
            }
        }
        out
    }

    pub fn apply(&self, f: &RadialFunction) -> RadialFunction {
        let mut out = RadialFunction::zero(f.decay().clone()).with_weight(f.weight());
        let mut deriv = f.clone();
        for (j, a) in self.terms.iter().enumerate() {
            if j > 0 {
                deriv = deriv.derivative();
            }
            for (p, c) in a {
                out = out.add(&deriv.mul_power(*p, c));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ring::{rat, ratio};

    #[test]
    fn leibniz_normal_order() {
        // d ∘ r = r d + 1
        let lhs = RadialOp::d().compose(&RadialOp::rational_power(1, rat(1)));
        let rhs = RadialOp::term(1, 1, <Gaussian as Ring>::one()).add(&RadialOp::identity());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn conjugation_by_root_r() {
        // r^{−1/2} d r^{1/2} = d + 1/(2r)
        let conj = RadialOp::d().conjugate_sqrt_r();
        assert_eq!(conj, RadialOp::d().add(&RadialOp::rational_power(-1, ratio(1, 2))));
        // second order: r^{−1/2} d² r^{1/2} = d² + r^{−1} d − r^{−2}/4
        let d2 = RadialOp::d().compose(&RadialOp::d()).conjugate_sqrt_r();
        let expect = RadialOp::term(2, 0, <Gaussian as Ring>::one())
            .add(&RadialOp::term(1, -1, <Gaussian as Ring>::one()))
            .add(&RadialOp::rational_power(-2, ratio(-1, 4)));
        assert_eq!(d2, expect);
    }

    #[test]
    fn application_matches_composition() {
        let f = RadialFunction::from_poly(&[rat(1), rat(-2), ratio(1, 3)], 1, ratio(1, 2));
        let p = RadialOp::term(2, 1, <Gaussian as Ring>::one()).add(&RadialOp::rational_power(-1, rat(3)));
        let q = RadialOp::d().add(&RadialOp::rational_power(1, rat(1)));
        assert_eq!(p.compose(&q).apply(&f), p.apply(&q.apply(&f)));
    }
}
