//! Exact values `a + b√s` in a quadratic extension of ℚ or ℚ(i).

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Signed;

use super::ring::{rational_to_float, Coeff, Ring, Scalar};
use crate::{Gaussian, Rational};

/// `a + b√s`. A value with `s == None` lies in the base ring. Perfect
/// squares never appear as `s`: they collapse into the base ring on
/// construction, which keeps `a = b = 0` a sound zero test.
#[derive(Clone, Debug)]
pub struct QuadExt<K> {
    pub a: K,
    pub b: K,
    pub s: Option<Arc<Rational>>,
}

/// Rational square root, if one exists.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}

impl<K: Coeff> QuadExt<K> {
    pub fn base(a: K) -> Self {
        QuadExt { a, b: K::zero(), s: None }
    }

    /// `a + b√s`, collapsing perfect squares.
    pub fn new(a: K, b: K, s: &Rational) -> Self {
        if b.is_zero() {
            return Self::base(a);
        }
        match rational_sqrt(s) {
            Some(root) => Self::base(a.plus(&b.scale(&root))),
            None => QuadExt { a, b, s: Some(Arc::new(s.clone())) },
        }
    }

    /// `√s`.
    pub fn sqrt(s: &Rational) -> Self {
        Self::new(K::zero(), K::one(), s)
    }

    pub fn radicand(&self) -> Option<&Rational> {
        self.s.as_deref()
    }

    fn joint(&self, other: &Self) -> Option<Arc<Rational>> {
        match (&self.s, &other.s) {
            (None, x) | (x, None) => x.clone(),
            (Some(x), Some(y)) => {
                assert!(Arc::ptr_eq(x, y) || x == y, "mixed quadratic extensions √{x} and √{y}");
                Some(x.clone())
            }
        }
    }

    fn tidy(mut self) -> Self {
        if self.b.is_zero() {
            self.s = None;
        }
        self
    }

    pub fn conj_sqrt(&self) -> Self {
        QuadExt { a: self.a.clone(), b: self.b.negate(), s: self.s.clone() }
    }

    /// `a² − b²s`.
    pub fn norm(&self) -> K {
        match &self.s {
            None => self.a.times(&self.a),
            Some(s) => self.a.times(&self.a).minus(&self.b.times(&self.b).scale(s)),
        }
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm().inv()?;
        let c = self.conj_sqrt();
        Some(QuadExt { a: c.a.times(&n), b: c.b.times(&n), s: c.s }.tidy())
    }

    pub fn scale(&self, k: &K) -> Self {
        QuadExt { a: self.a.times(k), b: self.b.times(k), s: self.s.clone() }.tidy()
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        QuadExt { a: self.a.scale(q), b: self.b.scale(q), s: self.s.clone() }.tidy()
    }

    pub fn as_base(&self) -> Option<&K> {
        self.b.is_zero().then_some(&self.a)
    }
}

impl<K: Coeff> PartialEq for QuadExt<K> {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a
            && self.b == other.b
            && (self.b.is_zero() || self.s.as_deref() == other.s.as_deref())
    }
}

impl<K: Coeff> Ring for QuadExt<K> {
    fn zero() -> Self {
        Self::base(K::zero())
    }
    fn one() -> Self {
        Self::base(K::one())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        let s = self.joint(rhs);
        QuadExt { a: self.a.plus(&rhs.a), b: self.b.plus(&rhs.b), s }.tidy()
    }
    fn minus(&self, rhs: &Self) -> Self {
        let s = self.joint(rhs);
        QuadExt { a: self.a.minus(&rhs.a), b: self.b.minus(&rhs.b), s }.tidy()
    }
    fn times(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        match (self.b.is_zero(), rhs.b.is_zero()) {
            (true, true) => Self::base(self.a.times(&rhs.a)),
            (true, false) => rhs.scale(&self.a),
            (false, true) => self.scale(&rhs.a),
            (false, false) => {
                let s = self.joint(rhs).expect("irrational parts carry a radicand");
                let a = self.a.times(&rhs.a).plus(&self.b.times(&rhs.b).scale(&s));
                let b = self.a.times(&rhs.b).plus(&self.b.times(&rhs.a));
                QuadExt { a, b, s: Some(s) }.tidy()
            }
        }
    }
    fn negate(&self) -> Self {
        QuadExt { a: self.a.negate(), b: self.b.negate(), s: self.s.clone() }
    }
}

impl QuadExt<Gaussian> {
    /// Nearest double-precision complex value.
    pub fn to_complex64(&self) -> num_complex::Complex64 {
        let f = |q: &Rational| rational_to_float::<f64>(q);
        let root = self.s.as_deref().map_or(0.0, |s| f(s).sqrt());
        num_complex::Complex64::new(f(&self.a.re) + f(&self.b.re) * root, f(&self.a.im) + f(&self.b.im) * root)
    }
}

impl Scalar for QuadExt<Gaussian> {
    fn from_rational(q: &Rational) -> Self {
        Self::base(Gaussian::new(q.clone(), Rational::zero()))
    }
    fn from_gaussian(z: &Gaussian) -> Self {
        Self::base(z.clone())
    }
    fn sqrt_rational(s: &Rational) -> Self {
        Self::sqrt(s)
    }
    fn magnitude(&self) -> f64 {
        self.to_complex64().norm()
    }
    fn exact() -> bool {
        true
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn fmt_gaussian(z: &Gaussian) -> String {
    match (Ring::is_zero(&z.re), Ring::is_zero(&z.im)) {
        (_, true) => fmt_rational(&z.re),
        (true, false) => format!("{}i", fmt_rational(&z.im)),
        (false, false) => {
            let sign = if z.im.is_negative() { '-' } else { '+' };
            format!("{}{}{}i", fmt_rational(&z.re), sign, fmt_rational(&z.im.abs()))
        }
    }
}

impl fmt::Display for QuadExt<Gaussian> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.s {
            None => write!(f, "{}", fmt_gaussian(&self.a)),
            Some(s) => write!(
                f,
                "({}) + ({})*sqrt({})",
                fmt_gaussian(&self.a),
                fmt_gaussian(&self.b),
                fmt_rational(s)
            ),
        }
    }
}

impl fmt::Display for QuadExt<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.s {
            None => write!(f, "{}", fmt_rational(&self.a)),
            Some(s) => write!(f, "{} + {}*sqrt({})", fmt_rational(&self.a), fmt_rational(&self.b), fmt_rational(s)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ring::{rat, ratio};

    type Q = QuadExt<Rational>;

    #[test]
    fn perfect_squares_collapse() {
        let v = Q::new(rat(0), rat(1), &rat(25));
        assert_eq!(v, Q::base(rat(5)));
        assert!(v.s.is_none());
        let w = Q::new(rat(1), rat(2), &ratio(9, 4));
        assert_eq!(w, Q::base(rat(4)));
    }

    #[test]
    fn inverse_of_golden_type_unit() {
        // (√5 + 2)⁻¹ = √5 − 2
        let v = Q::new(rat(2), rat(1), &rat(5));
        let inv = v.inv().unwrap();
        assert_eq!(inv, Q::new(rat(-2), rat(1), &rat(5)));
        assert!(v.times(&inv).minus(&Q::one()).is_zero());
    }

    #[test]
    fn sqrt_squares_to_radicand() {
        let r = Q::sqrt(&rat(2));
        assert_eq!(r.times(&r), Q::base(rat(2)));
        assert!(!r.is_zero());
        assert!(Q::zero().inv().is_none());
    }
}
