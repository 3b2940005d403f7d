//! Radial functions `√w · Σ_h a_h r^{h/2} · e^{−λr}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Pow, Signed};

use crate::error::{Error, Result};
use crate::scalar::ring::rational_to_float;
use crate::scalar::{Coeff, Ring};
use crate::{ExactValue, Gaussian, Rational};

/// A radial function. Keys of `terms` are twice the exponent of `r` and all
/// share one parity; `weight` is a positive rational whose square root
/// multiplies the whole function, so normalized functions stay exact.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialFunction {
    terms: BTreeMap<i64, Gaussian>,
    decay: Rational,
    weight: Rational,
}

impl RadialFunction {
    pub fn zero(decay: Rational) -> Self {
        RadialFunction { terms: BTreeMap::new(), decay, weight: <Rational as Ring>::one() }
    }

    /// `r^{h/2} Σ_j c_j r^j · e^{−λr}`.
    pub fn from_poly(coeffs: &[Rational], half_exponent: i64, decay: Rational) -> Self {
        let mut f = Self::zero(decay);
        for (j, c) in coeffs.iter().enumerate() {
            f.push(half_exponent + 2 * j as i64, Gaussian::from_rational(c.clone()));
        }
        f
    }

    fn push(&mut self, key: i64, c: Gaussian) {
        if let Some(&k) = self.terms.keys().next() {
            assert_eq!((k - key).rem_euclid(2), 0, "mixed parity of half exponents");
        }
        let entry = self.terms.entry(key).or_insert_with(<Gaussian as Ring>::zero);
        *entry = entry.plus(&c);
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn decay(&self) -> &Rational {
        &self.decay
    }

    pub fn weight(&self) -> &Rational {
        &self.weight
    }

    /// Smallest `h` with a nonzero coefficient of `r^{h/2}`.
    pub fn half_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn terms(&self) -> &BTreeMap<i64, Gaussian> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiply the overall factor `√w` by `√k`.
    pub fn with_weight(mut self, k: &Rational) -> Self {
        assert!(k.is_positive(), "weights are positive");
        self.weight = &self.weight * k;
        self
    }

    pub fn scale(&self, k: &Gaussian) -> Self {
        let mut out = Self { terms: BTreeMap::new(), ..self.clone() };
        for (h, c) in &self.terms {
            out.push(*h, c.times(k));
        }
        out
    }

    /// Sum of two functions with equal decay and weight.
    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.decay, o.decay, "decay mismatch");
        assert_eq!(self.weight, o.weight, "weight mismatch");
        let mut out = self.clone();
        for (h, c) in &o.terms {
            out.push(*h, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&<Gaussian as Ring>::one().negate()))
    }

    /// `c · r^{p}` times the function.
    pub fn mul_power(&self, p: i64, c: &Gaussian) -> Self {
        let mut out = Self { terms: BTreeMap::new(), ..self.clone() };
        for (h, a) in &self.terms {
            out.push(h + 2 * p, a.times(c));
        }
        out
    }

    pub fn derivative(&self) -> Self {
        let mut out = Self { terms: BTreeMap::new(), ..self.clone() };
        let lambda = Gaussian::from_rational(self.decay.clone());
        for (h, a) in &self.terms {
            if *h != 0 {
                out.push(h - 2, Coeff::scale(a, &Rational::new(BigInt::from(*h), BigInt::from(2))));
            }
            out.push(*h, a.times(&lambda).negate());
        }
        out
    }

    /// `m` with `self = m · other`, if the two are proportional.
    pub fn ratio_to(&self, other: &Self) -> Option<ExactValue> {
        if self.is_zero() {
            return Some(<ExactValue as Ring>::zero());
        }
        if other.is_zero() || self.decay != other.decay || self.terms.len() != other.terms.len() {
            return None;
        }
        let (h, b) = other.terms.iter().next()?;
        let a = self.terms.get(h)?;
        let c = a.times(&Coeff::inv(b)?);
        let same = other.terms.iter().all(|(k, v)| self.terms.get(k) == Some(&v.times(&c)));
        same.then(|| ExactValue::sqrt(&(&self.weight / &other.weight)).times(&ExactValue::base(c)))
    }

    /// `τ(f)(r) = ν^{n+1/2} r^{−1/2} f(νr)`.
    pub fn rescale(&self, nu: &Rational, n: usize) -> Self {
        let Some(h0) = self.half_exponent() else { return Self::zero(&self.decay * nu) };
        let mut out = RadialFunction {
            terms: BTreeMap::new(),
            decay: &self.decay * nu,
            weight: &self.weight * Pow::pow(nu, (2 * n + 1) as u32) * power(nu, h0),
        };
        for (h, a) in &self.terms {
            out.push(h - 1, Coeff::scale(a, &power(nu, (h - h0) / 2)));
        }
        out
    }

    /// `⟨f, g⟩ = ∫₀^∞ conj(f) g r^{m} dr`.
    pub fn inner(&self, o: &Self, m: i64) -> Result<ExactValue> {
        let lambda = &self.decay + &o.decay;
        let mut acc = <Gaussian as Ring>::zero();
        for (h, a) in &self.terms {
            for (k, b) in &o.terms {
                let e = h + k;
                if e % 2 != 0 {
                    return Err(Error::DivergentIntegral(format!("{e}/2")));
                }
                let p = e / 2 + m;
                if p < 0 {
                    return Err(Error::DivergentIntegral(p.to_string()));
                }
                acc = acc.plus(&Coeff::scale(&Coeff::conj(a).times(b), &gamma_integral(p as u64, &lambda)));
            }
        }
        Ok(ExactValue::sqrt(&(&self.weight * &o.weight)).times(&ExactValue::base(acc)))
    }

    /// Value at `r` without the exponential factor.
    pub fn eval_prefactor(&self, r: f64) -> Complex64 {
        let w: f64 = rational_to_float(&self.weight);
        let sum: Complex64 = self
            .terms
            .iter()
            .map(|(h, a)| {
                let c = Complex64::new(rational_to_float(&a.re), rational_to_float(&a.im));
                c * r.powf(*h as f64 / 2.0)
            })
            .sum();
        sum * w.sqrt()
    }
}

fn power(q: &Rational, k: i64) -> Rational {
    if k >= 0 {
        Pow::pow(q, k as u32)
    } else {
        Pow::pow(q.recip(), (-k) as u32)
    }
}

/// `∫₀^∞ r^p e^{−λr} dr = p!/λ^{p+1}`.
pub fn gamma_integral(p: u64, lambda: &Rational) -> Rational {
    let fact: BigInt = (1..=p).map(BigInt::from).product();
    Rational::from_integer(fact) / Pow::pow(lambda, (p + 1) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ring::{rat, ratio};

    #[test]
    fn gamma_integral_oracle() {
        assert_eq!(gamma_integral(2, &rat(2)), ratio(1, 4));
        assert_eq!(gamma_integral(0, &ratio(1, 3)), rat(3));
    }

    #[test]
    fn derivative_of_power_times_exponential() {
        // d/dr (r^{3/2} e^{−2r}) = (3/2) r^{1/2} e^{−2r} − 2 r^{3/2} e^{−2r}
        let f = RadialFunction::from_poly(&[rat(1)], 3, rat(2));
        let d = f.derivative();
        assert_eq!(d.terms()[&1], Gaussian::from_rational(ratio(3, 2)));
        assert_eq!(d.terms()[&3], Gaussian::from_rational(rat(-2)));
    }

    #[test]
    fn proportionality_carries_weights() {
        let f = RadialFunction::from_poly(&[rat(1), rat(2)], 0, rat(1));
        let g = f.scale(&Gaussian::from_rational(rat(3))).with_weight(&rat(2));
        let m = g.ratio_to(&f).unwrap();
        assert_eq!(m, ExactValue::sqrt(&rat(2)).times(&ExactValue::base(Gaussian::from_rational(rat(3)))));
        assert!(f.ratio_to(&f.mul_power(1, &<Gaussian as Ring>::one())).is_none());
    }
}
