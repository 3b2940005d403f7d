//! Rational evaluation sites.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use super::poly::power_tables;
use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct RationalPoint {
    coords: Vec<Rational>,
    s: Rational,
    rho2: Rational,
}

impl RationalPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        let s: Rational = coords.iter().map(|x| x * x).sum();
        if !s.is_positive() {
            return Err(Error::PoleAtPoint);
        }
        let last = coords.len() - 1;
        let rho2 = coords[..last].iter().map(|x| x * x).sum();
        Ok(RationalPoint { coords, s, rho2 })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// `|x|²`.
    pub fn s(&self) -> &Rational {
        &self.s
    }

    /// Squared distance to the last coordinate axis.
    pub fn rho2(&self) -> &Rational {
        &self.rho2
    }

    pub fn powers(&self, deg: usize) -> Vec<Vec<Rational>> {
        power_tables(&self.coords, deg)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords
            .iter()
            .map(|q| {
                if q.is_integer() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            })
            .collect()
    }
}

impl Serialize for RationalPoint {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(ser)
    }
}

/// Seeded generic points: every coordinate is `±k/den` with `k ∈ 1..=9` and
/// `den ∈ {1,2,3}`, so all coordinates and both `s` and `ρ²` are nonzero.
pub fn random_points(dim: usize, count: usize, seed: u64) -> Vec<RationalPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let coords = (0..dim)
                .map(|_| {
                    let k: i64 = rng.gen_range(1..=9);
                    let sign = if rng.gen_bool(0.5) { -1 } else { 1 };
                    let den: i64 = rng.gen_range(1..=3);
                    Rational::new(BigInt::from(sign * k), BigInt::from(den))
                })
                .collect();
            RationalPoint::new(coords).expect("nonzero coordinates")
        })
        .collect()
}

impl RationalPoint {
    pub fn is_generic(&self) -> bool {
        !self.rho2.is_zero() && self.coords.iter().all(|c| !c.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic_and_generic() {
        let a = random_points(4, 10, 7);
        let b = random_points(4, 10, 7);
        assert_eq!(a, b);
        assert!(a.iter().all(|p| p.is_generic()));
        assert_ne!(a, random_points(4, 10, 8));
    }

    #[test]
    fn caches_squared_norms() {
        let p = RationalPoint::from_ints(&[1, 2, 3, 4]).unwrap();
        assert_eq!(p.s(), &Rational::from_integer(30.into()));
        assert_eq!(p.rho2(), &Rational::from_integer(14.into()));
        assert!(RationalPoint::from_ints(&[0, 0]).is_err());
    }
}
