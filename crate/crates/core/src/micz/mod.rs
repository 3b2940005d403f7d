//! The generalized MICZ-Kepler problem in dimension `D = 2n`: gauge field,
//! symmetry generators and their identity suites.

pub mod gauge;
pub mod generators;
pub mod suites;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::ring::ratio;
use crate::Rational;

pub use gauge::GaugeField;
pub use generators::{GenIndex, GeneratorSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

/// Problem data; `c` and `a` are always derived from `n` and `μ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemConfig {
    pub n: usize,
    pub two_mu: u32,
    pub mode: Mode,
    pub points: usize,
    pub seed: u64,
}

impl ProblemConfig {
    pub fn new(n: usize, two_mu: u32) -> Result<Self> {
        let ok = n >= 2 && (two_mu <= 1 || (two_mu == 2 && n == 2));
        if !ok {
            return Err(Error::UnsupportedRep { n, two_mu });
        }
        Ok(ProblemConfig { n, two_mu, mode: Mode::Exact, points: 20, seed: 0 })
    }

    pub fn with_sampling(mut self, mode: Mode, points: usize, seed: u64) -> Self {
        self.mode = mode;
        self.points = points;
        self.seed = seed;
        self
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn mu(&self) -> Rational {
        ratio(self.two_mu as i64, 2)
    }

    /// `c = (n − 1)μ`.
    pub fn c(&self) -> Rational {
        ratio((self.n as i64 - 1) * self.two_mu as i64, 2)
    }

    /// `a = n − 1/2 − c`.
    pub fn a(&self) -> Rational {
        ratio(2 * self.n as i64 - 1, 2) - self.c()
    }
}
