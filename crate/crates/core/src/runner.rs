//! Suite selection and the fixed-order driver behind the command line.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::micz::suites::{self, Problem, SuiteOptions};
use crate::micz::{Mode, ProblemConfig};
use crate::radial::{full_dimension_scalar_check, verify_radial_eigensystem, RadialOptions};
use crate::report::Report;
use crate::reps;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    Gauge,
    ClosedForms,
    Commutation,
    Quadratic,
    Radial,
    FullScalar,
    Reps,
    Abstract,
}

impl SuiteName {
    /// Run order.
    pub const ALL: [SuiteName; 8] = [
        SuiteName::Gauge,
        SuiteName::ClosedForms,
        SuiteName::Commutation,
        SuiteName::Quadratic,
        SuiteName::Radial,
        SuiteName::FullScalar,
        SuiteName::Reps,
        SuiteName::Abstract,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Gauge => "gauge",
            SuiteName::ClosedForms => "closed-forms",
            SuiteName::Commutation => "commutation",
            SuiteName::Quadratic => "quadratic",
            SuiteName::Radial => "radial",
            SuiteName::FullScalar => "full-scalar",
            SuiteName::Reps => "reps",
            SuiteName::Abstract => "abstract",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
    }
}

/// Parse a comma-separated suite list; `all` selects every suite that
/// applies to `two_mu`.
pub fn parse_suites(list: &str, two_mu: u32) -> Result<Vec<SuiteName>> {
    let mut out = Vec::new();
    for part in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if part == "all" {
            out.extend(SuiteName::ALL.into_iter().filter(|s| applies(*s, two_mu)));
        } else {
            out.push(part.parse()?);
        }
    }
    out.sort();
    out.dedup();
    if out.is_empty() {
        return Err(Error::Config("no suites selected".into()));
    }
    Ok(out)
}

fn applies(s: SuiteName, two_mu: u32) -> bool {
    match two_mu {
        0 => true,
        1 => s != SuiteName::FullScalar,
        _ => s == SuiteName::Gauge,
    }
}

/// `μ` as the exact strings `0`, `1/2`, `1`.
pub fn parse_mu(s: &str) -> Result<u32> {
    match s.trim() {
        "0" => Ok(0),
        "1/2" => Ok(1),
        "1" => Ok(2),
        other => Err(Error::Config(format!("μ must be 0, 1/2 or 1, got {other:?}"))),
    }
}

pub fn format_mu(two_mu: u32) -> &'static str {
    match two_mu {
        0 => "0",
        1 => "1/2",
        _ => "1",
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub n: usize,
    #[serde(rename = "mu", serialize_with = "ser_mu")]
    pub two_mu: u32,
    pub suites: Vec<SuiteName>,
    pub mode: Mode,
    pub points: usize,
    pub seed: u64,
    pub kmax: u32,
    pub lmax: u32,
    pub imax: u32,
    pub pairs: usize,
    #[serde(skip)]
    pub timings: bool,
}

fn ser_mu<S: serde::Serializer>(two_mu: &u32, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(format_mu(*two_mu))
}

impl SuiteConfig {
    pub fn new(n: usize, two_mu: u32, suites: Vec<SuiteName>) -> Self {
        SuiteConfig {
            n,
            two_mu,
            suites,
            mode: Mode::Exact,
            points: 20,
            seed: 0,
            kmax: 4,
            lmax: 4,
            imax: 6,
            pairs: 60,
            timings: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=3).contains(&self.n) {
            return Err(Error::Config(format!("n must be 2 or 3, got {}", self.n)));
        }
        if self.two_mu == 2 && (self.n != 2 || self.suites.iter().any(|s| *s != SuiteName::Gauge)) {
            return Err(Error::Config("μ = 1 is only a falsifier: it requires n = 2 and the gauge suite alone".into()));
        }
        if self.two_mu == 1 && self.suites.contains(&SuiteName::FullScalar) {
            return Err(Error::Config("the full-dimensional scalar check needs μ = 0".into()));
        }
        if self.points == 0 || self.kmax == 0 || self.imax == 0 {
            return Err(Error::Config("points, kmax and imax must be positive".into()));
        }
        Ok(())
    }
}

/// Run the selected suites in their fixed order.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    let problem_cfg = ProblemConfig::new(cfg.n, cfg.two_mu)?.with_sampling(cfg.mode, cfg.points, cfg.seed);
    let opts = SuiteOptions { pairs: cfg.pairs, timings: cfg.timings };
    let radial = RadialOptions { kmax: cfg.kmax, lmax: cfg.lmax, timings: cfg.timings };
    let needs_problem = cfg.suites.iter().any(|s| *s <= SuiteName::Quadratic);
    let problem = if needs_problem { Some(Problem::new(problem_cfg)?) } else { None };
    let mut items = Vec::new();
    for suite in SuiteName::ALL.into_iter().filter(|s| cfg.suites.contains(s)) {
        let p = || problem.as_ref().expect("problem built for algebra suites");
        items.extend(match suite {
            SuiteName::Gauge => suites::verify_gauge_identities(p(), &opts)?,
            SuiteName::ClosedForms => suites::verify_closed_forms(p(), &opts)?,
            SuiteName::Commutation => suites::verify_commutation_relations(p(), &opts)?,
            SuiteName::Quadratic => suites::verify_quadratic_relations(p(), &opts)?,
            SuiteName::Radial => verify_radial_eigensystem(cfg.n, cfg.two_mu, &radial)?,
            SuiteName::FullScalar => full_dimension_scalar_check(cfg.n, cfg.kmax, cfg.lmax, cfg.timings)?,
            SuiteName::Reps => {
                let mut v = reps::verify_decompositions(cfg.n, cfg.two_mu, cfg.imax, cfg.timings)?;
                v.extend(reps::verify_k_types(cfg.n, cfg.two_mu, cfg.lmax, cfg.timings)?);
                v
            }
            SuiteName::Abstract => reps::abstract_algebra_checks(cfg.n, cfg.seed, cfg.timings)?,
        });
    }
    let config = serde_json::to_value(cfg).expect("config serializes");
    Ok(Report::new(config, items))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_lists() {
        assert_eq!(parse_suites("all", 2).unwrap(), vec![SuiteName::Gauge]);
        assert!(!parse_suites("all", 1).unwrap().contains(&SuiteName::FullScalar));
        assert_eq!(parse_suites("reps,gauge,reps", 0).unwrap(), vec![SuiteName::Gauge, SuiteName::Reps]);
        assert!(parse_suites("bogus", 0).is_err());
    }

    #[test]
    fn falsifier_is_gauge_only() {
        let mut cfg = SuiteConfig::new(2, 2, vec![SuiteName::Gauge]);
        assert!(cfg.validate().is_ok());
        cfg.suites.push(SuiteName::Radial);
        assert!(cfg.validate().is_err());
        assert!(SuiteConfig::new(3, 2, vec![SuiteName::Gauge]).validate().is_err());
    }

    #[test]
    fn mu_strings() {
        assert_eq!(parse_mu("1/2").unwrap(), 1);
        assert!(parse_mu("0.5").is_err());
    }
}
