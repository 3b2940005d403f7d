//! Verification reports: one item per identity per witness.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::diffop::pointwise::{magnitude, PointOp};
use crate::matrix::Matrix;
use crate::scalar::{Mono, RationalPoint, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    ExactNormalForm,
    ExactPointwise,
    Float,
}

impl Strategy {
    /// Pointwise strategy matching an evaluation field.
    pub fn pointwise<F: Scalar>() -> Self {
        if F::exact() {
            Strategy::ExactPointwise
        } else {
            Strategy::Float
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ExpectedFail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Item {
    pub suite: String,
    pub id: String,
    pub anchor: String,
    pub strategy: Strategy,
    pub status: Status,
    pub witness: Option<String>,
    pub residual: Option<String>,
    pub millis: Option<u64>,
}

impl Item {
    pub fn new(suite: &str, id: impl Into<String>, anchor: &str, strategy: Strategy) -> Self {
        Item {
            suite: suite.into(),
            id: id.into(),
            anchor: anchor.into(),
            strategy,
            status: Status::Pass,
            witness: None,
            residual: None,
            millis: None,
        }
    }

    pub fn witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn at(self, p: &RationalPoint) -> Self {
        self.witness(format_point(p))
    }

    /// Pass when `residual` is `None`, fail otherwise.
    pub fn verdict(mut self, residual: Option<String>) -> Self {
        self.status = if residual.is_some() { Status::Fail } else { Status::Pass };
        self.residual = residual;
        self
    }

    pub fn fail(mut self, residual: impl Into<String>) -> Self {
        self.status = Status::Fail;
        self.residual = Some(residual.into());
        self
    }

    /// A failure the caller predicted; a pass is then reported as a failure
    /// because the prediction did not hold.
    pub fn expect_failure(mut self) -> Self {
        self.status = match self.status {
            Status::Fail => Status::ExpectedFail,
            Status::Pass => {
                self.residual = Some("expected a nonzero residual".into());
                Status::Fail
            }
            s => s,
        };
        self
    }

    pub fn timed(mut self, start: Instant, record: bool) -> Self {
        if record {
            self.millis = Some(start.elapsed().as_millis() as u64);
        }
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub expected_fail: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: serde_json::Value,
    pub items: Vec<Item>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: serde_json::Value, items: Vec<Item>) -> Self {
        let mut summary = Summary::default();
        for it in &items {
            match it.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::ExpectedFail => summary.expected_fail += 1,
            }
        }
        Report { config, items, summary }
    }

    pub fn ok(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Item> {
        self.items.iter().filter(|i| i.status == Status::Fail)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for it in &self.items {
            let status = match it.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::ExpectedFail => "XFAIL",
            };
            let strategy = match it.strategy {
                Strategy::ExactNormalForm => "normal-form",
                Strategy::ExactPointwise => "pointwise",
                Strategy::Float => "float",
            };
            write!(f, "{status:5} {:12} {:40} [{strategy}] {}", it.suite, it.id, it.anchor)?;
            if let Some(w) = &it.witness {
                write!(f, " @ {w}")?;
            }
            if let Some(r) = &it.residual {
                write!(f, " residual {r}")?;
            }
            if let Some(ms) = it.millis {
                write!(f, " ({ms} ms)")?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "summary: {} pass, {} fail, {} expected-fail",
            self.summary.pass, self.summary.fail, self.summary.expected_fail
        )
    }
}

pub fn format_point(p: &RationalPoint) -> String {
    format!("({})", p.to_strings().join(", "))
}

/// Accumulates the two sides of an operator identity at a point and decides
/// whether the difference vanishes: exactly, or relative to the largest
/// summand in floating point.
#[derive(Clone, Debug)]
pub struct Residual<F> {
    sum: PointOp<F>,
    scale: f64,
}

impl<F: Scalar> Default for Residual<F> {
    fn default() -> Self {
        Residual { sum: PointOp::new(), scale: 0.0 }
    }
}

impl<F: Scalar> Residual<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_op(&mut self, op: &PointOp<F>, k: &F) {
        if !F::exact() {
            self.scale = self.scale.max(magnitude(op) * k.magnitude());
        }
        for (m, v) in op {
            match self.sum.get_mut(m) {
                Some(x) => x.add_scaled(v, k),
                None => {
                    self.sum.insert(*m, if k.is_one() { v.clone() } else { v.scale(k) });
                }
            }
        }
    }

    pub fn add(&mut self, op: &PointOp<F>) {
        self.add_op(op, &F::one());
    }

    pub fn sub(&mut self, op: &PointOp<F>) {
        self.add_op(op, &F::one().negate());
    }

    pub fn add_matrix(&mut self, m: &Matrix<F>, k: &F) {
        let op: PointOp<F> = [(Mono::ONE, m.clone())].into_iter().collect();
        self.add_op(&op, k);
    }

    /// `None` when the identity holds, else a description of the residual.
    pub fn check(&self, tol: f64) -> Option<String> {
        if F::exact() {
            for (m, v) in &self.sum {
                if let Some((idx, e)) = v.entries().iter().enumerate().find(|(_, e)| !e.is_zero()) {
                    let (i, j) = (idx / v.cols(), idx % v.cols());
                    return Some(format!("∂^{m:?} entry ({i},{j}) = {e}"));
                }
            }
            None
        } else {
            let rel = magnitude(&self.sum) / self.scale.max(f64::MIN_POSITIVE);
            let abs = magnitude(&self.sum);
            if abs == 0.0 || rel <= tol {
                None
            } else {
                Some(format!("relative {rel:.3e}"))
            }
        }
    }
}
