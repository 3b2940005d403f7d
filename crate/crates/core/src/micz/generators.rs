//! The dynamical symmetry generators `J_AB`, `A, B ∈ {−1, 0, 1, …, D+1}`.
//!
//! With `π_α = −i∇_α = −i∂_α + 𝒜_α`:
//! `Γ_α = rπ_α`, `X = rπ² + c/r`, `Y = r`, `J_αβ = i[Γ_α, Γ_β]`,
//! `Z_α = i[Γ_α, X]`, `W_α = i[Γ_α, Y]`, `Γ_{D+1} = (X − Y)/2`,
//! `Γ_{−1} = (X + Y)/2`, `A = (Z − W)/2`, `M = (Z + W)/2`,
//! `T = i[Γ_{D+1}, Γ_{−1}]`, arranged as
//! `J_μν`, `J_{μ,D+1} = A_μ`, `J_{μ,−1} = M_μ`, `J_{μ,0} = Γ_μ`,
//! `J_{D+1,−1} = T`, `J_{D+1,0} = Γ_{D+1}`, `J_{−1,0} = Γ_{−1}`.
//!
//! Generators are stored by position `0..D+3` in the index order
//! `−1, 0, 1, …, D, D+1`, where the metric is `diag(+, +, −, …, −)`.

use std::fmt;

use rayon::prelude::*;

use super::gauge::GaugeField;
use super::ProblemConfig;
use crate::diffop::DiffOp;
use crate::error::Result;
use crate::scalar::ring::{imag, ratio};
use crate::scalar::{Coeff, Ring, ScalarExpr};
use crate::{Expr, Gaussian};

pub type Op = DiffOp<Gaussian>;

/// A generator index in `{−1, 0, 1, …, D+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenIndex(pub i32);

impl GenIndex {
    pub fn position(self) -> usize {
        (self.0 + 1) as usize
    }

    pub fn from_position(p: usize) -> Self {
        GenIndex(p as i32 - 1)
    }

    /// `η_AA`.
    pub fn eta(self) -> i64 {
        if self.0 <= 0 {
            1
        } else {
            -1
        }
    }

    /// Euclidean axis `α − 1` for `A = α ∈ 1..=D`.
    pub fn axis(self, d: usize) -> Option<usize> {
        (self.0 >= 1 && self.0 as usize <= d).then(|| self.0 as usize - 1)
    }
}

impl fmt::Display for GenIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The building blocks of the definitional construction.
#[derive(Clone, Debug)]
pub struct Parts {
    pub pi: Vec<Op>,
    pub pi2: Op,
    pub gamma: Vec<Op>,
    pub x: Op,
    pub y: Op,
    pub w: Vec<Op>,
}

#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub d: usize,
    pub dim: usize,
    pub parts: Parts,
    table: Vec<Vec<Op>>,
    hat: Vec<Vec<Op>>,
}

fn half() -> Gaussian {
    Gaussian::from_rational(ratio(1, 2))
}

fn i_times(op: &Op) -> Op {
    op.scale(&imag())
}

/// `i[P, Q]`.
fn i_bracket(p: &Op, q: &Op) -> Result<Op> {
    Ok(i_times(&p.commutator(q)?))
}

pub fn momenta(field: &GaugeField) -> Vec<Op> {
    let d = field.nvars();
    let dim = field.dim();
    let minus_i = imag().negate();
    (0..d)
        .map(|a| {
            Op::partial(a, dim, d)
                .scale(&minus_i)
                .add(&Op::multiplication(field.potential(a).clone(), d))
                .expect("matching dimensions")
        })
        .collect()
}

impl GeneratorSet {
    pub fn build(cfg: &ProblemConfig, field: &GaugeField) -> Result<Self> {
        let d = field.nvars();
        let dim = field.dim();
        let r = Op::scalar(Expr::r(d), dim, d);
        let c_over_r = Op::scalar(Expr::inv_r(d).scale_rational(&cfg.c()), dim, d);
        let pi = momenta(field);
        let mut pi2 = Op::zero(dim, d);
        for p in &pi {
            pi2 = pi2.add(&p.compose(p)?)?;
        }
        let gamma: Vec<Op> = pi.iter().map(|p| r.compose(p)).collect::<Result<_>>()?;
        let x = r.compose(&pi2)?.add(&c_over_r)?;
        let y = r.clone();
        let h = half();

        let pairs: Vec<(usize, usize)> = (0..d).flat_map(|a| (a + 1..d).map(move |b| (a, b))).collect();
        let jab: Vec<Op> =
            pairs.par_iter().map(|&(a, b)| i_bracket(&gamma[a], &gamma[b])).collect::<Result<_>>()?;
        let z: Vec<Op> = gamma.par_iter().map(|g| i_bracket(g, &x)).collect::<Result<_>>()?;
        let w: Vec<Op> = gamma.iter().map(|g| i_bracket(g, &y)).collect::<Result<_>>()?;
        let g_top = x.sub(&y)?.scale(&h);
        let g_bottom = x.add(&y)?.scale(&h);
        let t = i_bracket(&g_top, &g_bottom)?;

        let size = d + 3;
        let mut table = vec![vec![Op::zero(dim, d); size]; size];
        let mut set = |a: i32, b: i32, op: Op| {
            let (pa, pb) = (GenIndex(a).position(), GenIndex(b).position());
            table[pb][pa] = op.neg();
            table[pa][pb] = op;
        };
        let top = d as i32 + 1;
        for (k, &(a, b)) in pairs.iter().enumerate() {
            set(a as i32 + 1, b as i32 + 1, jab[k].clone());
        }
        for m in 0..d {
            let idx = m as i32 + 1;
            set(idx, top, z[m].sub(&w[m])?.scale(&h));
            set(idx, -1, z[m].add(&w[m])?.scale(&h));
            set(idx, 0, gamma[m].clone());
        }
        set(top, -1, t);
        set(top, 0, g_top);
        set(-1, 0, g_bottom);

        let hat = table.par_iter().map(|row| row.iter().map(Op::conjugate_sqrt_r).collect()).collect();
        Ok(GeneratorSet { d, dim, parts: Parts { pi, pi2, gamma, x, y, w }, table, hat })
    }

    pub fn indices(&self) -> Vec<GenIndex> {
        (0..self.d + 3).map(GenIndex::from_position).collect()
    }

    /// Pairs `A < B`.
    pub fn labels(&self) -> Vec<(GenIndex, GenIndex)> {
        let idx = self.indices();
        idx.iter().flat_map(|&a| idx.iter().filter(move |&&b| a < b).map(move |&b| (a, b))).collect()
    }

    pub fn j(&self, a: GenIndex, b: GenIndex) -> &Op {
        &self.table[a.position()][b.position()]
    }

    /// `Ĵ_AB = r^{−1/2} J_AB r^{1/2}`.
    pub fn j_hat(&self, a: GenIndex, b: GenIndex) -> &Op {
        &self.hat[a.position()][b.position()]
    }

    pub fn family(&self, hatted: bool) -> &Vec<Vec<Op>> {
        if hatted {
            &self.hat
        } else {
            &self.table
        }
    }

    pub fn has_rho(&self) -> bool {
        self.table.iter().flatten().any(Op::has_rho)
    }
}

/// The closed forms, built from `π`, `x`, `r` and `F` alone.
pub struct ClosedForms {
    pub angular: Vec<((usize, usize), Op)>,
    pub a: Vec<Op>,
    pub m: Vec<Op>,
    pub t: Op,
    pub gamma: Vec<Op>,
    pub gamma_bottom: Op,
    pub gamma_top: Op,
}

pub fn closed_forms(cfg: &ProblemConfig, field: &GaugeField, pi: &[Op]) -> Result<ClosedForms> {
    let d = field.nvars();
    let dim = field.dim();
    let mult = |e: Expr| Op::scalar(e, dim, d);
    let xs: Vec<Op> = (0..d).map(|a| mult(Expr::x(a, d))).collect();
    let r = mult(Expr::r(d));
    let s = Expr::s(d);
    let c = cfg.c();
    let h = half();
    let mut pi2 = Op::zero(dim, d);
    for p in pi {
        pi2 = pi2.add(&p.compose(p)?)?;
    }
    let mut x_dot_pi = Op::zero(dim, d);
    for a in 0..d {
        x_dot_pi = x_dot_pi.add(&xs[a].compose(&pi[a])?)?;
    }
    let r2f = |a: usize, b: usize| Op::multiplication(field.field(a, b).map(|e| e.mul(&s)), d);

    let mut angular = Vec::new();
    for a in 0..d {
        for b in a + 1..d {
            let op = xs[a].compose(&pi[b])?.sub(&xs[b].compose(&pi[a])?)?.add(&r2f(a, b))?;
            angular.push(((a, b), op));
        }
    }
    let c_term = |a: usize| mult(Expr::x(a, d).mul(&Expr::r_pow(-2, d)).scale_rational(&(&c * ratio(1, 2))));
    let i_d3 = Gaussian::new(ratio(0, 1), ratio(d as i64 - 3, 2));
    let mut a_ops = Vec::new();
    let mut m_ops = Vec::new();
    for a in 0..d {
        let mut common = xs[a].compose(&pi2)?.scale(&h).sub(&pi[a].compose(&x_dot_pi)?)?;
        for b in 0..d {
            common = common.add(&r2f(a, b).compose(&pi[b])?)?;
        }
        common = common.sub(&c_term(a))?.add(&pi[a].scale(&i_d3))?;
        let half_x = xs[a].scale(&h);
        a_ops.push(common.sub(&half_x)?);
        m_ops.push(common.add(&half_x)?);
    }
    let t = x_dot_pi.sub(&Op::scalar(ScalarExpr::constant(Gaussian::new(ratio(0, 1), ratio(d as i64 - 1, 2))), dim, d))?;
    let gamma = pi.iter().map(|p| r.compose(p)).collect::<Result<Vec<_>>>()?;
    let r_pi2 = r.compose(&pi2)?;
    let c_over_r = mult(Expr::inv_r(d).scale_rational(&c));
    let gamma_bottom = r_pi2.add(&r)?.add(&c_over_r)?.scale(&h);
    let gamma_top = r_pi2.sub(&r)?.add(&c_over_r)?.scale(&h);
    Ok(ClosedForms { angular, a: a_ops, m: m_ops, t, gamma, gamma_bottom, gamma_top })
}
