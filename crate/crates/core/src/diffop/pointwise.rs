//! Operators evaluated at a point.
//!
//! A product `P ∘ Q` at `p` needs the values of `P_β` and of `∂^ε Q_δ` for
//! `ε ≤ β`. [`DerivTable`] holds those coefficient derivatives symbolically
//! once per operator; [`PointTable`] is its value at one point.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use super::DiffOp;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Coeff, CompiledExpr, FloatPoint, Mono, RationalPoint, Scalar, ScalarExpr};

/// An operator's coefficient matrices at a point: `β ↦ P_β(p)`.
pub type PointOp<F> = BTreeMap<Mono, Matrix<F>>;

/// Distinct coefficient expressions shared by a family of tables.
/// Generator coefficients repeat heavily, so each distinct entry is
/// differentiated once and evaluated once per point.
#[derive(Debug)]
pub struct ExprPool<C> {
    exprs: Vec<ScalarExpr<C>>,
    compiled: OnceLock<Vec<CompiledExpr>>,
}

impl<C: Coeff> ExprPool<C> {
    pub fn len(&self) -> usize {
        self.exprs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exprs.is_empty()
    }

    /// Every pooled expression at `p`.
    pub fn values<F: Scalar>(&self, p: &RationalPoint) -> Result<Vec<F>> {
        if F::exact() {
            let deg = self.exprs.iter().map(ScalarExpr::degree).max().unwrap_or(0);
            let powers = p.powers(deg);
            self.exprs.iter().map(|e| e.eval_with::<F>(p, &powers)).collect()
        } else {
            let compiled = self.compiled.get_or_init(|| self.exprs.iter().map(ScalarExpr::compile).collect());
            let deg = compiled.iter().map(CompiledExpr::degree).max().unwrap_or(0);
            let fp = FloatPoint::new(p, deg);
            compiled.iter().map(|e| e.eval(&fp).map(F::from_complex64)).collect()
        }
    }
}

struct Interner<C> {
    exprs: Vec<ScalarExpr<C>>,
    index: HashMap<ScalarExpr<C>, usize>,
}

impl<C: Coeff + Eq + Hash> Interner<C> {
    fn intern(&mut self, e: ScalarExpr<C>) -> usize {
        if let Some(&k) = self.index.get(&e) {
            return k;
        }
        self.exprs.push(e.clone());
        self.index.insert(e, self.exprs.len() - 1);
        self.exprs.len() - 1
    }
}

/// Term `δ` with `(ε, pool indices of ∂^ε P_δ)`.
type Entry = (Mono, Vec<(Mono, Vec<usize>)>);

/// `∂^ε P_δ` for every term `δ` and every `|ε| ≤ order`, as pool indices
/// in row-major order.
#[derive(Clone, Debug)]
pub struct DerivTable<C> {
    dim: usize,
    nvars: usize,
    order: u32,
    op_order: u32,
    entries: Vec<Entry>,
    pool: Arc<ExprPool<C>>,
}

impl<C: Coeff + Eq + Hash> DerivTable<C> {
    pub fn new(op: &DiffOp<C>, order: u32) -> Self {
        Self::family(&[op], order).pop().expect("one table per operator")
    }

    /// Tables for several operators over one shared pool.
    pub fn family(ops: &[&DiffOp<C>], order: u32) -> Vec<Self> {
        let nvars = ops.first().map_or(0, |op| op.nvars());
        let mut pool = Interner { exprs: Vec::new(), index: HashMap::new() };
        let base: Vec<Vec<(Mono, Vec<usize>)>> = ops
            .iter()
            .map(|op| op.terms().iter().map(|(d, m)| (*d, m.entries().iter().map(|e| pool.intern(e.clone())).collect())).collect())
            .collect();

        // derivative[(k, i)] = index of ∂_i exprs[k], filled level by level
        let mut derivative: HashMap<(usize, usize), usize> = HashMap::new();
        let mut frontier: Vec<usize> = (0..pool.exprs.len()).collect();
        for _ in 0..order {
            let tasks: Vec<(usize, usize)> = frontier
                .iter()
                .flat_map(|&k| (0..nvars).map(move |i| (k, i)))
                .filter(|key| !derivative.contains_key(key))
                .collect();
            let done: Vec<ScalarExpr<C>> = tasks.par_iter().map(|&(k, i)| pool.exprs[k].differentiate(i)).collect();
            let mut next = Vec::new();
            for (key, e) in tasks.into_iter().zip(done) {
                let k = pool.intern(e);
                derivative.insert(key, k);
                next.push(k);
            }
            next.sort_unstable();
            next.dedup();
            frontier = next;
        }

        let mut epsilons = Mono::all_up_to(nvars, order);
        epsilons.sort_by_key(|m| m.degree());
        let tables = ops
            .iter()
            .zip(base)
            .map(|(op, terms)| {
                let entries = terms
                    .into_iter()
                    .map(|(delta, coeff)| {
                        let mut done: BTreeMap<Mono, Vec<usize>> = BTreeMap::new();
                        done.insert(Mono::ONE, coeff);
                        for eps in epsilons.iter().filter(|m| **m != Mono::ONE) {
                            let i = (0..nvars).find(|&i| eps.exp(i) > 0).unwrap();
                            let prev = &done[&eps.dec(i).unwrap()];
                            let d = prev.iter().map(|&k| derivative[&(k, i)]).collect();
                            done.insert(*eps, d);
                        }
                        let list = done.into_iter().filter(|(_, m)| m.iter().any(|&k| !pool.exprs[k].is_zero())).collect();
                        (delta, list)
                    })
                    .collect();
                (op.dim(), op.order(), entries)
            })
            .collect::<Vec<_>>();
        let pool = Arc::new(ExprPool { exprs: pool.exprs, compiled: OnceLock::new() });
        tables
            .into_iter()
            .map(|(dim, op_order, entries)| DerivTable { dim, nvars, order, op_order, entries, pool: Arc::clone(&pool) })
            .collect()
    }
}

impl<C: Coeff> DerivTable<C> {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn pool(&self) -> &Arc<ExprPool<C>> {
        &self.pool
    }

    pub fn eval<F: Scalar>(&self, p: &RationalPoint) -> Result<PointTable<F>> {
        Ok(self.at(&self.pool.values::<F>(p)?))
    }

    /// The table at a point from precomputed pool values.
    pub fn at<F: Scalar>(&self, values: &[F]) -> PointTable<F> {
        let dim = self.dim;
        let mut entries = BTreeMap::new();
        for (delta, list) in &self.entries {
            let mut inner = BTreeMap::new();
            for (eps, idx) in list {
                let v = Matrix::from_fn(dim, dim, |i, j| values[idx[i * dim + j]].clone());
                if !v.is_zero() {
                    inner.insert(*eps, v);
                }
            }
            entries.insert(*delta, inner);
        }
        PointTable { dim, nvars: self.nvars, order: self.order, op_order: self.op_order, entries }
    }
}

#[derive(Clone, Debug)]
pub struct PointTable<F> {
    dim: usize,
    nvars: usize,
    order: u32,
    op_order: u32,
    entries: BTreeMap<Mono, BTreeMap<Mono, Matrix<F>>>,
}

impl<F: Scalar> PointTable<F> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The operator itself at the point.
    pub fn value(&self) -> PointOp<F> {
        self.entries
            .iter()
            .filter_map(|(d, inner)| inner.get(&Mono::ONE).map(|m| (*d, m.clone())))
            .collect()
    }

    /// `(P ∘ Q)(p)` by the Leibniz rule.
    pub fn compose(&self, q: &PointTable<F>) -> Result<PointOp<F>> {
        if self.dim != q.dim {
            return Err(Error::DimMismatch(self.dim, q.dim));
        }
        if q.order < self.op_order {
            return Err(Error::OrderExceeded(self.op_order, q.order));
        }
        let total = self.op_order + q.op_order;
        if total > super::MAX_ORDER {
            return Err(Error::OrderExceeded(total, super::MAX_ORDER));
        }
        let mut out: PointOp<F> = BTreeMap::new();
        for (beta, p_inner) in &self.entries {
            let Some(p_beta) = p_inner.get(&Mono::ONE) else { continue };
            for eps in beta.submonos(self.nvars) {
                let b = beta.binomial(eps);
                let k = (b != 1).then(|| F::from_complex64(num_complex::Complex64::new(b as f64, 0.0)));
                let rest = Mono(beta.0 - eps.0);
                for (delta, q_inner) in &q.entries {
                    let Some(dq) = q_inner.get(&eps) else { continue };
                    out.entry(rest.mul(*delta))
                        .or_insert_with(|| Matrix::zeros(self.dim, self.dim))
                        .add_product(p_beta, dq, k.as_ref());
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, q: &PointTable<F>) -> Result<PointOp<F>> {
        Ok(sub(&self.compose(q)?, &q.compose(self)?))
    }

    pub fn anticommutator(&self, q: &PointTable<F>) -> Result<PointOp<F>> {
        Ok(add(&self.compose(q)?, &q.compose(self)?))
    }
}

fn accumulate<F: Scalar>(out: &mut PointOp<F>, m: Mono, v: Matrix<F>) {
    match out.get_mut(&m) {
        Some(x) => x.add_assign(&v),
        None => {
            out.insert(m, v);
        }
    }
}

pub fn add<F: Scalar>(a: &PointOp<F>, b: &PointOp<F>) -> PointOp<F> {
    let mut out = a.clone();
    for (m, v) in b {
        accumulate(&mut out, *m, v.clone());
    }
    out
}

pub fn sub<F: Scalar>(a: &PointOp<F>, b: &PointOp<F>) -> PointOp<F> {
    add(a, &scale(b, &F::one().negate()))
}

pub fn scale<F: Scalar>(a: &PointOp<F>, k: &F) -> PointOp<F> {
    a.iter().map(|(m, v)| (*m, v.scale(k))).collect()
}

/// Largest coefficient-entry magnitude.
pub fn magnitude<F: Scalar>(a: &PointOp<F>) -> f64 {
    a.values().map(Matrix::max_magnitude).fold(0.0, f64::max)
}

/// Exact zero test, or `|a| ≤ tol · scale` in floating point.
pub fn vanishes<F: Scalar>(a: &PointOp<F>, tol: f64, scale: f64) -> bool {
    if F::exact() {
        a.values().all(Matrix::is_zero)
    } else {
        magnitude(a) <= tol * scale.max(1e-300)
    }
}
