//! Normal-ordered differential operators with matrix coefficients.
//!
//! An operator is `Σ_β P_β ∂^β` with every coefficient to the left of every
//! derivative. Multi-indices reuse the packed [`Mono`] encoding.

pub mod pointwise;
pub mod section;

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Coeff, Mono, RationalPoint, Scalar, ScalarExpr};

pub use pointwise::{DerivTable, ExprPool, PointOp, PointTable};
pub use section::{apply, Section};

/// Maximum total derivative order any composition may produce.
pub const MAX_ORDER: u32 = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp<C> {
    dim: usize,
    nvars: usize,
    terms: BTreeMap<Mono, Matrix<ScalarExpr<C>>>,
}

impl<C: Coeff> DiffOp<C> {
    pub fn zero(dim: usize, nvars: usize) -> Self {
        DiffOp { dim, nvars, terms: BTreeMap::new() }
    }

    pub fn identity(dim: usize, nvars: usize) -> Self {
        Self::multiplication(Matrix::identity(dim), nvars)
    }

    /// Order-zero operator multiplying by a coefficient matrix.
    pub fn multiplication(m: Matrix<ScalarExpr<C>>, nvars: usize) -> Self {
        let dim = m.rows();
        Self::from_terms(dim, nvars, [(Mono::ONE, m)])
    }

    /// Multiplication by `e·I`.
    pub fn scalar(e: ScalarExpr<C>, dim: usize, nvars: usize) -> Self {
        Self::multiplication(Matrix::scalar(dim, e), nvars)
    }

    /// `∂_i · I`.
    pub fn partial(i: usize, dim: usize, nvars: usize) -> Self {
        Self::from_terms(dim, nvars, [(Mono::var(i), Matrix::identity(dim))])
    }

    pub fn from_terms(
        dim: usize,
        nvars: usize,
        terms: impl IntoIterator<Item = (Mono, Matrix<ScalarExpr<C>>)>,
    ) -> Self {
        let mut op = Self::zero(dim, nvars);
        for (m, c) in terms {
            op.add_term(m, c);
        }
        op
    }

    fn add_term(&mut self, m: Mono, c: Matrix<ScalarExpr<C>>) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Matrix<ScalarExpr<C>>> {
        &self.terms
    }

    pub fn coeff(&self, m: Mono) -> Option<&Matrix<ScalarExpr<C>>> {
        self.terms.get(&m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// True when some coefficient carries the `1/(r + x_D)` denominator.
    pub fn has_rho(&self) -> bool {
        self.terms.values().any(|m| m.entries().iter().any(ScalarExpr::has_rho))
    }

    fn check_dim(&self, o: &Self) -> Result<()> {
        if self.dim != o.dim {
            return Err(Error::DimMismatch(self.dim, o.dim));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_dim(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_terms(|c| c.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        let e = ScalarExpr::constant(c.clone());
        self.map_terms(|m| m.scale(&e))
    }

    /// `e · P` for a scalar expression `e`.
    pub fn left_scalar(&self, e: &ScalarExpr<C>) -> Self {
        self.map_terms(|m| m.scale(e))
    }

    /// `M · P` for a coefficient matrix `M`.
    pub fn left_matrix(&self, mat: &Matrix<ScalarExpr<C>>) -> Self {
        self.map_terms(|m| mat.mul(m))
    }

    fn map_terms(&self, f: impl Fn(&Matrix<ScalarExpr<C>>) -> Matrix<ScalarExpr<C>>) -> Self {
        Self::from_terms(self.dim, self.nvars, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// `Σ c_k P_k`.
    pub fn lin_comb(dim: usize, nvars: usize, parts: &[(C, &Self)]) -> Result<Self> {
        let mut out = Self::zero(dim, nvars);
        for (c, p) in parts {
            out.check_dim(p)?;
            let e = ScalarExpr::constant(c.clone());
            for (m, coeff) in &p.terms {
                out.add_term(*m, coeff.scale(&e));
            }
        }
        Ok(out)
    }

    /// Normal-ordered product `P ∘ Q` by the Leibniz rule.
    pub fn compose(&self, q: &Self) -> Result<Self> {
        self.check_dim(q)?;
        let order = self.order() + q.order();
        if order > MAX_ORDER {
            return Err(Error::OrderExceeded(order, MAX_ORDER));
        }
        let mut derivs = CoeffDerivatives::new(q);
        let mut out = Self::zero(self.dim, self.nvars.max(q.nvars));
        for (beta, p_beta) in &self.terms {
            for eps in beta.submonos(self.nvars) {
                let k = beta.binomial(eps) as i64;
                let rest = Mono(beta.0 - eps.0);
                let kc = ScalarExpr::int(k);
                for delta in q.terms.keys().copied().collect::<Vec<_>>() {
                    let dq = derivs.get(delta, eps);
                    if dq.is_zero() {
                        continue;
                    }
                    let mut prod = p_beta.mul(&dq);
                    if k != 1 {
                        prod = prod.scale(&kc);
                    }
                    out.add_term(rest.mul(delta), prod);
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, q: &Self) -> Result<Self> {
        self.compose(q)?.sub(&q.compose(self)?)
    }

    pub fn anticommutator(&self, q: &Self) -> Result<Self> {
        self.compose(q)?.add(&q.compose(self)?)
    }

    /// `r^{−1/2} ∘ P ∘ r^{1/2}`, expanded by Leibniz so that no half powers
    /// of `r` survive.
    pub fn conjugate_sqrt_r(&self) -> Self {
        let nvars = self.nvars;
        let mut phi: HashMap<Mono, ScalarExpr<C>> = HashMap::new();
        phi.insert(Mono::ONE, ScalarExpr::int(1));
        let mut out = Self::zero(self.dim, nvars);
        for (beta, p_beta) in &self.terms {
            for gamma in beta.submonos(nvars) {
                let k = beta.binomial(gamma) as i64;
                let f = sqrt_r_factor(gamma, nvars, &mut phi).scale(&C::from_int(k));
                if f.is_zero() {
                    continue;
                }
                out.add_term(Mono(beta.0 - gamma.0), p_beta.scale(&f));
            }
        }
        out
    }

    /// Coefficient matrices at a point; zero coefficients are dropped.
    pub fn eval_op_at<F: Scalar>(&self, p: &RationalPoint) -> Result<BTreeMap<Mono, Matrix<F>>> {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = c.try_map(|e| e.eval::<F>(p))?;
            if !v.is_zero() {
                out.insert(*m, v);
            }
        }
        Ok(out)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D + Copy) -> DiffOp<D> {
        DiffOp::from_terms(
            self.dim,
            self.nvars,
            self.terms.iter().map(|(m, c)| (*m, c.map(|e| e.map_coeffs(f)))),
        )
    }
}

/// `φ_γ = r^{−1/2} ∂^γ r^{1/2}` via `φ_{γ+e_i} = ∂_i φ_γ + φ_γ x_i/(2s)`.
fn sqrt_r_factor<C: Coeff>(
    g: Mono,
    nvars: usize,
    memo: &mut HashMap<Mono, ScalarExpr<C>>,
) -> ScalarExpr<C> {
    if let Some(v) = memo.get(&g) {
        return v.clone();
    }
    let i = (0..nvars).find(|&i| g.exp(i) > 0).expect("nonzero multi-index");
    let prev = sqrt_r_factor(g.dec(i).unwrap(), nvars, memo);
    let half = C::from_rational(crate::scalar::ring::ratio(1, 2));
    let xi_over_2s = ScalarExpr::x(i, nvars).mul(&ScalarExpr::r_pow(-2, nvars)).scale(&half);
    let v = prev.differentiate(i).add(&prev.mul(&xi_over_2s));
    memo.insert(g, v.clone());
    v
}

/// Memoized `∂^ε Q_δ`.
struct CoeffDerivatives<'a, C> {
    q: &'a DiffOp<C>,
    memo: HashMap<(Mono, Mono), Matrix<ScalarExpr<C>>>,
}

impl<'a, C: Coeff> CoeffDerivatives<'a, C> {
    fn new(q: &'a DiffOp<C>) -> Self {
        CoeffDerivatives { q, memo: HashMap::new() }
    }

    fn get(&mut self, delta: Mono, eps: Mono) -> Matrix<ScalarExpr<C>> {
        if eps == Mono::ONE {
            return self.q.terms[&delta].clone();
        }
        if let Some(v) = self.memo.get(&(delta, eps)) {
            return v.clone();
        }
        let i = (0..self.q.nvars).find(|&i| eps.exp(i) > 0).unwrap();
        let prev = self.get(delta, eps.dec(i).unwrap());
        let v = prev.map(|e| e.differentiate(i));
        self.memo.insert((delta, eps), v.clone());
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ring::rat;
    use crate::Rational;

    type Op = DiffOp<Rational>;
    type E = ScalarExpr<Rational>;
    const D: usize = 4;

    fn mult(e: E) -> Op {
        Op::scalar(e, 1, D)
    }

    #[test]
    fn canonical_commutation() {
        let d1 = Op::partial(0, 1, D);
        let x1 = mult(E::x(0, D));
        let prod = d1.compose(&x1).unwrap();
        let expect = x1.compose(&d1).unwrap().add(&Op::identity(1, D)).unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn derivative_past_r() {
        let d1 = Op::partial(0, 1, D);
        let r = mult(E::r(D));
        let prod = d1.compose(&r).unwrap();
        let dr = mult(E::x(0, D).mul(&E::r(D)).mul(&E::r_pow(-2, D)));
        let expect = r.compose(&d1).unwrap().add(&dr).unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn anticommutator_of_partials() {
        let d1 = Op::partial(0, 1, D);
        let a = d1.anticommutator(&d1).unwrap();
        let expect = Op::from_terms(1, D, [(Mono::from_exps(&[2]), Matrix::scalar(1, E::int(2)))]);
        assert_eq!(a, expect);
    }

    #[test]
    fn conjugation_by_sqrt_r() {
        let d1 = Op::partial(0, 1, D);
        let c = d1.conjugate_sqrt_r();
        let shift = mult(E::x(0, D).mul(&E::r_pow(-2, D)).scale(&crate::scalar::ring::ratio(1, 2)));
        assert_eq!(c, d1.add(&shift).unwrap());
        let x1 = mult(E::x(0, D));
        assert_eq!(x1.conjugate_sqrt_r(), x1);
        let rd1 = mult(E::r(D)).compose(&d1).unwrap();
        let expect = rd1
            .add(&mult(E::x(0, D).mul(&E::inv_r(D)).scale(&crate::scalar::ring::ratio(1, 2))))
            .unwrap();
        assert_eq!(rd1.conjugate_sqrt_r(), expect);
    }

    #[test]
    fn order_bound_is_enforced() {
        let d = Op::partial(0, 1, D);
        let d2 = d.compose(&d).unwrap();
        let d4 = d2.compose(&d2).unwrap();
        assert_eq!(d4.order(), 4);
        assert_eq!(d4.compose(&d), Err(Error::OrderExceeded(5, 4)));
    }

    #[test]
    fn eval_op_examples() {
        let p = RationalPoint::from_ints(&[1, 2, 3, 4]).unwrap();
        let op = mult(E::x(0, D)).compose(&Op::partial(1, 1, D)).unwrap();
        let v = op.eval_op_at::<crate::ExactValue>(&p).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[&Mono::var(1)], Matrix::identity(1));
        let q = RationalPoint::from_ints(&[3, 4, 0, 0]).unwrap();
        let r = mult(E::r(D)).eval_op_at::<crate::ExactValue>(&q).unwrap();
        assert_eq!(r[&Mono::ONE], Matrix::scalar(1, crate::ExactValue::base(crate::Gaussian::new(rat(5), rat(0)))));
        assert!(op.sub(&op).unwrap().eval_op_at::<crate::ExactValue>(&p).unwrap().is_empty());
    }
}
