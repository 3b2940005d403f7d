//! Test sections `p(x)·r^{m/2}·e^{−λr}` and exact operator application.
//!
//! A section is stored as `e^{−λr} Σ_{c=0..3} r^{c/2} F_c(x)` where each
//! `F_c` is a spinor of rational functions whose denominators are powers of
//! `s = r²`. Over the rational functions the four classes `r^{c/2}` are
//! linearly independent, so this representation is canonical.

use std::collections::HashMap;

use num_traits::Signed;

use super::DiffOp;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::frac::{s_poly, Frac};
use crate::scalar::{Coeff, Mono, Poly, RationalPoint, Ring, Scalar, ScalarExpr};
use crate::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct Section<C> {
    dim: usize,
    nvars: usize,
    decay: Rational,
    comps: [Vec<Frac<C>>; 4],
}

impl<C: Coeff> Section<C> {
    pub fn zero(dim: usize, nvars: usize, decay: Rational) -> Self {
        let z = vec![Frac::zero(nvars); dim];
        Section { dim, nvars, decay, comps: [z.clone(), z.clone(), z.clone(), z] }
    }

    /// `poly · r^{m/2} · e^{−λr} ⊗ spinor`.
    pub fn new(poly: Poly<C>, half_r_exponent: i32, decay: Rational, spinor: &[C]) -> Self {
        assert!(!decay.is_negative(), "decay must be nonnegative");
        let nvars = poly.nvars();
        let dim = spinor.len();
        let q = half_r_exponent.div_euclid(4);
        let c = half_r_exponent.rem_euclid(4) as usize;
        let base = if q >= 0 {
            Frac::from_poly(poly.mul(&s_poly(nvars).pow(q as u32)))
        } else {
            Frac::new(poly, (-q) as u32, 0)
        };
        let mut out = Self::zero(dim, nvars, decay);
        out.comps[c] = spinor.iter().map(|a| base.scale(a)).collect();
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn decay(&self) -> &Rational {
        &self.decay
    }

    /// Spinor of rational functions multiplying `r^{c/2}`.
    pub fn component(&self, c: usize) -> &[Frac<C>] {
        &self.comps[c]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|v| v.iter().all(Frac::is_zero))
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.dim != o.dim {
            return Err(Error::DimMismatch(self.dim, o.dim));
        }
        assert_eq!(self.decay, o.decay, "sections with different decay rates");
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = self.clone();
        for c in 0..4 {
            for i in 0..self.dim {
                out.comps[c][i] = self.comps[c][i].add(&o.comps[c][i]);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&C::from_int(-1)))
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = self.clone();
        for v in out.comps.iter_mut() {
            for f in v.iter_mut() {
                *f = f.scale(k);
            }
        }
        out
    }

    /// Multiply by `s^k`-denominated rational function across all classes.
    fn scale_frac(&self, f: &Frac<C>) -> Self {
        let mut out = self.clone();
        for v in out.comps.iter_mut() {
            for x in v.iter_mut() {
                *x = x.mul(f);
            }
        }
        out
    }

    /// Multiply by `r`: class `c` moves to `c + 2`, wrapping with a factor `s`.
    fn times_r(&self) -> Self {
        let mut out = Self::zero(self.dim, self.nvars, self.decay.clone());
        for c in 0..4 {
            let (target, wrap) = if c + 2 < 4 { (c + 2, false) } else { (c - 2, true) };
            out.comps[target] =
                self.comps[c].iter().map(|f| if wrap { f.mul_s() } else { f.clone() }).collect();
        }
        out
    }

    /// `∂_i`, using `∂_i r^{c/2} = (c/2) r^{c/2} x_i/s` and
    /// `∂_i e^{−λr} = −λ (x_i/s) r e^{−λr}`.
    pub fn derivative(&self, i: usize) -> Self {
        let nvars = self.nvars;
        let xi_over_s = Frac::new(Poly::var(i, nvars), 1, 0);
        let mut out = Self::zero(self.dim, nvars, self.decay.clone());
        for c in 0..4 {
            let half_c = C::from_rational(Rational::new((c as i64).into(), 2.into()));
            for j in 0..self.dim {
                let f = &self.comps[c][j];
                if f.is_zero() {
                    continue;
                }
                let mut d = f.derivative(i);
                if c > 0 {
                    d = d.add(&f.mul(&xi_over_s).scale(&half_c));
                }
                out.comps[c][j] = out.comps[c][j].add(&d);
            }
        }
        if !self.decay.is_zero() {
            let lam = C::from_rational(-self.decay.clone());
            let shifted = self.scale_frac(&xi_over_s.scale(&lam)).times_r();
            out = out.add(&shifted).expect("same shape");
        }
        out
    }

    /// Multiply by a scalar expression `f + g r`; `ρ²` denominators are
    /// rejected.
    pub fn mul_expr(&self, e: &ScalarExpr<C>) -> Result<Self> {
        if e.has_rho() {
            return Err(Error::NonPolynomialCoefficient(format!("{e:?}")));
        }
        let mut out = self.scale_frac(e.f());
        if !e.g().is_zero() {
            out = out.add(&self.scale_frac(e.g()).times_r())?;
        }
        Ok(out)
    }

    pub fn mul_matrix(&self, m: &Matrix<ScalarExpr<C>>) -> Result<Self> {
        if m.cols() != self.dim {
            return Err(Error::DimMismatch(m.cols(), self.dim));
        }
        let mut out = Self::zero(m.rows(), self.nvars, self.decay.clone());
        for row in 0..m.rows() {
            for col in 0..m.cols() {
                let e = m.get(row, col);
                if e.is_zero() {
                    continue;
                }
                if e.has_rho() {
                    return Err(Error::NonPolynomialCoefficient(format!("{e:?}")));
                }
                let mut unit = Self::zero(1, self.nvars, self.decay.clone());
                for c in 0..4 {
                    unit.comps[c][0] = self.comps[c][col].clone();
                }
                let prod = unit.mul_expr(e)?;
                for c in 0..4 {
                    out.comps[c][row] = out.comps[c][row].add(&prod.comps[c][0]);
                }
            }
        }
        Ok(out)
    }

    /// Value at `p` divided by `e^{−λr}` and by `r^{1/2}` for the odd
    /// classes: `(even, odd)` with `even = F_0 + r F_2`, `odd = F_1 + r F_3`.
    /// Both parts are exact in ℚ(i, √s).
    pub fn eval_factored<F: Scalar>(&self, p: &RationalPoint) -> Result<(Vec<F>, Vec<F>)> {
        let r = F::sqrt_rational(p.s());
        let part = |lo: usize, hi: usize| -> Result<Vec<F>> {
            (0..self.dim)
                .map(|j| {
                    let a = ScalarExpr::from_frac(self.comps[lo][j].clone()).eval::<F>(p)?;
                    let b = ScalarExpr::from_frac(self.comps[hi][j].clone()).eval::<F>(p)?;
                    Ok(a.plus(&b.times(&r)))
                })
                .collect()
        };
        Ok((part(0, 2)?, part(1, 3)?))
    }
}

/// Exact image `P s`.
pub fn apply<C: Coeff>(op: &DiffOp<C>, s: &Section<C>) -> Result<Section<C>> {
    if op.dim() != s.dim {
        return Err(Error::DimMismatch(op.dim(), s.dim));
    }
    let mut memo: HashMap<Mono, Section<C>> = HashMap::new();
    memo.insert(Mono::ONE, s.clone());
    let mut out = Section::zero(op.dim(), s.nvars, s.decay.clone());
    for (beta, coeff) in op.terms() {
        let d = derivative_memo(*beta, s.nvars, &mut memo);
        out = out.add(&d.mul_matrix(coeff)?)?;
    }
    Ok(out)
}

fn derivative_memo<C: Coeff>(
    beta: Mono,
    nvars: usize,
    memo: &mut HashMap<Mono, Section<C>>,
) -> Section<C> {
    if let Some(v) = memo.get(&beta) {
        return v.clone();
    }
    let i = (0..nvars).find(|&i| beta.exp(i) > 0).unwrap();
    let prev = derivative_memo(beta.dec(i).unwrap(), nvars, memo);
    let v = prev.derivative(i);
    memo.insert(beta, v.clone());
    v
}
