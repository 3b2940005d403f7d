//! Gauge potential and field strength on `ℝ^D` minus the negative last axis.
//!
//! `𝒜_{D} = 0`, `𝒜_b = −x_a γ_ab / (r(r + x_D))`. The field strength is
//! built twice: from the curvature `∂_α𝒜_β − ∂_β𝒜_α + i[𝒜_α, 𝒜_β]`
//! (the convention of `[π_α, π_β] = −iF_αβ`) and from its closed form.

use rayon::prelude::*;

use super::ProblemConfig;
use crate::clifford::{casimir, rep_s2mu, Rep};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::report::Residual;
use crate::scalar::ring::{imag, rat};
use crate::scalar::{Coeff, RationalPoint, Ring, Scalar};
use crate::{Expr, Gaussian, Rational};

pub type ExprMatrix = Matrix<Expr>;

/// `γ_ab · e`.
fn gamma_times(rep: &Rep, a: usize, b: usize, e: &Expr) -> ExprMatrix {
    rep.gamma_ab(a, b).map(|z| if z.is_zero() { Expr::zero() } else { e.scale(z) })
}

fn times_i(m: &ExprMatrix) -> ExprMatrix {
    let i = imag();
    m.map(|e| e.scale(&i))
}

pub fn gauge_potential(rep: &Rep) -> Vec<ExprMatrix> {
    let d = 2 * rep.n;
    let last = d - 1;
    let factor = Expr::inv_r(d).mul(&Expr::inv_r_plus_xd(d)).neg();
    let mut out = Vec::with_capacity(d);
    for b in 0..last {
        let mut acc = Matrix::zeros(rep.dim, rep.dim);
        for a in 0..last {
            acc.add_assign(&gamma_times(rep, a, b, &Expr::x(a, d).mul(&factor)));
        }
        out.push(acc);
    }
    out.push(Matrix::zeros(rep.dim, rep.dim));
    out
}

/// `F_αβ = ∂_α𝒜_β − ∂_β𝒜_α + i[𝒜_α, 𝒜_β]`.
pub fn curvature(potential: &[ExprMatrix]) -> Vec<Vec<ExprMatrix>> {
    let d = potential.len();
    let dim = potential[0].rows();
    let mut f = vec![vec![Matrix::zeros(dim, dim); d]; d];
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|a| (a + 1..d).map(move |b| (a, b))).collect();
    let vals: Vec<ExprMatrix> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let da = potential[b].map(|e| e.differentiate(a));
            let db = potential[a].map(|e| e.differentiate(b));
            da.sub(&db).add(&times_i(&potential[a].commutator(&potential[b])))
        })
        .collect();
    for ((a, b), v) in pairs.into_iter().zip(vals) {
        f[b][a] = v.neg();
        f[a][b] = v;
    }
    f
}

/// The closed form: `F_{Db} = x_a γ_ab / r³` and
/// `F_ab = −2γ_ab/(r(r+x_D)) + ((2 + x_D/r) x_c (x_a γ_cb − x_b γ_ca)
/// + i x_d x_c [γ_da, γ_cb]) / (r²(r+x_D)²)`.
pub fn closed_form_field(rep: &Rep) -> Vec<Vec<ExprMatrix>> {
    let d = 2 * rep.n;
    let last = d - 1;
    let dim = rep.dim;
    let x = |i: usize| Expr::x(i, d);
    let inv_rp = Expr::inv_r_plus_xd(d);
    let inv_r = Expr::inv_r(d);
    let first = inv_r.mul(&inv_rp).scale(&Gaussian::from_int(-2));
    let second = inv_r.mul(&inv_r).mul(&inv_rp).mul(&inv_rp);
    let coef = Expr::int(2).add(&x(last).mul(&inv_r));
    let inv_r3 = inv_r.pow(3).expect("r is invertible");

    let mut f = vec![vec![Matrix::zeros(dim, dim); d]; d];
    for b in 0..last {
        let mut acc = Matrix::zeros(dim, dim);
        for a in 0..last {
            acc.add_assign(&gamma_times(rep, a, b, &x(a).mul(&inv_r3)));
        }
        f[b][last] = acc.neg();
        f[last][b] = acc;
    }
    let pairs: Vec<(usize, usize)> = (0..last).flat_map(|a| (a + 1..last).map(move |b| (a, b))).collect();
    let vals: Vec<ExprMatrix> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let mut inner = Matrix::zeros(dim, dim);
            for c in 0..last {
                let t1 = gamma_times(rep, c, b, &x(c).mul(&x(a)));
                let t2 = gamma_times(rep, c, a, &x(c).mul(&x(b)));
                inner.add_assign(&t1.sub(&t2).scale(&coef));
                for dd in 0..last {
                    let br = rep.gamma_ab(dd, a).commutator(&rep.gamma_ab(c, b));
                    if br.is_zero() {
                        continue;
                    }
                    let e = x(dd).mul(&x(c)).scale(&imag());
                    inner.add_assign(&br.map(|z| if z.is_zero() { Expr::zero() } else { e.scale(z) }));
                }
            }
            gamma_times(rep, a, b, &first).add(&inner.scale(&second))
        })
        .collect();
    for ((a, b), v) in pairs.into_iter().zip(vals) {
        f[b][a] = v.neg();
        f[a][b] = v;
    }
    f
}

/// Potential, both field strengths, and `∂_κ F_μν` of the closed form.
#[derive(Clone, Debug)]
pub struct GaugeField {
    pub rep: Rep,
    potential: Vec<ExprMatrix>,
    field: Vec<Vec<ExprMatrix>>,
    curvature: Vec<Vec<ExprMatrix>>,
}

impl GaugeField {
    pub fn new(cfg: &ProblemConfig) -> Result<Self> {
        let rep = rep_s2mu(cfg.n, cfg.two_mu)?;
        let potential = gauge_potential(&rep);
        let curvature = curvature(&potential);
        let field = closed_form_field(&rep);
        Ok(GaugeField { rep, potential, field, curvature })
    }

    pub fn nvars(&self) -> usize {
        self.potential.len()
    }

    pub fn dim(&self) -> usize {
        self.rep.dim
    }

    pub fn potential(&self, mu: usize) -> &ExprMatrix {
        &self.potential[mu]
    }

    /// Closed-form `F_μν`.
    pub fn field(&self, mu: usize, nu: usize) -> &ExprMatrix {
        &self.field[mu][nu]
    }

    /// Curvature-formula `F_μν`.
    pub fn curvature(&self, mu: usize, nu: usize) -> &ExprMatrix {
        &self.curvature[mu][nu]
    }

    /// `∂_κ F_μν` for all `κ` and `μ < ν`, indexed `[κ][μ][ν]`
    /// (zero below the diagonal).
    pub fn field_derivatives(&self) -> Vec<Vec<Vec<ExprMatrix>>> {
        let d = self.nvars();
        let dim = self.dim();
        (0..d)
            .into_par_iter()
            .map(|k| {
                (0..d)
                    .map(|m| {
                        (0..d)
                            .map(|n| {
                                if m < n {
                                    self.field[m][n].map(|e| e.differentiate(k))
                                } else {
                                    Matrix::zeros(dim, dim)
                                }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    /// Everything the identities need, evaluated at one point.
    pub fn at<F: Scalar>(&self, p: &RationalPoint, derivs: &[Vec<Vec<ExprMatrix>>]) -> Result<FieldAt<F>> {
        let d = self.nvars();
        let deg = |m: &ExprMatrix| m.entries().iter().map(Expr::degree).max().unwrap_or(0);
        let max_deg = derivs
            .iter()
            .flatten()
            .flatten()
            .chain(self.field.iter().flatten())
            .chain(self.curvature.iter().flatten())
            .chain(&self.potential)
            .map(deg)
            .max()
            .unwrap_or(0);
        let powers = if F::exact() { p.powers(max_deg) } else { Vec::new() };
        let ev = |m: &ExprMatrix| m.try_map(|e| e.eval_with::<F>(p, &powers));
        let a = self.potential.iter().map(ev).collect::<Result<Vec<_>>>()?;
        let f = self.field.iter().map(|row| row.iter().map(ev).collect()).collect::<Result<Vec<Vec<_>>>>()?;
        let curv =
            self.curvature.iter().map(|row| row.iter().map(ev).collect()).collect::<Result<Vec<Vec<_>>>>()?;
        let mut df = vec![vec![vec![Matrix::zeros(self.dim(), self.dim()); d]; d]; d];
        for k in 0..d {
            for m in 0..d {
                for n in m + 1..d {
                    let v = ev(&derivs[k][m][n])?;
                    df[k][n][m] = v.neg();
                    df[k][m][n] = v;
                }
            }
        }
        Ok(FieldAt {
            x: p.coords().iter().map(F::from_rational).collect(),
            s: F::from_rational(p.s()),
            inv_s: F::from_rational(&num_traits::Inv::inv(p.s().clone())),
            a,
            f,
            curvature: curv,
            df,
        })
    }
}

/// Gauge data at a point: `a[μ] = 𝒜_μ`, `f[μ][ν] = F_μν`,
/// `df[κ][μ][ν] = ∂_κ F_μν`.
#[derive(Clone, Debug)]
pub struct FieldAt<F> {
    pub x: Vec<F>,
    pub s: F,
    pub inv_s: F,
    pub a: Vec<Matrix<F>>,
    pub f: Vec<Vec<Matrix<F>>>,
    pub curvature: Vec<Vec<Matrix<F>>>,
    pub df: Vec<Vec<Vec<Matrix<F>>>>,
}

/// Outcome of one gauge identity at one point.
pub struct GaugeCheck {
    pub id: &'static str,
    pub anchor: &'static str,
    pub residual: Option<String>,
}

fn first_failure<F: Scalar>(
    tol: f64,
    cases: impl IntoIterator<Item = (String, Residual<F>)>,
) -> Option<String> {
    cases.into_iter().find_map(|(label, r)| r.check(tol).map(|msg| format!("{label}: {msg}")))
}

impl<F: Scalar> FieldAt<F> {
    fn dim(&self) -> usize {
        self.a[0].rows()
    }

    fn d(&self) -> usize {
        self.a.len()
    }

    fn i(&self) -> F {
        F::imag_unit()
    }

    /// `[∇_κ, F_μν] = ∂_κF_μν + i[𝒜_κ, F_μν]`.
    fn cov(&self, k: usize, m: usize, n: usize) -> Matrix<F> {
        self.df[k][m][n].add(&self.a[k].commutator(&self.f[m][n]).scale(&self.i()))
    }

    /// Curvature-formula and closed-form field strengths agree.
    pub fn curvature_agrees(&self, tol: f64) -> Option<String> {
        let d = self.d();
        first_failure(
            tol,
            (0..d).flat_map(|m| (m + 1..d).map(move |n| (m, n))).map(|(m, n)| {
                let mut r = Residual::new();
                r.add_matrix(&self.curvature[m][n], &F::one());
                r.add_matrix(&self.f[m][n], &F::one().negate());
                (format!("F[{m}{n}]"), r)
            }),
        )
    }

    /// The seven identities; `c2` is the Casimir, `c = (n−1)μ`.
    pub fn identities(&self, c2: &Rational, c: &Rational, tol: f64) -> Vec<GaugeCheck> {
        let d = self.d();
        let dim = self.dim();
        let one = F::one();
        let minus = one.negate();
        let i = self.i();
        let id = Matrix::<F>::identity(dim);
        let x = &self.x;
        let inv_s = &self.inv_s;
        let delta = |a: usize, b: usize| if a == b { one.clone() } else { F::zero() };
        let mut out = Vec::new();

        // (a)
        let mut r = Residual::new();
        for m in 0..d {
            for n in 0..d {
                r.add_matrix(&self.f[m][n].mul(&self.f[m][n]), &one);
            }
        }
        let rhs = F::from_rational(&(c2 * rat(2))).times(inv_s).times(inv_s);
        r.add_matrix(&id, &rhs.negate());
        out.push(GaugeCheck { id: "field-square", anchor: "F_μν F_μν = 2c₂/r⁴", residual: r.check(tol) });

        // (b)
        let cases = (0..d).flat_map(|k| (0..d).flat_map(move |m| (m + 1..d).map(move |n| (k, m, n))));
        let residual = first_failure(
            tol,
            cases.map(|(k, m, n)| {
                let mut r = Residual::new();
                r.add_matrix(&self.cov(k, m, n), &one);
                r.add_matrix(&self.f[n][k], &x[m].times(inv_s).negate());
                r.add_matrix(&self.f[k][m], &x[n].times(inv_s).negate());
                r.add_matrix(&self.f[m][n], &x[k].times(inv_s).times(&F::from_rational(&rat(2))));
                (format!("κ={k} μ={m} ν={n}"), r)
            }),
        );
        out.push(GaugeCheck {
            id: "covariant-derivative",
            anchor: "[∇_κ, F_μν] = (x_μF_νκ + x_νF_κμ − 2x_κF_μν)/r²",
            residual,
        });

        // (c)
        let mut r = Residual::new();
        for m in 0..d {
            r.add_matrix(&self.a[m], &x[m]);
        }
        out.push(GaugeCheck { id: "radial-potential", anchor: "x_μ 𝒜_μ = 0", residual: r.check(tol) });

        // (d)
        let residual = first_failure(
            tol,
            (0..d).map(|n| {
                let mut r = Residual::new();
                for m in 0..d {
                    r.add_matrix(&self.f[m][n], &x[m]);
                }
                (format!("ν={n}"), r)
            }),
        );
        out.push(GaugeCheck { id: "radial-field", anchor: "x_μ F_μν = 0", residual });

        // (e)
        let residual = first_failure(
            tol,
            (0..d).map(|n| {
                let mut r = Residual::new();
                for m in 0..d {
                    r.add_matrix(&self.cov(m, m, n), &one);
                }
                (format!("ν={n}"), r)
            }),
        );
        out.push(GaugeCheck { id: "divergence", anchor: "[∇_μ, F_μν] = 0", residual });

        // (f)
        let quads = (0..d).flat_map(|m| {
            (0..d).flat_map(move |n| (0..d).flat_map(move |a| (0..d).map(move |b| (m, n, a, b))))
        });
        let residual = first_failure(
            tol,
            quads.filter(|&(m, n, a, b)| m < n && a < b).map(|(m, n, a, b)| {
                let f = &self.f;
                let mut r = Residual::new();
                r.add_matrix(&f[m][n].commutator(&f[a][b]), &self.s);
                r.add_matrix(&f[m][b], &i.times(&delta(a, n)));
                r.add_matrix(&f[n][b], &i.times(&delta(a, m)).negate());
                r.add_matrix(&f[a][m], &i.times(&delta(b, n)));
                r.add_matrix(&f[a][n], &i.times(&delta(b, m)).negate());
                let k = i.times(inv_s).negate();
                r.add_matrix(&f[b][n], &k.times(&x[m]).times(&x[a]));
                r.add_matrix(&f[n][a], &k.times(&x[m]).times(&x[b]));
                r.add_matrix(&f[b][m], &k.times(&x[n]).times(&x[a]).negate());
                r.add_matrix(&f[m][a], &k.times(&x[n]).times(&x[b]).negate());
                (format!("μ={m} ν={n} α={a} β={b}"), r)
            }),
        );
        out.push(GaugeCheck {
            id: "quartic-bracket",
            anchor: "r²[F_μν,F_αβ] + iF_μβδ_αν − iF_νβδ_αμ + iF_αμδ_βν − iF_ανδ_βμ = (i/r²)(x_μx_αF_βν + x_μx_βF_να − x_νx_αF_βμ − x_νx_βF_μα)",
            residual,
        });

        // (g)
        let cf = F::from_rational(c);
        let half_d3 = F::from_rational(&Rational::new((d as i64 - 3).into(), 2.into()));
        let residual = first_failure(
            tol,
            (0..d).flat_map(|a| (0..d).map(move |b| (a, b))).map(|(a, b)| {
                let mut r = Residual::new();
                for l in 0..d {
                    r.add_matrix(&self.f[l][a].mul(&self.f[l][b]), &self.s);
                }
                let scalar = delta(a, b).times(inv_s).minus(&x[a].times(&x[b]).times(inv_s).times(inv_s));
                r.add_matrix(&id, &cf.times(&scalar).negate());
                r.add_matrix(&self.f[a][b], &i.times(&half_d3).times(&minus));
                (format!("α={a} β={b}"), r)
            }),
        );
        out.push(GaugeCheck {
            id: "field-contraction",
            anchor: "r² F_λα F_λβ = c(δ_αβ/r² − x_αx_β/r⁴) + i((D−3)/2) F_αβ",
            residual,
        });
        out
    }
}

/// Casimir of the background representation.
pub fn c2(field: &GaugeField) -> Result<Rational> {
    casimir(&field.rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::random_points;
    use crate::ExactValue;

    #[test]
    fn potential_vanishes_on_the_axis() {
        let cfg = ProblemConfig::new(2, 1).unwrap();
        let g = GaugeField::new(&cfg).unwrap();
        assert!(g.potential(3).is_zero());
        // On the positive axis ρ² = 0 is a pole of the rationalized form;
        // the numerators vanish there, so the potential is zero in the limit.
        let axis = [rat(0), rat(0), rat(0), rat(3)];
        for b in 0..3 {
            for e in g.potential(b).entries() {
                assert!(e.f().num().eval(&axis).is_zero() && e.g().num().eval(&axis).is_zero());
            }
        }
    }

    #[test]
    fn spinor_identities_hold_for_n2() {
        let cfg = ProblemConfig::new(2, 1).unwrap();
        let g = GaugeField::new(&cfg).unwrap();
        let derivs = g.field_derivatives();
        let c2 = c2(&g).unwrap();
        for p in random_points(4, 2, 3) {
            let at = g.at::<ExactValue>(&p, &derivs).unwrap();
            assert_eq!(at.curvature_agrees(0.0), None);
            for chk in at.identities(&c2, &cfg.c(), 0.0) {
                assert_eq!(chk.residual, None, "{}", chk.id);
            }
        }
    }
}
