//! Radial-sector verification and the full-dimensional scalar cross-check.

use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use super::quadrature::gauss_laguerre;
use super::*;
use crate::diffop::{apply, DiffOp, Section};
use crate::micz::generators::Op;
use crate::micz::{GaugeField, GenIndex, GeneratorSet, ProblemConfig};
use crate::report::{Item, Strategy};
use crate::scalar::{Poly, ScalarExpr};
use crate::scalar::Scalar;
use crate::ExactValue;

/// Absolute tolerance of the quadrature Gram cross-check.
pub const GRAM_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct RadialOptions {
    pub kmax: u32,
    pub lmax: u32,
    pub timings: bool,
}

impl Default for RadialOptions {
    fn default() -> Self {
        RadialOptions { kmax: 4, lmax: 4, timings: false }
    }
}

const SUITE: &str = "radial";
const EXACT: Strategy = Strategy::ExactNormalForm;

fn check(id: String, anchor: &str, ok: bool, detail: impl FnOnce() -> String) -> Item {
    let item = Item::new(SUITE, id, anchor, EXACT);
    if ok {
        item
    } else {
        item.fail(detail())
    }
}

fn proportional(f: &RadialFunction, g: &RadialFunction, m: &ExactValue) -> bool {
    f.ratio_to(g).is_some_and(|v| v == *m)
}

fn measure(n: usize) -> i64 {
    2 * n as i64 - 1
}

/// Items (a)–(e) for every `1 ≤ k ≤ kmax`, `0 ≤ l ≤ lmax`, plus the twist
/// map, both assemblies of `Γ_{−1}` and the quadrature Gram cross-check.
pub fn verify_radial_eigensystem(n: usize, two_mu: u32, opts: &RadialOptions) -> Result<Vec<Item>> {
    SpectralLabel::new(1, 0, n, two_mu)?;
    let sectors: Vec<Vec<Item>> =
        (0..=opts.lmax).into_par_iter().map(|l| sector(n, two_mu, l, opts)).collect::<Result<_>>()?;
    Ok(sectors.into_iter().flatten().collect())
}

fn sector(n: usize, two_mu: u32, l: u32, opts: &RadialOptions) -> Result<Vec<Item>> {
    let start = Instant::now();
    let m = measure(n);
    let labels: Vec<SpectralLabel> =
        (1..=opts.kmax + 1).map(|k| SpectralLabel::new(k, l, n, two_mu)).collect::<Result<_>>()?;
    let untwisted: Vec<RadialFunction> =
        labels.iter().map(|s| radial_eigenfunction(s, false)).collect::<Result<_>>()?;
    let twisted: Vec<RadialFunction> = labels.iter().map(|s| radial_eigenfunction(s, true)).collect::<Result<_>>()?;
    let h = radial_operator(RadialOperator::H, l, n, two_mu, false);
    let gb = radial_operator(RadialOperator::GammaBottom, l, n, two_mu, true);
    let gt = radial_operator(RadialOperator::GammaTop, l, n, two_mu, true);
    let t = radial_operator(RadialOperator::T, l, n, two_mu, true);
    let i = imag();
    let lower = t.add(&gt.scale(&i));
    let raise = t.sub(&gt.scale(&i));
    let mut items = Vec::new();

    let direct = radial_operator(RadialOperator::GammaBottom, l, n, two_mu, false);
    let from_h = gamma_bottom_from_h(l, n, two_mu);
    items.push(check(format!("gamma-assembly[l={l}]"), "Γ_{−1} = ½(r(π² + c/r²) + r) = rH + 1 + r/2", direct == from_h, || {
        format!("{direct:?} vs {from_h:?}")
    }));

    for (idx, s) in labels.iter().enumerate().take(opts.kmax as usize) {
        let k = s.k;
        let tag = format!("k={k},l={l}");
        let e = s.energy();
        let r = &untwisted[idx];
        let hr = h.apply(r);
        items.push(
            check(format!("H-eigen[{tag}]"), "H R_{kl_μ} = E_{k+l−1} R_{kl_μ}", proportional(&hr, r, &ExactValue::from_rational(&e)), || {
                format!("H R / R = {:?}", hr.ratio_to(r).map(|v| v.to_string()))
            })
            .witness(format!("E = {}", ExactValue::from_rational(&e))),
        );

        let psi = &twisted[idx];
        let nu = s.nu();
        let g = gb.apply(psi);
        items.push(
            check(format!("Gamma-eigen[{tag}]"), "Γ̂_{−1} ψ̃_{kl} = (k + l_μ) ψ̃_{kl}", proportional(&g, psi, &ExactValue::from_rational(&nu)), || {
                format!("Γ̂ ψ̃ / ψ̃ = {:?}", g.ratio_to(psi).map(|v| v.to_string()))
            })
            .witness(format!("k + l_μ = {}", ExactValue::from_rational(&nu))),
        );

        let tau = twist_map(s)?;
        let norm_r = r.inner(r, m)?;
        let norm_tau = tau.inner(&tau, m)?;
        let ok = tau.ratio_to(psi) == Some(ExactValue::one())
            && norm_r.is_one()
            && norm_tau.is_one()
            && *tau.decay() == rat(1)
            && tau.half_exponent() == Some(2 * l as i64 + two_mu as i64 - 1);
        items.push(check(format!("twist[{tag}]"), "τ(ψ)(r) = ν^{n+1/2} ψ(νr)/√r, ν = k + l_μ", ok, || {
            format!("τ(R)/ψ̃ = {:?}, |R|² = {norm_r}, |τR|² = {norm_tau}", tau.ratio_to(psi).map(|v| v.to_string()))
        }));

        let down = lower.apply(psi);
        let item = if k == 1 {
            check(format!("lower[{tag}]"), "(T̂ + iΓ̂_{D+1}) ψ̃_{1l} = 0", down.is_zero(), || format!("{down:?}"))
        } else {
            ladder_item(format!("lower[{tag}]"), "(T̂ + iΓ̂_{D+1}) ψ̃_{kl} ∝ ψ̃_{k−1,l}", &down, &twisted[idx - 1])
        };
        items.push(item);
        let up = raise.apply(psi);
        items.push(ladder_item(format!("raise[{tag}]"), "(T̂ − iΓ̂_{D+1}) ψ̃_{kl} ∝ ψ̃_{k+1,l}", &up, &twisted[idx + 1]));
    }

    let kmax = opts.kmax as usize;
    let exact_gram = gram(&twisted[..kmax], m)?;
    let identity = exact_gram.iter().enumerate().all(|(a, row)| {
        row.iter().enumerate().all(|(b, v)| if a == b { v.is_one() } else { v.is_zero() })
    });
    items.push(check(format!("gram[l={l}]"), "⟨ψ̃_{k′l}, ψ̃_{kl}⟩ = δ_{kk′} under r^{2n−1}dr", identity, || {
        format!("{:?}", exact_gram.iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
    }));
    let untwisted_gram = gram(&untwisted[..kmax], m)?;
    let orthonormal = untwisted_gram.iter().enumerate().all(|(a, row)| {
        row.iter().enumerate().all(|(b, v)| if a == b { v.is_one() } else { v.is_zero() })
    });
    items.push(check(format!("gram-untwisted[l={l}]"), "⟨R_{k′l_μ}, R_{kl_μ}⟩ = δ_{kk′} under r^{2n−1}dr", orthonormal, || {
        format!("{:?}", untwisted_gram.iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
    }));

    let worst = quadrature_gram(&twisted[..kmax], n)
        .iter()
        .zip(&exact_gram)
        .flat_map(|(fr, er)| fr.iter().zip(er).map(|(f, e)| (f - e.to_complex64()).norm()))
        .fold(0.0, f64::max);
    let item = Item::new(SUITE, format!("gram-quadrature[l={l}]"), "64-node Gauss–Laguerre Gram = exact Gram", Strategy::Float)
        .witness(format!("max deviation {worst:.2e}"));
    items.push(if worst <= GRAM_TOL { item } else { item.fail(format!("{worst:.3e} > {GRAM_TOL:e}")) });

    for (name, op) in [("Gamma-bottom", &gb), ("Gamma-top", &gt), ("T", &t)] {
        let images: Vec<RadialFunction> = twisted[..kmax].iter().map(|f| op.apply(f)).collect();
        let mut bad = None;
        'outer: for a in 0..kmax {
            for b in 0..kmax {
                let lhs = twisted[a].inner(&images[b], m)?;
                let rhs = images[a].inner(&twisted[b], m)?;
                if lhs != rhs {
                    bad = Some(format!("k′={}, k={}: {lhs} vs {rhs}", a + 1, b + 1));
                    break 'outer;
                }
            }
        }
        items.push(
            Item::new(SUITE, format!("symmetric[{name},l={l}]"), "⟨ψ̃_{k′l}, Ô ψ̃_{kl}⟩ = ⟨Ô ψ̃_{k′l}, ψ̃_{kl}⟩", EXACT).verdict(bad),
        );
    }
    Ok(items.into_iter().map(|it| it.timed(start, opts.timings)).collect())
}

fn ladder_item(id: String, anchor: &str, image: &RadialFunction, target: &RadialFunction) -> Item {
    match image.ratio_to(target) {
        Some(m) if !m.is_zero() => Item::new(SUITE, id, anchor, EXACT).witness(format!("multiple {m}")),
        other => Item::new(SUITE, id, anchor, EXACT).fail(format!("not a nonzero multiple: {:?}", other.map(|v| v.to_string()))),
    }
}

fn gram(fs: &[RadialFunction], m: i64) -> Result<Vec<Vec<ExactValue>>> {
    fs.iter().map(|a| fs.iter().map(|b| a.inner(b, m)).collect()).collect()
}

/// Gram matrix by 64-node Gauss–Laguerre quadrature, all functions sharing
/// one decay.
pub fn quadrature_gram(fs: &[RadialFunction], n: usize) -> Vec<Vec<Complex64>> {
    let (x, w) = gauss_laguerre(64);
    let lambda: f64 = crate::scalar::ring::rational_to_float(&(fs[0].decay() * rat(2)));
    let m = measure(n) as i32;
    fs.iter()
        .map(|a| {
            fs.iter()
                .map(|b| {
                    x.iter()
                        .zip(&w)
                        .map(|(xi, wi)| {
                            let r = xi / lambda;
                            a.eval_prefactor(r).conj() * b.eval_prefactor(r) * r.powi(m) * *wi
                        })
                        .sum::<Complex64>()
                        / lambda
                })
                .collect()
        })
        .collect()
}

/// Build `ψ̃ = (x₁ + ix₂)^l r^{−1/2} L^α_{k−1}(2r) e^{−r}` in `D = 2n`
/// dimensions, `μ = 0`.
pub fn full_dimension_section(k: u32, l: u32, n: usize) -> Result<Section<Gaussian>> {
    let d = 2 * n;
    let label = SpectralLabel::new(k, l, n, 0)?;
    let z = Poly::var(0, d).add(&Poly::var(1, d).scale(&imag()));
    let h = z.pow(l);
    let lag = laguerre_poly(k - 1, label.alpha());
    let mut out = Section::zero(1, d, rat(1));
    let mut two_j = rat(1);
    for (j, c) in lag.iter().enumerate() {
        let coeff = Gaussian::from_rational(c * &two_j);
        let term = Section::new(h.scale(&coeff), 2 * j as i32 - 1, rat(1), &[Gaussian::one()]);
        out = out.add(&term)?;
        two_j = &two_j * rat(2);
    }
    Ok(out)
}

/// Eigenvalue of the genuine `D`-dimensional `Ĵ_{−1,0}` on full sections,
/// harmonicity of the angular factor, and `−Ĵ_{α,0} = i√r ∂_α √r`.
pub fn full_dimension_scalar_check(n: usize, kmax: u32, lmax: u32, timings: bool) -> Result<Vec<Item>> {
    let suite = "full-scalar";
    let cfg = ProblemConfig::new(n, 0)?;
    let field = GaugeField::new(&cfg)?;
    let gens = GeneratorSet::build(&cfg, &field)?;
    let d = cfg.dim();
    let j = gens.j_hat(GenIndex(-1), GenIndex(0));
    let mut items = Vec::new();

    let laplacian = (0..d).fold(DiffOp::zero(1, d), |acc: Op, i| {
        acc.add(&Op::partial(i, 1, d).compose(&Op::partial(i, 1, d)).expect("second order")).expect("same shape")
    });
    for l in 0..=lmax {
        let start = Instant::now();
        let z = Poly::var(0, d).add(&Poly::var(1, d).scale(&imag()));
        let h = Section::new(z.pow(l), 0, rat(0), &[Gaussian::one()]);
        let lap = apply(&laplacian, &h)?;
        items.push(
            Item::new(suite, format!("harmonic[l={l}]"), "Δ(x₁ + ix₂)^l = 0", EXACT)
                .verdict((!lap.is_zero()).then(|| "nonzero Laplacian".into()))
                .timed(start, timings),
        );
    }
    let pairs: Vec<(u32, u32)> = (1..=kmax).flat_map(|k| (0..=lmax).map(move |l| (k, l))).collect();
    let eigen: Vec<Item> = pairs
        .par_iter()
        .map(|&(k, l)| -> Result<Item> {
            let start = Instant::now();
            let psi = full_dimension_section(k, l, n)?;
            let nu = SpectralLabel::new(k, l, n, 0)?.nu();
            let lhs = apply(j, &psi)?;
            let rhs = psi.scale(&Gaussian::from_rational(nu.clone()));
            let residual = lhs.sub(&rhs)?;
            Ok(Item::new(suite, format!("Gamma-eigen[k={k},l={l}]"), "Ĵ_{−1,0} ψ̃_{kl} = (k + l_μ) ψ̃_{kl} in D dimensions", EXACT)
                .witness(format!("k + l_μ = {}", ExactValue::from_rational(&nu)))
                .verdict((!residual.is_zero()).then(|| "Ĵ ψ̃ − (k + l_μ) ψ̃ ≠ 0".into()))
                .timed(start, timings))
        })
        .collect::<Result<_>>()?;
    items.extend(eigen);

    for a in 0..d {
        let start = Instant::now();
        let expect = Op::scalar(ScalarExpr::r(d), 1, d)
            .compose(&Op::partial(a, 1, d))?
            .add(&Op::scalar(ScalarExpr::x(a, d).mul(&ScalarExpr::inv_r(d)).scale_rational(&ratio(1, 2)), 1, d))?
            .scale(&imag());
        let got = gens.j_hat(GenIndex(a as i32 + 1), GenIndex(0)).neg();
        let diff = got.sub(&expect)?;
        items.push(
            Item::new(suite, format!("root-r-gradient[{}]", a + 1), "−Ĵ_{α,0} = i√r ∂_α √r", EXACT)
                .verdict((!diff.is_zero()).then(|| format!("{diff:?}")))
                .timed(start, timings),
        );
    }
    Ok(items)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn small_radial_suite_passes() {
        let opts = RadialOptions { kmax: 2, lmax: 1, timings: false };
        for two_mu in [0, 1] {
            for it in verify_radial_eigensystem(2, two_mu, &opts).unwrap() {
                assert_eq!(it.status, Status::Pass, "{it:?}");
            }
        }
    }

    #[test]
    fn full_dimension_ground_state() {
        for it in full_dimension_scalar_check(2, 1, 1, false).unwrap() {
            assert_eq!(it.status, Status::Pass, "{it:?}");
        }
    }
}
