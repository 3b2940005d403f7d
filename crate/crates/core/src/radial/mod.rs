//! The radial sector: spectrum, Laguerre eigenfunctions, the twist map and
//! the radial reductions of `H`, `Γ_{−1}`, `Γ_{D+1}` and `T`.

pub mod function;
pub mod operator;
pub mod quadrature;
pub mod suite;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::scalar::ring::{imag, rat, ratio};
use crate::scalar::{Coeff, Ring};
use crate::{Gaussian, Rational};

pub use function::RadialFunction;
pub use operator::RadialOp;
pub use suite::{full_dimension_scalar_check, verify_radial_eigensystem, RadialOptions};

/// `(k, l)` in the sector of `(n, μ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralLabel {
    pub k: u32,
    pub l: u32,
    pub n: usize,
    pub two_mu: u32,
}

impl SpectralLabel {
    pub fn new(k: u32, l: u32, n: usize, two_mu: u32) -> Result<Self> {
        if k == 0 || n < 2 || two_mu > 1 {
            return Err(Error::Config(format!("invalid spectral label k={k}, l={l}, n={n}, 2μ={two_mu}")));
        }
        Ok(SpectralLabel { k, l, n, two_mu })
    }

    pub fn mu(&self) -> Rational {
        ratio(self.two_mu as i64, 2)
    }

    /// `l_μ = l + μ + n − 3/2`.
    pub fn l_mu(&self) -> Rational {
        l_mu(self.l, self.n, self.two_mu)
    }

    /// `I = k + l − 1`.
    pub fn level(&self) -> u32 {
        self.k + self.l - 1
    }

    pub fn energy(&self) -> Rational {
        energy(self.level(), self.n, self.two_mu)
    }

    /// `α = 2l_μ + 1`.
    pub fn alpha(&self) -> u32 {
        let a = rat(2) * self.l_mu() + rat(1);
        assert!(a.is_integer() && !a.is_negative());
        a.to_integer().try_into().expect("small Laguerre parameter")
    }

    /// `k + l_μ`, the `Γ̂_{−1}` eigenvalue and the scale of the twist.
    pub fn nu(&self) -> Rational {
        rat(self.k as i64) + self.l_mu()
    }
}

pub fn l_mu(l: u32, n: usize, two_mu: u32) -> Rational {
    rat(l as i64) + ratio(two_mu as i64, 2) + rat(n as i64) - ratio(3, 2)
}

/// `E_I = −(1/2)/(I + n + μ − 1/2)²`.
pub fn energy(level: u32, n: usize, two_mu: u32) -> Rational {
    let d = rat(level as i64) + rat(n as i64) + ratio(two_mu as i64, 2) - ratio(1, 2);
    ratio(-1, 2) / (&d * &d)
}

/// Coefficients of `L^α_m(t)` in ascending powers of `t`, by the
/// three-term recurrence.
pub fn laguerre_poly(m: u32, alpha: u32) -> Vec<Rational> {
    let a = rat(alpha as i64);
    let mut prev = vec![rat(1)];
    if m == 0 {
        return prev;
    }
    let mut cur = vec![&a + rat(1), rat(-1)];
    for j in 1..m {
        let jr = rat(j as i64);
        let mut next = vec![rat(0); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i] += c * (rat(2) * &jr + rat(1) + &a);
            next[i + 1] -= c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c * (&jr + &a);
        }
        for c in &mut next {
            *c /= &jr + rat(1);
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// `Σ_j (−1)^j C(m+α, m−j) t^j / j!`.
pub fn laguerre_closed_form(m: u32, alpha: u32) -> Vec<Rational> {
    let binom = |n: u64, k: u64| -> BigInt { (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1)) };
    (0..=m as u64)
        .map(|j| {
            let fact: BigInt = (1..=j).map(BigInt::from).product();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            Rational::new(binom(m as u64 + alpha as u64, m as u64 - j) * sign, fact)
        })
        .collect()
}

fn substitute(coeffs: &[Rational], q: &Rational) -> Vec<Rational> {
    let mut scale = rat(1);
    coeffs
        .iter()
        .map(|c| {
            let v = c * &scale;
            scale = &scale * q;
            v
        })
        .collect()
}

/// Normalized eigenfunction under `r^{2n−1} dr`: the untwisted `R_{k l_μ}`
/// or the twisted `ψ̃ ∝ r^{l+μ−1/2} L^α_{k−1}(2r) e^{−r}`.
pub fn radial_eigenfunction(label: &SpectralLabel, twisted: bool) -> Result<RadialFunction> {
    let lag = laguerre_poly(label.k - 1, label.alpha());
    let half = 2 * label.l as i64 + label.two_mu as i64;
    let f = if twisted {
        RadialFunction::from_poly(&substitute(&lag, &rat(2)), half - 1, rat(1))
    } else {
        let nu = label.nu();
        RadialFunction::from_poly(&substitute(&lag, &(rat(2) / &nu)), half, nu.recip())
    };
    normalize(f, label.n)
}

/// Rescale to unit norm under `r^{2n−1} dr` with a positive factor.
pub fn normalize(f: RadialFunction, n: usize) -> Result<RadialFunction> {
    let norm2 = f.inner(&f, 2 * n as i64 - 1)?;
    let q = norm2.as_base().map(|z| z.re.clone()).filter(Signed::is_positive);
    let q = q.ok_or_else(|| Error::Config("norm is not a positive rational".into()))?;
    Ok(f.with_weight(&q.recip()))
}

/// The twist map `τ(R)(r) = ν^{n+1/2} r^{−1/2} R(νr)`, `ν = k + l_μ`.
pub fn twist_map(label: &SpectralLabel) -> Result<RadialFunction> {
    Ok(radial_eigenfunction(label, false)?.rescale(&label.nu(), label.n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadialOperator {
    H,
    GammaBottom,
    GammaTop,
    T,
}

fn g(q: Rational) -> Gaussian {
    Gaussian::from_rational(q)
}

/// `π² + c/r²` on the sector, `2(H + 1/r)`.
fn pi2_sector(l: u32, n: usize, two_mu: u32) -> RadialOp {
    hamiltonian(l, n, two_mu).add(&RadialOp::rational_power(-1, rat(1))).scale(&g(rat(2)))
}

/// `−(1/2r^{2n−1}) ∂_r r^{2n−1} ∂_r + κ/(2r²) − 1/r` with
/// `κ = l_μ(l_μ+1) − (n−1/2)(n−3/2)`.
pub fn hamiltonian(l: u32, n: usize, two_mu: u32) -> RadialOp {
    let lm = l_mu(l, n, two_mu);
    let nr = rat(n as i64);
    let kappa = &lm * (&lm + rat(1)) - (&nr - ratio(1, 2)) * (&nr - ratio(3, 2));
    RadialOp::term(2, 0, g(ratio(-1, 2)))
        .add(&RadialOp::term(1, -1, g(-(rat(2) * &nr - rat(1)) / rat(2))))
        .add(&RadialOp::rational_power(-2, kappa / rat(2)))
        .add(&RadialOp::rational_power(-1, rat(-1)))
}

/// The sector restriction of a generator, optionally conjugated by `√r`.
pub fn radial_operator(op: RadialOperator, l: u32, n: usize, two_mu: u32, twisted: bool) -> RadialOp {
    let r = RadialOp::rational_power(1, rat(1));
    let base = match op {
        RadialOperator::H => hamiltonian(l, n, two_mu),
        RadialOperator::GammaBottom => r.compose(&pi2_sector(l, n, two_mu)).add(&r).scale(&g(ratio(1, 2))),
        RadialOperator::GammaTop => r.compose(&pi2_sector(l, n, two_mu)).sub(&r).scale(&g(ratio(1, 2))),
        RadialOperator::T => {
            let minus_i = imag().negate();
            RadialOp::term(1, 1, minus_i.clone()).add(&RadialOp::power(0, Coeff::scale(&minus_i, &ratio(2 * n as i64 - 1, 2))))
        }
    };
    if twisted {
        base.conjugate_sqrt_r()
    } else {
        base
    }
}

/// `Γ_{−1}` assembled directly from `H`: `rH + 1 + r/2`.
pub fn gamma_bottom_from_h(l: u32, n: usize, two_mu: u32) -> RadialOp {
    RadialOp::rational_power(1, rat(1))
        .compose(&hamiltonian(l, n, two_mu))
        .add(&RadialOp::identity())
        .add(&RadialOp::rational_power(1, ratio(1, 2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn spectrum_values() {
        assert_eq!(energy(0, 2, 1), ratio(-1, 8));
        assert_eq!(energy(0, 2, 0), ratio(-2, 9));
        assert_eq!(energy(1, 3, 0), ratio(-2, 49));
    }

    #[test]
    fn laguerre_recurrence_matches_closed_form() {
        assert_eq!(laguerre_poly(0, 3), vec![rat(1)]);
        assert_eq!(laguerre_poly(1, 4), vec![rat(5), rat(-1)]);
        assert_eq!(laguerre_poly(2, 1), vec![rat(3), rat(-3), ratio(1, 2)]);
        for m in 0..7 {
            for a in 0..9 {
                assert_eq!(laguerre_poly(m, a), laguerre_closed_form(m, a), "m={m} α={a}");
            }
        }
    }

    #[test]
    fn ground_state_twisted_function() {
        // 2·r^{−1/2}e^{−r} for n=2, μ=0, k=1, l=0
        let f = radial_eigenfunction(&SpectralLabel::new(1, 0, 2, 0).unwrap(), true).unwrap();
        let expect = RadialFunction::from_poly(&[rat(2)], -1, rat(1));
        assert_eq!(f.ratio_to(&expect), Some(crate::ExactValue::one()));
    }

    #[test]
    fn twisted_ground_state_eigenvalue() {
        let label = SpectralLabel::new(1, 0, 2, 0).unwrap();
        let f = radial_eigenfunction(&label, true).unwrap();
        let g = radial_operator(RadialOperator::GammaBottom, 0, 2, 0, true).apply(&f);
        assert_eq!(g.ratio_to(&f), Some(crate::ExactValue::from_rational(&ratio(3, 2))));
    }
}
