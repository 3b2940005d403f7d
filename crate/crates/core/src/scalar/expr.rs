//! Elements `f + g·r` of the coefficient field, `r² = |x|²`.

use super::frac::{s_poly, Frac};
use super::point::RationalPoint;
use super::poly::Poly;
use super::quad::QuadExt;
use super::ring::{Coeff, Ring, Scalar};
use crate::error::{Error, Result};
use crate::{Gaussian, Rational};
use num_complex::Complex64;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ScalarExpr<C> {
    f: Frac<C>,
    g: Frac<C>,
}

impl<C: Coeff> ScalarExpr<C> {
    pub fn new(f: Frac<C>, g: Frac<C>) -> Self {
        ScalarExpr { f, g }
    }

    pub fn from_frac(f: Frac<C>) -> Self {
        let nvars = f.nvars();
        ScalarExpr { f, g: Frac::zero(nvars) }
    }

    pub fn from_poly(p: Poly<C>) -> Self {
        Self::from_frac(Frac::from_poly(p))
    }

    pub fn constant(c: C) -> Self {
        Self::from_frac(Frac::constant(c))
    }

    pub fn rational(q: Rational) -> Self {
        Self::constant(C::from_rational(q))
    }

    pub fn int(k: i64) -> Self {
        Self::constant(C::from_int(k))
    }

    /// Coordinate `x_i` (0-based) in `nvars` variables.
    pub fn x(i: usize, nvars: usize) -> Self {
        Self::from_poly(Poly::var(i, nvars))
    }

    pub fn r(nvars: usize) -> Self {
        ScalarExpr { f: Frac::zero(nvars), g: Frac::from_poly(Poly::one(nvars)) }
    }

    /// `r² = |x|²`.
    pub fn s(nvars: usize) -> Self {
        Self::from_poly(s_poly(nvars))
    }

    /// `1/r = r/s`.
    pub fn inv_r(nvars: usize) -> Self {
        ScalarExpr { f: Frac::zero(nvars), g: Frac::new(Poly::one(nvars), 1, 0) }
    }

    /// `r^k` for any integer `k`.
    pub fn r_pow(k: i32, nvars: usize) -> Self {
        let half = k.div_euclid(2);
        let odd = k.rem_euclid(2) == 1;
        let base = if half >= 0 {
            Frac::from_poly(s_poly(nvars).pow(half as u32))
        } else {
            Frac::new(Poly::one(nvars), (-half) as u32, 0)
        };
        if odd {
            ScalarExpr { f: Frac::zero(nvars), g: base }
        } else {
            Self::from_frac(base)
        }
    }

    /// `1/(r + x_D) = (r − x_D)/ρ²`.
    pub fn inv_r_plus_xd(nvars: usize) -> Self {
        let xd = Poly::var(nvars - 1, nvars);
        ScalarExpr { f: Frac::new(xd.neg(), 0, 1), g: Frac::new(Poly::one(nvars), 0, 1) }
    }

    pub fn f(&self) -> &Frac<C> {
        &self.f
    }

    pub fn g(&self) -> &Frac<C> {
        &self.g
    }

    pub fn nvars(&self) -> usize {
        self.f.nvars().max(self.g.nvars())
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.is_zero()
    }

    pub fn as_constant(&self) -> Option<C> {
        if self.g.is_zero() {
            self.f.as_constant()
        } else {
            None
        }
    }

    /// True when a denominator contains `ρ²`, i.e. the expression came from
    /// rationalizing `1/(r + x_D)`.
    pub fn has_rho(&self) -> bool {
        self.f.rho_pow() > 0 || self.g.rho_pow() > 0
    }

    pub fn add(&self, o: &Self) -> Self {
        ScalarExpr { f: self.f.add(&o.f), g: self.g.add(&o.g) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ScalarExpr { f: self.f.sub(&o.f), g: self.g.sub(&o.g) }
    }

    pub fn neg(&self) -> Self {
        ScalarExpr { f: self.f.neg(), g: self.g.neg() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::from_frac(Frac::zero(self.nvars().max(o.nvars())));
        }
        if let Some(c) = self.as_constant() {
            return o.scale(&c);
        }
        if let Some(c) = o.as_constant() {
            return self.scale(&c);
        }
        let mut f = self.f.mul(&o.f);
        if !self.g.is_zero() && !o.g.is_zero() {
            f = f.add(&self.g.mul(&o.g).mul_s());
        }
        let g = self.f.mul(&o.g).add(&self.g.mul(&o.f));
        ScalarExpr { f, g }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_one() {
            return self.clone();
        }
        ScalarExpr { f: self.f.scale(c), g: self.g.scale(c) }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&C::from_rational(q.clone()))
    }

    pub fn mul_poly(&self, p: &Poly<C>) -> Self {
        ScalarExpr { f: self.f.mul_poly(p), g: self.g.mul_poly(p) }
    }

    /// `(f + g r)⁻¹ = (f − g r)/(f² − g² s)`. The norm must be a unit of the
    /// localization, i.e. a constant times powers of `s` and `ρ²`.
    pub fn inv(&self) -> Result<Self> {
        let norm = self.f.mul(&self.f).sub(&self.g.mul(&self.g).mul_s());
        if norm.is_zero() {
            return Err(Error::DivisionByZeroExpr);
        }
        let (c, i, j) = norm
            .unit_parts()
            .ok_or_else(|| Error::UnsupportedDenominator(format!("{:?}", norm.num())))?;
        let c_inv = c.inv().ok_or(Error::DivisionByZeroExpr)?;
        let nvars = self.nvars();
        // 1/norm = s^{a-i} ρ^{2(b-j)} / c
        let (a, b) = (norm.s_pow() as i64 - i as i64, norm.rho_pow() as i64 - j as i64);
        let mut unit = Frac::from_poly(Poly::constant(c_inv, nvars));
        unit = if a >= 0 {
            unit.mul(&Frac::from_poly(s_poly(nvars).pow(a as u32)))
        } else {
            unit.div_denoms((-a) as u32, 0)
        };
        unit = if b >= 0 {
            unit.mul(&Frac::from_poly(super::frac::rho2_poly(nvars).pow(b as u32)))
        } else {
            unit.div_denoms(0, (-b) as u32)
        };
        Ok(ScalarExpr { f: self.f.mul(&unit), g: self.g.neg().mul(&unit) })
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one_in(self.nvars());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    fn one_in(nvars: usize) -> Self {
        Self::from_poly(Poly::one(nvars))
    }

    /// `∂_i`, with `∂_i r = x_i r / s`.
    pub fn differentiate(&self, i: usize) -> Self {
        let nvars = self.nvars();
        let f = self.f.derivative(i);
        let g = if self.g.is_zero() {
            self.g.clone()
        } else {
            self.g.derivative(i).add(&self.g.mul_poly(&Poly::var(i, nvars)).div_denoms(1, 0))
        };
        ScalarExpr { f, g }
    }

    pub fn conj(&self) -> Self {
        ScalarExpr { f: self.f.conj(), g: self.g.conj() }
    }

    /// Exact value `f(p) + g(p)√s`.
    pub fn eval_exact(&self, p: &RationalPoint) -> Result<QuadExt<C>> {
        let deg = self.f.num().total_degree().max(self.g.num().total_degree()) as usize;
        let powers = p.powers(deg);
        self.eval_exact_with(p, &powers)
    }

    pub fn eval_exact_with(&self, p: &RationalPoint, powers: &[Vec<Rational>]) -> Result<QuadExt<C>> {
        let a = self.f.eval_at(powers, p.s(), p.rho2())?;
        if self.g.is_zero() {
            return Ok(QuadExt::base(a));
        }
        let b = self.g.eval_at(powers, p.s(), p.rho2())?;
        Ok(QuadExt::new(a, b, p.s()))
    }

    /// Highest total degree among the numerators.
    pub fn degree(&self) -> usize {
        self.f.num().total_degree().max(self.g.num().total_degree()) as usize
    }

    /// Value in an evaluation field.
    pub fn eval<F: Scalar>(&self, p: &RationalPoint) -> Result<F> {
        if !F::exact() {
            return self.eval_float(p);
        }
        self.eval_with(p, &p.powers(self.degree()))
    }

    /// As [`Self::eval`], reusing power tables of degree at least
    /// [`Self::degree`] in the exact case.
    pub fn eval_with<F: Scalar>(&self, p: &RationalPoint, powers: &[Vec<Rational>]) -> Result<F> {
        if !F::exact() {
            return self.eval_float(p);
        }
        let v = self.eval_exact_with(p, powers)?;
        let a: F = v.a.embed();
        match &v.s {
            None => Ok(a),
            Some(s) => Ok(a.plus(&v.b.embed::<F>().times(&F::sqrt_rational(s)))),
        }
    }

    fn eval_float<F: Scalar>(&self, p: &RationalPoint) -> Result<F> {
        if p.s().is_zero() || (self.has_rho() && p.rho2().is_zero()) {
            return Err(Error::PoleAtPoint);
        }
        let coords: Vec<F> = p.coords().iter().map(F::from_rational).collect();
        let inv_s = F::from_rational(&num_traits::Inv::inv(p.s().clone()));
        let inv_rho = if p.rho2().is_zero() {
            F::zero()
        } else {
            F::from_rational(&num_traits::Inv::inv(p.rho2().clone()))
        };
        let f = self.f.eval_in(&coords, &inv_s, &inv_rho, |c| c.embed::<F>());
        if self.g.is_zero() {
            return Ok(f);
        }
        let g = self.g.eval_in(&coords, &inv_s, &inv_rho, |c| c.embed::<F>());
        Ok(f.plus(&g.times(&F::sqrt_rational(p.s()))))
    }

    /// Double-precision copy for repeated float evaluation.
    pub fn compile(&self) -> CompiledExpr {
        let frac = |q: &Frac<C>| CompiledFrac {
            terms: q.num().terms().iter().map(|(m, c)| (c.embed::<Complex64>(), *m)).collect(),
            s_pow: q.s_pow() as i32,
            rho_pow: q.rho_pow() as i32,
        };
        CompiledExpr { f: frac(&self.f), g: frac(&self.g), degree: self.degree(), has_rho: self.has_rho() }
    }

    pub fn map_coeffs<D: Coeff>(&self, m: impl Fn(&C) -> D + Copy) -> ScalarExpr<D> {
        ScalarExpr { f: self.f.map_coeffs(m), g: self.g.map_coeffs(m) }
    }
}

impl ScalarExpr<Rational> {
    pub fn to_gaussian(&self) -> ScalarExpr<Gaussian> {
        self.map_coeffs(|q| Gaussian::new(q.clone(), Rational::from_integer(0.into())))
    }
}

impl<C: Coeff> Ring for ScalarExpr<C> {
    fn zero() -> Self {
        Self::from_frac(Frac::zero(0))
    }
    fn one() -> Self {
        Self::constant(C::one())
    }
    fn is_zero(&self) -> bool {
        ScalarExpr::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
}

/// Unnormalized arithmetic over `x_i`, `r` and Gaussian constants.
#[derive(Clone, Debug)]
pub enum RawExpr {
    Const(Gaussian),
    X(usize),
    R,
    Add(Vec<RawExpr>),
    Mul(Vec<RawExpr>),
    Neg(Box<RawExpr>),
    Inv(Box<RawExpr>),
}

impl RawExpr {
    pub fn int(k: i64) -> Self {
        RawExpr::Const(Gaussian::from_int(k))
    }

    pub fn add(a: RawExpr, b: RawExpr) -> Self {
        RawExpr::Add(vec![a, b])
    }

    pub fn mul(a: RawExpr, b: RawExpr) -> Self {
        RawExpr::Mul(vec![a, b])
    }

    pub fn sub(a: RawExpr, b: RawExpr) -> Self {
        RawExpr::Add(vec![a, RawExpr::Neg(Box::new(b))])
    }

    pub fn inv(a: RawExpr) -> Self {
        RawExpr::Inv(Box::new(a))
    }
}

/// Canonical form of a raw expression in `nvars` variables.
pub fn normalize(e: &RawExpr, nvars: usize) -> Result<ScalarExpr<Gaussian>> {
    Ok(match e {
        RawExpr::Const(c) => ScalarExpr::constant(c.clone()),
        RawExpr::X(i) => ScalarExpr::x(*i, nvars),
        RawExpr::R => ScalarExpr::r(nvars),
        RawExpr::Add(v) => {
            let mut acc = ScalarExpr::from_poly(Poly::zero(nvars));
            for t in v {
                acc = acc.add(&normalize(t, nvars)?);
            }
            acc
        }
        RawExpr::Mul(v) => {
            let mut acc = ScalarExpr::one_in(nvars);
            for t in v {
                acc = acc.mul(&normalize(t, nvars)?);
            }
            acc
        }
        RawExpr::Neg(a) => normalize(a, nvars)?.neg(),
        RawExpr::Inv(a) => normalize(a, nvars)?.inv()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ring::rat;

    type E = ScalarExpr<Rational>;
    const D: usize = 4;

    #[test]
    fn r_squared_is_s() {
        let r = E::r(D);
        assert_eq!(r.mul(&r), E::s(D));
    }

    #[test]
    fn rationalized_inverse_of_r_plus_xd() {
        let raw = RawExpr::inv(RawExpr::add(RawExpr::R, RawExpr::X(3)));
        let e = normalize(&raw, D).unwrap();
        assert_eq!(e, E::inv_r_plus_xd(D).to_gaussian());
        let p = RationalPoint::from_ints(&[1, 0, 0, 2]).unwrap();
        let v = E::inv_r_plus_xd(D).eval_exact(&p).unwrap();
        assert_eq!(v, QuadExt::new(rat(-2), rat(1), &rat(5)));
    }

    #[test]
    fn derivatives_of_r_and_inverse_r() {
        let dr = E::r(D).differentiate(0);
        assert!(dr.f().is_zero());
        assert_eq!(dr.g(), &Frac::new(Poly::var(0, D), 1, 0));
        let d = E::inv_r(D).differentiate(0);
        assert!(d.f().is_zero());
        assert_eq!(d.g(), &Frac::new(Poly::var(0, D).scale(&rat(-1)), 2, 0));
    }

    #[test]
    fn inverse_round_trip() {
        let e = E::x(3, D).add(&E::r(D));
        let prod = e.mul(&e.inv().unwrap());
        assert_eq!(prod, E::int(1));
        let z = E::x(0, D).mul(&E::x(0, D)).sub(&E::x(0, D).mul(&E::x(0, D)));
        assert_eq!(z.inv(), Err(Error::DivisionByZeroExpr));
    }

    #[test]
    fn exact_evaluation_examples() {
        let p = RationalPoint::from_ints(&[3, 4, 0, 0]).unwrap();
        assert_eq!(E::r(D).eval_exact(&p).unwrap(), QuadExt::base(rat(5)));
        let q = RationalPoint::from_ints(&[1, 1, 1, 1]).unwrap();
        let v = E::x(0, D).mul(&E::r(D)).eval_exact(&q).unwrap();
        assert_eq!(v, QuadExt::base(rat(2)));
    }

    #[test]
    fn r_powers() {
        assert_eq!(E::r_pow(3, D), E::r(D).mul(&E::s(D)));
        assert_eq!(E::r_pow(-1, D), E::inv_r(D));
        assert_eq!(E::r_pow(-2, D).mul(&E::s(D)), E::int(1));
    }
}

/// A point prepared for [`CompiledExpr::eval`].
#[derive(Clone, Debug)]
pub struct FloatPoint {
    powers: Vec<Vec<f64>>,
    inv_s: f64,
    inv_rho2: Option<f64>,
    r: f64,
}

impl FloatPoint {
    pub fn new(p: &RationalPoint, deg: usize) -> Self {
        let coords: Vec<f64> = p.coords().iter().map(super::ring::rational_to_float::<f64>).collect();
        let powers = coords
            .iter()
            .map(|&x| {
                let mut t = vec![1.0; deg + 1];
                for k in 1..=deg {
                    t[k] = t[k - 1] * x;
                }
                t
            })
            .collect();
        let s: f64 = super::ring::rational_to_float(p.s());
        let rho2: f64 = super::ring::rational_to_float(p.rho2());
        FloatPoint { powers, inv_s: 1.0 / s, inv_rho2: (!p.rho2().is_zero()).then(|| 1.0 / rho2), r: s.sqrt() }
    }
}

#[derive(Clone, Debug)]
struct CompiledFrac {
    terms: Vec<(Complex64, super::mono::Mono)>,
    s_pow: i32,
    rho_pow: i32,
}

impl CompiledFrac {
    fn eval(&self, p: &FloatPoint) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, m) in &self.terms {
            let mut v = 1.0;
            for (i, t) in p.powers.iter().enumerate() {
                v *= t[m.exp(i) as usize];
            }
            acc += c * v;
        }
        let mut k = p.inv_s.powi(self.s_pow);
        if self.rho_pow > 0 {
            k *= p.inv_rho2.unwrap_or(f64::NAN).powi(self.rho_pow);
        }
        acc * k
    }
}

/// [`ScalarExpr`] with double-precision coefficients.
#[derive(Clone, Debug)]
pub struct CompiledExpr {
    f: CompiledFrac,
    g: CompiledFrac,
    degree: usize,
    has_rho: bool,
}

impl CompiledExpr {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn eval(&self, p: &FloatPoint) -> Result<Complex64> {
        if self.has_rho && p.inv_rho2.is_none() {
            return Err(Error::PoleAtPoint);
        }
        let f = self.f.eval(p);
        if self.g.terms.is_empty() {
            return Ok(f);
        }
        Ok(f + self.g.eval(p) * p.r)
    }
}
