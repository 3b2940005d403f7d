//! Rational functions with denominators `s^a · ρ^{2b}`.
//!
//! Every coefficient the crate manipulates lives in the localization of
//! `C[x]` at `s = |x|²` and `ρ² = Σ_{a<D} x_a²` (all but the last
//! coordinate). Both are irreducible for `D ≥ 4`, so `N / (s^a ρ^{2b})` with
//! `s ∤ N` when `a > 0` and `ρ² ∤ N` when `b > 0` is a unique normal form,
//! and no general multivariate gcd is needed.

use super::mono::Mono;
use super::poly::Poly;
use super::ring::{Coeff, Ring};
use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Frac<C> {
    num: Poly<C>,
    s_pow: u32,
    rho_pow: u32,
}

pub fn s_poly<C: Coeff>(nvars: usize) -> Poly<C> {
    Poly::sum_of_squares(nvars, nvars)
}

pub fn rho2_poly<C: Coeff>(nvars: usize) -> Poly<C> {
    Poly::sum_of_squares(nvars.saturating_sub(1), nvars)
}

/// False only when `num` is certainly not a multiple of `s` or `ρ²`: both
/// vanish where `x_a = 1, x_b = i` and the other coordinates are zero, for
/// any `a, b` below the last coordinate.
fn may_vanish<C: Coeff>(num: &Poly<C>, nvars: usize) -> bool {
    if nvars < 4 {
        return true;
    }
    num.at_null_pair(0, 1).is_zero() && num.at_null_pair(nvars - 3, nvars - 2).is_zero()
}

impl<C: Coeff> Frac<C> {
    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Poly::zero(nvars))
    }

    pub fn from_poly(num: Poly<C>) -> Self {
        Frac { num, s_pow: 0, rho_pow: 0 }
    }

    pub fn constant(c: C) -> Self {
        Self::from_poly(Poly::constant(c, 0))
    }

    /// `num / (s^a ρ^{2b})`, reduced.
    pub fn new(num: Poly<C>, s_pow: u32, rho_pow: u32) -> Self {
        let mut f = Frac { num, s_pow, rho_pow };
        f.reduce();
        f
    }

    pub fn num(&self) -> &Poly<C> {
        &self.num
    }

    pub fn s_pow(&self) -> u32 {
        self.s_pow
    }

    pub fn rho_pow(&self) -> u32 {
        self.rho_pow
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<C> {
        if self.s_pow == 0 && self.rho_pow == 0 {
            self.num.as_constant()
        } else {
            None
        }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.s_pow = 0;
            self.rho_pow = 0;
            return;
        }
        let nvars = self.num.nvars();
        if self.s_pow > 0 {
            let s = s_poly::<C>(nvars);
            while self.s_pow > 0 && may_vanish(&self.num, nvars) {
                match self.num.div_exact(&s) {
                    Some(q) => {
                        self.num = q;
                        self.s_pow -= 1;
                    }
                    None => break,
                }
            }
        }
        if self.rho_pow > 0 {
            let rho = rho2_poly::<C>(nvars);
            while self.rho_pow > 0 && may_vanish(&self.num, nvars) {
                match self.num.div_exact(&rho) {
                    Some(q) => {
                        self.num = q;
                        self.rho_pow -= 1;
                    }
                    None => break,
                }
            }
        }
    }

    /// Numerator lifted to denominator `s^a ρ^{2b}` with `a, b` at least the
    /// current powers.
    fn lifted(&self, a: u32, b: u32, nvars: usize) -> Poly<C> {
        let mut n = self.num.clone();
        if a > self.s_pow {
            n = n.mul(&s_poly::<C>(nvars).pow(a - self.s_pow));
        }
        if b > self.rho_pow {
            n = n.mul(&rho2_poly::<C>(nvars).pow(b - self.rho_pow));
        }
        n
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { other.neg() } else { other.clone() };
        }
        let nvars = self.nvars().max(other.nvars());
        let a = self.s_pow.max(other.s_pow);
        let b = self.rho_pow.max(other.rho_pow);
        let x = self.lifted(a, b, nvars);
        let y = other.lifted(a, b, nvars);
        let num = if negate { x.sub(&y) } else { x.add(&y) };
        Self::new(num, a, b)
    }

    pub fn neg(&self) -> Self {
        Frac { num: self.num.neg(), s_pow: self.s_pow, rho_pow: self.rho_pow }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.num);
        let (a, b) = (self.s_pow + other.s_pow, self.rho_pow + other.rho_pow);
        // A product of reduced fractions can only cancel against a factor
        // the other numerator carries.
        let need = (self.s_pow > 0 && other.s_pow == 0)
            || (other.s_pow > 0 && self.s_pow == 0)
            || (self.rho_pow > 0 && other.rho_pow == 0)
            || (other.rho_pow > 0 && self.rho_pow == 0);
        if need {
            Self::new(num, a, b)
        } else {
            Frac { num, s_pow: a, rho_pow: b }.normalized_zero()
        }
    }

    fn normalized_zero(mut self) -> Self {
        if self.num.is_zero() {
            self.s_pow = 0;
            self.rho_pow = 0;
        }
        self
    }

    pub fn scale(&self, c: &C) -> Self {
        Frac { num: self.num.scale(c), s_pow: self.s_pow, rho_pow: self.rho_pow }.normalized_zero()
    }

    pub fn mul_poly(&self, p: &Poly<C>) -> Self {
        Self::new(self.num.mul(p), self.s_pow, self.rho_pow)
    }

    /// Multiply by `s`.
    pub fn mul_s(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        if self.s_pow > 0 {
            Frac { num: self.num.clone(), s_pow: self.s_pow - 1, rho_pow: self.rho_pow }
        } else {
            // s is prime and distinct from ρ², so no cancellation is possible.
            let nvars = self.nvars();
            Frac { num: self.num.mul(&s_poly(nvars)), s_pow: 0, rho_pow: self.rho_pow }
        }
    }

    /// Multiply by `s^{-k}` and `ρ^{-2j}`.
    pub fn div_denoms(&self, k: u32, j: u32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Self::new(self.num.clone(), self.s_pow + k, self.rho_pow + j)
    }

    pub fn derivative(&self, i: usize) -> Self {
        let nvars = self.nvars();
        if self.s_pow == 0 && self.rho_pow == 0 {
            return Self::from_poly(self.num.derivative(i));
        }
        let dn = self.num.derivative(i);
        let xi = Poly::<C>::var(i, nvars);
        let (a, b) = (self.s_pow, self.rho_pow);
        // d(N s^{-a} ρ^{-2b}) = (N' s ρ² − 2a x_i N ρ² − 2b x_i N s [i<D]) / (s^{a+1} ρ^{2b+2})
        let s = s_poly::<C>(nvars);
        let rho = rho2_poly::<C>(nvars);
        let in_rho = i + 1 < nvars;
        let mut num = dn.mul(&s).mul(&rho);
        if a > 0 {
            num = num.sub(&xi.mul(&self.num).mul(&rho).scale(&C::from_int(2 * a as i64)));
        }
        if b > 0 && in_rho {
            num = num.sub(&xi.mul(&self.num).mul(&s).scale(&C::from_int(2 * b as i64)));
        }
        Self::new(num, a + 1, b + 1)
    }

    pub fn conj(&self) -> Self {
        Frac { num: self.num.conj(), s_pow: self.s_pow, rho_pow: self.rho_pow }
    }

    /// Exact value at a point; `s` and `ρ²` there are supplied by the caller.
    pub fn eval_at(
        &self,
        powers: &[Vec<Rational>],
        s_val: &Rational,
        rho_val: &Rational,
    ) -> Result<C> {
        let n = self.num.eval_powers(powers);
        if self.s_pow == 0 && self.rho_pow == 0 {
            return Ok(n);
        }
        if (self.s_pow > 0 && num_traits::Zero::is_zero(s_val))
            || (self.rho_pow > 0 && num_traits::Zero::is_zero(rho_val))
        {
            return Err(Error::PoleAtPoint);
        }
        let mut den = Rational::from_integer(1.into());
        for _ in 0..self.s_pow {
            den *= s_val;
        }
        for _ in 0..self.rho_pow {
            den *= rho_val;
        }
        Ok(n.scale(&num_traits::Inv::inv(den)))
    }

    /// Value in a ring given coordinate values and `1/s`, `1/ρ²` there.
    pub fn eval_in<R: Ring>(
        &self,
        point: &[R],
        inv_s: &R,
        inv_rho: &R,
        embed: impl Fn(&C) -> R,
    ) -> R {
        let mut v = self.num.eval_in(point, embed);
        for _ in 0..self.s_pow {
            v = v.times(inv_s);
        }
        for _ in 0..self.rho_pow {
            v = v.times(inv_rho);
        }
        v
    }

    /// If the numerator is `c · s^i · ρ^{2j}` return `(c, i, j)`.
    pub fn unit_parts(&self) -> Option<(C, u32, u32)> {
        let nvars = self.nvars();
        let mut n = self.num.clone();
        let mut i = 0;
        let mut j = 0;
        if n.is_zero() {
            return None;
        }
        if nvars > 0 {
            let s = s_poly::<C>(nvars);
            while let Some(q) = n.div_exact(&s) {
                n = q;
                i += 1;
            }
            let rho = rho2_poly::<C>(nvars);
            while let Some(q) = n.div_exact(&rho) {
                n = q;
                j += 1;
            }
        }
        n.as_constant().map(|c| (c, i, j))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Frac<D> {
        Frac::new(self.num.map_coeffs(f), self.s_pow, self.rho_pow)
    }

    pub fn leading_mono(&self) -> Option<Mono> {
        self.num.leading().map(|(m, _)| *m)
    }
}
