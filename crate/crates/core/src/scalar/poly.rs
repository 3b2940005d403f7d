//! Sparse multivariate polynomials.

use std::collections::BTreeMap;

use super::mono::Mono;
use super::ring::{Coeff, Ring};
use crate::{Gaussian, Rational};

/// Sparse polynomial, terms sorted by descending monomial with no zero
/// coefficients. `nvars == 0` marks a constant that combines with any arity.
#[derive(Clone, Debug)]
pub struct Poly<C> {
    nvars: usize,
    terms: Vec<(Mono, C)>,
}

/// Equality ignores the arity tag.
impl<C: PartialEq> PartialEq for Poly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<C: Eq> Eq for Poly<C> {}

impl<C: std::hash::Hash> std::hash::Hash for Poly<C> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl<C: Coeff> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn constant(c: C, nvars: usize) -> Self {
        Self::monomial(Mono::ONE, c, nvars)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(C::one(), nvars)
    }

    pub fn monomial(m: Mono, c: C, nvars: usize) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Poly { nvars, terms }
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        assert!(i < nvars, "variable {i} out of range for {nvars} variables");
        Self::monomial(Mono::var(i), C::one(), nvars)
    }

    /// `Σ_{i<k} x_i²`.
    pub fn sum_of_squares(k: usize, nvars: usize) -> Self {
        let terms = (0..k).map(|i| (Mono::var(i).mul(Mono::var(i)), C::one())).collect();
        Poly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, mut terms: Vec<(Mono, C)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Poly { nvars, terms: merge_sorted(terms) }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Mono, C)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Mono, C)> {
        self.terms.first()
    }

    /// Constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.as_slice() {
            [] => Some(C::zero()),
            [(m, c)] if *m == Mono::ONE => Some(c.clone()),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    fn arity(&self, other: &Self) -> usize {
        debug_assert!(
            self.nvars == other.nvars || self.nvars == 0 || other.nvars == 0,
            "mixing {} and {} variables",
            self.nvars,
            other.nvars
        );
        self.nvars.max(other.nvars)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let nvars = self.arity(other);
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let rhs = |c: &C| if negate { c.negate() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0, rhs(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { a[i].1.minus(&b[j].1) } else { a[i].1.plus(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, rhs(c))));
        Poly { nvars, terms: out }
    }

    pub fn neg(&self) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, c.negate())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (*m, a.times(c))).collect(),
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&C::from_rational(q.clone()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let nvars = self.arity(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(nvars);
        }
        if let [(m, c)] = self.terms.as_slice() {
            return other.mul_term(*m, c).with_nvars(nvars);
        }
        if let [(m, c)] = other.terms.as_slice() {
            return self.mul_term(*m, c).with_nvars(nvars);
        }
        let mut acc: Vec<(Mono, C)> = Vec::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                acc.push((ma.mul(*mb), ca.times(cb)));
            }
        }
        acc.sort_by(|a, b| b.0.cmp(&a.0));
        Poly { nvars, terms: merge_sorted(acc) }
    }

    fn with_nvars(mut self, nvars: usize) -> Self {
        self.nvars = nvars;
        self
    }

    /// Multiply by `c·m`; order is preserved because monomial order is
    /// compatible with multiplication.
    pub fn mul_term(&self, m: Mono, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, b)| (a.mul(m), b.times(c))).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e > 0 {
                terms.push((m.dec(i).unwrap(), c.times(&C::from_int(e as i64))));
            }
        }
        // Lowering one exponent preserves the relative order of the
        // surviving terms, and distinct terms stay distinct.
        Poly { nvars: self.nvars, terms }
    }

    pub fn conj(&self) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect(),
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Poly { nvars: self.nvars, terms }
    }

    /// Exact quotient by a polynomial whose leading coefficient is one,
    /// or `None` when it does not divide.
    pub fn div_exact(&self, q: &Self) -> Option<Self> {
        let (lm, lc) = q.leading().expect("division by zero polynomial");
        debug_assert!(lc.is_one(), "divisor must be monic");
        let nvars = self.arity(q);
        let mut rem: BTreeMap<Mono, C> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((&m, _)) = rem.last_key_value() {
            let t = lm.quotient(m)?;
            let c = rem.remove(&m).unwrap();
            for (qm, qc) in q.terms.iter().skip(1) {
                let key = qm.mul(t);
                let delta = qc.times(&c);
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let v = e.get().minus(&delta);
                        if v.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = v;
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(delta.negate());
                    }
                }
            }
            quot.push((t, c));
        }
        Some(Poly { nvars, terms: quot })
    }

    /// Value at a point given by per-variable power tables
    /// (`powers[i][k] = x_i^k`).
    pub fn eval_powers(&self, powers: &[Vec<Rational>]) -> C {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut v: Option<Rational> = None;
            for (i, table) in powers.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e > 0 {
                    v = Some(match v {
                        None => table[e].clone(),
                        Some(x) => x * &table[e],
                    });
                }
            }
            match v {
                None => acc.plus_assign(c),
                Some(x) => acc.plus_assign(&c.scale(&x)),
            }
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> C {
        let deg = self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0) as usize;
        self.eval_powers(&power_tables(point, deg))
    }

    /// Value at `x_a = 1, x_b = i` with every other coordinate zero.
    pub fn at_null_pair(&self, a: usize, b: usize) -> Gaussian {
        let mut acc = Gaussian::zero();
        for (m, c) in &self.terms {
            let (ea, eb) = (m.exp(a), m.exp(b));
            if m.degree() != ea + eb {
                continue;
            }
            let c = c.to_gaussian();
            acc = match eb % 4 {
                0 => acc + c,
                1 => acc + Gaussian::new(-c.im, c.re),
                2 => acc - c,
                _ => acc + Gaussian::new(c.im, -c.re),
            };
        }
        acc
    }

    /// Value in an arbitrary ring receiving the coefficients.
    pub fn eval_in<R: Ring>(&self, point: &[R], embed: impl Fn(&C) -> R) -> R {
        let mut acc = R::zero();
        for (m, c) in &self.terms {
            let mut v = embed(c);
            for (i, x) in point.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    v = v.times(x);
                }
            }
            acc.plus_assign(&v);
        }
        acc
    }
}

pub fn power_tables(point: &[Rational], deg: usize) -> Vec<Vec<Rational>> {
    point
        .iter()
        .map(|x| {
            let mut t = Vec::with_capacity(deg + 1);
            t.push(Rational::from_integer(1.into()));
            for k in 1..=deg {
                let next = &t[k - 1] * x;
                t.push(next);
            }
            t
        })
        .collect()
}

fn merge_sorted<C: Ring>(terms: Vec<(Mono, C)>) -> Vec<(Mono, C)> {
    let mut out: Vec<(Mono, C)> = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => {
                lc.plus_assign(&c);
                if lc.is_zero() {
                    out.pop();
                }
            }
            _ => {
                if !c.is_zero() {
                    out.push((m, c));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ring::rat;

    type P = Poly<Rational>;

    fn x(i: usize) -> P {
        P::var(i, 3)
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let a = x(0).add(&x(1));
        let b = x(0).sub(&x(1));
        let prod = a.mul(&b);
        let expect = x(0).mul(&x(0)).sub(&x(1).mul(&x(1)));
        assert_eq!(prod, expect);
        assert!(prod.sub(&expect).is_zero());
    }

    #[test]
    fn exact_division_by_monic_quadratic() {
        let s = P::sum_of_squares(3, 3);
        let f = x(0).mul(&x(2)).add(&P::constant(rat(7), 3));
        let prod = s.mul(&f);
        assert_eq!(prod.div_exact(&s), Some(f.clone()));
        assert_eq!(prod.add(&x(1)).div_exact(&s), None);
        assert_eq!(f.div_exact(&s), None);
    }

    #[test]
    fn derivative_and_evaluation() {
        let p = x(0).pow(3).mul(&x(1)).add(&x(2));
        let d = p.derivative(0);
        assert_eq!(d, x(0).pow(2).mul(&x(1)).scale(&rat(3)));
        let v = p.eval(&[rat(2), rat(3), rat(-1)]);
        assert_eq!(v, rat(23));
    }
}
