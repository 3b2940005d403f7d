//! Algebraic traits shared by the symbolic and pointwise layers.
//!
//! `Ring` is the minimal by-reference arithmetic every container in the crate
//! (polynomials, matrices, jets) is generic over. `Coeff` marks exact
//! coefficient rings (ℚ and ℚ(i)); `Scalar` marks evaluation fields that can
//! receive a Gaussian rational and a square root of a rational, which is what
//! pointwise identity testing needs. Exact evaluation uses
//! [`QuadExt`](super::QuadExt) over ℚ(i); float evaluation uses
//! `Complex<f64>` (or `Complex<f32>`).

use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{Float, FromPrimitive, ToPrimitive};

use crate::{Gaussian, Rational};

/// Commutative ring with by-reference arithmetic.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;

    fn plus_assign(&mut self, rhs: &Self) {
        if rhs.is_zero() {
            return;
        }
        *self = self.plus(rhs);
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Exact coefficient ring embedded in ℚ(i).
pub trait Coeff: Ring {
    fn from_rational(q: Rational) -> Self;

    fn from_int(k: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(k)))
    }

    fn to_gaussian(&self) -> Gaussian;

    fn conj(&self) -> Self;

    /// Multiply by a rational.
    fn scale(&self, q: &Rational) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn embed<F: Scalar>(&self) -> F {
        F::from_gaussian(&self.to_gaussian())
    }
}

/// Evaluation field for pointwise identity testing.
pub trait Scalar: Ring + std::fmt::Display {
    fn from_rational(q: &Rational) -> Self;
    fn from_gaussian(z: &Gaussian) -> Self;
    /// The positive square root of a positive rational.
    fn sqrt_rational(s: &Rational) -> Self;
    /// Absolute value as a double, for tolerances and reporting.
    fn magnitude(&self) -> f64;
    /// True when `is_zero` is an exact test.
    fn exact() -> bool;

    fn imag_unit() -> Self {
        Self::from_gaussian(&Gaussian::new(Rational::zero(), Rational::one()))
    }

    /// The value of a double-precision complex number, exactly when the
    /// field is exact.
    fn from_complex64(z: num_complex::Complex64) -> Self {
        let q = |v: f64| Rational::from_float(v).expect("finite value");
        Self::from_gaussian(&Gaussian::new(q(z.re), q(z.im)))
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        if num_traits::Zero::is_zero(rhs) {
            return self.clone();
        }
        if num_traits::Zero::is_zero(self) {
            return rhs.clone();
        }
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        if num_traits::Zero::is_zero(rhs) {
            return self.clone();
        }
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        if num_traits::Zero::is_zero(self) || num_traits::Zero::is_zero(rhs) {
            return num_traits::Zero::zero();
        }
        if rhs.is_integer() && num_traits::One::is_one(rhs.numer()) {
            return self.clone();
        }
        if self.is_integer() && num_traits::One::is_one(self.numer()) {
            return rhs.clone();
        }
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
}

impl Coeff for Rational {
    fn from_rational(q: Rational) -> Self {
        q
    }
    fn to_gaussian(&self) -> Gaussian {
        Gaussian::new(self.clone(), Rational::zero())
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn scale(&self, q: &Rational) -> Self {
        self.times(q)
    }
    fn inv(&self) -> Option<Self> {
        (!num_traits::Zero::is_zero(self)).then(|| num_traits::Inv::inv(self))
    }
}

impl Ring for Gaussian {
    fn zero() -> Self {
        Gaussian::new(Rational::zero(), Rational::zero())
    }
    fn one() -> Self {
        Gaussian::new(Rational::one(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(&self.re) && num_traits::Zero::is_zero(&self.im)
    }
    fn plus(&self, rhs: &Self) -> Self {
        Gaussian::new(self.re.plus(&rhs.re), self.im.plus(&rhs.im))
    }
    fn minus(&self, rhs: &Self) -> Self {
        Gaussian::new(self.re.minus(&rhs.re), self.im.minus(&rhs.im))
    }
    fn times(&self, rhs: &Self) -> Self {
        let (a, b, c, d) = (&self.re, &self.im, &rhs.re, &rhs.im);
        match (num_traits::Zero::is_zero(b), num_traits::Zero::is_zero(d)) {
            (true, true) => Gaussian::new(a.times(c), Rational::zero()),
            (true, false) => Gaussian::new(a.times(c), a.times(d)),
            (false, true) => Gaussian::new(a.times(c), b.times(c)),
            (false, false) => Gaussian::new(
                a.times(c).minus(&b.times(d)),
                a.times(d).plus(&b.times(c)),
            ),
        }
    }
    fn negate(&self) -> Self {
        Gaussian::new(-&self.re, -&self.im)
    }
}

impl Coeff for Gaussian {
    fn from_rational(q: Rational) -> Self {
        Gaussian::new(q, Rational::zero())
    }
    fn to_gaussian(&self) -> Gaussian {
        self.clone()
    }
    fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -&self.im)
    }
    fn scale(&self, q: &Rational) -> Self {
        Gaussian::new(self.re.times(q), self.im.times(q))
    }
    fn inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            return None;
        }
        let n = (&self.re * &self.re + &self.im * &self.im).recip();
        Some(Gaussian::new(&self.re * &n, -(&self.im * &n)))
    }
}

macro_rules! float_ring {
    ($($t:ty),*) => {$(
        impl Ring for $t {
            fn zero() -> Self { 0.0 }
            fn one() -> Self { 1.0 }
            fn is_zero(&self) -> bool { *self == 0.0 }
            fn plus(&self, rhs: &Self) -> Self { self + rhs }
            fn minus(&self, rhs: &Self) -> Self { self - rhs }
            fn times(&self, rhs: &Self) -> Self { self * rhs }
            fn negate(&self) -> Self { -self }
        }

        impl Ring for Complex<$t> {
            fn zero() -> Self { Complex::new(0.0, 0.0) }
            fn one() -> Self { Complex::new(1.0, 0.0) }
            fn is_zero(&self) -> bool { self.re == 0.0 && self.im == 0.0 }
            fn plus(&self, rhs: &Self) -> Self { self + rhs }
            fn minus(&self, rhs: &Self) -> Self { self - rhs }
            fn times(&self, rhs: &Self) -> Self { self * rhs }
            fn negate(&self) -> Self { -self }
        }

        impl Scalar for Complex<$t> {
            fn from_rational(q: &Rational) -> Self {
                Complex::new(rational_to_float::<$t>(q), 0.0)
            }
            fn from_gaussian(z: &Gaussian) -> Self {
                Complex::new(rational_to_float::<$t>(&z.re), rational_to_float::<$t>(&z.im))
            }
            fn sqrt_rational(s: &Rational) -> Self {
                Complex::new(rational_to_float::<$t>(s).sqrt(), 0.0)
            }
            fn magnitude(&self) -> f64 {
                self.norm() as f64
            }
            fn exact() -> bool { false }
            fn from_complex64(z: num_complex::Complex64) -> Self {
                Complex::new(z.re as $t, z.im as $t)
            }
        }
    )*};
}

float_ring!(f32, f64);

/// Nearest float to a rational, robust to numerators and denominators that
/// individually overflow the float range.
pub fn rational_to_float<T: Float + FromPrimitive>(q: &Rational) -> T {
    if let Some(v) = q.to_f64() {
        if v.is_finite() {
            return T::from_f64(v).unwrap_or_else(T::nan);
        }
    }
    let num = q.numer();
    let den = q.denom();
    let shift = num.bits().max(den.bits()) as i64 - 60;
    let scale = |x: &BigInt| -> f64 {
        if shift > 0 {
            (x >> shift as usize).to_f64().unwrap_or(f64::NAN)
        } else {
            x.to_f64().unwrap_or(f64::NAN)
        }
    };
    T::from_f64(scale(num) / scale(den)).unwrap_or_else(T::nan)
}

/// `Rational` helper: `k/1`.
pub fn rat(k: i64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

/// `Rational` helper: `p/q`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Gaussian rational `re + i·im`.
pub fn gauss(re: Rational, im: Rational) -> Gaussian {
    Gaussian::new(re, im)
}

/// The imaginary unit in ℚ(i).
pub fn imag() -> Gaussian {
    Gaussian::new(Rational::zero(), Rational::one())
}
