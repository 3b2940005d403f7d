//! Small dense matrices over any [`Ring`].

use crate::scalar::{Coeff, Ring, Scalar};
use crate::Gaussian;

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, T::one())
    }

    pub fn scalar(n: usize, c: T) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data: Vec<T> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged rows");
        Matrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    /// True when off-diagonal entries vanish and the diagonal is constant.
    pub fn as_scalar(&self) -> Option<T> {
        if self.rows != self.cols {
            return None;
        }
        let c = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                let ok = if i == j { *v == c } else { v.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.plus(b))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.minus(b))
    }

    pub fn add_assign(&mut self, o: &Self) {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            a.plus_assign(b);
        }
    }

    /// `self += c·o`.
    pub fn add_scaled(&mut self, o: &Self, c: &T) {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            if !b.is_zero() {
                a.plus_assign(&b.times(c));
            }
        }
    }

    /// `self += x·y`, scaled by `c` when given.
    pub fn add_product(&mut self, x: &Self, y: &Self, c: Option<&T>) {
        assert_eq!(x.cols, y.rows, "inner dimension mismatch");
        assert_eq!((self.rows, self.cols), (x.rows, y.cols), "shape mismatch");
        for i in 0..x.rows {
            for k in 0..x.cols {
                let a = &x.data[i * x.cols + k];
                if a.is_zero() {
                    continue;
                }
                let a = match c {
                    Some(c) => a.times(c),
                    None => a.clone(),
                };
                for j in 0..y.cols {
                    let b = &y.data[k * y.cols + j];
                    if !b.is_zero() {
                        self.data[i * y.cols + j].plus_assign(&a.times(b));
                    }
                }
            }
        }
    }

    fn zip(&self, o: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.negate())
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_one() {
            return self.clone();
        }
        self.map(|x| x.times(c))
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Ring, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        let data = self.data.iter().map(f).collect::<Result<Vec<U>, E>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "inner dimension mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o.data[k * o.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    out.data[i * o.cols + j].plus_assign(&a.times(b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = &self.data[i * self.cols + k];
                    if !a.is_zero() && !x.is_zero() {
                        acc.plus_assign(&a.times(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn anticommutator(&self, o: &Self) -> Self {
        self.mul(o).add(&o.mul(self))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Kronecker product `self ⊗ o`.
    pub fn kron(&self, o: &Self) -> Self {
        Self::from_fn(self.rows * o.rows, self.cols * o.cols, |i, j| {
            self.get(i / o.rows, j / o.cols).times(o.get(i % o.rows, j % o.cols))
        })
    }

    pub fn trace(&self) -> T {
        let mut acc = T::zero();
        for i in 0..self.rows.min(self.cols) {
            acc.plus_assign(self.get(i, i));
        }
        acc
    }
}

impl<T: Coeff> Matrix<T> {
    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.conj_transpose()
    }

    pub fn embed<F: Scalar>(&self) -> Matrix<F> {
        self.map(|c| c.embed::<F>())
    }
}

impl<F: Scalar> Matrix<F> {
    /// Largest entry magnitude.
    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }
}

/// `i·M` for a Gaussian matrix.
pub fn times_i(m: &Matrix<Gaussian>) -> Matrix<Gaussian> {
    m.map(|z| Gaussian::new(-&z.im, z.re.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ring::rat;
    use crate::Rational;

    #[test]
    fn product_and_kronecker() {
        let a = Matrix::from_rows(vec![vec![rat(1), rat(2)], vec![rat(3), rat(4)]]);
        let i2 = Matrix::<Rational>::identity(2);
        assert_eq!(a.mul(&i2), a);
        let k = i2.kron(&a);
        assert_eq!(k.rows(), 4);
        assert_eq!(*k.get(3, 2), rat(3));
        assert!(k.get(0, 2).is_zero());
        assert_eq!(a.commutator(&a), Matrix::zeros(2, 2));
        assert_eq!(a.trace(), rat(5));
    }

    #[test]
    fn scalar_detection() {
        assert_eq!(Matrix::scalar(3, rat(7)).as_scalar(), Some(rat(7)));
        let mut m = Matrix::scalar(2, rat(1));
        m.set(0, 1, rat(1));
        assert_eq!(m.as_scalar(), None);
    }
}
