//! Minimal dense complex square matrix.

use std::ops::{Index, IndexMut, Mul};

use crate::scalar::{cone, czero, Real, C};

/// Dense square complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    n: usize,
    data: Vec<C<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![czero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = cone();
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// Build from row-major data; `None` if the length is not a perfect square.
    pub fn from_row_major(data: Vec<C<T>>) -> Option<Self> {
        let n = (data.len() as f64).sqrt().round() as usize;
        (n * n == data.len()).then_some(Self { n, data })
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C::new(d, T::zero());
        }
        m
    }

    /// Outer product `v w^dagger`.
    pub fn outer(v: &[C<T>], w: &[C<T>]) -> Self {
        assert_eq!(v.len(), w.len(), "outer product of mismatched vectors");
        Self::from_fn(v.len(), |i, j| v[i] * w[j].conj())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[C<T>] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C<T>] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C<T> {
        (0..self.n).fold(czero(), |acc, i| acc + self[(i, i)])
    }

    pub fn diagonal_real(&self) -> Vec<T> {
        (0..self.n).map(|i| self[(i, i)].re).collect()
    }

    /// Squared Frobenius norm.
    pub fn norm_sqr(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Squared Frobenius norm of the strictly off-diagonal part.
    pub fn off_diagonal_norm_sqr(&self) -> T {
        let mut s = T::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    s = s + self[(i, j)].norm_sqr();
                }
            }
        }
        s
    }

    /// Largest `|a_ij - conj(a_ji)|`.
    pub fn hermiticity_defect(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.n {
            for j in i..self.n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max)
    }

    /// Kronecker product `self (x) other`, `self` indexing the slow factor.
    pub fn kron(&self, other: &Self) -> Self {
        let m = other.n;
        Self::from_fn(self.n * m, |r, c| self[(r / m, c / m)] * other[(r % m, c % m)])
    }

    pub fn scale(&self, k: C<T>) -> Self {
        Self { n: self.n, data: self.data.iter().map(|&z| z * k).collect() }
    }

    pub fn mul_vec(&self, v: &[C<T>]) -> Vec<C<T>> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).fold(czero(), |acc, (a, b)| acc + *a * *b))
            .collect()
    }
}

impl<T: Real> Index<(usize, usize)> for CMatrix<T> {
    type Output = C<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        &self.data[i * self.n + j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for CMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        &mut self.data[i * self.n + j]
    }
}

impl<T: Real> Mul for &CMatrix<T> {
    type Output = CMatrix<T>;

    fn mul(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!(self.n, rhs.n, "matrix product of mismatched sizes");
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] = out.data[i * n + j] + a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let k = CMatrix::<f64>::identity(2).kron(&CMatrix::identity(3));
        assert_eq!(k, CMatrix::identity(6));
    }

    #[test]
    fn kron_orders_factors_slow_then_fast() {
        // |1><1| (x) |0><0| lands on index 2 of a 4x4 matrix
        let p1 = CMatrix::from_diagonal(&[0.0, 1.0]);
        let p0 = CMatrix::from_diagonal(&[1.0, 0.0]);
        let k = p1.kron(&p0);
        assert_eq!(k[(2, 2)], c(1.0, 0.0));
        assert_eq!(k.trace(), c(1.0, 0.0));
    }

    #[test]
    fn adjoint_and_product() {
        let a = CMatrix::from_row_major(vec![c(1.0, 1.0), c(2.0, 0.0), c(0.0, -1.0), c(3.0, 0.5)]).unwrap();
        let aa = &a * &a.adjoint();
        assert!(aa.hermiticity_defect() < 1e-15);
        assert!((aa.trace().re - a.norm_sqr()).abs() < 1e-14);
    }

    #[test]
    fn from_row_major_rejects_non_square() {
        assert!(CMatrix::<f64>::from_row_major(vec![c(0.0, 0.0); 3]).is_none());
    }
}
