//! Dense square matrices over an exact ring.

use std::fmt;

/// Minimal ring interface used by the matrix code. Reference-based to avoid
/// cloning big exact scalars in the inner loops.
pub trait Ring: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

/// A square matrix with entries in `T`.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    n: usize,
    a: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn zero(n: usize) -> Self {
        Matrix {
            n,
            a: vec![T::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n);
        for k in 0..n {
            m.a[k * n + k] = T::one();
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut a = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                a.push(f(r, c));
            }
        }
        Matrix { n, a }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.a[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.a[r * self.n + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Matrix {
            n: self.n,
            a: self
                .a
                .iter()
                .zip(&other.a)
                .map(|(x, y)| x.add_ref(y))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Matrix {
            n: self.n,
            a: self
                .a
                .iter()
                .zip(&other.a)
                .map(|(x, y)| x.sub_ref(y))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Matrix {
            n: self.n,
            a: self.a.iter().map(|x| x.neg_ref()).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        Matrix {
            n: self.n,
            a: self.a.iter().map(|x| x.mul_ref(s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Matrix::zero(n);
        for r in 0..n {
            for k in 0..n {
                let x = &self.a[r * n + k];
                if x.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let y = &other.a[k * n + c];
                    if y.is_zero() {
                        continue;
                    }
                    let cell: &mut T = &mut out.a[r * n + c];
                    *cell = cell.add_ref(&x.mul_ref(y));
                }
            }
        }
        out
    }

    /// Product of a chain of matrices, left to right.
    pub fn prod(factors: &[&Self]) -> Self {
        let mut it = factors.iter();
        let first = it.next().expect("empty product");
        it.fold((*first).clone(), |acc, m| acc.mul(m))
    }

    pub fn trace(&self) -> T {
        let mut t = T::zero();
        for k in 0..self.n {
            t = t.add_ref(&self.a[k * self.n + k]);
        }
        t
    }

    /// `trace(self * other)` without forming the product.
    pub fn trace_of_product(&self, other: &Self) -> T {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut t = T::zero();
        for r in 0..n {
            for c in 0..n {
                let x = &self.a[r * n + c];
                if x.is_zero() {
                    continue;
                }
                let y = &other.a[c * n + r];
                if y.is_zero() {
                    continue;
                }
                t = t.add_ref(&x.mul_ref(y));
            }
        }
        t
    }

    pub fn map<U: Ring>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            n: self.n,
            a: self.a.iter().map(|x| f(x)).collect(),
        }
    }

    /// Fallible entrywise map; the first error aborts.
    pub fn try_map<U: Ring, E>(
        &self,
        mut f: impl FnMut(&T) -> std::result::Result<U, E>,
    ) -> std::result::Result<Matrix<U>, E> {
        let mut a = Vec::with_capacity(self.a.len());
        for x in &self.a {
            a.push(f(x)?);
        }
        Ok(Matrix { n: self.n, a })
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n {
            write!(f, "[")?;
            for c in 0..self.n {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn trace_of_product_matches_full_product() {
        let a = Matrix::from_fn(3, |r, c| Scalar::from_int((r * 3 + c) as i64));
        let b = Matrix::from_fn(3, |r, c| Scalar::from_int((2 * r + 5 * c) as i64 - 4));
        assert_eq!(a.trace_of_product(&b), a.mul(&b).trace());
    }

    #[test]
    fn identity_is_neutral() {
        let a = Matrix::from_fn(4, |r, c| Scalar::from_int((r + 2 * c) as i64));
        let id = Matrix::identity(4);
        assert_eq!(a.mul(&id), a);
        assert_eq!(id.mul(&a), a);
    }
}
