//! General univariate rational functions over the Gaussian rationals,
//! normalized by polynomial gcd. This is the fraction field used by the
//! Gaussian-elimination inversion route; intermediate entries there fall
//! outside the `{i, -i}` pole class, so the restricted type cannot carry
//! them. Results are converted back (and must land in the restricted class).

use crate::matrix::{Matrix, Ring};
use crate::ratfn::{Poly, RatFn};
use crate::scalar::{GaussRat, Scalar};
use crate::{Error, Result};

/// Polynomial over the Gaussian rationals, dense ascending coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct QPoly(Vec<GaussRat>);

impl QPoly {
    pub fn new(coeffs: Vec<GaussRat>) -> Self {
        let mut p = QPoly(coeffs);
        p.trim();
        p
    }

    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn one() -> Self {
        QPoly(vec![GaussRat::one()])
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[GaussRat] {
        &self.0
    }

    fn lead(&self) -> &GaussRat {
        self.0.last().expect("lead of zero polynomial")
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.0.len().max(o.0.len());
        QPoly::new(
            (0..n)
                .map(|k| {
                    let a = self.0.get(k).cloned().unwrap_or_else(GaussRat::zero);
                    let b = o.0.get(k).cloned().unwrap_or_else(GaussRat::zero);
                    &a + &b
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> QPoly {
        QPoly::new(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![GaussRat::zero(); self.0.len() + o.0.len() - 1];
        for (j, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in o.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[j + k] = &out[j + k] + &(a * b);
            }
        }
        QPoly::new(out)
    }

    pub fn scale(&self, g: &GaussRat) -> QPoly {
        QPoly::new(self.0.iter().map(|c| c * g).collect())
    }

    /// Makes the polynomial monic; zero stays zero.
    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        self.scale(&self.lead().inv().expect("nonzero lead"))
    }

    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.lead().inv().expect("nonzero lead");
        let mut rem = self.0.clone();
        let mut quot = vec![GaussRat::zero(); self.0.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let c = &rem[k] * &lead_inv;
            if !c.is_zero() {
                quot[k - dd] = c.clone();
                for (j, dc) in d.0.iter().enumerate() {
                    rem[k - dd + j] = &rem[k - dd + j] - &(dc * &c);
                }
            }
            rem.pop();
        }
        (QPoly::new(quot), QPoly::new(rem))
    }

    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

/// Fraction of two [`QPoly`]s, gcd-reduced with a monic denominator.
#[derive(Clone, PartialEq, Debug)]
pub struct QiFrac {
    num: QPoly,
    den: QPoly,
}

impl QiFrac {
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut f = QiFrac { num, den };
        f.reduce();
        f
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = QPoly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree() != Some(0) {
            self.num = self.num.div_rem(&g).0;
            self.den = self.den.div_rem(&g).0;
        }
        let lead_inv = self.den.lead().inv().expect("nonzero lead");
        self.num = self.num.scale(&lead_inv);
        self.den = self.den.scale(&lead_inv);
    }

    pub fn from_poly(p: QPoly) -> Self {
        QiFrac::new(p, QPoly::one())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(QiFrac::new(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &QiFrac) -> Result<Self> {
        Ok(self.mul_ref(&o.inv()?))
    }
}

impl Ring for QiFrac {
    fn zero() -> Self {
        QiFrac::from_poly(QPoly::zero())
    }
    fn one() -> Self {
        QiFrac::from_poly(QPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        QiFrac::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }
    fn mul_ref(&self, o: &Self) -> Self {
        QiFrac::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn neg_ref(&self) -> Self {
        QiFrac {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

/// Converts a restricted rational function with constant (in `h`) numerator
/// into the general fraction field.
pub fn ratfn_to_frac(f: &RatFn) -> Result<QiFrac> {
    let mut num = Vec::with_capacity(f.num().coeffs().len());
    for c in f.num().coeffs() {
        let g = c
            .as_gauss()
            .ok_or_else(|| Error::InvalidParameter("h-dependent entry in field conversion".into()))?;
        num.push(g.clone());
    }
    let i = GaussRat::i();
    let mi = -&GaussRat::i();
    let mut den = QPoly::one();
    let (p, q) = f.poles();
    for _ in 0..p {
        den = den.mul(&QPoly::new(vec![-&i, GaussRat::one()]));
    }
    for _ in 0..q {
        den = den.mul(&QPoly::new(vec![-&mi, GaussRat::one()]));
    }
    Ok(QiFrac::new(QPoly::new(num), den))
}

/// Converts back into the restricted pole class; fails if a denominator
/// factor other than `(x -+ i)` remains.
pub fn frac_to_ratfn(f: &QiFrac) -> Result<RatFn> {
    let num = Poly::new(
        f.num
            .coeffs()
            .iter()
            .map(|g| Scalar::from_gauss(g.clone()))
            .collect(),
    );
    let den = Poly::new(
        f.den
            .coeffs()
            .iter()
            .map(|g| Scalar::from_gauss(g.clone()))
            .collect(),
    );
    RatFn::from_num_den(num, den)
}

/// Exact Gauss-Jordan inversion over the fraction field.
pub fn invert_matrix(m: &Matrix<QiFrac>) -> Result<Matrix<QiFrac>> {
    let n = m.dim();
    let mut a = m.clone();
    let mut inv: Matrix<QiFrac> = Matrix::identity(n);
    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&r| !a.get(r, col).is_zero())
            .ok_or(Error::SingularSymbol)?;
        if pivot_row != col {
            for c in 0..n {
                let x = a.get(pivot_row, c).clone();
                let y = a.get(col, c).clone();
                a.set(pivot_row, c, y);
                a.set(col, c, x);
                let x = inv.get(pivot_row, c).clone();
                let y = inv.get(col, c).clone();
                inv.set(pivot_row, c, y);
                inv.set(col, c, x);
            }
        }
        let pivot_inv = a.get(col, col).inv()?;
        for c in 0..n {
            a.set(col, c, a.get(col, c).mul_ref(&pivot_inv));
            inv.set(col, c, inv.get(col, c).mul_ref(&pivot_inv));
        }
        for r in 0..n {
            if r == col || a.get(r, col).is_zero() {
                continue;
            }
            let factor = a.get(r, col).clone();
            for c in 0..n {
                let av = a.get(r, c).sub_ref(&factor.mul_ref(a.get(col, c)));
                a.set(r, c, av);
                let iv = inv.get(r, c).sub_ref(&factor.mul_ref(inv.get(col, c)));
                inv.set(r, c, iv);
            }
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(coeffs: &[(i64, i64)]) -> QPoly {
        QPoly::new(
            coeffs
                .iter()
                .map(|&(re, im)| {
                    GaussRat::new(
                        crate::Rat::from_integer(re.into()),
                        crate::Rat::from_integer(im.into()),
                    )
                })
                .collect(),
        )
    }

    #[test]
    fn gcd_reduction() {
        // (x^2 + 1) / (x + i) reduces to x - i
        let num = gp(&[(1, 0), (0, 0), (1, 0)]);
        let den = gp(&[(0, 1), (1, 0)]);
        let f = QiFrac::new(num, den);
        assert_eq!(f, QiFrac::from_poly(gp(&[(0, -1), (1, 0)])));
    }

    #[test]
    fn invert_small_matrix() {
        // [[x, 1], [0, x]] over Q(i)(x)
        let x = QiFrac::from_poly(gp(&[(0, 0), (1, 0)]));
        let one = <QiFrac as Ring>::one();
        let zero = <QiFrac as Ring>::zero();
        let m = Matrix::from_fn(2, |r, c| match (r, c) {
            (0, 0) | (1, 1) => x.clone(),
            (0, 1) => one.clone(),
            _ => zero.clone(),
        });
        let inv = invert_matrix(&m).unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
    }

    #[test]
    fn singular_matrix_reported() {
        let one = <QiFrac as Ring>::one();
        let m = Matrix::from_fn(2, |_, _| one.clone());
        assert!(matches!(invert_matrix(&m), Err(Error::SingularSymbol)));
    }
}
