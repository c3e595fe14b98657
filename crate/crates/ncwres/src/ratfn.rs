//! Rational functions of the normal covariable `xi_n` with poles confined to
//! `{i, -i}`, together with partial fractions, the Hardy-space projections
//! `pi^+` and `pi'`, and residue integration over the real line.
//!
//! A function is stored as `num / ((xi_n - i)^p (xi_n + i)^q)` with `num` a
//! polynomial over the scalar ring. The representation is always normalized:
//! the numerator shares no root `i` or `-i` with the denominator. At a unit
//! tangential covector the squared covector length is `1 + xi_n^2 =
//! (xi_n - i)(xi_n + i)`, which is why this pole class is closed under every
//! operation the engine performs.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::matrix::Ring;
use crate::scalar::{GaussRat, Scalar};
use crate::{Error, Result};

/// Dense polynomial in `xi_n` over the scalar ring, ascending powers.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly(Vec<Scalar>);

impl Poly {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        let mut p = Poly(coeffs);
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![Scalar::one()])
    }

    pub fn constant(s: Scalar) -> Self {
        Poly::new(vec![s])
    }

    /// The monomial `xi_n`.
    pub fn xi() -> Self {
        Poly(vec![Scalar::zero(), Scalar::one()])
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn eval(&self, x: &GaussRat) -> Scalar {
        let xs = Scalar::from_gauss(x.clone());
        let mut acc = Scalar::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * &xs) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.0.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Scalar::from_int(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.0.iter().map(|c| c * s).collect())
    }

    /// Multiplies by `(xi_n - root)`.
    pub fn mul_linear(&self, root: &GaussRat) -> Poly {
        let mut out = vec![Scalar::zero(); self.0.len() + 1];
        let r = Scalar::from_gauss(root.clone());
        for (k, c) in self.0.iter().enumerate() {
            out[k + 1] = &out[k + 1] + c;
            out[k] = &out[k] - &(c * &r);
        }
        Poly::new(out)
    }

    /// Exact division by `(xi_n - root)`; fails if the remainder is nonzero.
    pub fn div_linear(&self, root: &GaussRat) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let r = Scalar::from_gauss(root.clone());
        let mut quot = vec![Scalar::zero(); self.0.len() - 1];
        let mut carry = Scalar::zero();
        for k in (0..self.0.len()).rev() {
            let cur = &self.0[k] + &(&carry * &r);
            if k == 0 {
                if !cur.is_zero() {
                    return None;
                }
            } else {
                quot[k - 1] = cur.clone();
                carry = cur;
            }
        }
        Some(Poly::new(quot))
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    /// Requires the leading coefficient of `d` to be a unit.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.0[dd].inv().expect("leading coefficient must be a unit");
        let mut rem = self.0.clone();
        let mut quot = vec![Scalar::zero(); self.0.len().saturating_sub(dd)];
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
        (Poly::new(quot), Poly::new(rem))
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a, 'b> $trait<&'b Poly> for &'a Poly {
            type Output = Poly;
            fn $method(self, other: &'b Poly) -> Poly {
                let n = self.0.len().max(other.0.len());
                let mut out = Vec::with_capacity(n);
                for k in 0..n {
                    let a = self.0.get(k).cloned().unwrap_or_else(Scalar::zero);
                    let b = other.0.get(k).cloned().unwrap_or_else(Scalar::zero);
                    out.push(&a $op &b);
                }
                Poly::new(out)
            }
        }
    };
}

poly_binop!(Add, add, +);
poly_binop!(Sub, sub, -);

impl<'a, 'b> Mul<&'b Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, other: &'b Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.0.len() + other.0.len() - 1];
        for (j, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in other.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[j + k] = &out[j + k] + &(a * b);
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.0.iter().map(|c| -c).collect())
    }
}

fn fmt_poly(p: &Poly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (k, c) in p.0.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        match k {
            0 => write!(f, "({c})")?,
            1 => write!(f, "({c})*x")?,
            _ => write!(f, "({c})*x^{k}")?,
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(self, f)
    }
}

/// Rational function `num / ((xi_n - i)^p (xi_n + i)^q)`, normalized.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFn {
    num: Poly,
    p: u32,
    q: u32,
}

impl RatFn {
    pub fn new(num: Poly, p: u32, q: u32) -> Self {
        let mut f = RatFn { num, p, q };
        f.normalize();
        f
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.p = 0;
            self.q = 0;
            return;
        }
        let i = GaussRat::i();
        let mi = -&GaussRat::i();
        while self.p > 0 {
            match self.num.div_linear(&i) {
                Some(qt) => {
                    self.num = qt;
                    self.p -= 1;
                }
                None => break,
            }
        }
        while self.q > 0 {
            match self.num.div_linear(&mi) {
                Some(qt) => {
                    self.num = qt;
                    self.q -= 1;
                }
                None => break,
            }
        }
    }

    pub fn zero() -> Self {
        RatFn::new(Poly::zero(), 0, 0)
    }

    pub fn one() -> Self {
        RatFn::new(Poly::one(), 0, 0)
    }

    pub fn from_poly(num: Poly) -> Self {
        RatFn::new(num, 0, 0)
    }

    pub fn constant(s: Scalar) -> Self {
        RatFn::from_poly(Poly::constant(s))
    }

    pub fn from_gauss(g: GaussRat) -> Self {
        RatFn::constant(Scalar::from_gauss(g))
    }

    pub fn xi() -> Self {
        RatFn::from_poly(Poly::xi())
    }

    /// `1 / (1 + xi_n^2)^k`.
    pub fn inv_len_sq_pow(k: u32) -> Self {
        RatFn::new(Poly::one(), k, k)
    }

    /// Builds `num / den` from an explicit denominator polynomial, factoring
    /// the denominator inside the admissible pole class. A denominator with a
    /// root outside `{i, -i}` is rejected.
    pub fn from_num_den(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::UnsupportedPole("zero denominator".into()));
        }
        let i = GaussRat::i();
        let mi = -&GaussRat::i();
        let mut d = den;
        let mut p = 0;
        let mut q = 0;
        loop {
            if let Some(qt) = d.div_linear(&i) {
                d = qt;
                p += 1;
            } else if let Some(qt) = d.div_linear(&mi) {
                d = qt;
                q += 1;
            } else {
                break;
            }
        }
        match d.degree() {
            Some(0) => {
                let unit = d.coeffs()[0]
                    .inv()
                    .ok_or_else(|| Error::UnsupportedPole(format!("non-unit factor {d}")))?;
                Ok(RatFn::new(num.scale(&unit), p, q))
            }
            _ => Err(Error::UnsupportedPole(d.to_string())),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    /// Pole orders `(p, q)` at `i` and `-i`.
    pub fn poles(&self) -> (u32, u32) {
        (self.p, self.q)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        RatFn::new(self.num.scale(s), self.p, self.q)
    }

    /// Reciprocal; defined only when the numerator is a unit times a product
    /// of the admissible linear factors.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        let i = GaussRat::i();
        let mi = -&GaussRat::i();
        let mut n = self.num.clone();
        let mut p = 0u32;
        let mut q = 0u32;
        loop {
            if let Some(qt) = n.div_linear(&i) {
                n = qt;
                p += 1;
            } else if let Some(qt) = n.div_linear(&mi) {
                n = qt;
                q += 1;
            } else {
                break;
            }
        }
        if n.degree() != Some(0) {
            return Err(Error::NotInvertible);
        }
        let unit = n.coeffs()[0].inv().ok_or(Error::NotInvertible)?;
        let mut num = Poly::constant(unit);
        for _ in 0..self.p {
            num = num.mul_linear(&i);
        }
        for _ in 0..self.q {
            num = num.mul_linear(&mi);
        }
        Ok(RatFn::new(num, p, q))
    }

    /// Derivative in `xi_n`.
    pub fn diff(&self) -> Self {
        if self.p == 0 && self.q == 0 {
            return RatFn::from_poly(self.num.derivative());
        }
        let i = GaussRat::i();
        let mi = -&GaussRat::i();
        // d/dx [N / ((x-i)^p (x+i)^q)]
        //   = [N' (x-i)(x+i) - N (p (x+i) + q (x-i))] / ((x-i)^{p+1} (x+i)^{q+1})
        let lead = self.num.derivative().mul_linear(&i).mul_linear(&mi);
        let pq = self.p as i64 - self.q as i64;
        let shift = Poly::new(vec![
            Scalar::from_gauss(&GaussRat::from_int(pq) * &GaussRat::i()),
            Scalar::from_int((self.p + self.q) as i64),
        ]);
        let num = &lead - &(&self.num * &shift);
        RatFn::new(num, self.p + 1, self.q + 1)
    }

    /// k-th derivative in `xi_n`.
    pub fn diff_n(&self, k: u32) -> Self {
        let mut f = self.clone();
        for _ in 0..k {
            f = f.diff();
        }
        f
    }

    /// Evaluates at a point away from the poles.
    pub fn eval(&self, x: &GaussRat) -> Result<Scalar> {
        let i = GaussRat::i();
        let mi = -&GaussRat::i();
        let mut den = GaussRat::one();
        let di = x - &i;
        let dmi = x - &mi;
        if (self.p > 0 && di.is_zero()) || (self.q > 0 && dmi.is_zero()) {
            return Err(Error::InvalidParameter(format!("evaluation at pole {x}")));
        }
        for _ in 0..self.p {
            den = &den * &di;
        }
        for _ in 0..self.q {
            den = &den * &dmi;
        }
        Ok(self.num.eval(x).scale(&den.inv().expect("nonzero denominator")))
    }

    pub fn pf_decompose(&self) -> PartialFractions {
        pf_decompose(self)
    }
}

macro_rules! ratfn_addsub {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a, 'b> $trait<&'b RatFn> for &'a RatFn {
            type Output = RatFn;
            fn $method(self, other: &'b RatFn) -> RatFn {
                let p = self.p.max(other.p);
                let q = self.q.max(other.q);
                let i = GaussRat::i();
                let mi = -&GaussRat::i();
                let lift = |f: &RatFn| {
                    let mut n = f.num.clone();
                    for _ in 0..(p - f.p) {
                        n = n.mul_linear(&i);
                    }
                    for _ in 0..(q - f.q) {
                        n = n.mul_linear(&mi);
                    }
                    n
                };
                RatFn::new(&lift(self) $op &lift(other), p, q)
            }
        }
    };
}

ratfn_addsub!(Add, add, +);
ratfn_addsub!(Sub, sub, -);

impl<'a, 'b> Mul<&'b RatFn> for &'a RatFn {
    type Output = RatFn;
    fn mul(self, other: &'b RatFn) -> RatFn {
        RatFn::new(&self.num * &other.num, self.p + other.p, self.q + other.q)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn::new(-&self.num, self.p, self.q)
    }
}

impl Ring for RatFn {
    fn zero() -> Self {
        RatFn::zero()
    }
    fn one() -> Self {
        RatFn::one()
    }
    fn is_zero(&self) -> bool {
        RatFn::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p == 0 && self.q == 0 {
            return fmt_poly(&self.num, f);
        }
        write!(f, "[")?;
        fmt_poly(&self.num, f)?;
        write!(f, "]")?;
        write!(f, " / [")?;
        if self.p > 0 {
            write!(f, "(x-i)^{}", self.p)?;
        }
        if self.q > 0 {
            if self.p > 0 {
                write!(f, " ")?;
            }
            write!(f, "(x+i)^{}", self.q)?;
        }
        write!(f, "]")
    }
}

/// Which of the two admissible poles a partial-fraction term sits at.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Pole {
    PlusI,
    MinusI,
}

/// Exact partial-fraction decomposition of a [`RatFn`]:
/// a polynomial part plus terms `coeff / (xi_n -+ i)^order`.
#[derive(Clone, PartialEq, Debug)]
pub struct PartialFractions {
    pub poly: Poly,
    /// Coefficients at the pole `i`; index `k` holds the order-`k+1` term.
    pub at_plus: Vec<Scalar>,
    /// Coefficients at the pole `-i`; same layout.
    pub at_minus: Vec<Scalar>,
}

impl PartialFractions {
    /// Flat view as `(pole, order, coefficient)` triples, orders >= 1.
    pub fn terms(&self) -> impl Iterator<Item = (Pole, u32, &Scalar)> {
        let plus = self
            .at_plus
            .iter()
            .enumerate()
            .map(|(k, c)| (Pole::PlusI, k as u32 + 1, c));
        let minus = self
            .at_minus
            .iter()
            .enumerate()
            .map(|(k, c)| (Pole::MinusI, k as u32 + 1, c));
        plus.chain(minus)
    }

    /// Reassembles the rational function; exact inverse of decomposition.
    pub fn recompose(&self) -> RatFn {
        let mut acc = RatFn::from_poly(self.poly.clone());
        for (pole, order, coeff) in self.terms() {
            let (p, q) = match pole {
                Pole::PlusI => (order, 0),
                Pole::MinusI => (0, order),
            };
            acc = &acc + &RatFn::new(Poly::constant(coeff.clone()), p, q);
        }
        acc
    }

    /// Residue at the pole `i` (the order-one coefficient).
    pub fn residue_at_plus(&self) -> Scalar {
        self.at_plus.first().cloned().unwrap_or_else(Scalar::zero)
    }
}

/// Decomposes into polynomial part plus pole terms at `i` and `-i`.
///
/// The pole coefficients are Laurent coefficients: with `g = f * (x - i)^p`
/// holomorphic at `i`, the order-`p-j` coefficient is `g^(j)(i) / j!`.
pub fn pf_decompose(f: &RatFn) -> PartialFractions {
    let i = GaussRat::i();
    let mi = -&GaussRat::i();
    let mut den = Poly::one();
    for _ in 0..f.p {
        den = den.mul_linear(&i);
    }
    for _ in 0..f.q {
        den = den.mul_linear(&mi);
    }
    let (poly, rem) = f.num.div_rem(&den);

    let laurent = |at_plus: bool| -> Vec<Scalar> {
        let (own, other_ord) = if at_plus { (f.p, f.q) } else { (f.q, f.p) };
        if own == 0 {
            return Vec::new();
        }
        // g = rem / (x -+ i)^other, poles only at the other point.
        let g = if at_plus {
            RatFn::new(rem.clone(), 0, other_ord)
        } else {
            RatFn::new(rem.clone(), other_ord, 0)
        };
        let point = if at_plus { i.clone() } else { mi.clone() };
        let mut out = vec![Scalar::zero(); own as usize];
        let mut gk = g;
        let mut fact = GaussRat::one();
        for j in 0..own {
            if j > 0 {
                gk = gk.diff();
                fact = &fact * &GaussRat::from_int(j as i64);
            }
            let c = gk
                .eval(&point)
                .expect("pole orders were fully split")
                .scale(&fact.inv().expect("factorial is nonzero"));
            out[(own - 1 - j) as usize] = c;
        }
        out
    };

    let mut pf = PartialFractions {
        poly,
        at_plus: laurent(true),
        at_minus: laurent(false),
    };
    while pf.at_plus.last().is_some_and(|c| c.is_zero()) {
        pf.at_plus.pop();
    }
    while pf.at_minus.last().is_some_and(|c| c.is_zero()) {
        pf.at_minus.pop();
    }
    pf
}

/// Hardy-space projection `pi^+`: keeps exactly the pole terms at `+i`.
/// The polynomial part and the `-i` pole terms belong to the complementary
/// space and are discarded.
pub fn pi_plus(f: &RatFn) -> RatFn {
    let pf = pf_decompose(f);
    let mut acc = RatFn::zero();
    for (k, c) in pf.at_plus.iter().enumerate() {
        acc = &acc + &RatFn::new(Poly::constant(c.clone()), k as u32 + 1, 0);
    }
    acc
}

/// Normalized upper-contour integral `pi'`: `i` times the residue at `+i`.
/// Annihilates the complementary space.
pub fn pi_prime(f: &RatFn) -> Scalar {
    pf_decompose(f)
        .residue_at_plus()
        .scale(&GaussRat::i())
}

/// Integrates over the real line by residues, closing in the upper half
/// plane. Returns the exact coefficient of `pi`: the full integral equals
/// `2 i * Res_{+i}(f) * pi`.
pub fn integrate_line(f: &RatFn) -> Result<Scalar> {
    let den_deg = (f.p + f.q) as usize;
    let num_deg = match f.num.degree() {
        None => return Ok(Scalar::zero()),
        Some(d) => d,
    };
    if den_deg < 2 || num_deg > den_deg - 2 {
        return Err(Error::NotIntegrable { num_deg, den_deg });
    }
    let res = pf_decompose(f).residue_at_plus();
    Ok(res.scale(&(GaussRat::i() + GaussRat::i())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn g(p: i64, q: i64) -> GaussRat {
        GaussRat::from_frac(p, q)
    }

    fn sc(p: i64, q: i64) -> Scalar {
        Scalar::from_gauss(g(p, q))
    }

    /// `xi_n / (1 + xi_n^2)`.
    fn xi_over_len_sq() -> RatFn {
        &RatFn::xi() * &RatFn::inv_len_sq_pow(1)
    }

    #[test]
    fn pf_simple_poles() {
        // xi/(1+xi^2) = (1/2)/(xi-i) + (1/2)/(xi+i); solved independently by
        // clearing denominators: A(xi+i) + B(xi-i) = xi gives A = B = 1/2.
        let pf = pf_decompose(&xi_over_len_sq());
        assert!(pf.poly.is_zero());
        assert_eq!(pf.at_plus, vec![sc(1, 2)]);
        assert_eq!(pf.at_minus, vec![sc(1, 2)]);
        assert_eq!(pf.recompose(), xi_over_len_sq());
    }

    #[test]
    fn pf_single_term_is_fixed_point() {
        let f = RatFn::new(Poly::one(), 1, 0); // 1/(xi - i)
        let pf = pf_decompose(&f);
        assert!(pf.poly.is_zero());
        assert_eq!(pf.at_plus, vec![Scalar::one()]);
        assert!(pf.at_minus.is_empty());
        assert_eq!(pf.recompose(), f);
    }

    #[test]
    fn pf_with_polynomial_part() {
        // xi^2/(1+xi^2) = 1 - 1/(1+xi^2); the remainder decomposes as
        // (i/2)/(xi-i) + (-i/2)/(xi+i). Long division is the oracle.
        let f = &(&RatFn::xi() * &RatFn::xi()) * &RatFn::inv_len_sq_pow(1);
        let pf = pf_decompose(&f);
        assert_eq!(pf.poly, Poly::one());
        assert_eq!(pf.at_plus, vec![Scalar::from_gauss(GaussRat::from_parts(0, 1, 2))]);
        assert_eq!(pf.at_minus, vec![Scalar::from_gauss(GaussRat::from_parts(0, -1, 2))]);
        assert_eq!(pf.recompose(), f);
    }

    #[test]
    fn pf_rejects_foreign_pole() {
        // denominator xi - 2 lies outside the admissible class
        let den = Poly::new(vec![sc(-2, 1), Scalar::one()]);
        let err = RatFn::from_num_den(Poly::one(), den).unwrap_err();
        assert!(matches!(err, Error::UnsupportedPole(_)));
    }

    #[test]
    fn from_num_den_accepts_len_sq_powers() {
        // (1+xi^2)^2 expanded
        let den = Poly::new(vec![sc(1, 1), Scalar::zero(), sc(2, 1), Scalar::zero(), sc(1, 1)]);
        let f = RatFn::from_num_den(Poly::one(), den).unwrap();
        assert_eq!(f, RatFn::inv_len_sq_pow(2));
    }

    #[test]
    fn pi_plus_double_pole() {
        // pi^+[1/(1+xi^2)^2] = -(i xi + 2) / (4 (xi - i)^2)
        let f = RatFn::inv_len_sq_pow(2);
        let expect = RatFn::new(
            Poly::new(vec![sc(-1, 2), Scalar::from_gauss(GaussRat::from_parts(0, -1, 4))]),
            2,
            0,
        );
        assert_eq!(pi_plus(&f), expect);
    }

    #[test]
    fn pi_plus_kills_lower_space() {
        let f = RatFn::new(Poly::one(), 0, 1); // 1/(xi+i)
        assert!(pi_plus(&f).is_zero());
        let p = RatFn::from_poly(Poly::new(vec![sc(3, 1), sc(1, 1)]));
        assert!(pi_plus(&p).is_zero());
    }

    #[test]
    fn pi_plus_first_order_pole() {
        // pi^+[xi/(1+xi^2)] = (1/2)/(xi-i), from the partial-fraction oracle
        let expect = RatFn::new(Poly::constant(sc(1, 2)), 1, 0);
        assert_eq!(pi_plus(&xi_over_len_sq()), expect);
    }

    #[test]
    fn pi_plus_is_projection() {
        for f in [
            RatFn::inv_len_sq_pow(2),
            xi_over_len_sq(),
            RatFn::new(Poly::new(vec![sc(1, 1), sc(2, 1), sc(1, 3)]), 2, 3),
        ] {
            let once = pi_plus(&f);
            assert_eq!(pi_plus(&once), once);
            let rest = &f - &once;
            assert!(pi_plus(&rest).is_zero());
        }
    }

    #[test]
    fn pi_prime_values() {
        // residue of 1/(1+xi^2) at i is 1/(2i), so pi' = i * 1/(2i) = 1/2;
        // cross-checked by the arctangent integral (1/2pi) * pi = 1/2.
        assert_eq!(pi_prime(&RatFn::inv_len_sq_pow(1)), sc(1, 2));
        assert_eq!(pi_prime(&RatFn::new(Poly::one(), 0, 1)), Scalar::zero());
        assert_eq!(pi_prime(&RatFn::new(Poly::one(), 2, 0)), Scalar::zero());
    }

    #[test]
    fn integrate_arctan() {
        // integral of 1/(1+xi^2) over the line is pi
        assert_eq!(integrate_line(&RatFn::inv_len_sq_pow(1)).unwrap(), Scalar::one());
    }

    #[test]
    fn integrate_quartic_residues() {
        // 8(-i xi - i xi^3) / ((xi-i)^2 (1+xi^2)^3) integrates to pi
        let num = Poly::new(vec![
            Scalar::zero(),
            Scalar::from_gauss(GaussRat::from_parts(0, -8, 1)),
            Scalar::zero(),
            Scalar::from_gauss(GaussRat::from_parts(0, -8, 1)),
        ]);
        let f = RatFn::new(num, 2 + 3, 3);
        assert_eq!(integrate_line(&f).unwrap(), Scalar::one());

        // 8(-1 - 2i xi + 3 xi^2 + 2i xi^3) / ((xi-i)^2 (1+xi^2)^3) -> 2 pi
        let num = Poly::new(vec![
            sc(-8, 1),
            Scalar::from_gauss(GaussRat::from_parts(0, -16, 1)),
            sc(24, 1),
            Scalar::from_gauss(GaussRat::from_parts(0, 16, 1)),
        ]);
        let f = RatFn::new(num, 2 + 3, 3);
        assert_eq!(integrate_line(&f).unwrap(), sc(2, 1));
    }

    #[test]
    fn integrate_rejects_slow_decay() {
        let err = integrate_line(&RatFn::new(Poly::one(), 1, 0)).unwrap_err();
        assert!(matches!(err, Error::NotIntegrable { .. }));
        let err = integrate_line(&xi_over_len_sq()).unwrap_err();
        assert!(matches!(err, Error::NotIntegrable { .. }));
    }

    #[test]
    fn diff_basics() {
        // d/dxi [1/(1+xi^2)] = -2 xi / (1+xi^2)^2
        let d = RatFn::inv_len_sq_pow(1).diff();
        let expect = &RatFn::xi().scale(&sc(-2, 1)) * &RatFn::inv_len_sq_pow(2);
        assert_eq!(d, expect);

        // d/dxi [1/(xi-i)] = -1/(xi-i)^2
        let d = RatFn::new(Poly::one(), 1, 0).diff();
        assert_eq!(d, RatFn::new(Poly::constant(sc(-1, 1)), 2, 0));
    }

    #[test]
    fn second_derivative_matches_closed_pattern() {
        // d^2/dxi^2 [i xi/(ab (1+xi^2))] = i (2 xi^3 - 6 xi)/(ab (1+xi^2)^3),
        // here at ab = 1.
        let f = xi_over_len_sq().scale(&Scalar::i());
        let d2 = f.diff_n(2);
        let num = Poly::new(vec![
            Scalar::zero(),
            Scalar::from_gauss(GaussRat::from_parts(0, -6, 1)),
            Scalar::zero(),
            Scalar::from_gauss(GaussRat::from_parts(0, 2, 1)),
        ]);
        assert_eq!(d2, RatFn::new(num, 3, 3));
    }

    #[test]
    fn pi_prime_consistent_with_line_integral() {
        for f in [
            RatFn::inv_len_sq_pow(1),
            RatFn::inv_len_sq_pow(2),
            RatFn::new(Poly::new(vec![sc(1, 1), sc(1, 2)]), 2, 2),
        ] {
            let ipi = integrate_line(&f).unwrap();
            let half = ipi.scale(&g(1, 2));
            assert_eq!(pi_prime(&f), half);
        }
    }

    #[test]
    fn recip_of_len_sq() {
        let f = RatFn::inv_len_sq_pow(2).scale(&sc(3, 1));
        let r = f.recip().unwrap();
        assert_eq!(&f * &r, RatFn::one());
        assert!(xi_over_len_sq().recip().is_err()); // numerator root at 0
    }
}
