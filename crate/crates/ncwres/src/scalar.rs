//! Gaussian rationals and the scalar ring of the engine: polynomials in the
//! formal symbol `h` with Gaussian-rational coefficients.
//!
//! `h` stands for the first normal derivative of the collar-metric factor at
//! the boundary point. Every quantity the engine integrates is of degree at
//! most one in `h`; the ring allows degree two as headroom and treats anything
//! beyond as a modeling bug (hard panic).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, One, Signed, Zero};

use crate::matrix::Ring;
use crate::{Error, Rat, Result};

/// A Gaussian rational `re + im*i` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat::new(Rat::zero(), Rat::zero())
    }

    pub fn one() -> Self {
        GaussRat::new(Rat::one(), Rat::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRat::new(Rat::zero(), Rat::one())
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat::new(Rat::from_integer(BigInt::from(n)), Rat::zero())
    }

    pub fn from_rat(r: Rat) -> Self {
        GaussRat::new(r, Rat::zero())
    }

    /// `p/q` as a real Gaussian rational.
    pub fn from_frac(p: i64, q: i64) -> Self {
        GaussRat::from_rat(Rat::new(BigInt::from(p), BigInt::from(q)))
    }

    /// `(p + q*i)/r`.
    pub fn from_parts(p: i64, q: i64, r: i64) -> Self {
        GaussRat::new(
            Rat::new(BigInt::from(p), BigInt::from(r)),
            Rat::new(BigInt::from(q), BigInt::from(r)),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    /// Squared modulus `re^2 + im^2`.
    pub fn norm_sq(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(GaussRat::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn div(&self, other: &Self) -> Self {
        self * &other.inv().expect("division by zero Gaussian rational")
    }

    pub fn scale(&self, r: &Rat) -> Self {
        GaussRat::new(&self.re * r, &self.im * r)
    }

    /// Parses `p/q`, `r/s*i`, `i`, `-i`, or `p/q+r/s*i` / `p/q-r/s*i`.
    pub fn parse(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty Gaussian literal".into()));
        }
        // Split into re and im at a '+'/'-' that is not the leading sign.
        let bytes = s.as_bytes();
        let mut split = None;
        for (k, &c) in bytes.iter().enumerate().skip(1) {
            if (c == b'+' || c == b'-') && bytes[k - 1] != b'/' && bytes[k - 1] != b'*' {
                split = Some(k);
            }
        }
        let (re_str, im_str) = match split {
            Some(k) if s.ends_with('i') => (&s[..k], &s[k..]),
            _ if s.ends_with('i') => ("", s.as_str()),
            _ => (s.as_str(), ""),
        };
        let re = if re_str.is_empty() {
            Rat::zero()
        } else {
            crate::parse_rat(re_str)?
        };
        let im = if im_str.is_empty() {
            Rat::zero()
        } else {
            let body = &im_str[..im_str.len() - 1];
            let body = body.strip_suffix('*').unwrap_or(body);
            match body {
                "" | "+" => Rat::one(),
                "-" => -Rat::one(),
                _ => crate::parse_rat(body)?,
            }
        };
        Ok(GaussRat::new(re, im))
    }
}

fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rat(&self.re));
        }
        let im_abs = self.im.abs();
        let im_body = if im_abs.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", fmt_rat(&im_abs))
        };
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-{im_body}")
            } else {
                write!(f, "{im_body}")
            }
        } else if self.im.is_negative() {
            write!(f, "{}-{im_body}", fmt_rat(&self.re))
        } else {
            write!(f, "{}+{im_body}", fmt_rat(&self.re))
        }
    }
}

macro_rules! gauss_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl<'a, 'b> $trait<&'b GaussRat> for &'a GaussRat {
            type Output = GaussRat;
            fn $method(self, other: &'b GaussRat) -> GaussRat {
                let $a = self;
                let $b = other;
                $body
            }
        }
        impl $trait<GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $method(self, other: GaussRat) -> GaussRat {
                $trait::$method(&self, &other)
            }
        }
    };
}

gauss_binop!(Add, add, |a, b| GaussRat::new(&a.re + &b.re, &a.im + &b.im));
gauss_binop!(Sub, sub, |a, b| GaussRat::new(&a.re - &b.re, &a.im - &b.im));
gauss_binop!(Mul, mul, |a, b| GaussRat::new(
    &a.re * &b.re - &a.im * &b.im,
    &a.re * &b.im + &a.im * &b.re
));

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        -&self
    }
}

impl Ring for GaussRat {
    fn zero() -> Self {
        GaussRat::zero()
    }
    fn one() -> Self {
        GaussRat::one()
    }
    fn is_zero(&self) -> bool {
        GaussRat::is_zero(self)
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

/// Element of the scalar ring: a polynomial `c0 + c1*h + c2*h^2` in the
/// formal symbol `h`, with Gaussian-rational coefficients.
///
/// Degree two is headroom only; a product whose true degree would exceed two
/// panics, because no quantity in the computed range is ever quadratic in `h`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar {
    c: [GaussRat; 3],
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            c: [GaussRat::zero(), GaussRat::zero(), GaussRat::zero()],
        }
    }

    pub fn one() -> Self {
        Scalar::from_gauss(GaussRat::one())
    }

    pub fn from_gauss(g: GaussRat) -> Self {
        Scalar {
            c: [g, GaussRat::zero(), GaussRat::zero()],
        }
    }

    pub fn from_rat(r: Rat) -> Self {
        Scalar::from_gauss(GaussRat::from_rat(r))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_gauss(GaussRat::from_int(n))
    }

    pub fn i() -> Self {
        Scalar::from_gauss(GaussRat::i())
    }

    /// The formal symbol `h`.
    pub fn h() -> Self {
        Scalar {
            c: [GaussRat::zero(), GaussRat::one(), GaussRat::zero()],
        }
    }

    /// `g*h`.
    pub fn h_times(g: GaussRat) -> Self {
        Scalar {
            c: [GaussRat::zero(), g, GaussRat::zero()],
        }
    }

    /// Coefficient of `h^k` (k <= 2).
    pub fn coeff(&self, k: usize) -> &GaussRat {
        &self.c[k]
    }

    pub fn degree(&self) -> usize {
        if !self.c[2].is_zero() {
            2
        } else if !self.c[1].is_zero() {
            1
        } else {
            0
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|g| g.is_zero())
    }

    /// True when the element is a constant (degree zero in `h`).
    pub fn is_const(&self) -> bool {
        self.c[1].is_zero() && self.c[2].is_zero()
    }

    /// Extracts the constant part, failing on any `h` dependence.
    pub fn as_gauss(&self) -> Option<&GaussRat> {
        if self.is_const() {
            Some(&self.c[0])
        } else {
            None
        }
    }

    /// Units of the ring are the nonzero constants.
    pub fn inv(&self) -> Option<Self> {
        self.as_gauss().and_then(|g| g.inv()).map(Scalar::from_gauss)
    }

    pub fn scale(&self, g: &GaussRat) -> Self {
        Scalar {
            c: [&self.c[0] * g, &self.c[1] * g, &self.c[2] * g],
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (k, g) in self.c.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let gs = g.to_string();
            let needs_parens = gs.contains('+') || (k > 0 && gs[1..].contains('-'));
            let gs = if needs_parens { format!("({gs})") } else { gs };
            parts.push(match k {
                0 => gs,
                1 if gs == "1" => "h".into(),
                1 if gs == "-1" => "-h".into(),
                1 => format!("{gs}*h"),
                _ if gs == "1" => "h^2".into(),
                _ => format!("{gs}*h^2"),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl<'a, 'b> $trait<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, other: &'b Scalar) -> Scalar {
                let $a = self;
                let $b = other;
                $body
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, other: Scalar) -> Scalar {
                $trait::$method(&self, &other)
            }
        }
    };
}

scalar_binop!(Add, add, |a, b| Scalar {
    c: [
        &a.c[0] + &b.c[0],
        &a.c[1] + &b.c[1],
        &a.c[2] + &b.c[2],
    ]
});
scalar_binop!(Sub, sub, |a, b| Scalar {
    c: [
        &a.c[0] - &b.c[0],
        &a.c[1] - &b.c[1],
        &a.c[2] - &b.c[2],
    ]
});
scalar_binop!(Mul, mul, |a, b| {
    let overflow3 = &a.c[1] * &b.c[2] + &a.c[2] * &b.c[1];
    let overflow4 = &a.c[2] * &b.c[2];
    assert!(
        overflow3.is_zero() && overflow4.is_zero(),
        "h-degree overflow: product exceeds degree 2 (modeling bug)"
    );
    Scalar {
        c: [
            &a.c[0] * &b.c[0],
            &a.c[0] * &b.c[1] + &a.c[1] * &b.c[0],
            &a.c[0] * &b.c[2] + &a.c[1] * &b.c[1] + &a.c[2] * &b.c[0],
        ],
    }
});

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            c: [-&self.c[0], -&self.c[1], -&self.c[2]],
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
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

#[cfg(test)]
mod tests {
    use super::*;

    fn g(p: i64, q: i64) -> GaussRat {
        GaussRat::from_frac(p, q)
    }

    #[test]
    fn gaussian_field_ops() {
        let x = GaussRat::from_parts(1, 2, 3); // (1 + 2i)/3
        let y = GaussRat::from_parts(-2, 5, 7);
        let prod = &x * &y;
        let back = prod.div(&y);
        assert_eq!(back, x);
        assert_eq!(&x * &x.inv().unwrap(), GaussRat::one());
        assert_eq!(&GaussRat::i() * &GaussRat::i(), GaussRat::from_int(-1));
    }

    #[test]
    fn gaussian_parse_display_round_trip() {
        for s in [
            "1/2",
            "-3",
            "i",
            "-i",
            "3/4*i",
            "1/2+3/4*i",
            "1/2-3/4*i",
            "-2+i",
            "0",
        ] {
            let v = GaussRat::parse(s).unwrap();
            let shown = v.to_string();
            assert_eq!(GaussRat::parse(&shown).unwrap(), v, "round trip {s}");
        }
        assert_eq!(GaussRat::parse("1/2+3/4*i").unwrap(), GaussRat::from_parts(2, 3, 4));
        assert!(GaussRat::parse("x").is_err());
    }

    #[test]
    fn scalar_h_arithmetic() {
        let s = Scalar::from_int(2) + Scalar::h_times(g(3, 1));
        let t = Scalar::from_int(-1) + Scalar::h_times(g(1, 2));
        let p = &s * &t;
        assert_eq!(p.coeff(0), &g(-2, 1));
        assert_eq!(p.coeff(1), &(g(1, 1) - g(3, 1))); // 2*(1/2) + 3*(-1)
        assert_eq!(p.coeff(2), &g(3, 2));
    }

    #[test]
    #[should_panic(expected = "h-degree overflow")]
    fn scalar_h_degree_overflow_panics() {
        let h2 = &Scalar::h() * &Scalar::h();
        let _ = &h2 * &Scalar::h();
    }

    #[test]
    fn scalar_units() {
        assert_eq!(Scalar::from_int(4).inv().unwrap(), Scalar::from_gauss(g(1, 4)));
        assert!(Scalar::h().inv().is_none());
        assert!(Scalar::zero().inv().is_none());
    }
}
