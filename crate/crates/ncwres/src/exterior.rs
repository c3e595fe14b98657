//! The exterior algebra of a Euclidean space of rank 3 or 4, with the
//! exterior multiplication `eps`, the interior multiplication `iota`, and the
//! Clifford-type actions built from them, all as exact matrices on the blade
//! basis.
//!
//! The basis of the full exterior algebra is ordered graded-lexicographically:
//! blades sort first by grade, then by their increasing index tuples. The
//! order is fixed so matrix representations are bit-identical across runs.
//!
//! Actions provided, for a covector `v`:
//!
//! * `eps(v)`  - exterior multiplication `w -> v /\ w`;
//! * `iota(v)` - interior multiplication (contraction against the Euclidean
//!   pairing at the boundary point);
//! * `c(v) = eps(v) - iota(v)` and `chat(v) = eps(v) + iota(v)`, the two
//!   Clifford actions, with `c(v)^2 = -|v|^2` and `chat(v)^2 = +|v|^2`;
//! * `ctilde(v) = a eps(v) - b iota(v)` and `cbar(v) = b eps(v) - a iota(v)`,
//!   their nonminimal twists, with `ctilde(v)^2 = cbar(v)^2 = -ab |v|^2`.
//!
//! Tangential unit covectors are instantiated as exact rational points of the
//! unit sphere (stereographic parametrization), never carried symbolically;
//! every downstream trace is checked to be independent of the chosen
//! direction before a sphere-volume factor is attached.

use num::{One, Zero};

use crate::matrix::Matrix;
use crate::scalar::{GaussRat, Scalar};
use crate::{Error, Rat, Result};

/// Endomorphism of the exterior algebra: a `2^n x 2^n` matrix over the
/// scalar ring.
pub type Endo = Matrix<Scalar>;

/// A basis blade, stored as a bitmask over the index set `{1, ..., n}`
/// (bit `k-1` set means the factor `e_k` is present).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Blade(pub u16);

impl Blade {
    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    /// Strictly increasing index tuple of the blade.
    pub fn indices(self) -> Vec<u8> {
        (0..16)
            .filter(|k| self.0 & (1 << k) != 0)
            .map(|k| k as u8 + 1)
            .collect()
    }

    pub fn contains(self, j: u8) -> bool {
        self.0 & (1 << (j - 1)) != 0
    }

    /// Number of factors with index strictly below `j`.
    fn count_below(self, j: u8) -> u32 {
        (self.0 & ((1 << (j - 1)) - 1)).count_ones()
    }
}

/// A covector with exact rational components, tagged by its role.
#[derive(Clone, PartialEq, Debug)]
pub struct Covector {
    comps: Vec<Rat>,
}

impl Covector {
    pub fn new(comps: Vec<Rat>) -> Self {
        Covector { comps }
    }

    /// Tangential covector `(c_1, ..., c_{n-1}, 0)`.
    pub fn tangential(front: &[Rat], n: usize) -> Self {
        assert_eq!(front.len(), n - 1, "tangential covector needs n-1 components");
        let mut comps = front.to_vec();
        comps.push(Rat::zero());
        Covector { comps }
    }

    /// The normal covector `dx_n`.
    pub fn normal(n: usize) -> Self {
        let mut comps = vec![Rat::zero(); n];
        comps[n - 1] = Rat::one();
        Covector { comps }
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[Rat] {
        &self.comps
    }

    pub fn norm_sq(&self) -> Rat {
        self.comps.iter().map(|c| c * c).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.norm_sq().is_one()
    }

    pub fn dot(&self, other: &Covector) -> Rat {
        self.comps
            .iter()
            .zip(&other.comps)
            .map(|(x, y)| x * y)
            .sum()
    }
}

/// Rational unit tangential covectors in dimension `n`, produced by the
/// stereographic parametrization of the unit sphere (so exactly unit).
pub fn unit_tangential_samples(n: usize, count: usize) -> Vec<Covector> {
    let frac = |p: i64, q: i64| Rat::new(p.into(), q.into());
    match n {
        3 => {
            // t -> ((1 - t^2)/(1 + t^2), 2t/(1 + t^2))
            let params = [
                (0, 1),
                (1, 1),
                (1, 2),
                (2, 1),
                (1, 3),
                (3, 1),
                (2, 3),
                (3, 2),
                (1, 4),
                (4, 1),
                (3, 4),
                (4, 3),
                (1, 5),
                (5, 1),
                (2, 5),
                (5, 2),
            ];
            params
                .iter()
                .take(count)
                .map(|&(p, q)| {
                    let t = frac(p, q);
                    let d = Rat::one() + &t * &t;
                    let x = (Rat::one() - &t * &t) / &d;
                    let y = (frac(2, 1) * &t) / &d;
                    Covector::tangential(&[x, y], 3)
                })
                .collect()
        }
        4 => {
            // (u, v) -> (2u, 2v, 1 - u^2 - v^2) / (1 + u^2 + v^2)
            let params = [
                (0, 1, 0, 1),
                (1, 1, 0, 1),
                (0, 1, 1, 1),
                (1, 1, 1, 1),
                (1, 2, 0, 1),
                (0, 1, 1, 2),
                (1, 2, 1, 1),
                (1, 1, 1, 2),
                (1, 2, 1, 2),
                (2, 1, 0, 1),
                (0, 1, 2, 1),
                (2, 1, 1, 1),
                (1, 3, 0, 1),
                (1, 3, 1, 2),
                (2, 1, 2, 1),
                (1, 4, 1, 3),
            ];
            params
                .iter()
                .take(count)
                .map(|&(up, uq, vp, vq)| {
                    let u = frac(up, uq);
                    let v = frac(vp, vq);
                    let s = &u * &u + &v * &v;
                    let d = Rat::one() + &s;
                    let x = (frac(2, 1) * &u) / &d;
                    let y = (frac(2, 1) * &v) / &d;
                    let z = (Rat::one() - &s) / &d;
                    Covector::tangential(&[x, y, z], 4)
                })
                .collect()
        }
        _ => panic!("tangential samples are provided for n in {{3, 4}}"),
    }
}

/// Which of the two operators of the adjoint pair a symbol belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OperatorKind {
    /// `a d + b delta`.
    D,
    /// The adjoint `b d + a delta`.
    Dstar,
}

impl OperatorKind {
    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::D => "D",
            OperatorKind::Dstar => "Dstar",
        }
    }
}

/// The exterior algebra of rank `n`, with cached basis actions.
#[derive(Clone, Debug)]
pub struct Algebra {
    n: usize,
    dim: usize,
    blades: Vec<Blade>,
    pos: Vec<usize>,
    eps_basis: Vec<Endo>,
    iota_basis: Vec<Endo>,
}

impl Algebra {
    pub fn new(n: usize) -> Self {
        assert!((1..=6).contains(&n), "algebra rank out of range");
        let dim = 1 << n;
        let mut blades: Vec<Blade> = (0..dim as u16).map(Blade).collect();
        blades.sort_by_key(|b| (b.grade(), b.indices()));
        let mut pos = vec![0usize; dim];
        for (k, b) in blades.iter().enumerate() {
            pos[b.0 as usize] = k;
        }
        let mut alg = Algebra {
            n,
            dim,
            blades,
            pos,
            eps_basis: Vec::new(),
            iota_basis: Vec::new(),
        };
        for j in 1..=n as u8 {
            alg.eps_basis.push(alg.build_eps(j));
            alg.iota_basis.push(alg.build_iota(j));
        }
        alg
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Dimension `2^n` of the blade basis.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Blades in the canonical graded-lexicographic order.
    pub fn blades(&self) -> &[Blade] {
        &self.blades
    }

    fn build_eps(&self, j: u8) -> Endo {
        let mut m = Matrix::zero(self.dim);
        for (col, &b) in self.blades.iter().enumerate() {
            if b.contains(j) {
                continue;
            }
            let target = Blade(b.0 | (1 << (j - 1)));
            let row = self.pos[target.0 as usize];
            let sign = if b.count_below(j) % 2 == 0 { 1 } else { -1 };
            m.set(row, col, Scalar::from_int(sign));
        }
        m
    }

    fn build_iota(&self, j: u8) -> Endo {
        let mut m = Matrix::zero(self.dim);
        for (col, &b) in self.blades.iter().enumerate() {
            if !b.contains(j) {
                continue;
            }
            let target = Blade(b.0 & !(1 << (j - 1)));
            let row = self.pos[target.0 as usize];
            let sign = if b.count_below(j) % 2 == 0 { 1 } else { -1 };
            m.set(row, col, Scalar::from_int(sign));
        }
        m
    }

    /// Exterior multiplication by the `j`-th basis covector (1-based).
    pub fn eps_b(&self, j: usize) -> &Endo {
        &self.eps_basis[j - 1]
    }

    /// Interior multiplication by the `j`-th basis covector (1-based).
    pub fn iota_b(&self, j: usize) -> &Endo {
        &self.iota_basis[j - 1]
    }

    fn check_dim(&self, v: &Covector) -> Result<()> {
        if v.dim() != self.n {
            return Err(Error::DimensionMismatch {
                want: self.n,
                got: v.dim(),
            });
        }
        Ok(())
    }

    fn combine(&self, v: &Covector, basis: &[Endo]) -> Endo {
        let mut out = Matrix::zero(self.dim);
        for (j, c) in v.comps().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = out.add(&basis[j].scale(&Scalar::from_rat(c.clone())));
        }
        out
    }

    /// Exterior multiplication `eps(v)`; linear in `v`.
    pub fn eps(&self, v: &Covector) -> Result<Endo> {
        self.check_dim(v)?;
        Ok(self.combine(v, &self.eps_basis))
    }

    /// Interior multiplication `iota(v)`; linear in `v`.
    pub fn iota(&self, v: &Covector) -> Result<Endo> {
        self.check_dim(v)?;
        Ok(self.combine(v, &self.iota_basis))
    }

    /// Clifford action `c(v) = eps(v) - iota(v)`.
    pub fn c(&self, v: &Covector) -> Result<Endo> {
        Ok(self.eps(v)?.sub(&self.iota(v)?))
    }

    /// Clifford action `chat(v) = eps(v) + iota(v)`.
    pub fn chat(&self, v: &Covector) -> Result<Endo> {
        Ok(self.eps(v)?.add(&self.iota(v)?))
    }

    /// Nonminimal twist `ctilde(v) = a eps(v) - b iota(v)`.
    pub fn ctilde(&self, a: &Rat, b: &Rat, v: &Covector) -> Result<Endo> {
        check_ab(a, b)?;
        Ok(self
            .eps(v)?
            .scale(&Scalar::from_rat(a.clone()))
            .sub(&self.iota(v)?.scale(&Scalar::from_rat(b.clone()))))
    }

    /// Nonminimal twist `cbar(v) = b eps(v) - a iota(v)`.
    pub fn cbar(&self, a: &Rat, b: &Rat, v: &Covector) -> Result<Endo> {
        self.ctilde(b, a, v)
    }

    /// The twist belonging to an operator of the pair: `ctilde` for the
    /// operator itself, `cbar` for its adjoint.
    pub fn twist(&self, kind: OperatorKind, a: &Rat, b: &Rat, v: &Covector) -> Result<Endo> {
        match kind {
            OperatorKind::D => self.ctilde(a, b, v),
            OperatorKind::Dstar => self.cbar(a, b, v),
        }
    }

    /// All four Clifford-type actions `(c, chat, ctilde, cbar)` of `v`.
    pub fn clifford_actions(
        &self,
        a: &Rat,
        b: &Rat,
        v: &Covector,
    ) -> Result<(Endo, Endo, Endo, Endo)> {
        check_ab(a, b)?;
        Ok((
            self.c(v)?,
            self.chat(v)?,
            self.ctilde(a, b, v)?,
            self.cbar(a, b, v)?,
        ))
    }

    pub fn identity(&self) -> Endo {
        Matrix::identity(self.dim)
    }

    /// Order-zero boundary symbol at the boundary point, as a multiple of the
    /// formal symbol `h`:
    ///
    /// `p0 = -(h/4) sum_{i<n} tw(e_i) chat(e_i) chat(e_n)
    ///       + (h/4) sum_{i<n} tw(e_i) c(e_i) c(e_n)`
    ///
    /// with `tw = ctilde` for the operator and `tw = cbar` for the adjoint.
    pub fn p0(&self, a: &Rat, b: &Rat, kind: OperatorKind) -> Result<Endo> {
        check_ab(a, b)?;
        let n = self.n;
        let en = Covector::normal(n);
        let chat_n = self.chat(&en)?;
        let c_n = self.c(&en)?;
        let mut acc = Matrix::zero(self.dim);
        for i in 1..n {
            let ei = basis_covector(n, i);
            let tw = self.twist(kind, a, b, &ei)?;
            let chat_i = self.chat(&ei)?;
            let c_i = self.c(&ei)?;
            let neg_part = Matrix::prod(&[&tw, &chat_i, &chat_n]);
            let pos_part = Matrix::prod(&[&tw, &c_i, &c_n]);
            acc = acc.add(&pos_part.sub(&neg_part));
        }
        Ok(acc.scale(&Scalar::h_times(GaussRat::from_frac(1, 4))))
    }

    /// The same order-zero symbol assembled from the connection coefficients
    /// of the collar metric instead of the pre-reduced form: only
    /// `omega_{n,i}(e_i) = h/2` and `omega_{i,n}(e_i) = -h/2` survive at the
    /// boundary point, every other coefficient vanishes. Used as a
    /// cross-check of [`Algebra::p0`].
    pub fn p0_from_connection(&self, a: &Rat, b: &Rat, kind: OperatorKind) -> Result<Endo> {
        check_ab(a, b)?;
        let n = self.n;
        let half_h = Scalar::h_times(GaussRat::from_frac(1, 2));
        let mut acc = Matrix::zero(self.dim);
        for i in 1..=n {
            let tw_i = self.twist(kind, a, b, &basis_covector(n, i))?;
            for s in 1..=n {
                for t in 1..=n {
                    let omega = if s == n && t == i && i < n {
                        half_h.clone()
                    } else if s == i && t == n && i < n {
                        -&half_h
                    } else {
                        continue;
                    };
                    let es = basis_covector(n, s);
                    let et = basis_covector(n, t);
                    let chat_part = Matrix::prod(&[&self.chat(&es)?, &self.chat(&et)?]);
                    let c_part = Matrix::prod(&[&self.c(&es)?, &self.c(&et)?]);
                    let bracket = chat_part.sub(&c_part);
                    acc = acc.add(&tw_i.mul(&bracket).scale(&omega));
                }
            }
        }
        Ok(acc.scale(&Scalar::from_gauss(GaussRat::from_frac(1, 4))))
    }
}

fn check_ab(a: &Rat, b: &Rat) -> Result<()> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::DegenerateParameters);
    }
    Ok(())
}

/// The `i`-th basis covector of `R^n` (1-based).
pub fn basis_covector(n: usize, i: usize) -> Covector {
    let mut comps = vec![Rat::zero(); n];
    comps[i - 1] = Rat::one();
    Covector::new(comps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> Rat {
        Rat::new(p.into(), q.into())
    }

    fn xi_35(n: usize) -> Covector {
        match n {
            3 => Covector::tangential(&[rat(3, 5), rat(4, 5)], 3),
            _ => Covector::tangential(&[rat(3, 5), rat(4, 5), rat(0, 1)], 4),
        }
    }

    #[test]
    fn blade_order_is_graded_lex() {
        let alg = Algebra::new(3);
        let seen: Vec<Vec<u8>> = alg.blades().iter().map(|b| b.indices()).collect();
        let expect: Vec<Vec<u8>> = vec![
            vec![],
            vec![1],
            vec![2],
            vec![3],
            vec![1, 2],
            vec![1, 3],
            vec![2, 3],
            vec![1, 2, 3],
        ];
        assert_eq!(seen, expect);
    }

    #[test]
    fn exterior_squares_vanish() {
        for n in [3, 4] {
            let alg = Algebra::new(n);
            let v = xi_35(n);
            let e = alg.eps(&v).unwrap();
            let i = alg.iota(&v).unwrap();
            assert!(e.mul(&e).is_zero());
            assert!(i.mul(&i).is_zero());
        }
    }

    #[test]
    fn eps_iota_anticommutator_is_pairing() {
        let alg = Algebra::new(4);
        let u = Covector::new(vec![rat(1, 2), rat(-2, 3), rat(1, 1), rat(3, 7)]);
        let v = Covector::new(vec![rat(2, 1), rat(1, 5), rat(0, 1), rat(-1, 2)]);
        let lhs = alg
            .eps(&u)
            .unwrap()
            .mul(&alg.iota(&v).unwrap())
            .add(&alg.iota(&v).unwrap().mul(&alg.eps(&u).unwrap()));
        let expect = alg.identity().scale(&Scalar::from_rat(u.dot(&v)));
        assert_eq!(lhs, expect);
    }

    #[test]
    fn unit_trace_values() {
        // trace(eps(v) iota(v)) = 2^{n-1} for unit v
        for (n, want) in [(3usize, 4i64), (4, 8)] {
            let alg = Algebra::new(n);
            for v in unit_tangential_samples(n, 6) {
                assert!(v.is_unit());
                let e = alg.eps(&v).unwrap();
                let i = alg.iota(&v).unwrap();
                let prod = e.mul(&i);
                assert_eq!(prod.trace(), Scalar::from_int(want));
                // idempotent projector
                assert_eq!(prod.mul(&prod), prod);
            }
            assert_eq!(alg.identity().trace(), Scalar::from_int(1 << n));
        }
    }

    #[test]
    fn clifford_squares() {
        let a = rat(2, 3);
        let b = rat(5, 1);
        for n in [3, 4] {
            let alg = Algebra::new(n);
            let v = xi_35(n);
            let (c, chat, ctilde, cbar) = alg.clifford_actions(&a, &b, &v).unwrap();
            assert_eq!(c.mul(&c), alg.identity().scale(&Scalar::from_int(-1)));
            assert_eq!(chat.mul(&chat), alg.identity());
            let minus_ab = Scalar::from_rat(-(&a * &b));
            assert_eq!(ctilde.mul(&ctilde), alg.identity().scale(&minus_ab));
            assert_eq!(cbar.mul(&cbar), alg.identity().scale(&minus_ab));
        }
    }

    #[test]
    fn ctilde_specializes_to_c() {
        let alg = Algebra::new(4);
        let v = xi_35(4);
        let one = rat(1, 1);
        assert_eq!(alg.ctilde(&one, &one, &v).unwrap(), alg.c(&v).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let alg = Algebra::new(4);
        let v = Covector::new(vec![rat(1, 1); 3]);
        assert!(matches!(
            alg.eps(&v),
            Err(Error::DimensionMismatch { want: 4, got: 3 })
        ));
    }

    #[test]
    fn degenerate_parameters_are_rejected() {
        let alg = Algebra::new(4);
        let v = xi_35(4);
        assert!(matches!(
            alg.ctilde(&rat(0, 1), &rat(2, 1), &v),
            Err(Error::DegenerateParameters)
        ));
        assert!(alg.p0(&rat(1, 1), &rat(0, 1), OperatorKind::D).is_err());
    }

    #[test]
    fn p0_trace_against_normal_actions() {
        // trace(p0 eps(dx_n)) = 6 b h in rank 4
        let alg = Algebra::new(4);
        let a = rat(3, 2);
        let b = rat(7, 5);
        let p0 = alg.p0(&a, &b, OperatorKind::D).unwrap();
        let en = Covector::normal(4);
        let t = p0.trace_of_product(&alg.eps(&en).unwrap());
        let want = Scalar::h_times(GaussRat::from_rat(rat(6, 1) * &b));
        assert_eq!(t, want);
    }

    #[test]
    fn p0_matches_connection_assembly() {
        let a = rat(2, 1);
        let b = rat(3, 4);
        for n in [3, 4] {
            let alg = Algebra::new(n);
            for kind in [OperatorKind::D, OperatorKind::Dstar] {
                assert_eq!(
                    alg.p0(&a, &b, kind).unwrap(),
                    alg.p0_from_connection(&a, &b, kind).unwrap()
                );
            }
        }
    }

    #[test]
    fn trace_cyclicity() {
        let alg = Algebra::new(3);
        let v = xi_35(3);
        let en = Covector::normal(3);
        let a = alg.eps(&v).unwrap();
        let b = alg.iota(&en).unwrap();
        let c = alg.c(&v).unwrap();
        let abc = Matrix::prod(&[&a, &b, &c]).trace();
        let bca = Matrix::prod(&[&b, &c, &a]).trace();
        let cab = Matrix::prod(&[&c, &a, &b]).trace();
        assert_eq!(abc, bca);
        assert_eq!(bca, cab);
    }

    #[test]
    fn samples_are_distinct_units() {
        for n in [3, 4] {
            let samples = unit_tangential_samples(n, 12);
            assert_eq!(samples.len(), 12);
            for (k, s) in samples.iter().enumerate() {
                assert!(s.is_unit());
                assert!(s.comps()[n - 1].is_zero());
                for t in &samples[k + 1..] {
                    assert_ne!(s, t);
                }
            }
        }
    }
}
