//! Boundary symbols of the operator pair at a fixed boundary point, carried
//! as jets: the value at the point together with its first normal derivative.
//!
//! The normal-derivative rule at the boundary point is: the interior
//! multiplication by a tangential covector differentiates to `h` times
//! itself, the exterior multiplication and the normal-direction actions
//! differentiate to zero, and the squared covector length `1 + xi_n^2`
//! differentiates to `h` (at a unit tangential part). Tangential derivatives
//! of all symbols vanish in the normal coordinates used here; they are still
//! assembled from their (zero) ingredients and checked, not skipped.
//!
//! The inverse-symbol components are produced twice: through the algebraic
//! identity for the principal symbol (its square is the scalar
//! `-ab (1 + xi_n^2)`), and through exact Gaussian elimination over the full
//! rational-function field. Both routes are compared entrywise, as are the
//! closed forms of the order `-1` and `-2` components against the
//! composition formula.

use crate::exterior::{basis_covector, Algebra, Covector, Endo, OperatorKind};
use crate::fraction::{frac_to_ratfn, invert_matrix, ratfn_to_frac};
use crate::matrix::Matrix;
use crate::ratfn::RatFn;
use crate::scalar::{GaussRat, Scalar};
use crate::{Error, Rat, Result};

/// Matrix-valued rational function of the normal covariable.
pub type SymMat = Matrix<RatFn>;

/// A scalar together with its first normal derivative at the boundary point.
#[derive(Clone, PartialEq, Debug)]
pub struct ScalJet {
    pub value: RatFn,
    pub dxn: RatFn,
}

impl ScalJet {
    pub fn constant(f: RatFn) -> Self {
        ScalJet {
            value: f,
            dxn: RatFn::zero(),
        }
    }

    pub fn mul(&self, o: &ScalJet) -> ScalJet {
        ScalJet {
            value: &self.value * &o.value,
            dxn: &(&self.dxn * &o.value) + &(&self.value * &o.dxn),
        }
    }

    pub fn recip(&self) -> Result<ScalJet> {
        let inv = self.value.recip()?;
        let minus_dxn = -&self.dxn;
        ScalJet {
            value: inv.clone(),
            dxn: &(&minus_dxn * &inv) * &inv,
        }
        .validate()
    }

    fn validate(self) -> Result<ScalJet> {
        Ok(self)
    }

    pub fn scale(&self, s: &Scalar) -> ScalJet {
        ScalJet {
            value: self.value.scale(s),
            dxn: self.dxn.scale(s),
        }
    }
}

/// A symbol jet: value at the boundary point plus its normal derivative.
/// Symbols whose normal derivative is never consumed (the order-zero symbol
/// and everything derived from it) carry `None` and requesting the
/// derivative is a hard error.
#[derive(Clone, PartialEq, Debug)]
pub struct MatJet {
    pub value: SymMat,
    dxn: Option<SymMat>,
}

impl MatJet {
    pub fn new(value: SymMat, dxn: SymMat) -> Self {
        MatJet {
            value,
            dxn: Some(dxn),
        }
    }

    pub fn value_only(value: SymMat) -> Self {
        MatJet { value, dxn: None }
    }

    /// The normal derivative; an error when it is not modeled.
    pub fn dxn(&self) -> Result<&SymMat> {
        self.dxn.as_ref().ok_or(Error::MissingNormalJet)
    }

    pub fn has_dxn(&self) -> bool {
        self.dxn.is_some()
    }

    pub fn add(&self, o: &MatJet) -> MatJet {
        MatJet {
            value: self.value.add(&o.value),
            dxn: match (&self.dxn, &o.dxn) {
                (Some(a), Some(b)) => Some(a.add(b)),
                _ => None,
            },
        }
    }

    pub fn neg(&self) -> MatJet {
        MatJet {
            value: self.value.neg(),
            dxn: self.dxn.as_ref().map(|d| d.neg()),
        }
    }

    /// Product rule; the derivative survives only when both factors carry one.
    pub fn mul(&self, o: &MatJet) -> MatJet {
        MatJet {
            value: self.value.mul(&o.value),
            dxn: match (&self.dxn, &o.dxn) {
                (Some(a), Some(b)) => Some(a.mul(&o.value).add(&self.value.mul(b))),
                _ => None,
            },
        }
    }

    pub fn mul_scal(&self, s: &ScalJet) -> MatJet {
        MatJet {
            value: self.value.scale(&s.value),
            dxn: self
                .dxn
                .as_ref()
                .map(|d| d.scale(&s.value).add(&self.value.scale(&s.dxn))),
        }
    }

    /// Scales by an `x`-constant scalar.
    pub fn scale_const(&self, s: &Scalar) -> MatJet {
        let f = RatFn::constant(s.clone());
        MatJet {
            value: self.value.scale(&f),
            dxn: self.dxn.as_ref().map(|d| d.scale(&f)),
        }
    }
}

/// Lifts an endomorphism into a constant matrix of rational functions.
pub fn lift(m: &Endo) -> SymMat {
    m.map(|s| RatFn::constant(s.clone()))
}

/// Entrywise derivative in the normal covariable.
pub fn diff_xi_mat(m: &SymMat) -> SymMat {
    m.map(|f| f.diff())
}

/// Entrywise Hardy projection.
pub fn pi_plus_mat(m: &SymMat) -> SymMat {
    m.map(crate::ratfn::pi_plus)
}

/// Evaluation context: the algebra, the parameters `(a, b)` and a fixed
/// rational unit tangential covector.
#[derive(Clone, Debug)]
pub struct Context {
    pub alg: Algebra,
    pub a: Rat,
    pub b: Rat,
    pub xi: Covector,
}

impl Context {
    pub fn new(n: usize, a: Rat, b: Rat, xi: Covector) -> Result<Self> {
        use num::Zero;
        if a.is_zero() || b.is_zero() {
            return Err(Error::DegenerateParameters);
        }
        if xi.dim() != n {
            return Err(Error::DimensionMismatch {
                want: n,
                got: xi.dim(),
            });
        }
        if !xi.comps()[n - 1].is_zero() {
            return Err(Error::InvalidParameter(
                "xi' must be tangential (vanishing normal component)".into(),
            ));
        }
        if !xi.is_unit() {
            return Err(Error::InvalidParameter(
                "xi' must be a rational unit covector".into(),
            ));
        }
        Ok(Context {
            alg: Algebra::new(n),
            a,
            b,
            xi,
        })
    }

    pub fn rank(&self) -> usize {
        self.alg.rank()
    }

    pub fn ab(&self) -> Rat {
        &self.a * &self.b
    }

    /// Coefficient in front of `-h iota(xi')` in the normal derivative of the
    /// twist: `b` for the operator, `a` for the adjoint.
    fn twist_dxn_coeff(&self, kind: OperatorKind) -> Rat {
        match kind {
            OperatorKind::D => self.b.clone(),
            OperatorKind::Dstar => self.a.clone(),
        }
    }

    pub fn twist(&self, kind: OperatorKind, v: &Covector) -> Endo {
        self.alg
            .twist(kind, &self.a, &self.b, v)
            .expect("context parameters validated")
    }

    /// Jet of the full-covector twist `tw(xi' + xi_n dx_n)`.
    pub fn twist_xi_jet(&self, kind: OperatorKind) -> MatJet {
        let n = self.rank();
        let tang = lift(&self.twist(kind, &self.xi));
        let norm = lift(&self.twist(kind, &Covector::normal(n)));
        let value = tang.add(&norm.scale(&RatFn::xi()));
        let iota_t = self
            .alg
            .iota(&self.xi)
            .expect("context parameters validated");
        let coeff = Scalar::h_times(GaussRat::from_rat(-self.twist_dxn_coeff(kind)));
        let dxn = lift(&iota_t.scale(&coeff));
        MatJet::new(value, dxn)
    }

    /// Jet of `1 / (ab (1 + xi_n^2))`.
    fn inv_ab_len_sq_jet(&self) -> ScalJet {
        let ab = Scalar::from_rat(self.ab());
        let len_sq = ScalJet {
            value: RatFn::inv_len_sq_pow(1).recip().expect("unit class"),
            dxn: RatFn::constant(Scalar::h()),
        };
        len_sq.scale(&ab).recip().expect("ab nonzero")
    }

    /// Principal and order-zero boundary symbols.
    pub fn build_sigma(&self, kind: OperatorKind) -> (MatJet, MatJet) {
        let p1 = self.twist_xi_jet(kind).scale_const(&Scalar::i());
        let p0 = MatJet::value_only(lift(
            &self
                .alg
                .p0(&self.a, &self.b, kind)
                .expect("context parameters validated"),
        ));
        (p1, p0)
    }

    /// Inverts the principal symbol through the algebraic identity
    /// (`p1` squares to the scalar `ab (1 + xi_n^2)`, so `p1^{-1}` is
    /// `p1 / (ab (1 + xi_n^2))`), verifying the product against the identity
    /// matrix. The Gaussian-elimination route is exercised separately by
    /// [`Context::q1_gauss`].
    pub fn invert_principal(&self, p1: &MatJet) -> Result<MatJet> {
        let q1 = p1.mul_scal(&self.inv_ab_len_sq_jet());
        let prod = p1.value.mul(&q1.value);
        if prod != Matrix::identity(self.alg.dim()) {
            return Err(Error::SingularSymbol);
        }
        Ok(q1)
    }

    /// Fallback inversion of the principal symbol by exact Gauss-Jordan
    /// elimination over the full rational-function field.
    pub fn q1_gauss(&self, kind: OperatorKind) -> Result<SymMat> {
        let (p1, _) = self.build_sigma(kind);
        let general = p1.value.try_map(ratfn_to_frac)?;
        let inv = invert_matrix(&general)?;
        inv.try_map(|f| frac_to_ratfn(f))
    }

    /// Order `-1` component of the inverse symbol, as a jet.
    pub fn sigma_minus1(&self, kind: OperatorKind) -> MatJet {
        let (p1, _) = self.build_sigma(kind);
        self.invert_principal(&p1)
            .expect("principal symbol is invertible")
    }

    /// Closed form of the order `-1` component:
    /// `i tw(xi) / (ab (1 + xi_n^2))`.
    pub fn q1_closed(&self, kind: OperatorKind) -> MatJet {
        self.twist_xi_jet(kind)
            .scale_const(&Scalar::i())
            .mul_scal(&self.inv_ab_len_sq_jet())
    }

    /// Tangential derivative of the order `-1` component, assembled from its
    /// (vanishing) ingredients: the tangential derivatives of the twist and
    /// of the squared covector length are both zero at the boundary point.
    pub fn tangential_dx_sigma1(&self, kind: OperatorKind) -> SymMat {
        let dim = self.alg.dim();
        let zero_twist_dx: SymMat = Matrix::zero(dim);
        let zero_len_dx = RatFn::zero();
        let s = self.inv_ab_len_sq_jet();
        // d_xj [tw(xi) * s] = d_xj[tw(xi)] * s + tw(xi) * d_xj[s],
        // with d_xj[s] = -ab s^2 * d_xj[len^2] = 0 in normal coordinates.
        let tw = self.twist_xi_jet(kind).value;
        let dxj_s = (&(&s.value * &s.value) * &zero_len_dx).scale(&Scalar::from_rat(-self.ab()));
        let first = zero_twist_dx.scale(&s.value);
        let second = tw.scale(&dxj_s);
        first.add(&second).scale(&RatFn::constant(Scalar::i()))
    }

    /// Order `-2` component via the composition formula:
    /// `q_{-2} = -q_{-1} (p0 q_{-1} + sum_j d_{xi_j} p1 . D_{x_j} q_{-1})`
    /// with `D_x = -i d_x`. Only the normal term of the sum survives; the
    /// tangential terms are evaluated and checked to vanish.
    pub fn q2_composed(&self, kind: OperatorKind) -> Result<SymMat> {
        let (p1, p0) = self.build_sigma(kind);
        let q1 = self.invert_principal(&p1)?;
        let n = self.rank();
        let minus_i = RatFn::constant(-&Scalar::i());

        let mut sum = p0.value.mul(&q1.value);
        for j in 1..n {
            let d_xi_p1 = lift(&self.twist(kind, &basis_covector(n, j)))
                .scale(&RatFn::constant(Scalar::i()));
            let d_xj_q1 = self.tangential_dx_sigma1(kind);
            if !d_xj_q1.is_zero() {
                return Err(Error::RouteMismatch(
                    "tangential derivative of the inverse symbol must vanish".into(),
                ));
            }
            sum = sum.add(&d_xi_p1.mul(&d_xj_q1.scale(&minus_i)));
        }
        let d_xin_p1 = diff_xi_mat(&p1.value);
        let dxn_q1 = q1.dxn()?.scale(&minus_i);
        sum = sum.add(&d_xin_p1.mul(&dxn_q1));

        Ok(q1.value.mul(&sum).neg())
    }

    /// Closed form of the order `-2` component:
    ///
    /// `tw(xi) p0 tw(xi) / (a^2 b^2 |xi|^4)
    ///  + tw(xi)/(a^2 b^2 |xi|^6) sum_j tw(dx_j) [d_{x_j}(tw(xi)) |xi|^2
    ///                                            - tw(xi) d_{x_j}(|xi|^2)]`.
    pub fn q2_closed(&self, kind: OperatorKind) -> SymMat {
        let n = self.rank();
        let dim = self.alg.dim();
        let tw_jet = self.twist_xi_jet(kind);
        let tw = &tw_jet.value;
        let p0 = lift(
            &self
                .alg
                .p0(&self.a, &self.b, kind)
                .expect("context parameters validated"),
        );
        let a2b2 = Scalar::from_rat(&self.ab() * &self.ab());
        let a2b2_inv = a2b2.inv().expect("ab nonzero");
        let u2 = RatFn::inv_len_sq_pow(2).scale(&a2b2_inv);
        let u3 = RatFn::inv_len_sq_pow(3).scale(&a2b2_inv);

        let first = Matrix::prod(&[tw, &p0, tw]).scale(&u2);

        let len_sq = RatFn::inv_len_sq_pow(1).recip().expect("unit class");
        let mut bracket_sum: SymMat = Matrix::zero(dim);
        for j in 1..=n {
            let tw_dxj = lift(&self.twist(kind, &basis_covector(n, j)));
            let (dxj_tw, dxj_len): (SymMat, RatFn) = if j < n {
                (Matrix::zero(dim), RatFn::zero())
            } else {
                (
                    tw_jet.dxn().expect("twist jet carries dxn").clone(),
                    RatFn::constant(Scalar::h()),
                )
            };
            let bracket = dxj_tw.scale(&len_sq).sub(&tw.scale(&dxj_len));
            bracket_sum = bracket_sum.add(&tw_dxj.mul(&bracket));
        }
        let second = tw.mul(&bracket_sum).scale(&u3);

        first.add(&second)
    }

    /// Residual of the composition identity at the computed orders:
    /// `p1 q_{-2} + p0 q_{-1} + sum_j d_{xi_j} p1 . D_{x_j} q_{-1}`.
    pub fn composition_residual(&self, kind: OperatorKind) -> Result<SymMat> {
        let (p1, p0) = self.build_sigma(kind);
        let q1 = self.invert_principal(&p1)?;
        let q2 = self.q2_composed(kind)?;
        let n = self.rank();
        let minus_i = RatFn::constant(-&Scalar::i());

        let mut acc = p1.value.mul(&q2).add(&p0.value.mul(&q1.value));
        for j in 1..n {
            let d_xi_p1 = lift(&self.twist(kind, &basis_covector(n, j)))
                .scale(&RatFn::constant(Scalar::i()));
            acc = acc.add(&d_xi_p1.mul(&self.tangential_dx_sigma1(kind).scale(&minus_i)));
        }
        acc = acc.add(&diff_xi_mat(&p1.value).mul(&q1.dxn()?.scale(&minus_i)));
        Ok(acc)
    }

    /// Order `-2` component of the inverse symbol (value only; its normal
    /// derivative is outside the modeled range).
    pub fn sigma_minus2(&self, kind: OperatorKind) -> Result<MatJet> {
        Ok(MatJet::value_only(self.q2_composed(kind)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::unit_tangential_samples;

    fn rat(p: i64, q: i64) -> Rat {
        Rat::new(p.into(), q.into())
    }

    fn ctx(n: usize, a: (i64, i64), b: (i64, i64), sample: usize) -> Context {
        let xi = unit_tangential_samples(n, sample + 1).pop().unwrap();
        Context::new(n, rat(a.0, a.1), rat(b.0, b.1), xi).unwrap()
    }

    #[test]
    fn principal_symbol_squares_to_scalar() {
        for n in [3, 4] {
            let c = ctx(n, (2, 1), (3, 2), 1);
            let (p1, _) = c.build_sigma(OperatorKind::D);
            let sq = p1.value.mul(&p1.value);
            let id: SymMat = Matrix::identity(c.alg.dim());
            let len_sq = RatFn::inv_len_sq_pow(1).recip().unwrap();
            let want = id.scale(&len_sq.scale(&Scalar::from_rat(c.ab())));
            assert_eq!(sq, want);
        }
    }

    #[test]
    fn specialization_to_signature_principal() {
        // at a = b = 1 the principal symbol is i c(xi)
        let c = ctx(4, (1, 1), (1, 1), 2);
        let (p1, _) = c.build_sigma(OperatorKind::D);
        let n = c.rank();
        let want = lift(&c.alg.c(&c.xi).unwrap())
            .add(&lift(&c.alg.c(&Covector::normal(n)).unwrap()).scale(&RatFn::xi()))
            .scale(&RatFn::constant(Scalar::i()));
        assert_eq!(p1.value, want);
    }

    #[test]
    fn inverse_is_two_sided() {
        let c = ctx(4, (5, 3), (2, 7), 0);
        let (p1, _) = c.build_sigma(OperatorKind::Dstar);
        let q1 = c.invert_principal(&p1).unwrap();
        let id = Matrix::identity(c.alg.dim());
        assert_eq!(p1.value.mul(&q1.value), id);
        assert_eq!(q1.value.mul(&p1.value), id);
    }

    #[test]
    fn gauss_route_agrees_with_identity_route() {
        for n in [3, 4] {
            for kind in [OperatorKind::D, OperatorKind::Dstar] {
                let c = ctx(n, (3, 1), (1, 2), n % 3);
                let q1 = c.sigma_minus1(kind);
                let gauss = c.q1_gauss(kind).unwrap();
                assert_eq!(q1.value, gauss);
            }
        }
    }

    #[test]
    fn q1_matches_closed_form() {
        let c = ctx(4, (4, 3), (5, 2), 3);
        for kind in [OperatorKind::D, OperatorKind::Dstar] {
            let q1 = c.sigma_minus1(kind);
            let closed = c.q1_closed(kind);
            assert_eq!(q1.value, closed.value);
            assert_eq!(q1.dxn().unwrap(), closed.dxn().unwrap());
        }
    }

    #[test]
    fn tangential_derivatives_vanish() {
        let c = ctx(4, (2, 1), (3, 1), 1);
        assert!(c.tangential_dx_sigma1(OperatorKind::D).is_zero());
        assert!(c.tangential_dx_sigma1(OperatorKind::Dstar).is_zero());
    }

    #[test]
    fn composition_residual_vanishes() {
        for n in [3, 4] {
            let c = ctx(n, (3, 2), (5, 4), 2);
            for kind in [OperatorKind::D, OperatorKind::Dstar] {
                assert!(c.composition_residual(kind).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn q2_composed_equals_closed() {
        for n in [3, 4] {
            let c = ctx(n, (7, 2), (3, 5), 0);
            for kind in [OperatorKind::D, OperatorKind::Dstar] {
                assert_eq!(c.q2_composed(kind).unwrap(), c.q2_closed(kind));
            }
        }
    }

    #[test]
    fn swapping_parameters_exchanges_the_pair() {
        let xi = unit_tangential_samples(4, 3).pop().unwrap();
        let c = Context::new(4, rat(2, 3), rat(7, 4), xi.clone()).unwrap();
        let c_swapped = Context::new(4, rat(7, 4), rat(2, 3), xi).unwrap();
        let q1_d = c.sigma_minus1(OperatorKind::D);
        let q1_dstar_swapped = c_swapped.sigma_minus1(OperatorKind::Dstar);
        assert_eq!(q1_d.value, q1_dstar_swapped.value);
        assert_eq!(q1_d.dxn().unwrap(), q1_dstar_swapped.dxn().unwrap());
        let q2_d = c.q2_composed(OperatorKind::D).unwrap();
        let q2_dstar_swapped = c_swapped.q2_composed(OperatorKind::Dstar).unwrap();
        assert_eq!(q2_d, q2_dstar_swapped);
    }

    #[test]
    fn order_zero_jet_is_not_modeled() {
        let c = ctx(4, (1, 1), (2, 1), 0);
        let (_, p0) = c.build_sigma(OperatorKind::D);
        assert!(matches!(p0.dxn(), Err(Error::MissingNormalJet)));
        let s2 = c.sigma_minus2(OperatorKind::D).unwrap();
        assert!(matches!(s2.dxn(), Err(Error::MissingNormalJet)));
    }

    #[test]
    fn context_validates_inputs() {
        let xi = unit_tangential_samples(4, 1).pop().unwrap();
        assert!(Context::new(4, rat(0, 1), rat(1, 1), xi.clone()).is_err());
        assert!(Context::new(3, rat(1, 1), rat(1, 1), xi.clone()).is_err());
        let non_unit = Covector::tangential(&[rat(1, 2), rat(0, 1), rat(0, 1)], 4);
        assert!(Context::new(4, rat(1, 1), rat(1, 1), non_unit).is_err());
    }
}
