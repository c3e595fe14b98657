//! Exact symbolic computation of noncommutative-residue boundary terms for
//! the nonminimal de Rham-Hodge operators `D = a d + b delta` and their
//! adjoints on 3- and 4-dimensional manifolds with boundary.
//!
//! Everything is computed over exact scalars: Gaussian rationals, polynomials
//! in the formal collar-metric symbol `h` (the first normal derivative of the
//! metric factor at the boundary point), and rational functions of the normal
//! covariable with poles confined to `{i, -i}`. The constants `pi` and the
//! sphere volumes `Omega_{n-1}` stay formal, so every result is an exact
//! Gaussian-rational multiple of `pi h Omega_{n-1}` (or `pi Omega_2` in the
//! odd-dimensional case).
//!
//! The crate is organised along the computation pipeline:
//!
//! * [`scalar`] - Gaussian rationals and the degree-capped `h` polynomials.
//! * [`ratfn`] - rational functions of the normal covariable, partial
//!   fractions, the projections `pi^+` / `pi'`, and residue integration.
//! * [`exterior`] - the exterior algebra of rank 3 and 4 with the exterior,
//!   interior and Clifford-type actions as exact matrices.
//! * [`symbol`] - boundary symbols of the operators, the composition formula
//!   and the closed inverse-symbol forms, carried as boundary jets.
//! * [`boundary`] - enumeration and evaluation of the boundary cases, the
//!   Leibniz cross-check and the extrinsic-curvature conversion.
//! * [`interior`] - the closed-form interior coefficients and the
//!   gravitational-action split.
//! * [`reconstruct`] - recovery of the symbolic `(a, b)` dependence from
//!   exact sample evaluations.
//! * [`report`], [`golden`], [`verify`] - report assembly, reference values
//!   and the check suites behind the CLI.

pub mod boundary;
pub mod exterior;
pub mod fraction;
pub mod golden;
pub mod interior;
pub mod matrix;
pub mod ratfn;
pub mod reconstruct;
pub mod report;
pub mod scalar;
pub mod symbol;
pub mod verify;

use num::BigRational;

/// Exact rational number used throughout the crate.
pub type Rat = BigRational;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("covector has dimension {got}, algebra expects {want}")]
    DimensionMismatch { want: usize, got: usize },
    #[error("parameters require a*b != 0")]
    DegenerateParameters,
    #[error("denominator has a root outside {{i, -i}}: remainder factor {0}")]
    UnsupportedPole(String),
    #[error("integrand does not decay at infinity (numerator degree {num_deg}, pole order {den_deg})")]
    NotIntegrable { num_deg: usize, den_deg: usize },
    #[error("rational function is not invertible within the pole class")]
    NotInvertible,
    #[error("principal symbol is singular")]
    SingularSymbol,
    #[error("normal derivative of the order-zero symbol is not modeled")]
    MissingNormalJet,
    #[error("boundary cases are enumerated only for n in {{3, 4}} and first-order operator pairs")]
    UnsupportedOrders,
    #[error("trace integrand depends on the tangential direction; sphere quadrature is unsupported")]
    DirectionDependent,
    #[error("sample matrix is singular; cannot reconstruct coefficients")]
    SingularSamples,
    #[error("need at least {need} samples, got {got}")]
    NotEnoughSamples { need: usize, got: usize },
    #[error("value lies outside span{{a^-2, b^-2, (ab)^-1, 1}}: residual {residual} at sample (a, b) = {sample}")]
    OutsideSpan { residual: String, sample: String },
    #[error("two evaluation routes disagree: {0}")]
    RouteMismatch(String),
    #[error("unsupported operator pair for this computation")]
    UnsupportedPair,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("golden data: {0}")]
    Golden(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Parses a rational literal `p/q` (or a plain integer `p`).
pub fn parse_rat(s: &str) -> Result<Rat> {
    s.trim()
        .parse::<Rat>()
        .map_err(|e| Error::Parse(format!("bad rational literal {s:?}: {e}")))
}
