//! Weil–Petersson volume polynomials of moduli spaces of hyperbolic surfaces
//! with geodesic boundary components and cone points of angle at most π.
//!
//! Volumes are exact polynomials in the squared boundary lengths `ℓ²` (and
//! squared cone angles `θ²`) with rational coefficients graded by even powers
//! of π. They are produced by Mirzakhani's recursion run on all-geodesic
//! surfaces, followed by the substitution `ℓ = iθ` on the cone slots. A
//! second, cone-aware recursion (kernels evaluated at imaginary lengths) is
//! kept as an independent check, as are the numerical McShane-identity
//! verifiers in [`mcshane`].
//!
//! The algebra is generic over the coefficient type ([`Scalar`]); the exact
//! instantiation over [`Rational`] is the one used everywhere results are
//! reported. Kernels, quadrature and the McShane verifiers work in `f64`.

pub mod config;
pub mod conepoints;
pub mod error;
pub mod kernels;
pub mod mcshane;
pub mod polyalg;
pub mod recursion;
pub mod scalar;

pub use config::Config;
pub use error::{Error, Result};
pub use polyalg::{Monomial, PiGraded, Polynomial, SlotKind, WithRespectTo};
pub use scalar::Scalar;

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;

/// The exact volume polynomial type.
pub type VolumePolynomial = Polynomial<Rational>;

/// Floating-point shadow of [`VolumePolynomial`].
pub type FloatPolynomial = Polynomial<f64>;

/// Evaluations at complex boundary lengths (`|γ| = iθ` for cone points).
pub type ComplexValue = num_complex::Complex<f64>;

/// Recursion engine over exact rationals.
pub type ExactEngine = recursion::VolumeEngine<Rational>;

/// Recursion engine over `f64`, useful as a fast approximate cross-check.
pub type FloatEngine = recursion::VolumeEngine<f64>;

pub use recursion::SurfaceSignature;
