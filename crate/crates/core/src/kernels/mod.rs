//! Gap functions, the one-cone torus kernel, moment integrals and the
//! quadrature used to certify them.

mod gap;
mod moments;
pub mod quadrature;
mod torus;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use gap::{gap_derivative, gap_eval, gap_real, h_complex, GapCase, GapKernel};
pub use moments::{moment_integral, moment_integral_numeric, MomentTable};
pub use quadrature::QuadratureOracle;
pub use torus::{cone_torus_kernel_d, kernel_derivative_h, DNormalization};

/// One boundary of a pair of pants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundaryLabel {
    Geodesic(f64),
    Cone(f64),
    Cusp,
}

impl BoundaryLabel {
    pub fn validate(self) -> Result<Self> {
        match self {
            BoundaryLabel::Geodesic(l) if !(l > 0.0 && l.is_finite()) => Err(Error::NonPositiveLength(l)),
            BoundaryLabel::Cone(t) => {
                check_angle(t)?;
                Ok(self)
            }
            _ => Ok(self),
        }
    }

    /// `|γ|`: the length for a geodesic, `iθ` for a cone point, 0 for a cusp.
    pub fn complex_length(self) -> Complex64 {
        match self {
            BoundaryLabel::Geodesic(l) => Complex64::new(l, 0.0),
            BoundaryLabel::Cone(t) => Complex64::new(0.0, t),
            BoundaryLabel::Cusp => Complex64::new(0.0, 0.0),
        }
    }
}

/// Cone angles must lie in `(0, π]`.
pub fn check_angle(theta: f64) -> Result<()> {
    // Allow the rounding error of a decimal π.
    if theta > 0.0 && theta <= PI * (1.0 + 1e-12) {
        Ok(())
    } else {
        Err(Error::ConeAngleOutOfRange(theta))
    }
}

pub fn check_length(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveLength(x))
    }
}

/// `1/(1+e^z)` without overflow for large `Re z`.
pub(crate) fn logistic(z: Complex64) -> Complex64 {
    if z.re.abs() <= 1.0 {
        // Near the imaginary axis this keeps the real part at exactly ½ when
        // Re z = 0.
        0.5 * (1.0 - (z / 2.0).tanh())
    } else if z.re > 0.0 {
        let e = (-z).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + z.exp())
    }
}

pub(crate) fn logistic_real(x: f64) -> f64 {
    if x > 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + x.exp())
    }
}
