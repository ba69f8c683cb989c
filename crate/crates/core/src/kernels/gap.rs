use num_complex::Complex64;

use super::{logistic, BoundaryLabel};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GapCase {
    /// Both partners are interior geodesics.
    Gap1,
    /// `α` is a geodesic boundary.
    Gap2,
    /// `α` is a cone point.
    Gap3,
    /// `α` is a cusp.
    Gap4,
}

/// A gap function together with its evaluation point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GapKernel {
    pub case: GapCase,
    pub gamma: BoundaryLabel,
    pub alpha: BoundaryLabel,
    pub beta: BoundaryLabel,
}

impl GapKernel {
    pub fn new(case: GapCase, gamma: BoundaryLabel, alpha: BoundaryLabel, beta: BoundaryLabel) -> Result<Self> {
        let k = GapKernel { case, gamma, alpha, beta };
        k.validate()?;
        Ok(k)
    }

    pub fn validate(&self) -> Result<()> {
        self.gamma.validate()?;
        self.alpha.validate()?;
        self.beta.validate()?;
        if matches!(self.gamma, BoundaryLabel::Cusp) {
            return Err(Error::InvalidKernel("γ must be a geodesic boundary or a cone point".into()));
        }
        if !matches!(self.beta, BoundaryLabel::Geodesic(_)) {
            return Err(Error::InvalidKernel("β must be an interior geodesic".into()));
        }
        let alpha_ok = match self.case {
            GapCase::Gap1 | GapCase::Gap2 => matches!(self.alpha, BoundaryLabel::Geodesic(_)),
            GapCase::Gap3 => matches!(self.alpha, BoundaryLabel::Cone(_)),
            GapCase::Gap4 => matches!(self.alpha, BoundaryLabel::Cusp),
        };
        if !alpha_ok {
            return Err(Error::InvalidKernel(format!("α does not match {:?}", self.case)));
        }
        Ok(())
    }

    fn beta_len(&self) -> f64 {
        match self.beta {
            BoundaryLabel::Geodesic(b) => b,
            _ => unreachable!("validated"),
        }
    }

    /// `|α|` for cases 2–4, with cone points at `iφ` and cusps at 0.
    fn alpha_len(&self) -> Complex64 {
        self.alpha.complex_length()
    }
}

/// `H(s, t) = 1/(1+e^{(s+t)/2}) + 1/(1+e^{(s−t)/2})` at complex `t`.
pub fn h_complex(s: f64, t: Complex64) -> Complex64 {
    logistic((s + t) / 2.0) + logistic((s - t) / 2.0)
}

/// Gap value at `|γ|` (imaginary for cone points), principal branches.
pub fn gap_eval(k: &GapKernel) -> Result<Complex64> {
    k.validate()?;
    let g = k.gamma.complex_length();
    let half = g / 2.0;
    let b = k.beta_len();
    Ok(match k.case {
        GapCase::Gap1 => {
            let a = k.alpha.complex_length().re;
            let e = ((a + b) / 2.0).exp();
            2.0 * (half.sinh() / (half.cosh() + e)).atanh()
        }
        _ => {
            let ca = (k.alpha_len() / 2.0).cosh();
            let num = half.sinh() * (b / 2.0).sinh();
            let den = ca + half.cosh() * (b / 2.0).cosh();
            half - (num / den).atanh()
        }
    })
}

/// `∂Gap/∂|γ|` evaluated at `|γ|` (complex for cone points).
pub fn gap_derivative(k: &GapKernel) -> Result<Complex64> {
    k.validate()?;
    let g = k.gamma.complex_length();
    let b = k.beta_len();
    Ok(match k.case {
        GapCase::Gap1 => {
            let a = k.alpha.complex_length().re;
            0.5 * h_complex(a + b, g)
        }
        _ => {
            let a = k.alpha_len();
            0.25 * (h_complex(b, g + a) + h_complex(b, g - a))
        }
    })
}

/// Real-valued gap from the tanh/tan branches: for a geodesic `γ` of length
/// `L` this is the gap itself, for a cone point of angle `θ` it is the real
/// cone gap (the imaginary part of [`gap_eval`]).
pub fn gap_real(k: &GapKernel) -> Result<f64> {
    k.validate()?;
    let b = k.beta_len();
    let cos_alpha = match k.alpha {
        BoundaryLabel::Geodesic(a) => (a / 2.0).cosh(),
        BoundaryLabel::Cone(phi) => (phi / 2.0).cos(),
        BoundaryLabel::Cusp => 1.0,
    };
    Ok(match (k.case, k.gamma) {
        (GapCase::Gap1, BoundaryLabel::Geodesic(l)) => {
            let e = ((k.alpha.complex_length().re + b) / 2.0).exp();
            2.0 * ((l / 2.0).sinh() / ((l / 2.0).cosh() + e)).atanh()
        }
        (GapCase::Gap1, BoundaryLabel::Cone(t)) => {
            let e = ((k.alpha.complex_length().re + b) / 2.0).exp();
            2.0 * ((t / 2.0).sin() / ((t / 2.0).cos() + e)).atan()
        }
        (_, BoundaryLabel::Geodesic(l)) => {
            l / 2.0
                - ((l / 2.0).sinh() * (b / 2.0).sinh() / (cos_alpha + (l / 2.0).cosh() * (b / 2.0).cosh()))
                    .atanh()
        }
        (_, BoundaryLabel::Cone(t)) => {
            t / 2.0
                - ((t / 2.0).sin() * (b / 2.0).sinh() / (cos_alpha + (t / 2.0).cos() * (b / 2.0).cosh())).atan()
        }
        (_, BoundaryLabel::Cusp) => unreachable!("validated"),
    })
}
