use num_complex::Complex64;

use super::{check_angle, logistic};
use crate::error::{Error, Result};

/// Overall factor of the one-cone torus kernel `D(θ, x, x)`.
///
/// `Summand` is the McShane summand itself (values over all simple closed
/// geodesics sum to `θ/2`), equal to `(1/i)·ln((e^{iθ/2}+e^x)/(e^{−iθ/2}+e^x))`.
/// `Doubled` carries an extra factor 2. Only `Summand` satisfies
/// `θ·V_{1,0,1}(θ) = ∫₀^∞ x·D(θ,x,x) dx`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DNormalization {
    #[default]
    Summand,
    Doubled,
}

/// `D(θ, x, x) = 2·tan⁻¹(sin(θ/2) / (cos(θ/2) + e^x))` (times 2 when doubled).
pub fn cone_torus_kernel_d(theta: f64, x: f64, norm: DNormalization) -> Result<f64> {
    check_angle(theta)?;
    if !(x > 0.0) {
        return Err(Error::NonPositiveLength(x));
    }
    let base = 2.0 * (theta / 2.0).sin().atan2((theta / 2.0).cos() + x.exp());
    Ok(match norm {
        DNormalization::Summand => base,
        DNormalization::Doubled => 2.0 * base,
    })
}

/// The same kernel through the logarithmic form, used as a cross-check.
#[cfg(test)]
pub(crate) fn cone_torus_kernel_log(theta: f64, x: f64) -> f64 {
    let e = Complex64::new(0.0, theta / 2.0).exp();
    let ex = Complex64::new(x.exp(), 0.0);
    ((e + ex) / (e.conj() + ex)).ln().im
}

/// `1/(1+e^{x−iθ/2}) + 1/(1+e^{x+iθ/2})`, which equals `2·∂D/∂θ`.
pub fn kernel_derivative_h(theta: f64, x: f64) -> Result<f64> {
    check_angle(theta)?;
    if !(x >= 0.0) {
        return Err(Error::NonPositiveLength(x));
    }
    Ok(kernel_derivative_h_unchecked(theta, x))
}

pub(crate) fn kernel_derivative_h_unchecked(theta: f64, x: f64) -> f64 {
    2.0 * logistic(Complex64::new(x, -theta / 2.0)).re
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn degenerate_limits() {
        assert!(cone_torus_kernel_d(1e-12, 1.0, DNormalization::Summand).unwrap() < 1e-12);
        assert!(cone_torus_kernel_d(1.0, 60.0, DNormalization::Summand).unwrap() < 1e-25);
        assert!(cone_torus_kernel_d(0.0, 1.0, DNormalization::Summand).is_err());
        assert!(cone_torus_kernel_d(1.0, 0.0, DNormalization::Summand).is_err());
    }

    #[test]
    fn two_closed_forms_agree() {
        let d = cone_torus_kernel_d(PI, 1.0, DNormalization::Summand).unwrap();
        let direct = 2.0 * (1.0f64 / 1.0f64.exp()).atan();
        assert!((d - direct).abs() < 1e-14);
        for &t in &[0.1, 1.0, 2.0, PI] {
            for &x in &[0.01, 0.5, 3.0, 10.0] {
                let d = cone_torus_kernel_d(t, x, DNormalization::Summand).unwrap();
                let doubled = cone_torus_kernel_d(t, x, DNormalization::Doubled).unwrap();
                let four_atan2 = 4.0 * (t / 2.0).sin().atan2((t / 2.0).cos() + x.exp());
                assert!((doubled - four_atan2).abs() < 1e-14);
                assert!((d - cone_torus_kernel_log(t, x)).abs() < 1e-14);
                assert!(d > 0.0 && d < t);
            }
        }
    }

    #[test]
    fn decreasing_in_x() {
        let mut prev = f64::INFINITY;
        for i in 1..100 {
            let v = cone_torus_kernel_d(2.0, 0.1 * i as f64, DNormalization::Summand).unwrap();
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn derivative_kernel_limits() {
        let x = 1.3;
        let h0 = kernel_derivative_h(1e-9, x).unwrap();
        assert!((h0 - 2.0 / (1.0 + x.exp())).abs() < 1e-15);
        assert!(kernel_derivative_h(1.0, 80.0).unwrap() < 1e-30);
    }

    #[test]
    fn derivative_kernel_is_half_theta_derivative() {
        let (theta, x) = (1.0, 1.0);
        let target = 0.5 * kernel_derivative_h(theta, x).unwrap();
        let d = |t: f64| cone_torus_kernel_d(t, x, DNormalization::Summand).unwrap();
        let mut errs = Vec::new();
        for &h in &[1e-2, 5e-3, 2.5e-3] {
            errs.push(((d(theta + h) - d(theta - h)) / (2.0 * h) - target).abs());
        }
        assert!(errs[0] < 1e-4);
        // Halving h divides the error by about 4.
        assert!(errs[0] / errs[1] > 3.5 && errs[1] / errs[2] > 3.5, "{errs:?}");
    }
}
