use crate::error::{Error, Result};
use crate::kernels::{check_angle, cone_torus_kernel_d, DNormalization, QuadratureOracle};

/// Bound on `∫_X^∞ x·D(θ,x,x) dx`, using `D ≤ 2 sin(θ/2) e^{−x}` for
/// `θ ≤ π`.
pub fn identity_tail_bound(theta: f64, tail_cutoff: f64) -> f64 {
    2.0 * (tail_cutoff + 1.0) * (-tail_cutoff).exp() * (theta / 2.0).sin()
}

/// `(1/θ)·∫₀^X x·D(θ,x,x) dx` with absolute tolerance `1e-12`.
pub fn integrate_volume_identity(theta: f64, tail_cutoff: f64) -> Result<f64> {
    integrate_volume_identity_with(theta, tail_cutoff, &QuadratureOracle::with_tol(1e-12))
}

/// As [`integrate_volume_identity`], failing when the neglected tail divided
/// by `θ` may exceed `quad.tol`.
pub fn integrate_volume_identity_with(theta: f64, tail_cutoff: f64, quad: &QuadratureOracle) -> Result<f64> {
    check_angle(theta)?;
    let tol = quad.tol;
    let bound = identity_tail_bound(theta, tail_cutoff) / theta;
    if !(tail_cutoff > 0.0) || !(bound <= tol) {
        return Err(Error::TailBoundExceeded { bound, tol });
    }
    let mut failure = None;
    let integral = quad.integrate(
        |x| match cone_torus_kernel_d(theta, x, DNormalization::Summand) {
            Ok(d) => x * d,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        0.0,
        tail_cutoff,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(integral? / theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn closed_form(theta: f64) -> f64 {
        -theta * theta / 48.0 + PI * PI / 12.0
    }

    #[test]
    fn reference_angles() {
        for (theta, expect) in [(PI, PI * PI / 16.0), (PI / 2.0, 5.0 * PI * PI / 64.0), (0.1, closed_form(0.1))] {
            let v = integrate_volume_identity(theta, 40.0).unwrap();
            assert!((v - expect).abs() < 1e-8, "θ={theta}: {v} vs {expect}");
        }
    }

    #[test]
    fn tail_bound_enforced() {
        assert!(matches!(integrate_volume_identity(1.0, 5.0), Err(Error::TailBoundExceeded { .. })));
        assert!(matches!(integrate_volume_identity(0.0, 40.0), Err(Error::ConeAngleOutOfRange(_))));
        assert!(integrate_volume_identity(1.0, -1.0).is_err());
    }

    #[test]
    fn tail_bound_dominates_actual_tail() {
        let q = QuadratureOracle::with_tol(1e-16);
        for x in [5.0, 10.0, 20.0] {
            let tail = q
                .integrate_to_infinity(|t| t * cone_torus_kernel_d(PI, t, DNormalization::Summand).unwrap(), x)
                .unwrap();
            assert!(tail <= identity_tail_bound(PI, x));
        }
    }

    #[test]
    fn cusp_limit() {
        let cusp = PI * PI / 12.0;
        let mut prev = f64::INFINITY;
        for k in 1..=8 {
            let v = integrate_volume_identity(0.5f64.powi(k), 40.0).unwrap();
            let gap = (v - cusp).abs();
            assert!(gap < prev);
            prev = gap;
        }
        assert!(prev < 1e-5);
    }
}
