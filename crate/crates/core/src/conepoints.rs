//! Volumes of surfaces with geodesic boundaries and cone points.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernels::check_angle;
use crate::polyalg::SlotLabels;
use crate::recursion::{SurfaceSignature, VolumeEngine};
use crate::{Config, Rational, VolumePolynomial};

/// A signature plus optional numeric boundary lengths and cone angles.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeSurfaceSpec {
    pub sig: SurfaceSignature,
    pub lengths: Option<Vec<f64>>,
    pub angles: Option<Vec<f64>>,
}

impl ConeSurfaceSpec {
    pub fn symbolic(sig: SurfaceSignature) -> Self {
        ConeSurfaceSpec { sig, lengths: None, angles: None }
    }

    pub fn numeric(sig: SurfaceSignature, lengths: Vec<f64>, angles: Vec<f64>) -> Self {
        ConeSurfaceSpec { sig, lengths: Some(lengths), angles: Some(angles) }
    }

    pub fn validate(&self) -> Result<()> {
        let s = self.sig;
        if !s.is_stable() {
            return Err(Error::UnstableSignature { g: s.g, m: s.m, n: s.n });
        }
        if let Some(l) = &self.lengths {
            if l.len() != s.m {
                return Err(Error::LengthMismatch { expected: s.m, got: l.len() });
            }
            if let Some(&bad) = l.iter().find(|x| !(**x >= 0.0 && x.is_finite())) {
                return Err(Error::NegativeLength(bad));
            }
        }
        if let Some(a) = &self.angles {
            if a.len() != s.n {
                return Err(Error::LengthMismatch { expected: s.n, got: a.len() });
            }
            for &t in a {
                check_angle(t)?;
            }
        }
        Ok(())
    }

    /// Slot values in polynomial order: lengths, then angles.
    pub fn point(&self) -> Result<Vec<f64>> {
        let (Some(l), Some(a)) = (&self.lengths, &self.angles) else {
            return Err(Error::LengthMismatch { expected: self.sig.slots(), got: 0 });
        };
        Ok(l.iter().chain(a).copied().collect())
    }

    pub fn labels(&self) -> SlotLabels {
        SlotLabels::new(self.sig.m, self.sig.n)
    }
}

/// Cone-surface volumes backed by an exact recursion engine.
pub struct ConeVolumes {
    engine: VolumeEngine<Rational>,
}

impl ConeVolumes {
    pub fn new(config: Config) -> Result<Self> {
        Ok(ConeVolumes { engine: VolumeEngine::new(config)? })
    }

    pub fn engine(&self) -> &VolumeEngine<Rational> {
        &self.engine
    }

    /// Exact polynomial in `ℓ_1..ℓ_m, θ_1..θ_n`.
    pub fn volume_polynomial(&self, spec: &ConeSurfaceSpec) -> Result<VolumePolynomial> {
        spec.validate()?;
        self.engine.compute_volume(spec.sig)
    }

    /// Numeric volume; nonempty moduli spaces have positive volume, so a
    /// non-positive value is reported as an internal error.
    pub fn volume_value(&self, spec: &ConeSurfaceSpec) -> Result<f64> {
        let p = self.volume_polynomial(spec)?;
        let v = p.eval_numeric(&spec.point()?, std::f64::consts::PI)?;
        if !(v > 0.0) {
            return Err(Error::NonPositiveVolume(v));
        }
        Ok(v)
    }

    /// The all-boundary polynomial evaluated at `ℓ = iθ` in complex
    /// arithmetic, for comparison with [`Self::volume_value`].
    pub fn volume_value_complex(&self, spec: &ConeSurfaceSpec) -> Result<Complex64> {
        spec.validate()?;
        self.engine.check_caps(spec.sig)?;
        let all = self.engine.boundary_volume(spec.sig.g, spec.sig.slots())?;
        let point: Vec<Complex64> = spec
            .lengths
            .as_ref()
            .ok_or(Error::LengthMismatch { expected: spec.sig.m, got: 0 })?
            .iter()
            .map(|&l| Complex64::new(l, 0.0))
            .chain(spec.angles.iter().flatten().map(|&t| Complex64::new(0.0, t)))
            .collect();
        all.eval_complex(&point, std::f64::consts::PI)
    }

    /// The volume with cone `cone_index` (0-based among cone points) sent to
    /// angle 0, i.e. replaced by a cusp. The slot is dropped.
    pub fn cusp_limit_check(&self, sig: SurfaceSignature, cone_index: usize) -> Result<VolumePolynomial> {
        if cone_index >= sig.n {
            return Err(Error::SlotOutOfRange { slot: cone_index, nvars: sig.n });
        }
        let p = self.volume_polynomial(&ConeSurfaceSpec::symbolic(sig))?;
        p.specialize_zero(sig.m + cone_index)
    }
}
