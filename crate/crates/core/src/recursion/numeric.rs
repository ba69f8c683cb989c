//! Fully numeric assembly of the recursion: every integral against a gap
//! kernel is done by quadrature instead of the closed-form moment
//! transforms. Lower volumes are the exact polynomials evaluated in floating
//! point.

use std::sync::Arc;

use super::signature::SurfaceSignature;
use super::splitting::enumerate_splittings;
use super::VolumeEngine;
use crate::error::{Error, Result};
use crate::kernels::quadrature::{gl_integrate, QuadratureOracle};
use crate::kernels::{gap_derivative, BoundaryLabel, GapCase, GapKernel};
use crate::polyalg::{Polynomial, SlotKind};
use crate::Rational;

use std::f64::consts::PI;

type Poly = Arc<Polynomial<Rational>>;

/// Numeric recursion driver for one signature and distinguished slot.
pub struct NumericAssembly<'a> {
    engine: &'a VolumeEngine<Rational>,
    sig: SurfaceSignature,
    d: usize,
    quad: QuadratureOracle,
    rest: Vec<usize>,
    nonseparating: Option<Polynomial<f64>>,
    separating: Vec<(Polynomial<f64>, Vec<usize>, Polynomial<f64>, Vec<usize>)>,
    pairings: Vec<(usize, Polynomial<f64>, Vec<usize>)>,
}

fn label(kind: SlotKind, v: f64) -> BoundaryLabel {
    match kind {
        SlotKind::Boundary => BoundaryLabel::Geodesic(v),
        SlotKind::Cone => BoundaryLabel::Cone(v),
    }
}

impl<'a> NumericAssembly<'a> {
    pub fn new(engine: &'a VolumeEngine<Rational>, sig: SurfaceSignature, d: usize, quad: QuadratureOracle) -> Result<Self> {
        engine.check_caps(sig)?;
        if d >= sig.slots() {
            return Err(Error::SlotOutOfRange { slot: d, nvars: sig.slots() });
        }
        let get = |s: SurfaceSignature| -> Result<Poly> { Ok(Arc::new(engine.volume_uncapped(s)?)) };
        let rest: Vec<usize> = (0..sig.slots()).filter(|&s| s != d).collect();
        let count = |slots: &[usize]| {
            let b = slots.iter().filter(|&&s| s < sig.m).count();
            (b, slots.len() - b)
        };
        let mut nonseparating = None;
        if sig.g >= 1 {
            let (b, c) = count(&rest);
            let s = SurfaceSignature::unchecked(sig.g - 1, b + 2, c);
            if s.is_stable() {
                nonseparating = Some(get(s)?.to_float());
            }
        }
        let mut separating = Vec::new();
        for split in enumerate_splittings(sig, d)? {
            let slots = |side: &super::splitting::Side| -> Vec<usize> {
                side.boundaries.iter().chain(&side.cones).copied().collect()
            };
            separating.push((
                get(split.first.signature())?.to_float(),
                slots(&split.first),
                get(split.second.signature())?.to_float(),
                slots(&split.second),
            ));
        }
        let mut pairings = Vec::new();
        for &p in &rest {
            let others: Vec<usize> = rest.iter().copied().filter(|&s| s != p).collect();
            let (b, c) = count(&others);
            let s = SurfaceSignature::unchecked(sig.g, b + 1, c);
            if s.is_stable() {
                pairings.push((p, get(s)?.to_float(), others));
            }
        }
        Ok(NumericAssembly { engine, sig, d, quad, rest, nonseparating, separating, pairings })
    }

    pub fn engine(&self) -> &VolumeEngine<Rational> {
        self.engine
    }

    fn kind(&self, s: usize) -> SlotKind {
        self.sig.kind(s)
    }

    /// `∂(½ v_d V)/∂v_d` at `v_d = t`, other slots at `point` (own
    /// variables: lengths for boundaries, angles for cone points).
    pub fn rhs(&self, point: &[f64], t: f64) -> Result<f64> {
        if point.len() != self.sig.slots() {
            return Err(Error::LengthMismatch { expected: self.sig.slots(), got: point.len() });
        }
        let gamma = label(self.kind(self.d), t);
        let degree = 2 * self.sig.dimension() as usize + 4;
        let inner_nodes = degree / 2 + 2;

        if self.sig.dimension() == 0 {
            // Pants: V = 1.
            return Ok(0.5);
        }
        if self.sig.g == 1 && self.sig.slots() == 1 {
            // One-holed torus: both cuffs of the pants are the same geodesic.
            let mut failure = None;
            let v = self.quad.integrate_to_infinity(
                |x| {
                    let k = GapKernel { case: GapCase::Gap1, gamma, alpha: BoundaryLabel::Geodesic(x), beta: BoundaryLabel::Geodesic(x) };
                    match gap_derivative(&k) {
                        Ok(g) => 0.5 * x * g.re,
                        Err(e) => {
                            failure.get_or_insert(e);
                            0.0
                        }
                    }
                },
                0.0,
            )?;
            return match failure {
                Some(e) => Err(e),
                None => Ok(v),
            };
        }

        let mut total = 0.0;
        if self.nonseparating.is_some() || !self.separating.is_empty() {
            let w = |x: f64, y: f64| -> Result<f64> {
                let mut acc = 0.0;
                if let Some(p) = &self.nonseparating {
                    let mut vals = vec![x, y];
                    vals.extend(self.rest.iter().map(|&s| point[s]));
                    acc += p.eval_numeric(&vals, PI)?;
                }
                for (a, sa, b, sb) in &self.separating {
                    let mut va = vec![x];
                    va.extend(sa.iter().map(|&s| point[s]));
                    let mut vb = vec![y];
                    vb.extend(sb.iter().map(|&s| point[s]));
                    acc += a.eval_numeric(&va, PI)? * b.eval_numeric(&vb, PI)?;
                }
                Ok(acc)
            };
            let mut failure = None;
            let v = self.quad.integrate_to_infinity(
                |s| {
                    // ∂Gap₁ depends on α and β only through α + β = s.
                    let k = GapKernel { case: GapCase::Gap1, gamma, alpha: BoundaryLabel::Geodesic(s / 2.0), beta: BoundaryLabel::Geodesic(s / 2.0) };
                    let kernel = match gap_derivative(&k) {
                        Ok(v) => v.re,
                        Err(e) => {
                            failure.get_or_insert(e);
                            return 0.0;
                        }
                    };
                    let inner = gl_integrate(inner_nodes, 0.0, s, |x| match w(x, s - x) {
                        Ok(v) => x * (s - x) * v,
                        Err(e) => {
                            failure.get_or_insert(e);
                            0.0
                        }
                    });
                    kernel * 0.5 * inner
                },
                0.0,
            )?;
            if let Some(e) = failure {
                return Err(e);
            }
            total += v;
        }

        for (p, u, others) in &self.pairings {
            let (case, alpha) = match self.kind(*p) {
                SlotKind::Boundary => (GapCase::Gap2, BoundaryLabel::Geodesic(point[*p])),
                SlotKind::Cone => (GapCase::Gap3, BoundaryLabel::Cone(point[*p])),
            };
            let mut failure = None;
            let v = self.quad.integrate_to_infinity(
                |x| {
                    let k = GapKernel { case, gamma, alpha, beta: BoundaryLabel::Geodesic(x) };
                    let mut vals = vec![x];
                    vals.extend(others.iter().map(|&s| point[s]));
                    match (gap_derivative(&k), u.eval_numeric(&vals, PI)) {
                        (Ok(g), Ok(uv)) => x * g.re * uv,
                        (Err(e), _) | (_, Err(e)) => {
                            failure.get_or_insert(e);
                            0.0
                        }
                    }
                },
                0.0,
            )?;
            if let Some(e) = failure {
                return Err(e);
            }
            total += v;
        }
        Ok(total)
    }

    /// `V(point) = (2/v_d) ∫₀^{v_d} rhs(t) dt`, the `t`-integral by
    /// Gauss–Legendre (exact for the polynomial dependence on `t`).
    pub fn volume(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.sig.slots() {
            return Err(Error::LengthMismatch { expected: self.sig.slots(), got: point.len() });
        }
        let vd = point[self.d];
        if !(vd > 0.0) {
            return Err(Error::NonPositiveLength(vd));
        }
        let nodes = self.sig.dimension() as usize + 2;
        let mut failure = None;
        let integral = gl_integrate(nodes, 0.0, vd, |t| match self.rhs(point, t) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        Ok(2.0 * integral / vd)
    }
}
