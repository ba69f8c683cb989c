//! Numerical checks of the McShane-type identities on one-holed and
//! one-cone tori, and of the integral formula for the one-cone torus volume.

mod identity;
mod trace_tree;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernels::{cone_torus_kernel_d, logistic_real, BoundaryLabel, DNormalization};

pub use identity::{integrate_volume_identity, integrate_volume_identity_with, identity_tail_bound};
pub use trace_tree::{
    enumerate_geodesics, enumerate_to_depth, kappa_boundary, kappa_cone, length_from_trace, root_triple, Geodesic,
    Slope, TraceTriple,
};

/// Default checkpoints: every 5 from 10 up to the cutoff, then the cutoff.
pub fn default_checkpoints(cutoff: f64) -> Vec<f64> {
    let mut out: Vec<f64> = (2..).map(|i| 5.0 * i as f64).take_while(|&c| c < cutoff).collect();
    out.push(cutoff);
    out
}

/// The Fricke constant of the torus whose third boundary is `kind`.
pub fn kappa_for(kind: BoundaryLabel) -> Result<f64> {
    Ok(match kind.validate()? {
        BoundaryLabel::Cone(theta) => kappa_cone(theta),
        BoundaryLabel::Geodesic(l) => kappa_boundary(l),
        BoundaryLabel::Cusp => 0.0,
    })
}

/// Value the sum converges to: `θ/2`, `ℓ/2` or `½`.
pub fn mcshane_target(kind: BoundaryLabel) -> f64 {
    match kind {
        BoundaryLabel::Cone(theta) => theta / 2.0,
        BoundaryLabel::Geodesic(l) => l / 2.0,
        BoundaryLabel::Cusp => 0.5,
    }
}

/// Contribution of one simple closed geodesic of length `len`; on the torus
/// both cuffs of the complementary pants are that geodesic.
pub fn mcshane_summand(kind: BoundaryLabel, len: f64) -> Result<f64> {
    match kind {
        BoundaryLabel::Cone(theta) => cone_torus_kernel_d(theta, len, DNormalization::Summand),
        BoundaryLabel::Geodesic(l) => {
            let h = l / 2.0;
            Ok(2.0 * (h.sinh() / (h.cosh() + len.exp())).atanh())
        }
        BoundaryLabel::Cusp => Ok(logistic_real(len)),
    }
}

/// Compensated (Neumaier) running sum.
#[derive(Clone, Copy, Debug, Default)]
struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PartialSum {
    pub length_cutoff: f64,
    pub count: usize,
    pub sum: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConvergenceReport {
    pub target: f64,
    pub partial_sums: Vec<PartialSum>,
    pub geodesic_count: usize,
}

impl ConvergenceReport {
    pub fn final_residual(&self) -> f64 {
        self.partial_sums.last().map_or(f64::INFINITY, |p| p.residual)
    }

    /// Residuals never grow from `from` on, up to a few ulps of the target.
    pub fn is_monotone_beyond(&self, from: f64) -> bool {
        let slack = 4.0 * f64::EPSILON * self.target.abs();
        let tail: Vec<_> = self.partial_sums.iter().filter(|p| p.length_cutoff >= from).collect();
        tail.windows(2).all(|w| w[1].residual <= w[0].residual + slack)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("target {:.17e}\n", self.target);
        out.push_str(&format!("{:>8}  {:>8}  {:>24}  {:>12}\n", "cutoff", "count", "sum", "residual"));
        for p in &self.partial_sums {
            out.push_str(&format!(
                "{:>8.3}  {:>8}  {:>24.17e}  {:>12.4e}\n",
                p.length_cutoff, p.count, p.sum, p.residual
            ));
        }
        out
    }
}

/// Summands of all geodesics up to a cutoff, ordered by length.
#[derive(Clone, Debug)]
pub struct McShaneSeries {
    target: f64,
    terms: Vec<(f64, f64)>,
}

impl McShaneSeries {
    pub fn new(root: &TraceTriple, kind: BoundaryLabel, cutoff: f64, parallel: bool) -> Result<Self> {
        let kappa = kappa_for(kind)?;
        if root.fricke_residual(kappa) > 1e-8 {
            return Err(Error::FrickeMismatch);
        }
        let mut geodesics = enumerate_geodesics(root, cutoff, parallel)?;
        geodesics.sort_by(|a, b| a.length.total_cmp(&b.length).then(a.slope.cmp(&b.slope)));
        let terms = geodesics
            .iter()
            .map(|g| mcshane_summand(kind, g.length).map(|s| (g.length, s)))
            .collect::<Result<_>>()?;
        Ok(McShaneSeries { target: mcshane_target(kind), terms })
    }

    pub fn target(&self) -> f64 {
        self.target
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Partial sums at increasing cutoffs.
    pub fn partial_sums(&self, cutoffs: &[f64]) -> Vec<PartialSum> {
        let mut acc = CompensatedSum::default();
        let mut i = 0;
        cutoffs
            .iter()
            .map(|&c| {
                while i < self.terms.len() && self.terms[i].0 <= c {
                    acc.add(self.terms[i].1);
                    i += 1;
                }
                let sum = acc.value();
                PartialSum { length_cutoff: c, count: i, sum, residual: (self.target - sum).abs() }
            })
            .collect()
    }

    pub fn residual_at(&self, cutoff: f64) -> f64 {
        self.partial_sums(&[cutoff])[0].residual
    }

    /// `residual(L + 2ln2) / residual(L)` for each `L`.
    pub fn decay_ratios(&self, cutoffs: &[f64]) -> Vec<(f64, f64)> {
        let step = 2.0 * std::f64::consts::LN_2;
        cutoffs.iter().map(|&l| (l, self.residual_at(l + step) / self.residual_at(l))).collect()
    }

    /// Geometric mean of [`Self::decay_ratios`]. Single ratios jump with the
    /// discrete length spectrum; the mean tracks the decay rate.
    pub fn mean_decay_ratio(&self, cutoffs: &[f64]) -> f64 {
        let ratios = self.decay_ratios(cutoffs);
        let log_sum: f64 = ratios.iter().map(|(_, r)| r.ln()).sum();
        (log_sum / ratios.len() as f64).exp()
    }
}

/// Partial sums of the McShane series at the default checkpoints.
pub fn mcshane_sum(root: &TraceTriple, kind: BoundaryLabel, cutoff: f64) -> Result<ConvergenceReport> {
    mcshane_sum_at(root, kind, &default_checkpoints(cutoff), true)
}

/// Partial sums at the given (increasing) cutoffs.
pub fn mcshane_sum_at(root: &TraceTriple, kind: BoundaryLabel, cutoffs: &[f64], parallel: bool) -> Result<ConvergenceReport> {
    let max = cutoffs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let series = McShaneSeries::new(root, kind, max, parallel)?;
    let mut sorted = cutoffs.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(ConvergenceReport { target: series.target(), partial_sums: series.partial_sums(&sorted), geodesic_count: series.len() })
}

/// The symmetric torus for `kind`, summed to `cutoff`.
pub fn verify_mcshane(kind: BoundaryLabel, cutoff: f64) -> Result<ConvergenceReport> {
    let root = root_triple(kappa_for(kind)?, true)?;
    mcshane_sum(&root, kind, cutoff)
}
