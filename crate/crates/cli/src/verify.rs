//! Verification suites behind `wpcone verify`.

use std::f64::consts::PI;

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use wpcone::conepoints::{ConeSurfaceSpec, ConeVolumes};
use wpcone::kernels::{h_complex, kernel_derivative_h, moment_integral_numeric, BoundaryLabel, QuadratureOracle};
use wpcone::mcshane::{integrate_volume_identity, verify_mcshane};
use wpcone::recursion::{NumericAssembly, SurfaceSignature};
use wpcone::Config;

use crate::{parse_number, CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Args, Debug)]
pub struct SuiteArgs {
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "kind")]
pub struct McShaneKind {
    /// Cone angle in (0, π].
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    /// Boundary length (> 0).
    #[arg(long, allow_hyphen_values = true)]
    length: Option<String>,
    /// One-cusped torus.
    #[arg(long)]
    cusp: bool,
}

#[derive(Args, Debug)]
pub struct McShaneArgs {
    #[command(flatten)]
    kind: McShaneKind,
    /// Read `--theta` in degrees.
    #[arg(long)]
    degrees: bool,
    /// Largest geodesic length summed.
    #[arg(long, default_value_t = 40.0)]
    cutoff: f64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
}

#[derive(Args, Debug)]
pub struct RecursionArgs {
    /// Largest genus for the direct-versus-substitution comparison.
    #[arg(long, default_value_t = 2)]
    gmax: u32,
    /// Largest m + n for the direct-versus-substitution comparison.
    #[arg(long, default_value_t = 4)]
    slotmax: usize,
    /// Random points per signature for the numeric oracle.
    #[arg(long, default_value_t = 3)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
}

/// One line of a suite report.
struct Check {
    name: String,
    value: f64,
    expected: f64,
    tol: f64,
    relative: bool,
}

impl Check {
    fn error(&self) -> f64 {
        let e = (self.value - self.expected).abs();
        if self.relative {
            e / self.expected.abs().max(1.0)
        } else {
            e
        }
    }

    fn pass(&self) -> bool {
        self.error() <= self.tol
    }
}

fn emit(suite: &str, checks: &[Check], format: ReportFormat, out: &mut String) -> CliResult<()> {
    let failed = checks.iter().filter(|c| !c.pass()).count();
    match format {
        ReportFormat::Json => {
            let rows: Vec<_> = checks
                .iter()
                .map(|c| {
                    json!({"name": c.name, "value": c.value, "expected": c.expected, "error": c.error(),
                           "tol": c.tol, "relative": c.relative, "pass": c.pass()})
                })
                .collect();
            let doc = json!({"suite": suite, "checks": rows, "failed": failed});
            out.push_str(&serde_json::to_string_pretty(&doc).expect("report serializes"));
            out.push('\n');
        }
        ReportFormat::Text => {
            for c in checks {
                out.push_str(&format!(
                    "{} {}: value {:.15e}, expected {:.15e}, error {:.2e} (tol {:.0e})\n",
                    if c.pass() { "ok  " } else { "FAIL" },
                    c.name,
                    c.value,
                    c.expected,
                    c.error(),
                    c.tol
                ));
            }
            out.push_str(&format!("{suite}: {} checks, {failed} failed\n", checks.len()));
        }
    }
    if failed > 0 {
        return Err(CliError::Internal(format!("{suite} verification failed in {failed} check(s)")));
    }
    Ok(())
}

pub fn mcshane(a: &McShaneArgs, out: &mut String) -> CliResult<()> {
    let kind = if let Some(t) = &a.kind.theta {
        let mut theta = parse_number(t)?;
        if a.degrees {
            theta *= PI / 180.0;
        }
        BoundaryLabel::Cone(theta)
    } else if let Some(l) = &a.kind.length {
        BoundaryLabel::Geodesic(parse_number(l)?)
    } else {
        BoundaryLabel::Cusp
    };
    if !(a.cutoff.is_finite() && a.cutoff <= 60.0) {
        return Err(CliError::Usage(format!("--cutoff must be finite and at most 60, got {}", a.cutoff)));
    }
    let report = verify_mcshane(kind.validate()?, a.cutoff)?;
    match a.format {
        ReportFormat::Json => out.push_str(&report.to_json()),
        ReportFormat::Text => out.push_str(report.to_table().trim_end()),
    }
    out.push('\n');
    Ok(())
}

pub fn kernel(cfg: Config, a: &SuiteArgs, out: &mut String) -> CliResult<()> {
    let quad = QuadratureOracle::with_tol(cfg.quad_tol.min(1e-11));
    let mut checks = Vec::new();
    for theta in [0.1, 0.5, 1.0, 2.0, PI] {
        let value = quad.integrate_to_infinity(|x| x * kernel_derivative_h(theta, x).unwrap_or(f64::NAN), 0.0)?;
        checks.push(Check {
            name: format!("first moment θ={theta:.6}"),
            value,
            expected: PI * PI / 6.0 - theta * theta / 8.0,
            tol: 1e-9,
            relative: false,
        });
    }
    let rel = QuadratureOracle { rel_tol: 1e-12, ..quad };
    for k in 0..=6u32 {
        for j in 0..20 {
            let t = 0.3 * j as f64;
            let expected = moment_integral_numeric(k, Complex64::new(t, 0.0))?.re;
            let value =
                rel.integrate_to_infinity(|x| x.powi(2 * k as i32 + 1) * h_complex(x, Complex64::new(t, 0.0)).re, 0.0)?;
            checks.push(Check { name: format!("F_{} at t={t:.1}", 2 * k + 1), value, expected, tol: 1e-9, relative: true });
        }
    }
    emit("kernel", &checks, a.format, out)
}

pub fn identity(_cfg: Config, a: &SuiteArgs, out: &mut String) -> CliResult<()> {
    let mut checks = Vec::new();
    for j in 1..=20 {
        let theta = PI * j as f64 / 20.0;
        checks.push(Check {
            name: format!("V(1,0,1) at θ={theta:.6}"),
            value: integrate_volume_identity(theta, 40.0)?,
            expected: -theta * theta / 48.0 + PI * PI / 12.0,
            tol: 1e-8,
            relative: false,
        });
    }
    emit("identity", &checks, a.format, out)
}

pub fn recursion(cfg: Config, a: &RecursionArgs, out: &mut String) -> CliResult<()> {
    let volumes = ConeVolumes::new(cfg)?;
    let engine = volumes.engine();
    let mut checks = Vec::new();
    for sig in crate::table_signatures(a.gmax, a.slotmax).into_iter().filter(|s| s.n > 0) {
        let direct = engine.direct_cone_volume(sig)?;
        let substituted = engine.compute_volume(sig)?;
        checks.push(Check {
            name: format!("direct = substituted ({},{},{})", sig.g, sig.m, sig.n),
            value: if *direct == substituted { 0.0 } else { 1.0 },
            expected: 0.0,
            tol: 0.0,
            relative: false,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let quad = QuadratureOracle { rel_tol: 1e-13, ..QuadratureOracle::with_tol(1e-13) };
    for (g, m, n) in [(0, 4, 0), (1, 2, 0), (1, 1, 1), (2, 1, 0)] {
        let sig = SurfaceSignature::new(g, m, n)?;
        let numeric = NumericAssembly::new(engine, sig, 0, quad)?;
        for _ in 0..a.samples {
            let lengths: Vec<f64> = (0..m).map(|_| rng.gen_range(0.1..6.0)).collect();
            let angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..PI)).collect();
            let spec = ConeSurfaceSpec::numeric(sig, lengths, angles);
            let point = spec.point()?;
            checks.push(Check {
                name: format!("numeric oracle ({g},{m},{n}) at {point:.3?}"),
                value: numeric.volume(&point)?,
                expected: volumes.volume_value(&spec)?,
                tol: 1e-8,
                relative: true,
            });
        }
    }
    emit("recursion", &checks, a.format, out)
}
