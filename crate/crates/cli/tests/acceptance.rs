//! Acceptance suite: one PASS/FAIL line per criterion, with runtimes.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wpcone::conepoints::{ConeSurfaceSpec, ConeVolumes};
use wpcone::kernels::{
    gap_derivative, gap_real, h_complex, kernel_derivative_h, moment_integral_numeric, BoundaryLabel, GapCase,
    GapKernel, QuadratureOracle,
};
use wpcone::mcshane::{integrate_volume_identity, verify_mcshane};
use wpcone::polyalg::SlotLabels;
use wpcone::recursion::{NumericAssembly, SurfaceSignature};
use wpcone::{Config, ExactEngine, Polynomial};

type Outcome = Result<String, String>;

fn wpcone(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_wpcone")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> Result<String, String> {
    let out = wpcone(args);
    if !out.status.success() {
        return Err(format!("`wpcone {}` exited with {:?}", args.join(" "), out.status.code()));
    }
    Ok(String::from_utf8_lossy(&out.stdout).trim_end().to_string())
}

fn sig(g: u32, m: usize, n: usize) -> SurfaceSignature {
    SurfaceSignature::new(g, m, n).unwrap()
}

fn signatures(gmax: u32, slotmax: usize) -> Vec<SurfaceSignature> {
    let mut out = Vec::new();
    for g in 0..=gmax {
        for slots in 1..=slotmax {
            for n in 0..=slots {
                if let Ok(s) = SurfaceSignature::new(g, slots - n, n) {
                    out.push(s);
                }
            }
        }
    }
    out
}

fn within(limit: Duration, elapsed: Duration) -> Result<(), String> {
    if elapsed > limit {
        Err(format!("took {elapsed:.2?}, limit {limit:?}"))
    } else {
        Ok(())
    }
}

fn c1_closed_form() -> Outcome {
    let start = Instant::now();
    let latex = stdout(&["volume", "--g", "1", "--cones", "1", "--format", "latex"])?;
    within(Duration::from_secs(1), start.elapsed())?;
    let expect = "-\\frac{\\theta_1^2}{48}+\\frac{\\pi^2}{12}";
    if latex != expect {
        return Err(format!("got {latex:?}"));
    }
    let text = stdout(&["volume", "--g", "1", "--cones", "1", "--format", "text"])?;
    if text != "-1/48*theta1^2 + 1/12*pi^2" {
        return Err(format!("text form {text:?}"));
    }
    Ok(latex)
}

fn c2_base_volumes() -> Outcome {
    let e = ExactEngine::new(Config::default()).unwrap();
    for (m, n) in [(3, 0), (2, 1), (1, 2), (0, 3)] {
        let v = e.compute_volume(sig(0, m, n)).map_err(|e| e.to_string())?;
        if v != Polynomial::one(3) {
            return Err(format!("V(0,{m},{n}) = {}", v.to_text(&SlotLabels::new(m, n))));
        }
        let cli = stdout(&["volume", "--g", "0", "--boundaries", &m.to_string(), "--cones", &n.to_string()])?;
        if cli != "1" {
            return Err(format!("CLI printed {cli:?} for (0,{m},{n})"));
        }
    }
    Ok("V(0,3,0) = V(0,2,1) = V(0,1,2) = V(0,0,3) = 1".into())
}

fn c3_substitution() -> Outcome {
    let start = Instant::now();
    let e = ExactEngine::new(Config::default()).unwrap();
    let mut count = 0;
    for s in signatures(2, 4).into_iter().filter(|s| s.n > 0) {
        let direct = e.direct_cone_volume(s).map_err(|e| e.to_string())?;
        let substituted = e.compute_volume(s).map_err(|e| e.to_string())?;
        if *direct != substituted {
            return Err(format!("{s}: paths differ"));
        }
        count += 1;
    }
    within(Duration::from_secs(60), start.elapsed())?;
    Ok(format!("{count} cone signatures agree coefficient-wise"))
}

fn c4_kernels() -> Outcome {
    let start = Instant::now();
    let quad = QuadratureOracle::with_tol(1e-12);
    let mut worst: f64 = 0.0;
    for theta in [0.1, 0.5, 1.0, 2.0, PI] {
        let v = quad
            .integrate_to_infinity(|x| x * kernel_derivative_h(theta, x).unwrap(), 0.0)
            .map_err(|e| e.to_string())?;
        let err = (v - (PI * PI / 6.0 - theta * theta / 8.0)).abs();
        worst = worst.max(err);
        if err > 1e-9 {
            return Err(format!("first moment at θ={theta}: error {err:e}"));
        }
    }
    let rel = QuadratureOracle { rel_tol: 1e-13, ..QuadratureOracle::with_tol(1e-13) };
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst_moment: f64 = 0.0;
    for k in 0..=6u32 {
        for _ in 0..20 {
            let t = rng.gen_range(0.0..8.0);
            let exact = moment_integral_numeric(k, Complex64::new(t, 0.0)).map_err(|e| e.to_string())?.re;
            let num = rel
                .integrate_to_infinity(|x| x.powi(2 * k as i32 + 1) * h_complex(x, Complex64::new(t, 0.0)).re, 0.0)
                .map_err(|e| e.to_string())?;
            let err = (exact - num).abs() / exact.abs().max(1.0);
            worst_moment = worst_moment.max(err);
            if err > 1e-9 {
                return Err(format!("F_{} at t={t}: relative error {err:e}", 2 * k + 1));
            }
        }
    }
    within(Duration::from_secs(30), start.elapsed())?;
    Ok(format!("first-moment error {worst:.1e}, moment relative error {worst_moment:.1e}"))
}

fn c5_identity() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for j in 1..=20 {
        let theta = PI * j as f64 / 20.0;
        let v = integrate_volume_identity(theta, 40.0).map_err(|e| e.to_string())?;
        let err = (v - (PI * PI / 12.0 - theta * theta / 48.0)).abs();
        worst = worst.max(err);
        if err > 1e-8 {
            return Err(format!("θ={theta}: error {err:e}"));
        }
    }
    within(Duration::from_secs(30), start.elapsed())?;
    Ok(format!("20 angles, max error {worst:.1e}"))
}

fn c6_mcshane() -> Outcome {
    let mut lines = Vec::new();
    for (name, kind) in [
        ("θ=π", BoundaryLabel::Cone(PI)),
        ("θ=π/2", BoundaryLabel::Cone(PI / 2.0)),
        ("θ=1", BoundaryLabel::Cone(1.0)),
        ("ℓ=1", BoundaryLabel::Geodesic(1.0)),
        ("ℓ=2", BoundaryLabel::Geodesic(2.0)),
        ("cusp", BoundaryLabel::Cusp),
    ] {
        let start = Instant::now();
        let rep = verify_mcshane(kind, 40.0).map_err(|e| e.to_string())?;
        within(Duration::from_secs(60), start.elapsed())?;
        if matches!(kind, BoundaryLabel::Cusp) && rep.target != 0.5 {
            return Err("cusp target is not 1/2".into());
        }
        if rep.final_residual() >= 1e-6 {
            return Err(format!("{name}: residual {:e}", rep.final_residual()));
        }
        if !rep.is_monotone_beyond(15.0) {
            return Err(format!("{name}: residuals not monotone beyond 15\n{}", rep.to_table()));
        }
        lines.push(format!("{name} {:.1e}", rep.final_residual()));
    }
    // The CLI path with a decimal angle.
    let json = stdout(&["verify", "mcshane", "--theta", "3.14159", "--cutoff", "40", "--format", "json"])?;
    let v: serde_json::Value = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    let last = v["partialSums"].as_array().and_then(|a| a.last()).ok_or("no partial sums")?;
    let r = last["residual"].as_f64().ok_or("no residual")?;
    if r >= 1e-6 {
        return Err(format!("CLI residual {r:e}"));
    }
    Ok(format!("residuals at cutoff 40: {}", lines.join(", ")))
}

fn c7_numeric_oracle() -> Outcome {
    let volumes = ConeVolumes::new(Config::default()).unwrap();
    let quad = QuadratureOracle { rel_tol: 1e-13, ..QuadratureOracle::with_tol(1e-13) };
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for s in [sig(0, 4, 0), sig(1, 2, 0), sig(1, 1, 1), sig(2, 1, 0)] {
        let numeric = NumericAssembly::new(volumes.engine(), s, 0, quad).map_err(|e| e.to_string())?;
        for _ in 0..30 {
            let lengths = (0..s.m).map(|_| rng.gen_range(0.1..10.0)).collect();
            let angles = (0..s.n).map(|_| rng.gen_range(0.05..PI)).collect();
            let spec = ConeSurfaceSpec::numeric(s, lengths, angles);
            let exact = volumes.volume_value(&spec).map_err(|e| e.to_string())?;
            let approx = numeric.volume(&spec.point().unwrap()).map_err(|e| e.to_string())?;
            let err = (exact - approx).abs() / exact.abs();
            worst = worst.max(err);
            if err > 1e-8 {
                return Err(format!("{s} at {:?}: relative error {err:e}", spec.point()));
            }
        }
    }
    Ok(format!("120 points, max relative error {worst:.1e}"))
}

fn c8_properties() -> Outcome {
    let e = ExactEngine::new(Config::default()).unwrap();
    let sigs = signatures(3, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for &s in &sigs {
        let v = e.compute_volume(s).map_err(|e| e.to_string())?;
        if !v.is_even() || !v.is_homogeneous_of(s.dimension()) {
            return Err(format!("{s}: not homogeneous of degree {}", s.dimension()));
        }
        let n = s.slots();
        for (lo, hi) in [(0, s.m), (s.m, n)] {
            if hi - lo >= 2 {
                let mut swap: Vec<usize> = (0..n).collect();
                swap.swap(lo, hi - 1);
                if v.relabel(n, &swap).map_err(|e| e.to_string())? != v {
                    return Err(format!("{s}: not symmetric under swapping slots {lo} and {}", hi - 1));
                }
            }
        }
        let all = e.boundary_volume(s.g, n).map_err(|e| e.to_string())?;
        for _ in 0..20 {
            let point: Vec<f64> =
                (0..n).map(|i| if i < s.m { rng.gen_range(0.0..10.0) } else { rng.gen_range(1e-3..=PI) }).collect();
            let real = v.eval_numeric(&point, PI).map_err(|e| e.to_string())?;
            if !(real > 0.0) {
                return Err(format!("{s}: non-positive value {real} at {point:?}"));
            }
            let z: Vec<Complex64> = point
                .iter()
                .enumerate()
                .map(|(i, &x)| if i < s.m { Complex64::new(x, 0.0) } else { Complex64::new(0.0, x) })
                .collect();
            let c = all.eval_complex(&z, PI).map_err(|e| e.to_string())?;
            if c.im.abs() > 1e-12 * real || (c.re - real).abs() > 1e-12 * real {
                return Err(format!("{s}: substitution not real at {point:?}: {c}"));
            }
        }
    }
    for theta in [0.3, 1.0, 2.0, 3.0] {
        for (a, b) in [(0.5, 0.5), (1.0, 3.0), (4.0, 2.0)] {
            let k = |t: f64| {
                GapKernel::new(GapCase::Gap1, BoundaryLabel::Cone(t), BoundaryLabel::Geodesic(a), BoundaryLabel::Geodesic(b))
                    .unwrap()
            };
            let exact = gap_derivative(&k(theta)).unwrap().re;
            let fd = |h: f64| (gap_real(&k(theta + h)).unwrap() - gap_real(&k(theta - h)).unwrap()) / (2.0 * h);
            let (e1, e2) = ((fd(2e-2) - exact).abs(), (fd(1e-2) - exact).abs());
            if !(e1 < 1e-4 && e2 < e1 / 3.0) {
                return Err(format!("derivative transfer at θ={theta}: errors {e1:e}, {e2:e}"));
            }
        }
    }
    Ok(format!("{} signatures (g ≤ 3, m + n ≤ 5)", sigs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 closed form of V(1,0,1)", c1_closed_form),
        ("2 base volumes", c2_base_volumes),
        ("3 substitution coherence", c3_substitution),
        ("4 kernel certification", c4_kernels),
        ("5 volume identity", c5_identity),
        ("6 McShane convergence", c6_mcshane),
        ("7 numeric-kernel oracle", c7_numeric_oracle),
        ("8 property suites", c8_properties),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS criterion {name} [{elapsed:.2?}]: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name} [{elapsed:.2?}]: {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
