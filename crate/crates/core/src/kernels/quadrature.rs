//! Adaptive Gauss–Kronrod quadrature on finite and semi-infinite intervals,
//! plus fixed Gauss–Legendre rules.

use std::sync::{Mutex, OnceLock};
use std::collections::HashMap;

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Returns (Kronrod estimate, |Kronrod − Gauss|).
fn gk15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Adaptive quadrature with an absolute tolerance.
#[derive(Clone, Copy, Debug)]
pub struct QuadratureOracle {
    pub tol: f64,
    /// Relative tolerance; the target is `max(tol, rel_tol·|integral|)`.
    pub rel_tol: f64,
    /// Maximum number of subintervals per finite integral.
    pub max_intervals: usize,
    /// Width of each panel on a semi-infinite interval.
    pub panel: f64,
    /// Maximum number of panels before giving up.
    pub max_panels: usize,
}

impl Default for QuadratureOracle {
    fn default() -> Self {
        QuadratureOracle { tol: 1e-10, rel_tol: 0.0, max_intervals: 4000, panel: 8.0, max_panels: 200 }
    }
}

impl QuadratureOracle {
    pub fn with_tol(tol: f64) -> Self {
        QuadratureOracle { tol, ..Self::default() }
    }

    /// `∫_a^b f` to absolute error `tol`.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64, a: f64, b: f64) -> Result<f64> {
        self.integrate_tol(&mut f, a, b, self.tol)
    }

    fn integrate_tol(&self, f: &mut impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
        if a == b {
            return Ok(0.0);
        }
        let (v, e) = gk15(f, a, b);
        let mut intervals = vec![(a, b, v, e)];
        let mut total = v;
        let mut err = e;
        while err > tol.max(self.rel_tol * total.abs()) {
            if intervals.len() >= self.max_intervals {
                return Err(Error::QuadratureFailed(format!(
                    "no convergence on [{a}, {b}] after {} subintervals (error estimate {err:e})",
                    intervals.len()
                )));
            }
            let (idx, _) = intervals
                .iter()
                .enumerate()
                .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
                .expect("nonempty");
            let (lo, hi, v, e) = intervals.swap_remove(idx);
            let mid = 0.5 * (lo + hi);
            let (v1, e1) = gk15(f, lo, mid);
            let (v2, e2) = gk15(f, mid, hi);
            total += v1 + v2 - v;
            err += e1 + e2 - e;
            intervals.push((lo, mid, v1, e1));
            intervals.push((mid, hi, v2, e2));
        }
        // Re-sum to drop the drift of the running total.
        if !total.is_finite() {
            return Err(Error::QuadratureFailed(format!("non-finite integrand on [{a}, {b}]")));
        }
        Ok(intervals.iter().map(|t| t.2).sum())
    }

    /// `∫_a^∞ f` for integrands with exponential decay. Panels are added until
    /// two consecutive panels each contribute less than `tol/20`.
    pub fn integrate_to_infinity(&self, mut f: impl FnMut(f64) -> f64, a: f64) -> Result<f64> {
        let panel_tol = self.tol / 4.0;
        let mut total = 0.0;
        let mut small = 0;
        let mut lo = a;
        let mut budget = panel_tol;
        for _ in 0..self.max_panels {
            budget *= 0.5;
            let hi = lo + self.panel;
            let v = self.integrate_tol(&mut f, lo, hi, budget.max(self.tol * 1e-3))?;
            total += v;
            lo = hi;
            if v.abs() < self.tol.max(self.rel_tol * total.abs()) / 20.0 {
                small += 1;
                if small == 2 {
                    return Ok(total);
                }
            } else {
                small = 0;
            }
        }
        Err(Error::QuadratureFailed(format!(
            "integrand has not decayed by x = {lo}"
        )))
    }

    pub fn integrate_complex_to_infinity(&self, mut f: impl FnMut(f64) -> Complex64, a: f64) -> Result<Complex64> {
        let re = self.integrate_to_infinity(|x| f(x).re, a)?;
        let im = self.integrate_to_infinity(|x| f(x).im, a)?;
        Ok(Complex64::new(re, im))
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Cached rule of a given size.
pub fn gauss_legendre_cached(n: usize) -> std::sync::Arc<(Vec<f64>, Vec<f64>)> {
    static CACHE: OnceLock<Mutex<HashMap<usize, std::sync::Arc<(Vec<f64>, Vec<f64>)>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("quadrature cache");
    guard.entry(n).or_insert_with(|| std::sync::Arc::new(gauss_legendre(n))).clone()
}

/// `∫_a^b f` with an `n`-point Gauss–Legendre rule (exact for degree < 2n).
pub fn gl_integrate<T>(n: usize, a: f64, b: f64, mut f: impl FnMut(f64) -> T) -> T
where
    T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default,
{
    let rule = gauss_legendre_cached(n);
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    let mut acc = T::default();
    for (x, w) in rule.0.iter().zip(&rule.1) {
        acc = acc + f(c + h * x) * (w * h);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn fermi_moment() {
        let q = QuadratureOracle::default();
        let v = q.integrate_to_infinity(|x| 2.0 * x / (1.0 + x.exp()), 0.0).unwrap();
        assert!((v - PI * PI / 6.0).abs() < 1e-10);
    }

    #[test]
    fn zero_integrand() {
        let q = QuadratureOracle::default();
        assert_eq!(q.integrate_to_infinity(|_| 0.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn finite_interval() {
        let q = QuadratureOracle::with_tol(1e-12);
        let v = q.integrate(|x| x.sin(), 0.0, PI).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
        let v = q.integrate(|x| x.sqrt(), 0.0, 1.0).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn non_decaying_fails() {
        let q = QuadratureOracle { max_panels: 5, ..Default::default() };
        assert!(q.integrate_to_infinity(|_| 1.0, 0.0).is_err());
    }

    #[test]
    fn gauss_legendre_exactness() {
        for n in 1..12 {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
            for d in 0..2 * n {
                let approx: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(d as i32)).sum();
                let exact = if d % 2 == 1 { 0.0 } else { 2.0 / (d as f64 + 1.0) };
                assert!((approx - exact).abs() < 1e-13, "n={n} d={d}");
            }
        }
        let v: f64 = gl_integrate(3, 1.0, 3.0, |x| x.powi(5));
        assert!((v - (729.0 - 1.0) / 6.0).abs() < 1e-11);
    }
}
