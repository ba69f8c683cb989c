//! Closed forms of `F_{2k+1}(t) = ∫₀^∞ x^{2k+1} h(x, t) dx` with
//! `h(x, t) = 1/(1+e^{(x+t)/2}) + 1/(1+e^{(x−t)/2})`.
//!
//! Integrating by parts against the Fermi–Dirac integrals gives
//! `F_{2k+1}(t) = (2k+1)! Σ_{i=0}^{k+1} ζ(2i)(2^{2i+1} − 4) t^{2k+2−2i} / (2k+2−2i)!`
//! with `ζ(0) = −1/2`; each `ζ(2i)` is a rational multiple of `π^{2i}`.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyalg::Polynomial;
use crate::scalar::{binomial, factorial, Scalar};
use crate::Rational;

/// Largest supported moment index.
const TABLE_K: u32 = 60;

/// Bernoulli numbers `B_0..B_n` (with `B_1 = −1/2`).
fn bernoulli(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        let mut s = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            s += Rational::from_integer(binomial(m as u32 + 1, k as u32)) * bk;
        }
        b.push(-s / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// `ζ(2i) / π^{2i}` for `i = 0..=k+1`, extending a shared cache on demand.
fn zeta_even_ratios(k: u32) -> Vec<Rational> {
    static CACHE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());
    let n = k as usize + 1;
    let mut cache = CACHE.lock().expect("zeta cache");
    if cache.len() <= n {
        let b = bernoulli(2 * n);
        *cache = (0..=n)
            .map(|i| {
                if i == 0 {
                    return Rational::from_ratio(-1, 2);
                }
                let sign = if i % 2 == 1 { 1 } else { -1 };
                let pow2 = Rational::from_integer(BigInt::one() << (2 * i - 1));
                Rational::from_int(sign) * &b[2 * i] * pow2 / Rational::from_integer(factorial(2 * i as u32))
            })
            .collect();
    }
    cache[..=n].to_vec()
}

/// Rational coefficients of the moment integrals: `coeff(k, i)` multiplies
/// `t^{2k+2−2i} π^{2i}`.
#[derive(Clone, Debug)]
pub struct MomentTable {
    kmax: u32,
    rows: Vec<Vec<Rational>>,
}

impl MomentTable {
    pub fn new(kmax: u32) -> Result<Self> {
        if kmax > TABLE_K {
            return Err(Error::MomentIndexTooLarge { k: kmax, max: TABLE_K });
        }
        let z = zeta_even_ratios(kmax);
        let rows = (0..=kmax)
            .map(|k| {
                let f = Rational::from_integer(factorial(2 * k + 1));
                (0..=k + 1)
                    .map(|i| {
                        let w = Rational::from_integer((BigInt::one() << (2 * i + 1)) - BigInt::from(4));
                        let d = Rational::from_integer(factorial(2 * k + 2 - 2 * i));
                        &f * &z[i as usize] * w / d
                    })
                    .collect()
            })
            .collect();
        Ok(MomentTable { kmax, rows })
    }

    pub fn kmax(&self) -> u32 {
        self.kmax
    }

    pub fn row(&self, k: u32) -> Result<&[Rational]> {
        self.rows
            .get(k as usize)
            .map(Vec::as_slice)
            .ok_or(Error::MomentIndexTooLarge { k, max: self.kmax })
    }

    /// `F_{2k+1}` as a one-slot polynomial in `t`.
    pub fn polynomial(&self, k: u32) -> Result<Polynomial<Rational>> {
        let row = self.row(k)?;
        let mut p = Polynomial::zero(1);
        for (i, c) in row.iter().enumerate() {
            let i = i as u32;
            p.add_term(crate::Monomial::new(vec![k + 1 - i], 0), 2 * i, c.clone());
        }
        Ok(p)
    }
}

/// `∫₀^∞ x^{2k+1} h(x, t) dx` as an exact polynomial in `t` and `π`.
pub fn moment_integral(k: u32, kmax: u32) -> Result<Polynomial<Rational>> {
    if k > kmax {
        return Err(Error::MomentIndexTooLarge { k, max: kmax });
    }
    MomentTable::new(k)?.polynomial(k)
}

/// Numerical value of the closed form at complex `t` (`t = iθ` for cones).
pub fn moment_integral_numeric(k: u32, t: Complex64) -> Result<Complex64> {
    let p = MomentTable::new(k)?.polynomial(k)?;
    p.eval_complex(&[t], std::f64::consts::PI)
}
