//! Exact polynomial ring for volume polynomials.
//!
//! A [`Polynomial`] lives in `C[ℓ_1, …, ℓ_N, π]` restricted to even powers of
//! π. Each slot `i` stores an exponent of `x_i = ℓ_i²` plus a parity bit for a
//! leftover odd factor `ℓ_i`; final volumes are even in every slot, the
//! parity bit only shows up transiently inside the recursion (`ℓ·V`,
//! derivatives in `ℓ`).

mod format;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use format::{JsonPolynomial, JsonTerm, SlotLabels};

/// Slots are limited by the width of the parity mask.
pub const MAX_SLOTS: usize = 32;

/// Geometric meaning of a polynomial slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SlotKind {
    /// Geodesic boundary, variable `ℓ`.
    Boundary,
    /// Cone point, variable `θ` (formally `ℓ = iθ`).
    Cone,
}

impl SlotKind {
    /// `ℓ² = sign · u` where `u` is the slot's own squared variable.
    pub fn square_sign(self) -> i64 {
        match self {
            SlotKind::Boundary => 1,
            SlotKind::Cone => -1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WithRespectTo {
    Length,
    Angle,
}

/// Exponent vector in the `x_i = ℓ_i²` variables plus per-slot parity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    xexp: Vec<u32>,
    odd: u32,
}

impl Monomial {
    pub fn new(xexp: Vec<u32>, odd: u32) -> Self {
        Monomial { xexp, odd }
    }

    pub fn constant(nvars: usize) -> Self {
        Monomial { xexp: vec![0; nvars], odd: 0 }
    }

    fn from_ell_powers(powers: &[u32]) -> Self {
        let mut odd = 0u32;
        let xexp = powers
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                if e % 2 == 1 {
                    odd |= 1 << i;
                }
                e / 2
            })
            .collect();
        Monomial { xexp, odd }
    }

    pub fn xexp(&self) -> &[u32] {
        &self.xexp
    }

    pub fn odd_mask(&self) -> u32 {
        self.odd
    }

    pub fn is_odd_in(&self, slot: usize) -> bool {
        self.odd & (1 << slot) != 0
    }

    /// Total power of `ℓ_slot`.
    pub fn ell_power(&self, slot: usize) -> u32 {
        2 * self.xexp[slot] + u32::from(self.is_odd_in(slot))
    }

    pub fn ell_powers(&self) -> Vec<u32> {
        (0..self.xexp.len()).map(|i| self.ell_power(i)).collect()
    }

    pub fn x_degree(&self) -> u32 {
        self.xexp.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.xexp.len()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let carry = self.odd & other.odd;
        let xexp = self
            .xexp
            .iter()
            .zip(&other.xexp)
            .enumerate()
            .map(|(i, (a, b))| a + b + ((carry >> i) & 1))
            .collect();
        Monomial { xexp, odd: self.odd ^ other.odd }
    }

    fn with_ell_power(&self, slot: usize, power: u32) -> Monomial {
        let mut m = self.clone();
        m.xexp[slot] = power / 2;
        if power % 2 == 1 {
            m.odd |= 1 << slot;
        } else {
            m.odd &= !(1 << slot);
        }
        m
    }
}

/// Coefficient of one monomial: a polynomial in `π²` with scalar coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PiGraded<C> {
    terms: BTreeMap<u32, C>,
}

impl<C: Scalar> PiGraded<C> {
    fn new() -> Self {
        PiGraded { terms: BTreeMap::new() }
    }

    /// Pairs `(π-exponent, coefficient)`; exponents are even.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &C)> {
        self.terms.iter().map(|(&p, c)| (p, c))
    }

    pub fn get(&self, piexp: u32) -> Option<&C> {
        self.terms.get(&piexp)
    }

    fn add(&mut self, piexp: u32, c: C) {
        debug_assert!(piexp % 2 == 0);
        let slot = self.terms.entry(piexp).or_insert_with(C::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&piexp);
        }
    }

    fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Multivariate polynomial in `ℓ_1..ℓ_N` and `π²`.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, PiGraded<C>>,
}

impl<C: Scalar> Polynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_SLOTS, "at most {MAX_SLOTS} slots");
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::constant(nvars), 0, c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    /// `c · π^piexp · Π x_i^xexp_i`.
    pub fn term(xexp: Vec<u32>, piexp: u32, c: C) -> Self {
        let mut p = Self::zero(xexp.len());
        p.add_term(Monomial::new(xexp, 0), piexp, c);
        p
    }

    /// The variable `x_slot = ℓ_slot²`.
    pub fn x(nvars: usize, slot: usize) -> Self {
        let mut e = vec![0; nvars];
        e[slot] = 1;
        Self::term(e, 0, C::one())
    }

    /// The odd variable `ℓ_slot`.
    pub fn ell(nvars: usize, slot: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::new(vec![0; nvars], 1 << slot), 0, C::one());
        p
    }

    /// `π²` as a polynomial.
    pub fn pi_squared(nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::constant(nvars), 2, C::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.values().map(|g| g.terms.len()).sum()
    }

    /// Adds `c · π^piexp · mono`, pruning zeros.
    pub fn add_term(&mut self, mono: Monomial, piexp: u32, c: C) {
        assert_eq!(mono.nvars(), self.nvars, "monomial arity");
        assert!(piexp % 2 == 0, "π exponents are even");
        if c.is_zero() {
            return;
        }
        let graded = self.terms.entry(mono.clone()).or_insert_with(PiGraded::new);
        graded.add(piexp, c);
        if graded.is_empty() {
            self.terms.remove(&mono);
        }
    }

    /// Iterates `(monomial, π-exponent, coefficient)` in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, u32, &C)> {
        self.terms
            .iter()
            .flat_map(|(m, g)| g.iter().map(move |(p, c)| (m, p, c)))
    }

    pub fn coefficient(&self, xexp: &[u32], piexp: u32) -> Option<&C> {
        self.terms
            .get(&Monomial::new(xexp.to_vec(), 0))
            .and_then(|g| g.get(piexp))
    }

    pub fn graded_coefficient(&self, mono: &Monomial) -> Option<&PiGraded<C>> {
        self.terms.get(mono)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    fn check_slot(&self, slot: usize) -> Result<()> {
        if slot >= self.nvars {
            return Err(Error::SlotOutOfRange { slot, nvars: self.nvars });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.add_assign_poly(other);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, p, c) in other.iter() {
            out.add_term(m.clone(), p, -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.nvars);
        for (ma, ga) in &self.terms {
            for (mb, gb) in &other.terms {
                let m = ma.mul(mb);
                for (pa, ca) in ga.iter() {
                    for (pb, cb) in gb.iter() {
                        out.add_term(m.clone(), pa + pb, ca.clone() * cb.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    /// In-place sum. Panics on arity mismatch.
    pub fn add_assign_poly(&mut self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        for (m, p, c) in other.iter() {
            self.add_term(m.clone(), p, c.clone());
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        if s.is_zero() {
            return out;
        }
        for (m, p, c) in self.iter() {
            out.add_term(m.clone(), p, c.clone() * s.clone());
        }
        out
    }

    /// Moves slot `i` to slot `map[i]` in a polynomial with `nvars` slots.
    pub fn relabel(&self, nvars: usize, map: &[usize]) -> Result<Self> {
        if map.len() != self.nvars {
            return Err(Error::LengthMismatch { expected: self.nvars, got: map.len() });
        }
        if nvars > MAX_SLOTS {
            return Err(Error::TooManySlots { max: MAX_SLOTS, got: nvars });
        }
        for (i, &t) in map.iter().enumerate() {
            if t >= nvars {
                return Err(Error::SlotOutOfRange { slot: t, nvars });
            }
            if map[..i].contains(&t) {
                return Err(Error::Invariant(format!("relabel map sends two slots to {t}")));
            }
        }
        let mut out = Self::zero(nvars);
        for (m, g) in &self.terms {
            let mut powers = vec![0u32; nvars];
            for (i, &t) in map.iter().enumerate() {
                powers[t] = m.ell_power(i);
            }
            let nm = Monomial::from_ell_powers(&powers);
            for (p, c) in g.iter() {
                out.add_term(nm.clone(), p, c.clone());
            }
        }
        Ok(out)
    }

    /// Replaces `ℓ_slot` by `iθ_slot`: `x_slot ↦ −x_slot`, the slot being read
    /// as a cone-angle slot afterwards. Applying it twice is the identity.
    pub fn substitute_imaginary(&self, slot: usize) -> Result<Self> {
        self.check_slot(slot)?;
        let mut out = Self::zero(self.nvars);
        for (m, p, c) in self.iter() {
            if m.is_odd_in(slot) {
                return Err(Error::OddResidue { slot });
            }
            let c = if m.xexp[slot] % 2 == 1 { -c.clone() } else { c.clone() };
            out.add_term(m.clone(), p, c);
        }
        Ok(out)
    }

    /// Formal derivative in the slot's own variable. For a length slot this is
    /// `∂/∂ℓ = 2ℓ ∂/∂x`; for an angle slot (already substituted) it is `∂/∂θ`.
    /// Both act identically on the stored exponents.
    pub fn partial_derivative(&self, slot: usize, _wrt: WithRespectTo) -> Result<Self> {
        self.check_slot(slot)?;
        let mut out = Self::zero(self.nvars);
        for (m, p, c) in self.iter() {
            let e = m.ell_power(slot);
            if e == 0 {
                continue;
            }
            out.add_term(m.with_ell_power(slot, e - 1), p, c.clone() * C::from_int(i64::from(e)));
        }
        Ok(out)
    }

    /// Antiderivative in the slot variable with zero constant term.
    pub fn antiderivative(&self, slot: usize) -> Result<Self> {
        self.check_slot(slot)?;
        let mut out = Self::zero(self.nvars);
        for (m, p, c) in self.iter() {
            let e = m.ell_power(slot);
            out.add_term(
                m.with_ell_power(slot, e + 1),
                p,
                c.clone() / C::from_int(i64::from(e + 1)),
            );
        }
        Ok(out)
    }

    pub fn mul_by_ell(&self, slot: usize) -> Result<Self> {
        self.check_slot(slot)?;
        let mut out = Self::zero(self.nvars);
        for (m, p, c) in self.iter() {
            out.add_term(m.with_ell_power(slot, m.ell_power(slot) + 1), p, c.clone());
        }
        Ok(out)
    }

    /// Exact division by `ℓ_slot`; fails if a term is constant in the slot.
    pub fn div_by_ell(&self, slot: usize) -> Result<Self> {
        self.check_slot(slot)?;
        let mut out = Self::zero(self.nvars);
        for (m, p, c) in self.iter() {
            let e = m.ell_power(slot);
            if e == 0 {
                return Err(Error::Invariant(format!(
                    "division by the slot-{slot} variable leaves a nonzero residue"
                )));
            }
            out.add_term(m.with_ell_power(slot, e - 1), p, c.clone());
        }
        Ok(out)
    }

    /// Sets the slot variable to zero and drops the slot.
    pub fn specialize_zero(&self, slot: usize) -> Result<Self> {
        self.check_slot(slot)?;
        let mut out = Self::zero(self.nvars - 1);
        for (m, p, c) in self.iter() {
            if m.ell_power(slot) != 0 {
                continue;
            }
            let mut powers = m.ell_powers();
            powers.remove(slot);
            out.add_term(Monomial::from_ell_powers(&powers), p, c.clone());
        }
        Ok(out)
    }

    pub fn is_even_in(&self, slot: usize) -> bool {
        self.terms.keys().all(|m| !m.is_odd_in(slot))
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| m.odd == 0)
    }

    /// Whether every monomial has `Σ x-exponents + π-exponent/2 = degree`.
    pub fn is_homogeneous_of(&self, degree: u32) -> bool {
        self.iter().all(|(m, p, _)| m.odd == 0 && m.x_degree() + p / 2 == degree)
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        let mut out = Polynomial::zero(self.nvars);
        for (m, p, c) in self.iter() {
            out.add_term(m.clone(), p, f(c));
        }
        out
    }

    pub fn to_float(&self) -> Polynomial<f64> {
        self.map_coeffs(|c| c.to_f64())
    }

    /// Floating evaluation at `ℓ_i = lengths[i]` and `π = pi`.
    pub fn eval_numeric<T: Float>(&self, lengths: &[T], pi: T) -> Result<T> {
        if lengths.len() != self.nvars {
            return Err(Error::LengthMismatch { expected: self.nvars, got: lengths.len() });
        }
        let mut acc = T::zero();
        for (m, p, c) in self.iter() {
            let mut t = T::from(c.to_f64()).unwrap_or_else(T::nan) * pi.powi(p as i32);
            for (i, &l) in lengths.iter().enumerate() {
                let e = m.ell_power(i);
                if e > 0 {
                    t = t * l.powi(e as i32);
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Evaluation at complex slot values, e.g. `ℓ = iθ` on cone slots.
    pub fn eval_complex(&self, lengths: &[Complex<f64>], pi: f64) -> Result<Complex<f64>> {
        if lengths.len() != self.nvars {
            return Err(Error::LengthMismatch { expected: self.nvars, got: lengths.len() });
        }
        let mut acc = Complex::new(0.0, 0.0);
        for (m, p, c) in self.iter() {
            let mut t = Complex::new(c.to_f64() * pi.powi(p as i32), 0.0);
            for (i, &l) in lengths.iter().enumerate() {
                let e = m.ell_power(i);
                if e > 0 {
                    t *= l.powi(e as i32);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Exact evaluation in the coefficient ring with `π` replaced by `pi`.
    pub fn eval_exact(&self, lengths: &[C], pi: &C) -> Result<C> {
        if lengths.len() != self.nvars {
            return Err(Error::LengthMismatch { expected: self.nvars, got: lengths.len() });
        }
        let pow = |b: &C, e: u32| (0..e).fold(C::one(), |acc, _| acc * b.clone());
        let mut acc = C::zero();
        for (m, p, c) in self.iter() {
            let mut t = c.clone() * pow(pi, p);
            for (i, l) in lengths.iter().enumerate() {
                t = t * pow(l, m.ell_power(i));
            }
            acc = acc + t;
        }
        Ok(acc)
    }
}

impl<C: Scalar> Add for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn add(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        self.checked_add(rhs).expect("polynomial arity mismatch")
    }
}

impl<C: Scalar> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn sub(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        self.checked_sub(rhs).expect("polynomial arity mismatch")
    }
}

impl<C: Scalar> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn mul(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        self.checked_mul(rhs).expect("polynomial arity mismatch")
    }
}

impl<C: Scalar> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Polynomial<C> {
        self.scale(&-C::one())
    }
}

impl<C: Scalar + fmt::Display> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = SlotLabels::all_boundary(self.nvars);
        f.write_str(&format::to_text_generic(self, &labels))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn x(n: usize, s: usize) -> Polynomial<Rational> {
        Polynomial::x(n, s)
    }

    fn pi2(n: usize) -> Polynomial<Rational> {
        Polynomial::pi_squared(n)
    }

    // x₁/48 + π²/12
    fn torus(n: usize) -> Polynomial<Rational> {
        &x(n, 0).scale(&q(1, 48)) + &pi2(n).scale(&q(1, 12))
    }

    #[test]
    fn add_examples() {
        let x2 = &x(1, 0) * &x(1, 0);
        assert_eq!(&x2 + &Polynomial::zero(1), x2);

        let cancelled = &torus(1) + &x(1, 0).scale(&q(-1, 48));
        assert_eq!(cancelled, pi2(1).scale(&q(1, 12)));

        let a = &pi2(1) * &x(1, 0);
        assert_eq!(&a + &a, a.scale(&q(2, 1)));
    }

    #[test]
    fn add_mismatch_is_error() {
        let err = Polynomial::<Rational>::one(1).checked_add(&Polynomial::one(2)).unwrap_err();
        assert_eq!(err, Error::VariableCountMismatch { left: 1, right: 2 });
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&x(1, 0) * &x(1, 0), Polynomial::term(vec![2], 0, q(1, 1)));
        assert_eq!(&torus(1) * &Polynomial::one(1), torus(1));
        let prod = &(&x(1, 0) + &pi2(1)) * &(&x(1, 0) - &pi2(1));
        let expect = &Polynomial::term(vec![2], 0, q(1, 1)) - &Polynomial::term(vec![0], 4, q(1, 1));
        assert_eq!(prod, expect);
    }

    #[test]
    fn substitute_imaginary_examples() {
        let sub = torus(1).substitute_imaginary(0).unwrap();
        let expect = &x(1, 0).scale(&q(-1, 48)) + &pi2(1).scale(&q(1, 12));
        assert_eq!(sub, expect);

        let one = Polynomial::<Rational>::one(1);
        assert_eq!(one.substitute_imaginary(0).unwrap(), one);

        let x1x2 = &x(2, 0) * &x(2, 1);
        assert_eq!(x1x2.substitute_imaginary(1).unwrap(), -&x1x2);

        assert_eq!(
            one.substitute_imaginary(3).unwrap_err(),
            Error::SlotOutOfRange { slot: 3, nvars: 1 }
        );
    }

    #[test]
    fn eval_examples() {
        let v = torus(1).eval_numeric(&[0.0], std::f64::consts::PI).unwrap();
        assert!((v - 0.822_467_033_424_113_2).abs() < 1e-6);
        assert_eq!(Polynomial::<Rational>::one(2).eval_numeric(&[3.0, 5.0], 1.0).unwrap(), 1.0);
        let x2 = &x(1, 0) * &x(1, 0);
        assert_eq!(x2.eval_numeric(&[2.0], 3.0).unwrap(), 16.0);
        assert_eq!(
            x2.eval_numeric(&[2.0, 1.0], 3.0).unwrap_err(),
            Error::LengthMismatch { expected: 1, got: 2 }
        );
    }

    #[test]
    fn derivative_examples() {
        let d = x(1, 0).partial_derivative(0, WithRespectTo::Length).unwrap();
        assert_eq!(d, Polynomial::ell(1, 0).scale(&q(2, 1)));
        assert!(!d.is_even_in(0));

        let d = pi2(1).partial_derivative(0, WithRespectTo::Length).unwrap();
        assert!(d.is_zero());

        let v101 = torus(1).substitute_imaginary(0).unwrap();
        let d = v101.partial_derivative(0, WithRespectTo::Angle).unwrap();
        assert_eq!(d, Polynomial::ell(1, 0).scale(&q(-1, 24)));
    }

    #[test]
    fn odd_parity_multiplication() {
        let l = Polynomial::<Rational>::ell(2, 1);
        assert_eq!(&l * &l, x(2, 1));
        let l3 = &(&l * &l) * &l;
        assert_eq!(l3.mul_by_ell(1).unwrap(), &x(2, 1) * &x(2, 1));
        assert_eq!(l3.div_by_ell(1).unwrap(), x(2, 1));
        assert!(Polynomial::<Rational>::one(2).div_by_ell(0).is_err());
    }

    #[test]
    fn relabel_and_specialize() {
        let p = &x(2, 0) + &(&x(2, 1) * &pi2(2));
        let r = p.relabel(3, &[2, 0]).unwrap();
        assert_eq!(r, &x(3, 2) + &(&x(3, 0) * &pi2(3)));
        assert!(p.relabel(3, &[1, 1]).is_err());
        let s = p.specialize_zero(0).unwrap();
        assert_eq!(s, &x(1, 0) * &pi2(1));
    }

    #[test]
    fn homogeneity_check() {
        assert!(torus(1).is_homogeneous_of(1));
        assert!(!(&torus(1) + &Polynomial::one(1)).is_homogeneous_of(1));
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = Polynomial<Rational>> {
        prop::collection::vec(
            (prop::collection::vec(0u32..3, nvars), 0u32..3, -6i64..7, 1i64..5),
            0..5,
        )
        .prop_map(move |terms| {
            let mut p = Polynomial::zero(nvars);
            for (e, k, n, d) in terms {
                p.add_term(Monomial::new(e, 0), 2 * k, q(n, d));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(2), b in arb_poly(2), c in arb_poly(2)) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn imaginary_substitution_is_involution(a in arb_poly(3), slot in 0usize..3) {
            let twice = a.substitute_imaginary(slot).unwrap().substitute_imaginary(slot).unwrap();
            prop_assert_eq!(twice, a);
        }

        #[test]
        fn derivative_inverts_antiderivative(a in arb_poly(2), slot in 0usize..2) {
            let back = a.antiderivative(slot).unwrap()
                .partial_derivative(slot, WithRespectTo::Length).unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn numeric_matches_exact(a in arb_poly(3), l in prop::collection::vec((0i64..40, 1i64..9), 3)) {
            let exact_pt: Vec<Rational> = l.iter().map(|&(n, d)| q(n, d)).collect();
            let float_pt: Vec<f64> = l.iter().map(|&(n, d)| n as f64 / d as f64).collect();
            let pi = q(355, 113);
            let exact = a.eval_exact(&exact_pt, &pi).unwrap().to_f64();
            let approx = a.eval_numeric(&float_pt, 355.0 / 113.0).unwrap();
            prop_assert!((exact - approx).abs() <= 1e-12 * exact.abs().max(1.0));
        }
    }
}
