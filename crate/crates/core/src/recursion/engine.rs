use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use rayon::prelude::*;

use super::signature::SurfaceSignature;
use super::splitting::{enumerate_splittings, separating_weight};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::kernels::MomentTable;
use crate::polyalg::{Monomial, Polynomial};
use crate::scalar::{binomial, factorial, Scalar};
use crate::Rational;

type Shared<C> = Arc<Polynomial<C>>;

/// Memoized recursion over a coefficient ring `C`.
///
/// Every polynomial is expressed in the slots' own variables: `ℓ_i²` for
/// boundaries, `θ_j²` for cone points.
pub struct VolumeEngine<C: Scalar> {
    config: Config,
    /// `moments[k][i]` multiplies `t^{2k+2−2i} π^{2i}` in `F_{2k+1}(t)`.
    moments: Vec<Vec<C>>,
    boundary_memo: RwLock<HashMap<(u32, usize), Shared<C>>>,
    direct_memo: RwLock<HashMap<SurfaceSignature, Shared<C>>>,
}

/// One summand of the right-hand side, before its integral transform.
enum Job<C: Scalar> {
    /// A polynomial in `(x, y, rest…)` integrated against `∂Gap₁`.
    NonSeparating(Shared<C>),
    Separating { first: Shared<C>, first_map: Vec<usize>, second: Shared<C>, second_map: Vec<usize> },
    /// A polynomial in `(x, rest∖partner…)` integrated against `∂Gap₂`/`∂Gap₃`.
    Pairing { lower: Shared<C>, partner: usize, map: Vec<usize> },
}

impl<C: Scalar> VolumeEngine<C> {
    pub fn new(config: Config) -> Result<Self> {
        config.validate()?;
        let table = MomentTable::new(config.max_moment)?;
        let moments = (0..=config.max_moment)
            .map(|k| table.row(k).map(|r| r.iter().map(C::from_rational).collect()))
            .collect::<Result<Vec<Vec<C>>>>()?;
        Ok(VolumeEngine {
            config,
            moments,
            boundary_memo: RwLock::new(HashMap::new()),
            direct_memo: RwLock::new(HashMap::new()),
        })
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    pub fn check_caps(&self, sig: SurfaceSignature) -> Result<()> {
        if !sig.is_stable() {
            return Err(Error::UnstableSignature { g: sig.g, m: sig.m, n: sig.n });
        }
        if sig.slots() == 0 {
            return Err(Error::ClosedSurface);
        }
        if sig.g > self.config.max_genus {
            return Err(Error::CapExceeded(format!(
                "genus {} exceeds the configured maximum {}",
                sig.g, self.config.max_genus
            )));
        }
        if sig.slots() > self.config.max_slots {
            return Err(Error::CapExceeded(format!(
                "m + n = {} exceeds the configured maximum {}",
                sig.slots(),
                self.config.max_slots
            )));
        }
        Ok(())
    }

    /// `V_{g,m,n}`: the all-boundary volume `V_{g,m+n}` with `ℓ = iθ`
    /// substituted on the cone slots.
    pub fn compute_volume(&self, sig: SurfaceSignature) -> Result<Polynomial<C>> {
        self.check_caps(sig)?;
        self.volume_uncapped(sig)
    }

    pub(crate) fn volume_uncapped(&self, sig: SurfaceSignature) -> Result<Polynomial<C>> {
        let mut v = (*self.boundary_volume(sig.g, sig.slots())?).clone();
        for slot in sig.m..sig.slots() {
            v = v.substitute_imaginary(slot)?;
        }
        Ok(v)
    }

    /// `V_{g,N}` with all slots geodesic boundaries.
    pub fn boundary_volume(&self, g: u32, nslots: usize) -> Result<Shared<C>> {
        if let Some(v) = self.boundary_memo.read().expect("memo lock").get(&(g, nslots)) {
            return Ok(v.clone());
        }
        let sig = SurfaceSignature::new(g, nslots, 0)?;
        let v = match self.base_volume(sig, 0)? {
            Some(v) => v,
            None => {
                let rhs = self.assemble_with(sig, 0, &mut |s| self.primary_shared(s))?;
                integrate_distinguished(&rhs, 0)?
            }
        };
        self.certify(sig, &v)?;
        let mut memo = self.boundary_memo.write().expect("memo lock");
        Ok(memo.entry((g, nslots)).or_insert_with(|| Arc::new(v)).clone())
    }

    /// Verification path: the recursion run directly with the first cone
    /// point distinguished, with kernels evaluated at `ℓ = iθ` and lower
    /// volumes taken from this same path whenever they carry cone points.
    pub fn direct_cone_volume(&self, sig: SurfaceSignature) -> Result<Shared<C>> {
        self.check_caps(sig)?;
        self.direct_uncapped(sig)
    }

    fn direct_uncapped(&self, sig: SurfaceSignature) -> Result<Shared<C>> {
        if sig.n == 0 {
            return self.boundary_volume(sig.g, sig.m);
        }
        if let Some(v) = self.direct_memo.read().expect("memo lock").get(&sig) {
            return Ok(v.clone());
        }
        let d = sig.m;
        let v = match self.base_volume(sig, d)? {
            Some(v) => v,
            None => {
                let rhs = self.assemble_with(sig, d, &mut |s| self.direct_uncapped(s))?;
                integrate_distinguished(&rhs, d)?
            }
        };
        self.certify(sig, &v)?;
        let mut memo = self.direct_memo.write().expect("memo lock");
        Ok(memo.entry(sig).or_insert_with(|| Arc::new(v)).clone())
    }

    /// Right-hand side `∂(½ v_d V)/∂v_d` for distinguished slot `d`, where
    /// `v_d` is the slot's own variable. Lower volumes come from
    /// [`Self::compute_volume`].
    pub fn assemble_rhs(&self, sig: SurfaceSignature, distinguished: usize) -> Result<Polynomial<C>> {
        self.check_caps(sig)?;
        if distinguished >= sig.slots() {
            return Err(Error::SlotOutOfRange { slot: distinguished, nvars: sig.slots() });
        }
        if let Some(v) = self.base_volume(sig, distinguished)? {
            let half_lv = v.mul_by_ell(distinguished)?.scale(&C::from_ratio(1, 2));
            return half_lv.partial_derivative(distinguished, crate::WithRespectTo::Length);
        }
        self.assemble_with(sig, distinguished, &mut |s| self.primary_shared(s))
    }

    fn primary_shared(&self, sig: SurfaceSignature) -> Result<Shared<C>> {
        if sig.n == 0 {
            self.boundary_volume(sig.g, sig.m)
        } else {
            Ok(Arc::new(self.volume_uncapped(sig)?))
        }
    }

    /// The volume recomputed by integrating the recursion in slot `d`.
    pub fn volume_via_slot(&self, sig: SurfaceSignature, d: usize) -> Result<Polynomial<C>> {
        integrate_distinguished(&self.assemble_rhs(sig, d)?, d)
    }

    fn certify(&self, sig: SurfaceSignature, v: &Polynomial<C>) -> Result<()> {
        if v.nvars() != sig.slots() || !v.is_even() || !v.is_homogeneous_of(sig.dimension()) {
            return Err(Error::Invariant(format!(
                "volume of {sig} is not an even homogeneous polynomial of degree {}",
                sig.dimension()
            )));
        }
        Ok(())
    }

    /// Volumes not produced by the recursion: pants, and the one-holed or
    /// one-cone torus.
    fn base_volume(&self, sig: SurfaceSignature, d: usize) -> Result<Option<Polynomial<C>>> {
        let n = sig.slots();
        if sig.g == 0 && n == 3 {
            return Ok(Some(Polynomial::one(3)));
        }
        if sig.g == 1 && n == 1 {
            // The torus identity sums each simple closed geodesic once, with
            // both pants boundaries equal to it:
            // ∂(½ v V)/∂v = ½ ∫₀^∞ x ∂Gap₁(v; x, x) dx = F₁(ℓ)/16.
            let sign = sig.kind(d).square_sign();
            let row = self.moment_row(0)?;
            let mut rhs = Polynomial::zero(1);
            for (i, c) in row.iter().enumerate() {
                let e = 1 - i as u32;
                let s = if e % 2 == 1 { sign } else { 1 };
                rhs.add_term(
                    Monomial::new(vec![e], 0),
                    2 * i as u32,
                    c.clone() * C::from_ratio(s, 16),
                );
            }
            return Ok(Some(integrate_distinguished(&rhs, 0)?));
        }
        Ok(None)
    }

    fn moment_row(&self, k: u32) -> Result<&[C]> {
        self.moments
            .get(k as usize)
            .map(Vec::as_slice)
            .ok_or(Error::MomentIndexTooLarge { k, max: self.config.max_moment })
    }

    fn assemble_with(
        &self,
        sig: SurfaceSignature,
        d: usize,
        lower: &mut dyn FnMut(SurfaceSignature) -> Result<Shared<C>>,
    ) -> Result<Polynomial<C>> {
        let rest: Vec<usize> = (0..sig.slots()).filter(|&s| s != d).collect();
        let count = |slots: &[usize]| {
            let b = slots.iter().filter(|&&s| s < sig.m).count();
            (b, slots.len() - b)
        };
        // Position of a target slot inside the (x, y, rest…) layout.
        let w_pos = |slot: usize| 2 + rest.iter().position(|&r| r == slot).expect("slot in rest");

        let mut jobs = Vec::new();
        if sig.g >= 1 {
            let (b, c) = count(&rest);
            let s = SurfaceSignature::unchecked(sig.g - 1, b + 2, c);
            if s.is_stable() {
                jobs.push(Job::NonSeparating(lower(s)?));
            }
        }
        for split in enumerate_splittings(sig, d)? {
            let map_of = |side: &super::splitting::Side, head: usize| {
                let mut map = vec![head];
                map.extend(side.boundaries.iter().chain(&side.cones).map(|&s| w_pos(s)));
                map
            };
            // Net weight 1: see `separating_weight`.
            let (raw, divisor) = separating_weight(&split);
            debug_assert_eq!(raw, divisor);
            jobs.push(Job::Separating {
                first: lower(split.first.signature())?,
                first_map: map_of(&split.first, 0),
                second: lower(split.second.signature())?,
                second_map: map_of(&split.second, 1),
            });
        }
        for &p in &rest {
            let others: Vec<usize> = rest.iter().copied().filter(|&s| s != p).collect();
            let (b, c) = count(&others);
            let s = SurfaceSignature::unchecked(sig.g, b + 1, c);
            if !s.is_stable() {
                continue;
            }
            let mut map = vec![usize::MAX];
            map.extend(others);
            jobs.push(Job::Pairing { lower: lower(s)?, partner: p, map });
        }

        let run = |job: &Job<C>| self.transform(sig, d, &rest, job);
        let parts: Vec<Polynomial<C>> = if self.config.parallel {
            jobs.par_iter().map(run).collect::<Result<_>>()?
        } else {
            jobs.iter().map(run).collect::<Result<_>>()?
        };
        let mut rhs = Polynomial::zero(sig.slots());
        for part in &parts {
            rhs.add_assign_poly(part);
        }
        Ok(rhs)
    }

    fn transform(&self, sig: SurfaceSignature, d: usize, rest: &[usize], job: &Job<C>) -> Result<Polynomial<C>> {
        let nw = rest.len() + 2;
        match job {
            Job::NonSeparating(w) => self.double_transform(sig, d, rest, w),
            Job::Separating { first, first_map, second, second_map } => {
                let a = first.relabel(nw, first_map)?;
                let b = second.relabel(nw, second_map)?;
                self.double_transform(sig, d, rest, &a.checked_mul(&b)?)
            }
            Job::Pairing { lower, partner, map } => self.pairing_transform(sig, d, *partner, map, lower),
        }
    }

    /// `½ ∬ x y ∂Gap₁(ℓ_d; x, y) W(x, y, …) dx dy` with `∂Gap₁/∂ℓ = ½H(x+y, ℓ)`.
    /// On `x^{2a} y^{2b}`: `¼ (2a+1)!(2b+1)!/(2a+2b+3)! F_{2k+1}(ℓ_d)`, `k = a+b+1`.
    fn double_transform(&self, sig: SurfaceSignature, d: usize, rest: &[usize], w: &Polynomial<C>) -> Result<Polynomial<C>> {
        let sign = sig.kind(d).square_sign();
        let mut out = Polynomial::zero(sig.slots());
        for (mono, piexp, c) in w.iter() {
            if mono.odd_mask() != 0 {
                return Err(Error::Invariant("odd lower volume in double integral".into()));
            }
            let (a, b) = (mono.xexp()[0], mono.xexp()[1]);
            let k = a + b + 1;
            let beta = Rational::new(
                factorial(2 * a + 1) * factorial(2 * b + 1),
                factorial(2 * k + 1) * BigInt::from(4),
            );
            let coef = c.clone() * C::from_rational(&beta);
            let mut xexp = vec![0u32; sig.slots()];
            for (r, &slot) in rest.iter().enumerate() {
                xexp[slot] = mono.xexp()[2 + r];
            }
            for (i, m) in self.moment_row(k)?.iter().enumerate() {
                let e = k + 1 - i as u32;
                xexp[d] = e;
                let term = coef.clone() * m.clone();
                let term = if sign < 0 && e % 2 == 1 { -term } else { term };
                out.add_term(Monomial::new(xexp.clone(), 0), piexp + 2 * i as u32, term);
            }
        }
        Ok(out)
    }

    /// `∫ x ∂Gap(ℓ_d; ℓ_p, x) U(x, …) dx` with
    /// `∂Gap/∂ℓ = ¼(H(x, ℓ_d+ℓ_p) + H(x, ℓ_d−ℓ_p))`; a cone partner enters as
    /// `ℓ_p = iθ_p`. On `x^{2a}`: `¼(F_{2a+1}(ℓ_d+ℓ_p) + F_{2a+1}(ℓ_d−ℓ_p))`.
    fn pairing_transform(
        &self,
        sig: SurfaceSignature,
        d: usize,
        p: usize,
        map: &[usize],
        u: &Polynomial<C>,
    ) -> Result<Polynomial<C>> {
        let sd = sig.kind(d).square_sign();
        let sp = sig.kind(p).square_sign();
        let half = C::from_ratio(1, 2);
        let mut out = Polynomial::zero(sig.slots());
        for (mono, piexp, c) in u.iter() {
            if mono.odd_mask() != 0 {
                return Err(Error::Invariant("odd lower volume in boundary pairing".into()));
            }
            let a = mono.xexp()[0];
            let mut xexp = vec![0u32; sig.slots()];
            for (j, &slot) in map.iter().enumerate().skip(1) {
                xexp[slot] = mono.xexp()[j];
            }
            let base = c.clone() * half.clone();
            for (i, m) in self.moment_row(a)?.iter().enumerate() {
                let pw = a + 1 - i as u32;
                let bi = base.clone() * m.clone();
                for q in 0..=pw {
                    let mut s = 1i64;
                    if sd < 0 && (pw - q) % 2 == 1 {
                        s = -s;
                    }
                    if sp < 0 && q % 2 == 1 {
                        s = -s;
                    }
                    let binom = C::from_rational(&Rational::from_integer(binomial(2 * pw, 2 * q)));
                    xexp[d] = pw - q;
                    xexp[p] = q;
                    out.add_term(
                        Monomial::new(xexp.clone(), 0),
                        piexp + 2 * i as u32,
                        bi.clone() * binom * C::from_int(s),
                    );
                }
            }
        }
        Ok(out)
    }
}

/// Inverts `rhs = ∂(½ v V)/∂v`: antiderivative in the slot with zero
/// constant term, then division by `v/2`.
pub fn integrate_distinguished<C: Scalar>(rhs: &Polynomial<C>, slot: usize) -> Result<Polynomial<C>> {
    if slot >= rhs.nvars() {
        return Err(Error::SlotOutOfRange { slot, nvars: rhs.nvars() });
    }
    if !rhs.is_even_in(slot) {
        return Err(Error::OddResidue { slot });
    }
    Ok(rhs.antiderivative(slot)?.div_by_ell(slot)?.scale(&C::from_int(2)))
}
