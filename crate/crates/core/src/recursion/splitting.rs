use serde::Serialize;

use super::signature::{delta_factor, SurfaceSignature};
use crate::error::{Error, Result};

/// One side of a separating cut: genus plus the original boundary and cone
/// slots it carries. The new boundary created by the cut is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Side {
    pub g: u32,
    pub boundaries: Vec<usize>,
    pub cones: Vec<usize>,
}

impl Side {
    /// Signature of the piece, counting the new boundary.
    pub fn signature(&self) -> SurfaceSignature {
        SurfaceSignature::unchecked(self.g, self.boundaries.len() + 1, self.cones.len())
    }

    fn is_stable(&self) -> bool {
        2 * self.g as usize + self.boundaries.len() + self.cones.len() >= 2
    }
}

/// An ordered pair of sides with their one-handle flags.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Splitting {
    pub first: Side,
    pub second: Side,
    pub delta1: u32,
    pub delta2: u32,
}

impl Splitting {
    pub fn mirrored(&self) -> Splitting {
        Splitting {
            first: self.second.clone(),
            second: self.first.clone(),
            delta1: self.delta2,
            delta2: self.delta1,
        }
    }
}

/// All ordered stable splittings of the slots other than `distinguished`.
/// Order: by first genus, then by the bitmask of slots sent to the first side.
pub fn enumerate_splittings(sig: SurfaceSignature, distinguished: usize) -> Result<Vec<Splitting>> {
    if !sig.is_stable() {
        return Err(Error::UnstableSignature { g: sig.g, m: sig.m, n: sig.n });
    }
    if distinguished >= sig.slots() {
        return Err(Error::SlotOutOfRange { slot: distinguished, nvars: sig.slots() });
    }
    let rest: Vec<usize> = (0..sig.slots()).filter(|&s| s != distinguished).collect();
    let mut out = Vec::new();
    for g1 in 0..=sig.g {
        for mask in 0u64..(1u64 << rest.len()) {
            let mut a = Side { g: g1, boundaries: vec![], cones: vec![] };
            let mut b = Side { g: sig.g - g1, boundaries: vec![], cones: vec![] };
            for (bit, &slot) in rest.iter().enumerate() {
                let side = if mask & (1 << bit) != 0 { &mut a } else { &mut b };
                if slot < sig.m {
                    side.boundaries.push(slot);
                } else {
                    side.cones.push(slot);
                }
            }
            if a.is_stable() && b.is_stable() {
                let delta1 = delta_factor(a.signature())?;
                let delta2 = delta_factor(b.signature())?;
                out.push(Splitting { first: a, second: b, delta1, delta2 });
            }
        }
    }
    Ok(out)
}

/// Net weight of a separating term. The recursion divides the product of the
/// two piece volumes by `2^{δ₁}·2^{δ₂}`; a piece with `δ = 1` enters with its
/// volume counted without the elliptic involution, which is `2^{δ}` times the
/// stored value. The two factors cancel.
pub fn separating_weight(s: &Splitting) -> (u32, u32) {
    let raw = 1u32 << (s.delta1 + s.delta2);
    let divisor = 1u32 << (s.delta1 + s.delta2);
    (raw, divisor)
}
