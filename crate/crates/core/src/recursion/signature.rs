use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyalg::SlotKind;

/// Genus `g`, `m` geodesic boundaries and `n` cone points.
///
/// Slots are laid out boundaries first (`0..m`), then cone points
/// (`m..m+n`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SurfaceSignature {
    pub g: u32,
    pub m: usize,
    pub n: usize,
}

impl SurfaceSignature {
    pub fn new(g: u32, m: usize, n: usize) -> Result<Self> {
        let s = SurfaceSignature { g, m, n };
        if !s.is_stable() {
            return Err(Error::UnstableSignature { g, m, n });
        }
        Ok(s)
    }

    pub(crate) fn unchecked(g: u32, m: usize, n: usize) -> Self {
        SurfaceSignature { g, m, n }
    }

    pub fn is_stable(&self) -> bool {
        2 * self.g as i64 - 2 + (self.m + self.n) as i64 > 0
    }

    pub fn slots(&self) -> usize {
        self.m + self.n
    }

    /// Complex dimension `3g − 3 + m + n`, the weighted degree of the volume.
    pub fn dimension(&self) -> u32 {
        (3 * self.g as i64 - 3 + self.slots() as i64) as u32
    }

    pub fn kind(&self, slot: usize) -> SlotKind {
        if slot < self.m {
            SlotKind::Boundary
        } else {
            SlotKind::Cone
        }
    }

    pub fn kinds(&self) -> Vec<SlotKind> {
        (0..self.slots()).map(|i| self.kind(i)).collect()
    }

    /// `(g, m+n, 0)`: the same surface with every cone point replaced by a
    /// geodesic boundary.
    pub fn all_boundary(&self) -> Self {
        SurfaceSignature { g: self.g, m: self.slots(), n: 0 }
    }
}

impl fmt::Display for SurfaceSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.g, self.m, self.n)
    }
}

/// 1 for the one-holed torus `(1, 1, 0)`, else 0.
pub fn delta_factor(sig: SurfaceSignature) -> Result<u32> {
    if !sig.is_stable() {
        return Err(Error::UnstableSignature { g: sig.g, m: sig.m, n: sig.n });
    }
    Ok(u32::from(sig.g == 1 && sig.m == 1 && sig.n == 0))
}
