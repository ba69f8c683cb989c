//! The volume recursion: stable splittings, right-hand-side assembly through
//! exact moment transforms, integration in the distinguished slot, and a
//! memo keyed by signature.
//!
//! Conventions. The recursion is written for `∂(½ ℓ₁ V)/∂ℓ₁`. With the gap
//! derivatives `∂Gap₁/∂ℓ = ½H(x+y, ℓ)` and
//! `∂Gap₂/∂ℓ = ¼(H(x, ℓ+ℓ_j) + H(x, ℓ−ℓ_j))` the right-hand side is
//!
//! ```text
//! ½ ∬ x y ∂Gap₁ [V_{g−1}(x, y, …) + Σ_splittings V_{g₁}(x, …) V_{g₂}(y, …)]
//!   + Σ_j ∫ x ∂Gap₂(ℓ₁; ℓ_j, x) V_g(x, …)
//! ```
//!
//! A cone slot enters with `ℓ = iθ`, which turns `ℓ²` into `−θ²` both in the
//! kernels and in the volumes.

mod engine;
mod numeric;
mod signature;
mod splitting;

pub use engine::{integrate_distinguished, VolumeEngine};
pub use numeric::NumericAssembly;
pub use signature::{delta_factor, SurfaceSignature};
pub use splitting::{enumerate_splittings, separating_weight, Side, Splitting};
