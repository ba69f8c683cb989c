//! Caps and tolerances, read from an optional `key = value` file and the
//! environment. Command-line flags are applied on top by the caller.

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};

pub const MAX_GENUS_ENV: &str = "WPCONE_MAX_GENUS";

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Largest genus the recursion will compute.
    pub max_genus: u32,
    /// Largest total slot count `m + n`.
    pub max_slots: usize,
    /// Largest moment index `k` for the closed-form transforms.
    pub max_moment: u32,
    /// Absolute tolerance for quadrature.
    pub quad_tol: f64,
    /// Evaluate independent recursion terms on the rayon pool.
    pub parallel: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config { max_genus: 5, max_slots: 8, max_moment: 24, quad_tol: 1e-10, parallel: true }
    }
}

impl Config {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: Config = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&s)
    }

    /// Applies `WPCONE_MAX_GENUS` if set.
    pub fn with_env(mut self) -> Result<Self> {
        if let Ok(v) = std::env::var(MAX_GENUS_ENV) {
            self.max_genus = v
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("{MAX_GENUS_ENV} must be a nonnegative integer, got {v:?}")))?;
        }
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.quad_tol > 0.0 && self.quad_tol.is_finite()) {
            return Err(Error::Config(format!("quad_tol must be positive, got {}", self.quad_tol)));
        }
        if self.max_slots > crate::polyalg::MAX_SLOTS {
            return Err(Error::Config(format!(
                "max_slots must be at most {}, got {}",
                crate::polyalg::MAX_SLOTS,
                self.max_slots
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_partial_file() {
        let c = Config::from_toml_str("max_genus = 2\nquad_tol = 1e-8\n").unwrap();
        assert_eq!(c.max_genus, 2);
        assert_eq!(c.quad_tol, 1e-8);
        assert_eq!(c.max_slots, 8);
    }

    #[test]
    fn rejects_unknown_and_invalid() {
        assert!(Config::from_toml_str("bogus = 1").is_err());
        assert!(Config::from_toml_str("quad_tol = -1.0").is_err());
        assert!(Config::from_toml_str("max_slots = 99").is_err());
    }
}
