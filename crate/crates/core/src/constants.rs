//! Physical constants in SI units.
//!
//! Base values are CODATA 2018. The reduced mass and both Bohr radii are
//! derived, never stored independently, so overriding a base constant keeps
//! every derived quantity consistent.

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable naming a `key=value` constants override file.
pub const CONSTANTS_ENV: &str = "CAUSAL_HYDROGEN_CONSTANTS";

pub const HBAR: f64 = 1.054_571_817e-34;
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
pub const PROTON_MASS: f64 = 1.672_621_923_69e-27;
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysConsts {
    /// Reduced Planck constant (J·s).
    pub hbar: f64,
    /// Electron mass (kg).
    pub m_e: f64,
    /// Nuclear mass (kg).
    pub m_nucleus: f64,
    /// Elementary charge (C).
    pub e_charge: f64,
    /// Vacuum permittivity (F/m).
    pub eps0: f64,
    /// Atomic number.
    pub z: u32,
    /// Reduced mass m_e·M/(m_e + M) (kg).
    pub mu: f64,
    /// Bohr radius with the bare electron mass (m).
    pub a0: f64,
    /// Bohr radius with the reduced mass (m).
    pub a_mu: f64,
}

impl Default for PhysConsts {
    fn default() -> Self {
        default_constants()
    }
}

/// CODATA values for hydrogen: Z = 1 and a proton nucleus.
pub fn default_constants() -> PhysConsts {
    PhysConsts::from_base(
        HBAR,
        ELECTRON_MASS,
        PROTON_MASS,
        ELEMENTARY_CHARGE,
        VACUUM_PERMITTIVITY,
        1,
    )
    .expect("built-in constants are valid")
}

impl PhysConsts {
    pub fn from_base(
        hbar: f64,
        m_e: f64,
        m_nucleus: f64,
        e_charge: f64,
        eps0: f64,
        z: u32,
    ) -> Result<Self> {
        for (name, v) in [
            ("hbar", hbar),
            ("m_e", m_e),
            ("m_nucleus", m_nucleus),
            ("e_charge", e_charge),
            ("eps0", eps0),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!(
                    "constant {name} must be finite and > 0, got {v}"
                )));
            }
        }
        if z == 0 {
            return Err(Error::Config("atomic number Z must be >= 1".into()));
        }
        let mu = m_e * m_nucleus / (m_e + m_nucleus);
        let four_pi_eps0 = 4.0 * PI * eps0;
        let a0 = four_pi_eps0 * hbar * hbar / (m_e * e_charge * e_charge);
        let a_mu = four_pi_eps0 * hbar * hbar / (mu * e_charge * e_charge);
        Ok(Self {
            hbar,
            m_e,
            m_nucleus,
            e_charge,
            eps0,
            z,
            mu,
            a0,
            a_mu,
        })
    }

    /// Coulomb coupling Z·e²/(4πε₀) in J·m.
    pub fn coulomb_coupling(&self) -> f64 {
        f64::from(self.z) * self.e_charge * self.e_charge / (4.0 * PI * self.eps0)
    }

    /// Most probable radius n²·a_μ/Z of an l = n-1 state.
    pub fn bohr_radius_of_shell(&self, n: u32) -> f64 {
        f64::from(n * n) * self.a_mu / f64::from(self.z)
    }

    /// Applies `key=value` overrides (blank lines and `#` comments ignored).
    ///
    /// Recognised keys: `hbar`, `m_e`, `m_nucleus`, `e_charge`, `eps0`, `Z`.
    pub fn with_overrides(&self, text: &str) -> Result<Self> {
        let mut hbar = self.hbar;
        let mut m_e = self.m_e;
        let mut m_nucleus = self.m_nucleus;
        let mut e_charge = self.e_charge;
        let mut eps0 = self.eps0;
        let mut z = self.z;

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!(
                    "line {}: expected key=value, got {raw:?}",
                    lineno + 1
                ))
            })?;
            let key = key.trim();
            let value = value.trim();
            let parse = |v: &str| {
                v.parse::<f64>().map_err(|e| {
                    Error::Config(format!("line {}: bad value for {key}: {e}", lineno + 1))
                })
            };
            match key {
                "hbar" => hbar = parse(value)?,
                "m_e" => m_e = parse(value)?,
                "m_nucleus" | "M_nucleus" => m_nucleus = parse(value)?,
                "e_charge" => e_charge = parse(value)?,
                "eps0" => eps0 = parse(value)?,
                "Z" | "z" => {
                    z = value.parse::<u32>().map_err(|e| {
                        Error::Config(format!("line {}: bad value for Z: {e}", lineno + 1))
                    })?
                }
                other => {
                    return Err(Error::Config(format!(
                        "line {}: unknown constant {other:?}",
                        lineno + 1
                    )))
                }
            }
        }
        Self::from_base(hbar, m_e, m_nucleus, e_charge, eps0, z)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        default_constants().with_overrides(&text)
    }

    /// Defaults, or the override file named by [`CONSTANTS_ENV`] when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(CONSTANTS_ENV) {
            Some(path) if !path.is_empty() => Self::from_file(path),
            _ => Ok(default_constants()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn reduced_mass_below_electron_mass() {
        let c = default_constants();
        assert!(c.mu < c.m_e);
        assert!(rel(c.mu, c.m_e * c.m_nucleus / (c.m_e + c.m_nucleus)) < 1e-15);
    }

    #[test]
    fn two_routes_to_modified_bohr_radius_agree() {
        let c = default_constants();
        assert!(rel(c.a_mu, c.a0 * c.m_e / c.mu) < 1e-14);
        assert!(rel(c.a_mu / c.a0, c.m_e / c.mu) < 1e-14);
    }

    #[test]
    fn shell_radii_match_table_footers() {
        let c = default_constants();
        let r2 = c.bohr_radius_of_shell(2);
        let r4 = c.bohr_radius_of_shell(4);
        assert!((c.a_mu - 5.29e-11).abs() < 0.005e-11);
        assert_eq!(format!("{:.2e}", r2), "2.12e-10");
        assert_eq!(format!("{:.2e}", r4), "8.47e-10");
    }

    #[test]
    fn overrides_recompute_derived_fields() {
        let c = default_constants()
            .with_overrides("# heavier nucleus\nm_nucleus = 3.3435837724e-27\n")
            .unwrap();
        assert!(c.mu > default_constants().mu);
        assert!(rel(c.a_mu, c.a0 * c.m_e / c.mu) < 1e-14);
    }

    #[test]
    fn overrides_reject_garbage() {
        let base = default_constants();
        assert!(base.with_overrides("hbar").is_err());
        assert!(base.with_overrides("planck = 1").is_err());
        assert!(base.with_overrides("hbar = -1").is_err());
        assert!(base.with_overrides("Z = 0").is_err());
    }
}
