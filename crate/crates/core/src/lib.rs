//! Causal (de Broglie–Bohm) model of the hydrogen atom.
//!
//! Electrons in eigenstates ψ_nlm follow circular orbits about the z-axis,
//! concentric with nuclear latitudes; the n = 2, l = 1 states seen from
//! rotated axes are integrated numerically. The crate also evaluates the
//! accompanying fields: phase S, quantum potential Q, net force, angular
//! momentum and the energy balance E_n = KE + V + Q.

pub mod commands;
pub mod constants;
pub mod error;
pub mod finite_diff;
pub mod integrator;
pub mod io;
pub mod kinematics;
pub mod quadrature;
pub mod rotated;
pub mod vector;
pub mod verify;
pub mod wavefunctions;

pub use constants::{default_constants, PhysConsts};
pub use error::{Error, Result};
pub use kinematics::{orbit_geometry, EnergyReport, FieldSample, OrbitGeometry, Sense};
pub use rotated::{PhaseJet, RotatedState, RotationConfig};
pub use vector::{CartesianVector, Vec3};
pub use wavefunctions::{QuantumNumbers, SphericalPoint};
