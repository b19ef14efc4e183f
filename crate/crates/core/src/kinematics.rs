//! Closed-form causal dynamics of hydrogen eigenstates ψ_nlm.
//!
//! With S = ħmφ - E_CI·t the guidance law p = ∇S gives uniform circular
//! motion about the z-axis at fixed r_e and θ_e. Requiring L = r × p to
//! reproduce the vector model (|L| = √(l(l+1))ħ, L_z = mħ) pins θ_e:
//!
//! ```text
//! cos α = m / √(l(l+1))
//! θ_e   = π/2  - α   (m > 0)
//! θ_e   = 3π/2 - α   (m < 0)
//! ```
//!
//! m = 0 electrons are at rest; their geometry is reported as
//! [`Error::StationaryElectron`].

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants::PhysConsts;
use crate::error::{Error, Result};
use crate::finite_diff;
use crate::vector::Vec3;
use crate::wavefunctions::{
    assoc_legendre, radial, real_amplitude, QuantumNumbers, SphericalPoint,
};

pub use crate::wavefunctions::bohr_energy;

const SIN_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Counterclockwise,
    Clockwise,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitGeometry {
    pub qn: QuantumNumbers,
    /// Cone angle between L and the z-axis (rad).
    pub alpha: f64,
    /// Polar angle of the electron (rad).
    pub theta_e: f64,
    /// Distance from the nucleus (m).
    pub r_e: f64,
    /// Orbit radius r_e sin θ_e (m).
    pub r_0: f64,
    /// Height of the orbit plane r_e cos θ_e (m).
    pub z_0: f64,
    /// dφ/dt (rad/s); its sign is the sign of m.
    pub omega: f64,
    /// Azimuth at t = 0 (rad).
    pub c: f64,
    /// 2π/|ω| (s).
    pub period: f64,
    pub sense: Sense,
    #[serde(skip)]
    consts: PhysConsts,
}

/// Orbit constants for an m ≠ 0 eigenstate.
///
/// `r_e` defaults to the most probable radius n²a_μ/Z. The phase constant
/// starts at 0; see [`OrbitGeometry::with_phase`].
pub fn orbit_geometry(
    qn: QuantumNumbers,
    r_e: Option<f64>,
    consts: &PhysConsts,
) -> Result<OrbitGeometry> {
    qn.validate()?;
    if qn.m == 0 || qn.l == 0 {
        return Err(Error::StationaryElectron);
    }
    let r_e = r_e.unwrap_or_else(|| consts.bohr_radius_of_shell(qn.n));
    if !(r_e.is_finite() && r_e > 0.0) {
        return Err(Error::Config(format!(
            "orbit radius must be > 0, got {r_e}"
        )));
    }
    let m = f64::from(qn.m);
    let alpha = (m / qn.l_magnitude()).acos();
    let theta_e = if qn.m > 0 {
        PI / 2.0 - alpha
    } else {
        1.5 * PI - alpha
    };
    let (sin_t, cos_t) = theta_e.sin_cos();
    let omega = m * consts.hbar / (consts.m_e * r_e * r_e * sin_t * sin_t);
    Ok(OrbitGeometry {
        qn,
        alpha,
        theta_e,
        r_e,
        r_0: r_e * sin_t,
        z_0: r_e * cos_t,
        omega,
        c: 0.0,
        period: 2.0 * PI / omega.abs(),
        sense: if qn.m > 0 {
            Sense::Counterclockwise
        } else {
            Sense::Clockwise
        },
        consts: *consts,
    })
}

impl OrbitGeometry {
    pub fn with_phase(mut self, c: f64) -> Self {
        self.c = c;
        self
    }

    pub fn consts(&self) -> &PhysConsts {
        &self.consts
    }

    /// Azimuth φ(t) = ωt + c, not wrapped.
    pub fn phi(&self, t: f64) -> f64 {
        self.omega * t + self.c
    }

    pub fn spherical_point(&self, t: f64) -> SphericalPoint {
        SphericalPoint::new(self.r_e, self.theta_e, self.phi(t))
    }

    pub fn position(&self, t: f64) -> Vec3 {
        let (s, c) = self.phi(t).sin_cos();
        Vec3::new(self.r_0 * c, self.r_0 * s, self.z_0)
    }

    pub fn velocity(&self, t: f64) -> Vec3 {
        let (s, c) = self.phi(t).sin_cos();
        let v = self.r_0 * self.omega;
        Vec3::new(-v * s, v * c, 0.0)
    }

    /// |m|ħ/(m_e r_e sin θ_e).
    pub fn speed(&self) -> f64 {
        f64::from(self.qn.m.abs()) * self.consts.hbar / (self.consts.m_e * self.r_0)
    }

    /// L(t) = (-mħ cot θ_e cos φ, -mħ cot θ_e sin φ, mħ).
    pub fn angular_momentum(&self, t: f64) -> Vec3 {
        let mh = f64::from(self.qn.m) * self.consts.hbar;
        let cot = self.theta_e.cos() / self.theta_e.sin();
        let (s, c) = self.phi(t).sin_cos();
        Vec3::new(-mh * cot * c, -mh * cot * s, mh)
    }

    /// Net force on the orbit, directed at the z-axis.
    pub fn net_force(&self, t: f64) -> Vec3 {
        let (s, c) = self.phi(t).sin_cos();
        let mag = self.centripetal_force();
        Vec3::new(-mag * c, -mag * s, 0.0)
    }

    /// m_e v²/r_0.
    pub fn centripetal_force(&self) -> f64 {
        let v = self.speed();
        self.consts.m_e * v * v / self.r_0
    }
}

pub fn position(geom: &OrbitGeometry, t: f64) -> Vec3 {
    geom.position(t)
}

pub fn velocity(geom: &OrbitGeometry, t: f64) -> Vec3 {
    geom.velocity(t)
}

pub fn speed(geom: &OrbitGeometry) -> f64 {
    geom.speed()
}

pub fn angular_momentum_trajectory(geom: &OrbitGeometry, t: f64) -> Vec3 {
    geom.angular_momentum(t)
}

fn checked_sin_theta(qn: QuantumNumbers, theta: f64) -> Result<f64> {
    let s = theta.sin();
    if qn.m != 0 && s.abs() < SIN_EPS {
        return Err(Error::Singularity(
            "sin θ = 0 with m ≠ 0 (electron on the z-axis)",
        ));
    }
    Ok(s)
}

/// p = ∇S = (mħ/(r sin θ)) ê_φ.
pub fn momentum_field(qn: QuantumNumbers, p: SphericalPoint, consts: &PhysConsts) -> Result<Vec3> {
    qn.validate()?;
    if qn.m == 0 {
        return Ok(Vec3::ZERO);
    }
    let s = checked_sin_theta(qn, p.theta)?;
    if p.r <= 0.0 {
        return Err(Error::Singularity("r = 0 with m ≠ 0"));
    }
    let mag = f64::from(qn.m) * consts.hbar / (p.r * s);
    let (sp, cp) = p.phi.sin_cos();
    Ok(Vec3::new(-mag * sp, mag * cp, 0.0))
}

/// L = r × ∇S = -(mħ/sin θ) ê_θ.
pub fn angular_momentum(
    qn: QuantumNumbers,
    p: SphericalPoint,
    consts: &PhysConsts,
) -> Result<Vec3> {
    qn.validate()?;
    if qn.m == 0 {
        return Ok(Vec3::ZERO);
    }
    let s = checked_sin_theta(qn, p.theta)?;
    let mh = f64::from(qn.m) * consts.hbar;
    let cot = p.theta.cos() / s;
    let (sp, cp) = p.phi.sin_cos();
    Ok(Vec3::new(-mh * cot * cp, -mh * cot * sp, mh))
}

/// L² = m²ħ²/sin²θ.
pub fn l_squared(qn: QuantumNumbers, theta: f64, consts: &PhysConsts) -> Result<f64> {
    qn.validate()?;
    let s = theta.sin();
    if s.abs() < SIN_EPS {
        return Err(Error::Singularity("L² undefined on the z-axis"));
    }
    let mh = f64::from(qn.m) * consts.hbar;
    Ok(mh * mh / (s * s))
}

/// Bohr kinetic energy, -E_n.
pub fn bohr_kinetic(n: u32, consts: &PhysConsts) -> f64 {
    -bohr_energy(n, consts)
}

/// Coulomb energy V(r) = -Ze²/(4πε₀ r).
pub fn coulomb_potential(r: f64, consts: &PhysConsts) -> Result<f64> {
    if r.is_nan() || r <= 0.0 {
        return Err(Error::Singularity("Coulomb potential at r = 0"));
    }
    Ok(-consts.coulomb_coupling() / r)
}

/// Kinetic energy (∇S)²/2m_e at a point.
pub fn kinetic_energy(qn: QuantumNumbers, p: SphericalPoint, consts: &PhysConsts) -> Result<f64> {
    let mom = momentum_field(qn, p, consts)?;
    Ok(mom.norm_squared() / (2.0 * consts.m_e))
}

/// Energy bookkeeping of one orbit, all in J.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    #[serde(rename = "E_n")]
    pub e_n: f64,
    /// -mħ dφ/dt.
    pub phi_term: f64,
    #[serde(rename = "E_CI")]
    pub e_ci: f64,
    #[serde(rename = "KE_CI")]
    pub ke_ci: f64,
    #[serde(rename = "KE_Bohr")]
    pub ke_bohr: f64,
    #[serde(rename = "V")]
    pub v: f64,
    #[serde(rename = "Q")]
    pub q: f64,
}

pub fn energy_report(qn: QuantumNumbers, r_e: f64, consts: &PhysConsts) -> Result<EnergyReport> {
    qn.validate()?;
    let e_n = bohr_energy(qn.n, consts);
    let v = coulomb_potential(r_e, consts)?;
    let (phi_term, ke_ci) = if qn.m == 0 {
        (0.0, 0.0)
    } else {
        let geom = orbit_geometry(qn, Some(r_e), consts)?;
        let phi_term = -f64::from(qn.m) * consts.hbar * geom.omega;
        let speed = geom.speed();
        (phi_term, 0.5 * consts.m_e * speed * speed)
    };
    Ok(EnergyReport {
        e_n,
        phi_term,
        e_ci: e_n - phi_term,
        ke_ci,
        ke_bohr: bohr_kinetic(qn.n, consts),
        v,
        q: e_n - ke_ci - v,
    })
}

/// F_net = ∇[(∇S)²/2m_e] = -(m²ħ²/(m_e r³ sin³θ)) (cos φ, sin φ, 0).
pub fn net_force(qn: QuantumNumbers, p: SphericalPoint, consts: &PhysConsts) -> Result<Vec3> {
    qn.validate()?;
    if qn.m == 0 {
        return Ok(Vec3::ZERO);
    }
    if p.r <= 0.0 {
        return Err(Error::Singularity("net force at r = 0"));
    }
    let s = checked_sin_theta(qn, p.theta)?;
    let mh = f64::from(qn.m) * consts.hbar;
    let mag = mh * mh / (consts.m_e * p.r.powi(3) * s.powi(3));
    let (sp, cp) = p.phi.sin_cos();
    Ok(Vec3::new(-mag * cp, -mag * sp, 0.0))
}

/// Quantum potential from the Hamilton–Jacobi balance, Q = E_n - (∇S)²/2m_e - V.
pub fn quantum_potential(
    qn: QuantumNumbers,
    p: SphericalPoint,
    consts: &PhysConsts,
) -> Result<f64> {
    Ok(
        bohr_energy(qn.n, consts)
            - kinetic_energy(qn, p, consts)?
            - coulomb_potential(p.r, consts)?,
    )
}

/// Quantum potential -(ħ²/2μ) ∇²R/R with the Laplacian of the real
/// amplitude R(r, θ) taken by finite differences.
///
/// μ is the mass of the Schrödinger equation that ψ solves (a_μ sets its
/// length scale). Steps are 10⁻⁴·a_μ in r and 10⁻⁴ rad in θ.
pub fn quantum_potential_numeric(
    qn: QuantumNumbers,
    p: SphericalPoint,
    consts: &PhysConsts,
) -> Result<f64> {
    qn.validate()?;
    if p.r <= 0.0 {
        return Err(Error::Singularity("quantum potential at r = 0"));
    }
    let radial_scale = consts.a_mu.powf(-1.5);
    let f = radial(qn, p.r, consts)?;
    let g = assoc_legendre(qn.l as i32, qn.m, p.theta.cos().clamp(-1.0, 1.0))?;
    if f.abs() < 1e-9 * radial_scale || g.abs() < 1e-9 {
        return Err(Error::node(p.to_cartesian()));
    }

    let h_r = 1e-4 * consts.a_mu;
    let h_t = 1e-4;
    let amp = |r: f64, t: f64| real_amplitude(qn, r, t, consts);
    let value = amp(p.r, p.theta)?;
    let d_r = finite_diff::derivative(|r| amp(r, p.theta), p.r, h_r)?;
    let d_rr = finite_diff::second_derivative(|r| amp(r, p.theta), p.r, h_r)?;
    let d_tt = finite_diff::second_derivative(|t| amp(p.r, t), p.theta, h_t)?;
    let s = p.theta.sin();
    let angular = if s.abs() < 1e-6 {
        // cot θ ∂_θ R → ∂²_θ R on the axis
        2.0 * d_tt
    } else {
        let d_t = finite_diff::derivative(|t| amp(p.r, t), p.theta, h_t)?;
        d_tt + p.theta.cos() / s * d_t
    };
    let laplacian = d_rr + 2.0 / p.r * d_r + angular / (p.r * p.r);
    Ok(-consts.hbar * consts.hbar / (2.0 * consts.mu) * laplacian / value)
}

/// S = ħmφ - E_CI·t, with E_CI = E_n + mħ dφ/dt for the orbit through `p`.
pub fn action(qn: QuantumNumbers, p: SphericalPoint, t: f64, consts: &PhysConsts) -> Result<f64> {
    qn.validate()?;
    let e_n = bohr_energy(qn.n, consts);
    if qn.m == 0 {
        return Ok(-e_n * t);
    }
    let s = checked_sin_theta(qn, p.theta)?;
    let m = f64::from(qn.m);
    let dphi_dt = m * consts.hbar / (consts.m_e * p.r * p.r * s * s);
    let e_ci = e_n + m * consts.hbar * dphi_dt;
    Ok(consts.hbar * m * p.phi - e_ci * t)
}

/// S, ∇S, Q, V, F_net and L at one spacetime point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldSample {
    pub point: SphericalPoint,
    #[serde(rename = "S")]
    pub s: f64,
    pub grad_s: Vec3,
    #[serde(rename = "KE")]
    pub kinetic: f64,
    #[serde(rename = "Q")]
    pub q: f64,
    #[serde(rename = "V")]
    pub v: f64,
    pub f_net: Vec3,
    #[serde(rename = "L")]
    pub l: Vec3,
}

pub fn field_sample(
    qn: QuantumNumbers,
    p: SphericalPoint,
    t: f64,
    consts: &PhysConsts,
) -> Result<FieldSample> {
    let grad_s = momentum_field(qn, p, consts)?;
    let kinetic = grad_s.norm_squared() / (2.0 * consts.m_e);
    let v = coulomb_potential(p.r, consts)?;
    Ok(FieldSample {
        point: p,
        s: action(qn, p, t, consts)?,
        grad_s,
        kinetic,
        q: bohr_energy(qn.n, consts) - kinetic - v,
        v,
        f_net: net_force(qn, p, consts)?,
        l: angular_momentum(qn, p, consts)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::default_constants;

    fn qn(n: i32, l: i32, m: i32) -> QuantumNumbers {
        QuantumNumbers::new(n, l, m).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn n2_orbit_geometry() {
        let c = default_constants();
        let g = orbit_geometry(qn(2, 1, 1), None, &c).unwrap();
        assert!((g.theta_e.to_degrees() - 45.0).abs() < 1e-12);
        assert_eq!(format!("{:.2e}", g.r_0), "1.50e-10");
        assert_eq!(format!("{:.2e}", g.z_0), "1.50e-10");
        let g = orbit_geometry(qn(2, 1, -1), None, &c).unwrap();
        assert!((g.theta_e.to_degrees() - 135.0).abs() < 1e-12);
        assert_eq!(format!("{:.2e}", g.z_0), "-1.50e-10");
        assert_eq!(g.sense, Sense::Clockwise);
    }

    #[test]
    fn n4_m1_orbit_geometry() {
        let c = default_constants();
        let g = orbit_geometry(qn(4, 3, 1), None, &c).unwrap();
        assert_eq!(format!("{:.1}", g.theta_e.to_degrees()), "16.8");
        assert_eq!(format!("{:.2e}", g.r_0), "2.45e-10");
        assert_eq!(format!("{:.2e}", g.z_0), "8.11e-10");
    }

    #[test]
    fn stationary_states_have_no_geometry() {
        let c = default_constants();
        assert!(matches!(
            orbit_geometry(qn(2, 1, 0), None, &c),
            Err(Error::StationaryElectron)
        ));
        assert!(matches!(
            orbit_geometry(qn(1, 0, 0), None, &c),
            Err(Error::StationaryElectron)
        ));
    }

    #[test]
    fn initial_point_and_quarter_turn() {
        let c = default_constants();
        let g = orbit_geometry(qn(2, 1, 1), None, &c).unwrap();
        let p0 = g.position(0.0);
        assert_eq!(format!("{:.2e},{:.2e}", p0.x, p0.z), "1.50e-10,1.50e-10");
        assert_eq!(p0.y, 0.0);
        let q = g.position(g.period / 4.0);
        assert!(q.x.abs() < 1e-12 * g.r_e);
        assert!(rel(q.y, g.r_0) < 1e-12);
        let back = g.position(g.period);
        assert!(back.max_rel_diff(p0, g.r_e) < 1e-12);
    }

    #[test]
    fn published_speeds() {
        let c = default_constants();
        for m in [1, -1] {
            let g = orbit_geometry(qn(2, 1, m), None, &c).unwrap();
            assert_eq!(format!("{:.2e}", g.speed()), "7.73e5");
        }
        for m in [-3, -2, -1, 1, 2, 3] {
            let g = orbit_geometry(qn(4, 3, m), None, &c).unwrap();
            assert_eq!(format!("{:.2e}", g.speed()), "4.73e5");
        }
    }

    #[test]
    fn velocity_is_tangent() {
        let c = default_constants();
        let g = orbit_geometry(qn(4, 3, -2), None, &c)
            .unwrap()
            .with_phase(0.4);
        for k in 0..16 {
            let t = g.period * k as f64 / 16.0;
            let p = g.position(t);
            let v = g.velocity(t);
            let dot = v.x * p.x + v.y * p.y;
            assert!(dot.abs() < 1e-12 * g.speed() * g.r_0);
            assert!(rel(v.norm(), g.speed()) < 1e-12);
        }
    }

    #[test]
    fn momentum_field_cases() {
        let c = default_constants();
        let r = 3.0e-10;
        assert_eq!(
            momentum_field(qn(2, 1, 0), SphericalPoint::new(r, 0.3, 1.0), &c).unwrap(),
            Vec3::ZERO
        );
        let p = momentum_field(qn(2, 1, 1), SphericalPoint::new(r, PI / 2.0, 0.0), &c).unwrap();
        assert!(p.x.abs() < 1e-40);
        assert!(rel(p.y, c.hbar / r) < 1e-14);
        let a = momentum_field(qn(3, 2, 2), SphericalPoint::new(r, 0.7, 0.1), &c)
            .unwrap()
            .norm();
        let b = momentum_field(qn(3, 2, 2), SphericalPoint::new(r, 0.7, 2.9), &c)
            .unwrap()
            .norm();
        assert!(rel(a, b) < 1e-14);
        assert!(momentum_field(qn(2, 1, 1), SphericalPoint::new(r, 0.0, 0.0), &c).is_err());
    }

    #[test]
    fn angular_momentum_cases() {
        let c = default_constants();
        let l =
            angular_momentum(qn(2, 1, 1), SphericalPoint::new(1e-10, PI / 2.0, 0.3), &c).unwrap();
        assert!(l.x.abs() < 1e-48 && l.y.abs() < 1e-48);
        assert_eq!(l.z, c.hbar);
        let g = orbit_geometry(qn(2, 1, 1), None, &c).unwrap();
        let l = angular_momentum(qn(2, 1, 1), g.spherical_point(0.0), &c).unwrap();
        assert_eq!(format!("{:.2e}", l.norm()), "1.49e-34");
    }

    #[test]
    fn l_squared_values() {
        let c = default_constants();
        let h2 = c.hbar * c.hbar;
        assert!(rel(l_squared(qn(2, 1, 1), PI / 4.0, &c).unwrap(), 2.0 * h2) < 1e-12);
        assert_eq!(l_squared(qn(2, 1, 0), 0.9, &c).unwrap(), 0.0);
        let l2 = l_squared(qn(4, 3, 2), 35.3f64.to_radians(), &c).unwrap();
        assert!(rel(l2, 12.0 * h2) < 5e-3);
        assert!(l_squared(qn(2, 1, 1), 0.0, &c).is_err());
    }

    #[test]
    fn bohr_energies() {
        let c = default_constants();
        let e2 = bohr_energy(2, &c);
        assert_eq!(format!("{:.3}", e2 * 1e19), "-5.447");
        let base = bohr_energy(1, &c);
        for n in 1..=5u32 {
            assert!(rel(bohr_energy(n, &c) * f64::from(n * n), base) < 1e-14);
        }
        assert_eq!(bohr_kinetic(2, &c), -e2);
    }

    #[test]
    fn coulomb_at_bohr_radius_is_twice_the_energy() {
        let c = default_constants();
        let v = coulomb_potential(4.0 * c.a_mu, &c).unwrap();
        assert!(rel(v, 2.0 * bohr_energy(2, &c)) < 1e-14);
        // printed value is 2 x (rounded E_2); the unrounded value is -10.8934e-19
        assert!(rel(v, -10.894e-19) < 1e-4);
        assert!(coulomb_potential(0.0, &c).is_err());
    }

    #[test]
    fn energy_table_m_pm1() {
        let c = default_constants();
        for m in [1, -1] {
            let rep = energy_report(qn(2, 1, m), 4.0 * c.a_mu, &c).unwrap();
            assert_eq!(format!("{:.3}", rep.phi_term * 1e19), "-5.444");
            assert_eq!(format!("{:.3}", rep.e_ci * 1e19), "-0.003");
            assert_eq!(format!("{:.3}", rep.ke_ci * 1e19), "2.722");
            assert_eq!(format!("{:.3}", rep.ke_bohr * 1e19), "5.447");
            assert_eq!(format!("{:.3}", rep.q * 1e19), "2.725");
            assert_eq!(rep.e_n - rep.ke_ci - rep.v - rep.q, 0.0);
            assert!((rep.e_n - (rep.phi_term + rep.e_ci)).abs() < 1e-34);
        }
    }

    #[test]
    fn energy_table_m0() {
        let c = default_constants();
        let rep = energy_report(qn(2, 1, 0), 4.0 * c.a_mu, &c).unwrap();
        assert_eq!(rep.e_ci, rep.e_n);
        assert_eq!(rep.ke_ci, 0.0);
        assert_eq!(format!("{:.3}", rep.q * 1e19), "5.447");
    }

    #[test]
    fn net_force_on_orbit() {
        let c = default_constants();
        let g = orbit_geometry(qn(2, 1, 1), None, &c).unwrap();
        let f = net_force(qn(2, 1, 1), g.spherical_point(0.0), &c).unwrap();
        assert_eq!(format!("{:.2e}", f.norm()), "3.64e-9");
        assert!(rel(f.norm(), g.centripetal_force()) < 1e-12);
        assert_eq!(f.z, 0.0);
        assert_eq!(
            net_force(qn(2, 1, 0), g.spherical_point(0.0), &c).unwrap(),
            Vec3::ZERO
        );
    }

    #[test]
    fn numeric_quantum_potential_published_values() {
        let c = default_constants();
        let g = orbit_geometry(qn(2, 1, 1), None, &c).unwrap();
        let q = quantum_potential_numeric(qn(2, 1, 1), g.spherical_point(0.3), &c).unwrap();
        assert!(rel(q, 2.725e-19) < 5e-3);
        let q0 =
            quantum_potential_numeric(qn(2, 1, 0), SphericalPoint::new(4.0 * c.a_mu, 0.0, 0.0), &c)
                .unwrap();
        assert!(rel(q0, 5.447e-19) < 5e-3);
    }

    #[test]
    fn numeric_quantum_potential_rejects_nodes() {
        let c = default_constants();
        let on_equator = SphericalPoint::new(4.0 * c.a_mu, PI / 2.0, 0.0);
        assert!(matches!(
            quantum_potential_numeric(qn(2, 1, 0), on_equator, &c),
            Err(Error::Node { .. })
        ));
        // inner radial node of R_30 at r = (9 - 3√3)/2 · a_μ
        let node_r = (4.5 - 1.5 * 3f64.sqrt()) * c.a_mu;
        let r = radial(qn(3, 0, 0), node_r, &c).unwrap();
        assert!(r.abs() < 1e-9 * c.a_mu.powf(-1.5));
        assert!(
            quantum_potential_numeric(qn(3, 0, 0), SphericalPoint::new(node_r, 0.4, 0.0), &c)
                .is_err()
        );
    }
}
