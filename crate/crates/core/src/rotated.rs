//! The n = 2, l = 1 states written in axes rotated by β about the y-axis.
//!
//! Primed coordinates relate to the original ones by
//!
//! ```text
//! x = z' sin β + x' cos β,   y = y',   z = z' cos β - x' sin β
//! ```
//!
//! Stripping the positive radial factor A·R_21(r')/r' from ψ_21m leaves the
//! polynomial φ_21m, whose argument is S/ħ. With X = z' sin β + x' cos β
//! and D = φφ* = X² + y'², every derivative of S_211 is a rational function
//! of (x', y', z'); S_21,-1 is its negative and S_210 vanishes.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::PhysConsts;
use crate::error::{Error, Result};
use crate::integrator::{integrate, IntegratorConfig, Observation, Trajectory};
use crate::kinematics::OrbitGeometry;
use crate::vector::Vec3;
use crate::wavefunctions::ComplexAmplitude;

/// Rotation of the coordinate axes by `beta` (rad) about y.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotationConfig {
    pub beta: f64,
}

impl RotationConfig {
    pub fn new(beta: f64) -> Self {
        Self { beta }
    }

    pub fn from_degrees(beta_deg: f64) -> Self {
        Self::new(beta_deg.to_radians())
    }

    /// Original coordinates to primed coordinates.
    pub fn rotate(&self, v: Vec3) -> Vec3 {
        let (s, c) = self.beta.sin_cos();
        Vec3::new(v.x * c - v.z * s, v.y, v.x * s + v.z * c)
    }

    /// Primed coordinates back to the original axes.
    pub fn unrotate(&self, v: Vec3) -> Vec3 {
        let (s, c) = self.beta.sin_cos();
        Vec3::new(v.z * s + v.x * c, v.y, v.z * c - v.x * s)
    }
}

pub fn rotate(config: &RotationConfig, v: Vec3) -> Vec3 {
    config.rotate(v)
}

pub fn unrotate(config: &RotationConfig, v: Vec3) -> Vec3 {
    config.unrotate(v)
}

/// ψ_21m of the unrotated axes, evaluated in the rotated frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotatedState {
    m: i32,
    pub rotation: RotationConfig,
}

impl RotatedState {
    pub fn new(m: i32, rotation: RotationConfig) -> Result<Self> {
        if !(-1..=1).contains(&m) {
            return Err(Error::InvalidQuantumNumbers { n: 2, l: 1, m });
        }
        Ok(Self { m, rotation })
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn beta(&self) -> f64 {
        self.rotation.beta
    }
}

/// First and second derivatives of S at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseJet {
    /// S (J·s), principal branch of ħ·arg φ.
    pub s: f64,
    /// ∇'S (kg·m/s).
    pub grad: Vec3,
    /// Symmetric Hessian of S (kg/s).
    pub hess: [[f64; 3]; 3],
}

impl PhaseJet {
    fn zero() -> Self {
        Self {
            s: 0.0,
            grad: Vec3::ZERO,
            hess: [[0.0; 3]; 3],
        }
    }

    pub fn hess_times(&self, v: Vec3) -> Vec3 {
        let h = &self.hess;
        Vec3::new(
            h[0][0] * v.x + h[0][1] * v.y + h[0][2] * v.z,
            h[1][0] * v.x + h[1][1] * v.y + h[1][2] * v.z,
            h[2][0] * v.x + h[2][1] * v.y + h[2][2] * v.z,
        )
    }
}

/// φ_21m = ψ_21m · r'/(A R_21(r')).
pub fn phi_21m(state: &RotatedState, p: Vec3) -> ComplexAmplitude {
    let (s, c) = state.beta().sin_cos();
    let big_x = p.z * s + p.x * c;
    match state.m {
        1 => -Complex64::new(big_x, p.y),
        0 => Complex64::new(SQRT_2 * (p.z * c - p.x * s), 0.0),
        _ => Complex64::new(big_x, -p.y),
    }
}

/// φφ* = z'² sin²β + x'² cos²β + y'² + 2x'z' sin β cos β, for m = ±1.
pub fn phi_norm_sqr(beta: f64, p: Vec3) -> f64 {
    let (s, c) = beta.sin_cos();
    p.z * p.z * s * s + p.x * p.x * c * c + p.y * p.y + 2.0 * p.x * p.z * s * c
}

/// Squared length below which a point counts as nodal, relative to the
/// n = 2 orbit radius 4a_μ.
const NODE_REL: f64 = 1e-12;

fn node_guard(d: f64, p: Vec3, consts: &PhysConsts) -> Result<()> {
    let r_e = consts.bohr_radius_of_shell(2);
    if d < NODE_REL * r_e * r_e {
        return Err(Error::node(p));
    }
    Ok(())
}

pub fn phase_jet(state: &RotatedState, p: Vec3, consts: &PhysConsts) -> Result<PhaseJet> {
    if state.m == 0 {
        return Ok(PhaseJet::zero());
    }
    let (s, c) = state.beta().sin_cos();
    let big_x = p.z * s + p.x * c;
    let y = p.y;
    let d = big_x * big_x + y * y;
    node_guard(d, p, consts)?;

    let sign = f64::from(state.m);
    let h = sign * consts.hbar;
    let d2 = d * d;
    let grad = Vec3::new(-h * y * c / d, h * big_x / d, -h * y * s / d);

    let yx = 2.0 * h * y * big_x / d2;
    let skew = -h * (big_x * big_x - y * y) / d2;
    let hxx = c * c * yx;
    let hyy = -yx;
    let hzz = s * s * yx;
    let hxy = c * skew;
    let hxz = c * s * yx;
    let hyz = s * skew;

    let phi = phi_21m(state, p);
    Ok(PhaseJet {
        s: consts.hbar * phi.im.atan2(phi.re),
        grad,
        hess: [[hxx, hxy, hxz], [hxy, hyy, hyz], [hxz, hyz, hzz]],
    })
}

/// Guidance velocity dr'/dt = ∇'S/m_e.
pub fn eom_rhs(state: &RotatedState, p: Vec3, consts: &PhysConsts) -> Result<Vec3> {
    Ok(phase_jet(state, p, consts)?.grad / consts.m_e)
}

/// F_net = ∇'[(∇'S)²/2m_e] = Hess(S)·∇'S / m_e.
pub fn net_force_rotated(state: &RotatedState, p: Vec3, consts: &PhysConsts) -> Result<Vec3> {
    let jet = phase_jet(state, p, consts)?;
    Ok(jet.hess_times(jet.grad) / consts.m_e)
}

/// L = r' × ∇'S.
pub fn angular_momentum_rotated(
    state: &RotatedState,
    p: Vec3,
    consts: &PhysConsts,
) -> Result<Vec3> {
    let jet = phase_jet(state, p, consts)?;
    Ok(p.cross(jet.grad))
}

/// Closed form of L_211 expanded in primed components; L_21,-1 is its negative.
pub fn angular_momentum_211_expanded(beta: f64, p: Vec3, consts: &PhysConsts) -> Result<Vec3> {
    let d = phi_norm_sqr(beta, p);
    node_guard(d, p, consts)?;
    let (s, c) = beta.sin_cos();
    let (x, y, z) = (p.x, p.y, p.z);
    let k = consts.hbar / d;
    Ok(Vec3::new(
        -k * ((y * y + z * z) * s + x * z * c),
        k * (x * y * s - y * z * c),
        k * (x * z * s + (x * x + y * y) * c),
    ))
}

/// Coefficients of ψ_21m on the rotated-frame eigenstates (ψ'_211, ψ'_210, ψ'_21,-1).
pub fn decompose(state: &RotatedState) -> [f64; 3] {
    let (s, c) = state.beta().sin_cos();
    let k = s * FRAC_1_SQRT_2;
    match state.m {
        1 => [(1.0 + c) / 2.0, -k, (1.0 - c) / 2.0],
        0 => [k, c, -k],
        _ => [(1.0 - c) / 2.0, k, (1.0 + c) / 2.0],
    }
}

/// Rotated-frame start matching the unrotated orbit point at t = 0.
pub fn initial_condition(m: i32, geom: &OrbitGeometry, config: &RotationConfig) -> Result<Vec3> {
    if m == 0 {
        return Err(Error::StationaryElectron);
    }
    if m.abs() != 1 || geom.qn.n != 2 || geom.qn.l != 1 || geom.qn.m != m {
        return Err(Error::Config(format!(
            "rotated start needs an n=2, l=1, m={m} orbit, got {}",
            geom.qn
        )));
    }
    Ok(config.rotate(geom.position(0.0)))
}

/// RK4 trajectory of the rotated m = ±1 electron from [`initial_condition`],
/// observing L and F_net at recorded steps.
pub fn rotated_trajectory(
    state: &RotatedState,
    geom: &OrbitGeometry,
    config: &IntegratorConfig,
    consts: &PhysConsts,
) -> Result<Trajectory> {
    let y0 = initial_condition(state.m, geom, &state.rotation)?;
    integrate(
        format!("{} beta={}", geom.qn, state.beta()),
        |_, y| eom_rhs(state, y, consts),
        y0,
        config,
        |_, y| {
            let jet = phase_jet(state, y, consts)?;
            Ok(Observation {
                angular_momentum: y.cross(jet.grad),
                net_force: jet.hess_times(jet.grad) / consts.m_e,
            })
        },
    )
}
