//! The five CLI commands as library functions returning plot-ready tables.
//!
//! Angles cross this boundary in degrees; everything else is SI.

use std::f64::consts::PI;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::constants::PhysConsts;
use crate::error::{Error, Result};
use crate::integrator::{IntegratorConfig, Sample};
use crate::io::{Cell, Table};
use crate::kinematics::{
    coulomb_potential, energy_report, field_sample, orbit_geometry, EnergyReport, OrbitGeometry,
};
use crate::rotated::{
    angular_momentum_rotated, net_force_rotated, phase_jet, rotated_trajectory, RotatedState,
    RotationConfig,
};
use crate::vector::Vec3;
use crate::wavefunctions::{bohr_energy, QuantumNumbers, SphericalPoint};

pub const TRAJECTORY_COLUMNS: [&str; 13] = [
    "t_s", "x_m", "y_m", "z_m", "vx", "vy", "vz", "Lx", "Ly", "Lz", "Fx", "Fy", "Fz",
];

pub const FIELD_COLUMNS: [&str; 18] = [
    "x_m", "y_m", "z_m", "S", "grad_S", "KE", "Q", "V", "E_n", "Fx", "Fy", "Fz", "F", "Lx", "Ly",
    "Lz", "L", "flag",
];

/// Start phase of the rotated orbit: the unrotated point (0, r_0, z_0),
/// which rotates onto the tabulated Runge–Kutta start.
pub const DEFAULT_ROTATED_PHASE_DEG: f64 = 90.0;

/// Polar angle of the `ring` grid for states without an orbit.
const STATIONARY_RING_THETA: f64 = PI / 4.0;

/// Sampling grid for `fields`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridSpec {
    /// N points around the state's orbit (or a latitude ring at r_e for m = 0).
    Ring(usize),
    /// N³ points filling the cube [-w, w]³.
    Box { n: usize, half_width: f64 },
}

impl FromStr for GridSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Config(format!(
                "bad grid {s:?}: expected ring:N or box:N:HALFWIDTH"
            ))
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["ring", n] => {
                let n: usize = n.parse().map_err(|_| bad())?;
                if n == 0 {
                    return Err(bad());
                }
                Ok(GridSpec::Ring(n))
            }
            ["box", n, w] => {
                let n: usize = n.parse().map_err(|_| bad())?;
                let half_width: f64 = w.parse().map_err(|_| bad())?;
                if n < 2 || !(half_width.is_finite() && half_width > 0.0) {
                    return Err(bad());
                }
                Ok(GridSpec::Box { n, half_width })
            }
            _ => Err(bad()),
        }
    }
}

/// Options shared by all commands.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub n: i32,
    pub l: i32,
    pub m: i32,
    /// Electron distance from the nucleus; defaults to n²a_μ/Z.
    pub r_e: Option<f64>,
    pub beta_deg: f64,
    /// Orbit phase at t = 0; the default depends on the command.
    pub phase_deg: Option<f64>,
    pub periods: f64,
    /// Steps per period; dt = T/dt_divisor.
    pub dt_divisor: usize,
    pub record_every: usize,
    pub grid: GridSpec,
    /// Position of a stationary (m = 0) electron, in the output frame.
    pub start: Option<Vec3>,
}

impl Default for RunSpec {
    fn default() -> Self {
        Self {
            n: 2,
            l: 1,
            m: 1,
            r_e: None,
            beta_deg: 0.0,
            phase_deg: None,
            periods: 1.0,
            dt_divisor: 2048,
            record_every: 16,
            grid: GridSpec::Ring(16),
            start: None,
        }
    }
}

impl RunSpec {
    pub fn quantum_numbers(&self) -> Result<QuantumNumbers> {
        QuantumNumbers::new(self.n, self.l, self.m)
    }

    fn r_e(&self, qn: QuantumNumbers, consts: &PhysConsts) -> Result<f64> {
        let r_e = self
            .r_e
            .unwrap_or_else(|| consts.bohr_radius_of_shell(qn.n));
        if !(r_e.is_finite() && r_e > 0.0) {
            return Err(Error::Config(format!("r_e must be > 0, got {r_e}")));
        }
        Ok(r_e)
    }

    fn integrator_config(&self, period: f64) -> Result<IntegratorConfig> {
        IntegratorConfig::for_periods(period, self.periods, self.dt_divisor, self.record_every)
    }

    fn rotation(&self) -> RotationConfig {
        RotationConfig::from_degrees(self.beta_deg)
    }
}

/// Process exit code for a failed command: 2 for bad input, 3 for a nodal
/// point hit during integration, 1 otherwise.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidQuantumNumbers { .. } | Error::Config(_) | Error::LegendreDomain { .. } => 2,
        Error::Node { .. } => 3,
        Error::StepAborted { source, .. } => match **source {
            Error::Node { .. } => 3,
            _ => 1,
        },
        _ => 1,
    }
}

fn state_meta(table: &mut Table, command: &str, qn: QuantumNumbers) {
    table
        .meta("command", command)
        .meta("n", f64::from(qn.n))
        .meta("l", f64::from(qn.l))
        .meta("m", f64::from(qn.m));
}

fn geometry_meta(table: &mut Table, geom: &OrbitGeometry) {
    table
        .meta("r_e_m", geom.r_e)
        .meta("r_0_m", geom.r_0)
        .meta("z_0_m", geom.z_0)
        .meta("theta_e_deg", geom.theta_e.to_degrees())
        .meta("alpha_deg", geom.alpha.to_degrees())
        .meta("omega_rad_s", geom.omega)
        .meta("period_s", geom.period)
        .meta("speed_m_s", geom.speed())
        .meta("phase_deg", geom.c.to_degrees())
        .meta(
            "sense",
            match geom.sense {
                crate::kinematics::Sense::Counterclockwise => "counterclockwise",
                crate::kinematics::Sense::Clockwise => "clockwise",
            },
        );
}

fn sample_row(s: &Sample) -> Vec<Cell> {
    let mut row = vec![Cell::Num(s.t)];
    for v in [s.position, s.velocity, s.angular_momentum, s.net_force] {
        row.extend(v.to_array().map(Cell::Num));
    }
    row
}

fn stationary_sample(position: Vec3) -> Sample {
    Sample {
        t: 0.0,
        position,
        velocity: Vec3::ZERO,
        angular_momentum: Vec3::ZERO,
        net_force: Vec3::ZERO,
    }
}

/// Closed-form orbit sampled every `record_every` steps of size T/dt_divisor.
/// An m = 0 (or l = 0) electron yields one stationary sample.
pub fn cmd_orbit(spec: &RunSpec, consts: &PhysConsts) -> Result<Table> {
    let qn = spec.quantum_numbers()?;
    let mut table = Table::new(&TRAJECTORY_COLUMNS);
    state_meta(&mut table, "orbit", qn);
    if qn.m == 0 || qn.l == 0 {
        let r_e = spec.r_e(qn, consts)?;
        table.meta("r_e_m", r_e).meta("stationary", "true");
        let start = spec.start.unwrap_or(Vec3::new(0.0, 0.0, r_e));
        table.push_row(sample_row(&stationary_sample(start)));
        return Ok(table);
    }
    let geom = orbit_geometry(qn, spec.r_e, consts)?
        .with_phase(spec.phase_deg.unwrap_or(0.0).to_radians());
    geometry_meta(&mut table, &geom);
    let cfg = spec.integrator_config(geom.period)?;
    table.meta("dt_s", cfg.dt).meta("steps", cfg.steps as f64);
    for k in 0..cfg.sample_count() {
        let t = (k * cfg.record_every) as f64 * cfg.dt;
        table.push_row(sample_row(&Sample {
            t,
            position: geom.position(t),
            velocity: geom.velocity(t),
            angular_momentum: geom.angular_momentum(t),
            net_force: geom.net_force(t),
        }));
    }
    Ok(table)
}

/// RK4 orbit of ψ_21m in axes rotated by β, in primed coordinates.
///
/// `closure_error_rel` is the distance of the final sample from the rotated
/// closed-form orbit at the same time, over r_e.
pub fn cmd_rotated_orbit(spec: &RunSpec, consts: &PhysConsts) -> Result<Table> {
    let qn = spec.quantum_numbers()?;
    if qn.n != 2 || qn.l != 1 {
        return Err(Error::Config(format!(
            "rotated-orbit needs n=2, l=1, got {qn}"
        )));
    }
    let rotation = spec.rotation();
    let state = RotatedState::new(qn.m, rotation)?;
    let mut table = Table::new(&TRAJECTORY_COLUMNS);
    state_meta(&mut table, "rotated-orbit", qn);
    table.meta("beta_deg", spec.beta_deg);
    if qn.m == 0 {
        let r_e = spec.r_e(qn, consts)?;
        table.meta("r_e_m", r_e).meta("stationary", "true");
        let start = spec
            .start
            .unwrap_or_else(|| rotation.rotate(Vec3::new(0.0, 0.0, r_e)));
        table.push_row(sample_row(&stationary_sample(start)));
        return Ok(table);
    }
    let phase = spec
        .phase_deg
        .unwrap_or(DEFAULT_ROTATED_PHASE_DEG)
        .to_radians();
    let geom = orbit_geometry(qn, spec.r_e, consts)?.with_phase(phase);
    geometry_meta(&mut table, &geom);
    let cfg = spec.integrator_config(geom.period)?;
    let traj = rotated_trajectory(&state, &geom, &cfg, consts)?;
    let end = traj.last();
    let closure = (end.position - rotation.rotate(geom.position(end.t))).norm() / geom.r_e;
    table
        .meta("dt_s", cfg.dt)
        .meta("steps", cfg.steps as f64)
        .meta("closure_error_rel", closure);
    for s in &traj.samples {
        table.push_row(sample_row(s));
    }
    Ok(table)
}

fn grid_points(spec: &RunSpec, qn: QuantumNumbers, consts: &PhysConsts) -> Result<Vec<Vec3>> {
    match spec.grid {
        GridSpec::Ring(count) => {
            let ring: Vec<Vec3> = if qn.m == 0 || qn.l == 0 {
                let r_e = spec.r_e(qn, consts)?;
                (0..count)
                    .map(|k| {
                        let phi = 2.0 * PI * k as f64 / count as f64;
                        SphericalPoint::new(r_e, STATIONARY_RING_THETA, phi).to_cartesian()
                    })
                    .collect()
            } else {
                let geom = orbit_geometry(qn, spec.r_e, consts)?
                    .with_phase(spec.phase_deg.unwrap_or(0.0).to_radians());
                (0..count)
                    .map(|k| geom.position(geom.period * k as f64 / count as f64))
                    .collect()
            };
            let rotation = spec.rotation();
            Ok(ring.into_iter().map(|p| rotation.rotate(p)).collect())
        }
        GridSpec::Box { n, half_width } => {
            let coord = |i: usize| -half_width + 2.0 * half_width * i as f64 / (n - 1) as f64;
            let mut points = Vec::with_capacity(n * n * n);
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        points.push(Vec3::new(coord(i), coord(j), coord(k)));
                    }
                }
            }
            Ok(points)
        }
    }
}

struct FieldRow {
    s: f64,
    grad_s: Vec3,
    kinetic: f64,
    v: f64,
    f_net: Vec3,
    l: Vec3,
}

fn field_row(
    qn: QuantumNumbers,
    state: Option<&RotatedState>,
    p: Vec3,
    consts: &PhysConsts,
) -> Result<FieldRow> {
    match state {
        None => {
            let f = field_sample(qn, SphericalPoint::from_cartesian(p), 0.0, consts)?;
            Ok(FieldRow {
                s: f.s,
                grad_s: f.grad_s,
                kinetic: f.kinetic,
                v: f.v,
                f_net: f.f_net,
                l: f.l,
            })
        }
        Some(state) => {
            let jet = phase_jet(state, p, consts)?;
            Ok(FieldRow {
                s: jet.s,
                grad_s: jet.grad,
                kinetic: jet.grad.norm_squared() / (2.0 * consts.m_e),
                v: coulomb_potential(p.norm(), consts)?,
                f_net: net_force_rotated(state, p, consts)?,
                l: angular_momentum_rotated(state, p, consts)?,
            })
        }
    }
}

/// Fields S, |∇S|, KE, Q, V, F_net and L at t = 0 on a grid.
///
/// With β ≠ 0 (n = 2, l = 1 only) points are primed coordinates and the
/// rotated-frame fields are used. Rows at nodes or on singular sets carry
/// NaN values and flag `node` or `singular` instead of failing.
pub fn cmd_fields(spec: &RunSpec, consts: &PhysConsts) -> Result<Table> {
    let qn = spec.quantum_numbers()?;
    let state = if spec.beta_deg != 0.0 {
        if qn.n != 2 || qn.l != 1 {
            return Err(Error::Config(format!(
                "rotated fields need n=2, l=1, got {qn}"
            )));
        }
        Some(RotatedState::new(qn.m, spec.rotation())?)
    } else {
        None
    };
    let e_n = bohr_energy(qn.n, consts);
    let mut table = Table::new(&FIELD_COLUMNS);
    state_meta(&mut table, "fields", qn);
    table
        .meta("beta_deg", spec.beta_deg)
        .meta("E_n_J", e_n)
        .meta("t_s", 0.0);
    for p in grid_points(spec, qn, consts)? {
        let mut row: Vec<Cell> = p.to_array().map(Cell::Num).to_vec();
        match field_row(qn, state.as_ref(), p, consts) {
            Ok(f) => {
                let q = e_n - f.kinetic - f.v;
                row.extend([f.s, f.grad_s.norm(), f.kinetic, q, f.v, e_n].map(Cell::Num));
                row.extend(f.f_net.to_array().map(Cell::Num));
                row.push(Cell::Num(f.f_net.norm()));
                row.extend(f.l.to_array().map(Cell::Num));
                row.push(Cell::Num(f.l.norm()));
                row.push("ok".into());
            }
            Err(e) => {
                let flag = match e {
                    Error::Node { .. } => "node",
                    Error::Singularity(_) => "singular",
                    other => return Err(other),
                };
                row.extend(std::iter::repeat_n(
                    Cell::Num(f64::NAN),
                    FIELD_COLUMNS.len() - 4,
                ));
                row.push(flag.into());
            }
        }
        table.push_row(row);
    }
    Ok(table)
}

/// Energy bookkeeping of one orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Report {
    pub qn: QuantumNumbers,
    pub r_e: f64,
    pub energies: EnergyReport,
}

pub const REPORT_UNIT: f64 = 1e-19;

impl Report {
    fn rows(&self) -> [(&'static str, f64); 7] {
        let e = &self.energies;
        [
            ("E_n", e.e_n),
            ("phi_term", e.phi_term),
            ("E_CI", e.e_ci),
            ("KE_CI", e.ke_ci),
            ("KE_Bohr", e.ke_bohr),
            ("V", e.v),
            ("Q", e.q),
        ]
    }

    /// Values in units of 10⁻¹⁹ J rounded to 3 decimals.
    pub fn text(&self) -> String {
        let mut out = format!(
            "state {}  r_e = {:.4e} m  (energies in 1e-19 J)\n",
            self.qn, self.r_e
        );
        for (name, value) in self.rows() {
            out.push_str(&format!("{name:<9}{:>10.3}\n", value / REPORT_UNIT));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let display: serde_json::Map<String, Value> = self
            .rows()
            .iter()
            .map(|(k, v)| {
                (
                    k.to_string(),
                    Value::String(format!("{:.3}", v / REPORT_UNIT)),
                )
            })
            .collect();
        json!({
            "n": self.qn.n,
            "l": self.qn.l,
            "m": self.qn.m,
            "r_e_m": self.r_e,
            "energies_J": self.energies,
            "display_1e-19_J": display,
        })
    }
}

pub fn cmd_report(spec: &RunSpec, consts: &PhysConsts) -> Result<Report> {
    let qn = spec.quantum_numbers()?;
    let r_e = spec.r_e(qn, consts)?;
    Ok(Report {
        qn,
        r_e,
        energies: energy_report(qn, r_e, consts)?,
    })
}

pub use crate::verify::run_checks as cmd_check;
