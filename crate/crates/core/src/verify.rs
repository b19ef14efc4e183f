//! Named numerical checks behind the `check` command.
//!
//! Each suite returns its checks; suites run on separate threads. Reference
//! values for the geometry, speeds, forces and energies are the published
//! ones, so perturbing the constants makes the affected checks fail by name.

use std::f64::consts::{PI, SQRT_2};
use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constants::PhysConsts;
use crate::error::Result;
use crate::finite_diff;
use crate::integrator::IntegratorConfig;
use crate::kinematics::{
    action, field_sample, momentum_field, orbit_geometry, quantum_potential,
    quantum_potential_numeric,
};
use crate::kinematics::{coulomb_potential, energy_report};
use crate::quadrature::normalization;
use crate::rotated::{decompose, phase_jet, rotated_trajectory, RotatedState, RotationConfig};
use crate::vector::Vec3;
use crate::wavefunctions::{bohr_energy, radial_distribution_peak, QuantumNumbers, SphericalPoint};

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub measured: f64,
    pub expected: f64,
    /// How `measured` is compared: `rel`, `abs`, `sig3`, `dec3` or `range`.
    pub metric: &'static str,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckSummary {
    pub passed: bool,
    pub total: usize,
    pub failed: Vec<String>,
    pub checks: Vec<CheckResult>,
}

impl CheckSummary {
    fn from_checks(checks: Vec<CheckResult>) -> Self {
        let failed: Vec<String> = checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.clone())
            .collect();
        Self {
            passed: failed.is_empty(),
            total: checks.len(),
            failed,
            checks,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

#[derive(Default)]
struct Suite(Vec<CheckResult>);

impl Suite {
    fn push(
        &mut self,
        name: String,
        measured: f64,
        expected: f64,
        metric: &'static str,
        tolerance: f64,
        passed: bool,
    ) {
        self.0.push(CheckResult {
            name,
            measured,
            expected,
            metric,
            tolerance,
            passed: passed && measured.is_finite(),
            detail: None,
        });
    }

    fn rel(&mut self, name: impl Into<String>, measured: f64, expected: f64, tol: f64) {
        let dev = if expected == 0.0 {
            measured.abs()
        } else {
            (measured / expected - 1.0).abs()
        };
        self.push(name.into(), measured, expected, "rel", tol, dev <= tol);
    }

    fn abs(&mut self, name: impl Into<String>, measured: f64, expected: f64, tol: f64) {
        self.push(
            name.into(),
            measured,
            expected,
            "abs",
            tol,
            (measured - expected).abs() <= tol,
        );
    }

    fn sig3(&mut self, name: impl Into<String>, measured: f64, expected: f64) {
        let same = format!("{measured:.2e}") == format!("{expected:.2e}");
        self.push(name.into(), measured, expected, "sig3", 0.0, same);
    }

    fn dec3(&mut self, name: impl Into<String>, measured: f64, expected: f64) {
        let same = format!("{measured:.3}") == format!("{expected:.3}");
        self.push(name.into(), measured, expected, "dec3", 0.0, same);
    }

    fn range(&mut self, name: impl Into<String>, measured: f64, lo: f64, hi: f64) {
        let ok = (lo..=hi).contains(&measured);
        self.push(
            name.into(),
            measured,
            0.5 * (lo + hi),
            "range",
            0.5 * (hi - lo),
            ok,
        );
    }

    fn error(&mut self, name: impl Into<String>, err: impl std::fmt::Display) {
        self.push(name.into(), f64::NAN, f64::NAN, "error", 0.0, false);
        if let Some(last) = self.0.last_mut() {
            last.detail = Some(err.to_string());
        }
    }

    /// Records `f`'s checks, or one failed check named `name` if it errors.
    fn guarded(&mut self, name: &str, f: impl FnOnce(&mut Suite) -> Result<()>) {
        if let Err(e) = f(self) {
            self.error(name, e);
        }
    }
}

fn qn(n: i32, l: i32, m: i32) -> QuantumNumbers {
    QuantumNumbers::new(n, l, m).expect("fixed valid quantum numbers")
}

/// (m, θ_e in degrees, r_0 and z_0 in m) as tabulated.
const TABLE1_N2: [(i32, f64, f64, f64); 2] = [
    (1, 45.0, 1.50e-10, 1.50e-10),
    (-1, 135.0, 1.50e-10, -1.50e-10),
];
const TABLE1_N4: [(i32, f64, f64, f64); 6] = [
    (1, 16.8, 2.45e-10, 8.11e-10),
    (2, 35.3, 4.89e-10, 6.92e-10),
    (3, 60.0, 7.34e-10, 4.23e-10),
    (-3, 120.0, 7.34e-10, -4.23e-10),
    (-2, 145.0, 4.89e-10, -6.92e-10),
    (-1, 163.0, 2.45e-10, -8.11e-10),
];

fn geometry(consts: &PhysConsts) -> Suite {
    let mut s = Suite::default();
    s.sig3("geometry.n2.r_e", consts.bohr_radius_of_shell(2), 2.12e-10);
    s.sig3("geometry.n4.r_e", consts.bohr_radius_of_shell(4), 8.47e-10);
    for &(m, theta, r0, z0) in &TABLE1_N2 {
        s.guarded(&format!("geometry.n2.m{m}"), |s| {
            let g = orbit_geometry(qn(2, 1, m), None, consts)?;
            s.sig3(
                format!("geometry.n2.m{m}.theta_e_deg"),
                g.theta_e.to_degrees(),
                theta,
            );
            s.sig3(format!("geometry.n2.m{m}.r_0"), g.r_0, r0);
            s.sig3(format!("geometry.n2.m{m}.z_0"), g.z_0, z0);
            Ok(())
        });
    }
    for &(m, theta, r0, z0) in &TABLE1_N4 {
        s.guarded(&format!("geometry.n4.m{m}"), |s| {
            let g = orbit_geometry(qn(4, 3, m), None, consts)?;
            s.rel(
                format!("geometry.n4.m{m}.theta_e_deg"),
                g.theta_e.to_degrees(),
                theta,
                5e-3,
            );
            s.rel(format!("geometry.n4.m{m}.r_0"), g.r_0, r0, 5e-3);
            s.rel(format!("geometry.n4.m{m}.z_0"), g.z_0, z0, 5e-3);
            Ok(())
        });
    }
    s.guarded("geometry.m0", |s| {
        let stationary = orbit_geometry(qn(4, 3, 0), None, consts).is_err()
            && orbit_geometry(qn(2, 1, 0), None, consts).is_err();
        s.push(
            "geometry.m0.stationary".into(),
            0.0,
            0.0,
            "abs",
            0.0,
            stationary,
        );
        Ok(())
    });
    s
}

fn orbit_values(consts: &PhysConsts) -> Suite {
    let mut s = Suite::default();
    s.guarded("speed", |s| {
        for m in [1, -1] {
            s.rel(
                format!("speed.n2.m{m}"),
                orbit_geometry(qn(2, 1, m), None, consts)?.speed(),
                7.73e5,
                5e-3,
            );
        }
        for m in [-3, -2, -1, 1, 2, 3] {
            s.rel(
                format!("speed.n4.m{m}"),
                orbit_geometry(qn(4, 3, m), None, consts)?.speed(),
                4.73e5,
                5e-3,
            );
        }
        Ok(())
    });
    s.guarded("force", |s| {
        for m in [1, -1] {
            let g = orbit_geometry(qn(2, 1, m), None, consts)?;
            s.rel(
                format!("force.unrotated.m{m}"),
                g.net_force(0.3 * g.period).norm(),
                3.64e-9,
                1e-2,
            );
            s.rel(
                format!("force.centripetal.m{m}"),
                g.net_force(0.0).norm(),
                g.centripetal_force(),
                1e-12,
            );
            let rot = RotationConfig::from_degrees(30.0);
            let state = RotatedState::new(m, rot)?;
            let p = rot.rotate(g.with_phase(PI / 2.0).position(0.0));
            let jet = phase_jet(&state, p, consts)?;
            let f = jet.hess_times(jet.grad) / consts.m_e;
            s.rel(format!("force.rotated30.m{m}"), f.norm(), 3.64e-9, 1e-2);
        }
        Ok(())
    });
    s.guarded("angular_momentum", |s| {
        let root2 = SQRT_2 * consts.hbar;
        for m in [1, -1] {
            let g = orbit_geometry(qn(2, 1, m), None, consts)?;
            let l = g.angular_momentum(0.2 * g.period);
            s.rel(
                format!("angular_momentum.unrotated.m{m}"),
                l.norm(),
                1.49e-34,
                5e-3,
            );
            s.rel(
                format!("angular_momentum.unrotated.m{m}.exact"),
                l.norm(),
                root2,
                1e-12,
            );
            s.rel(
                format!("angular_momentum.unrotated.m{m}.Lz"),
                l.z,
                f64::from(m) * consts.hbar,
                1e-12,
            );
            let rot = RotationConfig::from_degrees(30.0);
            let state = RotatedState::new(m, rot)?;
            let p = rot.rotate(g.with_phase(PI / 2.0).position(0.0));
            let lr = p.cross(phase_jet(&state, p, consts)?.grad);
            s.rel(
                format!("angular_momentum.rotated30.m{m}"),
                lr.norm(),
                1.49e-34,
                5e-3,
            );
        }
        Ok(())
    });
    s
}

fn energies(consts: &PhysConsts) -> Suite {
    let mut s = Suite::default();
    let unit = 1e-19;
    s.guarded("energy", |s| {
        let r_e = consts.bohr_radius_of_shell(2);
        for m in [1, -1] {
            let e = energy_report(qn(2, 1, m), r_e, consts)?;
            s.dec3(format!("energy.m{m}.E"), e.e_n / unit, -5.447);
            s.dec3(format!("energy.m{m}.E_CI"), e.e_ci / unit, -0.003);
            s.dec3(format!("energy.m{m}.KE_CI"), e.ke_ci / unit, 2.722);
            s.dec3(format!("energy.m{m}.V"), e.v / unit, -10.894);
            s.dec3(format!("energy.m{m}.Q"), e.q / unit, 2.725);
        }
        let e = energy_report(qn(2, 1, 0), r_e, consts)?;
        s.dec3("energy.m0.E_CI", e.e_ci / unit, -5.447);
        s.dec3("energy.m0.KE_CI", e.ke_ci / unit, 0.0);
        s.dec3("energy.m0.Q", e.q / unit, 5.447);
        Ok(())
    });
    s
}

/// Wraps an action difference into (-πħ, πħ].
fn wrap_phase(ds: f64, hbar: f64) -> f64 {
    let period = 2.0 * PI * hbar;
    ds - period * (ds / period).round()
}

fn oracles(consts: &PhysConsts) -> Suite {
    let mut s = Suite::default();
    s.guarded("oracle.Q", |s| {
        let mut worst: f64 = 0.0;
        for m in [1, -1] {
            let g = orbit_geometry(qn(2, 1, m), None, consts)?;
            for k in 0..10 {
                let p = g.spherical_point(g.period * k as f64 / 10.0);
                let numeric = quantum_potential_numeric(g.qn, p, consts)?;
                let algebraic = quantum_potential(g.qn, p, consts)?;
                worst = worst.max((numeric / algebraic - 1.0).abs());
            }
        }
        s.rel("oracle.Q_fd_vs_algebraic.max_rel", worst, 0.0, 1e-3);
        Ok(())
    });
    s.guarded("oracle.gradS", |s| {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let scale = consts.bohr_radius_of_shell(2);
        let h = 1e-5 * scale;
        let mut worst_unrot: f64 = 0.0;
        let q = qn(2, 1, 1);
        let mut done = 0;
        while done < 50 {
            let p = Vec3::new(
                rng.random_range(-2.0..2.0) * scale,
                rng.random_range(-2.0..2.0) * scale,
                rng.random_range(-2.0..2.0) * scale,
            );
            if p.x.hypot(p.y) < 0.2 * scale {
                continue;
            }
            let base = action(q, SphericalPoint::from_cartesian(p), 0.0, consts)?;
            let fd = finite_diff::gradient(
                |x| {
                    Ok(base
                        + wrap_phase(
                            action(q, SphericalPoint::from_cartesian(x), 0.0, consts)? - base,
                            consts.hbar,
                        ))
                },
                p,
                h,
            )?;
            let exact = momentum_field(q, SphericalPoint::from_cartesian(p), consts)?;
            worst_unrot = worst_unrot.max((fd - exact).norm() / exact.norm());
            done += 1;
        }
        s.rel("oracle.gradS_unrotated.max_rel", worst_unrot, 0.0, 1e-6);

        let state = RotatedState::new(1, RotationConfig::from_degrees(30.0))?;
        let mut worst_rot: f64 = 0.0;
        let mut done = 0;
        while done < 50 {
            let p = Vec3::new(
                rng.random_range(-2.0..2.0) * scale,
                rng.random_range(-2.0..2.0) * scale,
                rng.random_range(-2.0..2.0) * scale,
            );
            let Ok(jet) = phase_jet(&state, p, consts) else {
                continue;
            };
            if jet.grad.norm() * 0.2 * scale > consts.hbar {
                continue;
            }
            let fd = finite_diff::gradient(
                |x| Ok(jet.s + wrap_phase(phase_jet(&state, x, consts)?.s - jet.s, consts.hbar)),
                p,
                h,
            )?;
            worst_rot = worst_rot.max((fd - jet.grad).norm() / jet.grad.norm());
            done += 1;
        }
        s.rel("oracle.gradS_rotated.max_rel", worst_rot, 0.0, 1e-6);
        Ok(())
    });
    s
}

/// Largest distance, over r_e, between the RK4 samples (mapped back to the
/// original axes) and the closed-form orbit.
fn rk4_deviation(
    m: i32,
    beta_deg: f64,
    divisor: usize,
    record_every: usize,
    consts: &PhysConsts,
) -> Result<f64> {
    let rot = RotationConfig::from_degrees(beta_deg);
    let state = RotatedState::new(m, rot)?;
    let g = orbit_geometry(qn(2, 1, m), None, consts)?.with_phase(PI / 2.0);
    let cfg = IntegratorConfig::for_periods(g.period, 1.0, divisor, record_every)?;
    let traj = rotated_trajectory(&state, &g, &cfg, consts)?;
    Ok(traj
        .samples
        .iter()
        .map(|smp| (rot.unrotate(smp.position) - g.position(smp.t)).norm() / g.r_e)
        .fold(0.0, f64::max))
}

fn dynamics(consts: &PhysConsts) -> Suite {
    let mut s = Suite::default();
    s.guarded("dynamics", |s| {
        for m in [1, -1] {
            s.abs(
                format!("dynamics.beta0.m{m}"),
                rk4_deviation(m, 0.0, 2048, 1, consts)?,
                0.0,
                1e-6,
            );
            s.abs(
                format!("dynamics.beta30.m{m}"),
                rk4_deviation(m, 30.0, 2048, 1, consts)?,
                0.0,
                1e-5,
            );
        }
        let e: Vec<f64> = [256, 512, 1024]
            .iter()
            .map(|&d| rk4_deviation(1, 30.0, d, d, consts))
            .collect::<Result<_>>()?;
        s.range("dynamics.order.256_512", (e[0] / e[1]).log2(), 3.7, 4.3);
        s.range("dynamics.order.512_1024", (e[1] / e[2]).log2(), 3.7, 4.3);
        Ok(())
    });
    s
}

fn properties(consts: &PhysConsts) -> Suite {
    let mut s = Suite::default();
    s.guarded("property", |s| {
        let (mut l_mag, mut l_z, mut radius, mut height, mut centripetal): (
            f64,
            f64,
            f64,
            f64,
            f64,
        ) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for l in 1..=4 {
            for m in -l..=l {
                if m == 0 {
                    continue;
                }
                let g = orbit_geometry(qn(l + 1, l, m), None, consts)?;
                let l_exact = f64::from(l * (l + 1)).sqrt() * consts.hbar;
                for k in 0..8 {
                    let t = g.period * k as f64 / 8.0;
                    let r = g.position(t);
                    let am = g.angular_momentum(t);
                    l_mag = l_mag.max((am.norm() / l_exact - 1.0).abs());
                    l_z = l_z.max((am.z / (f64::from(m) * consts.hbar) - 1.0).abs());
                    radius = radius.max((r.norm() / g.r_e - 1.0).abs());
                    height = height.max((r.z - g.z_0).abs() / g.r_e);
                    centripetal = centripetal
                        .max((g.net_force(t).norm() / g.centripetal_force() - 1.0).abs());
                }
            }
        }
        s.abs("property.L_magnitude", l_mag, 0.0, 1e-12);
        s.abs("property.L_z", l_z, 0.0, 1e-12);
        s.abs("property.radius", radius, 0.0, 1e-12);
        s.abs("property.height", height, 0.0, 1e-12);
        s.abs("property.centripetal", centripetal, 0.0, 1e-12);

        let mut still: f64 = 0.0;
        let mut q_gap: f64 = 0.0;
        for l in 1..=4 {
            let q = qn(l + 1, l, 0);
            let p = SphericalPoint::new(consts.bohr_radius_of_shell(q.n), 0.7, 1.1);
            let f = field_sample(q, p, 0.0, consts)?;
            still = still
                .max(f.grad_s.norm())
                .max(f.l.norm())
                .max(f.f_net.norm());
            let expected = bohr_energy(q.n, consts) - coulomb_potential(p.r, consts)?;
            q_gap = q_gap.max((f.q / expected - 1.0).abs());
        }
        s.abs("property.m0.stationary", still, 0.0, 0.0);
        s.abs("property.m0.Q", q_gap, 0.0, 1e-12);

        let mut rt: f64 = 0.0;
        let rot = RotationConfig::from_degrees(37.0);
        for v in [Vec3::new(1.0, -2.0, 0.5), Vec3::new(-0.3, 0.0, 4.0)] {
            rt = rt.max((rot.unrotate(rot.rotate(v)) - v).norm() / v.norm());
        }
        s.abs("property.rotation_round_trip", rt, 0.0, 1e-15);

        let mut unit: f64 = 0.0;
        for m in [-1, 0, 1] {
            let c = decompose(&RotatedState::new(m, RotationConfig::from_degrees(30.0))?);
            unit = unit.max((c.iter().map(|x| x * x).sum::<f64>() - 1.0).abs());
        }
        s.abs("property.decomposition_unit", unit, 0.0, 1e-14);
        Ok(())
    });
    s
}

fn normalizations(consts: &PhysConsts) -> Suite {
    let mut s = Suite::default();
    s.guarded("normalization", |s| {
        for (n, l) in [(2, 1), (4, 3)] {
            for m in -l..=l {
                s.abs(
                    format!("normalization.{n}{l}.m{m}"),
                    normalization(qn(n, l, m), consts)?,
                    1.0,
                    1e-6,
                );
            }
            let r_max = 4.0 * f64::from(n * n) * consts.a_mu;
            let points = 4001;
            let peak = radial_distribution_peak(qn(n, l, 0), r_max, points, consts)?;
            let expected = f64::from(n * n) * consts.a_mu;
            s.abs(
                format!("peak.D{n}{l}"),
                peak,
                expected,
                r_max / (points - 1) as f64,
            );
        }
        Ok(())
    });
    s
}

/// Runs every suite, one thread per suite.
pub fn run_checks(consts: &PhysConsts) -> CheckSummary {
    let suites: [fn(&PhysConsts) -> Suite; 7] = [
        geometry,
        orbit_values,
        energies,
        oracles,
        dynamics,
        properties,
        normalizations,
    ];
    let checks = thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|f| scope.spawn(move || f(consts)))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("check suite panicked").0)
            .collect()
    });
    CheckSummary::from_checks(checks)
}
