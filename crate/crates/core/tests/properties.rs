//! Property tests over the field formulas and frame maps.

use std::f64::consts::PI;

use causal_hydrogen::finite_diff;
use causal_hydrogen::kinematics::{action, momentum_field};
use causal_hydrogen::rotated::{phase_jet, phi_21m, RotatedState, RotationConfig};
use causal_hydrogen::wavefunctions::{radial_distribution, radial_distribution_peak};
use causal_hydrogen::{
    default_constants, orbit_geometry, PhysConsts, QuantumNumbers, SphericalPoint, Vec3,
};
use proptest::prelude::*;

fn consts() -> PhysConsts {
    default_constants()
}

fn r_e() -> f64 {
    consts().bohr_radius_of_shell(2)
}

fn point() -> impl Strategy<Value = Vec3> {
    (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64).prop_map(|(x, y, z)| Vec3::new(x, y, z) * r_e())
}

fn beta() -> impl Strategy<Value = f64> {
    -PI..PI
}

fn wrap(ds: f64, hbar: f64) -> f64 {
    let p = 2.0 * PI * hbar;
    ds - p * (ds / p).round()
}

/// Distance of a primed point from the m = ±1 nodal line, squared.
fn nodal_distance_sqr(beta: f64, p: Vec3) -> f64 {
    let (s, c) = beta.sin_cos();
    let x = p.z * s + p.x * c;
    x * x + p.y * p.y
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rotation_is_an_isometry_with_inverse(b in beta(), v in point()) {
        let rot = RotationConfig::new(b);
        let w = rot.rotate(v);
        prop_assert!((w.norm() / v.norm() - 1.0).abs() < 1e-15);
        prop_assert!((rot.unrotate(w) - v).norm() / v.norm() < 1e-15);
        prop_assert!((rot.rotate(rot.unrotate(v)) - v).norm() / v.norm() < 1e-15);
    }

    #[test]
    fn orbit_invariants_for_l_up_to_4(l in 1i32..=4, m_pick in 0usize..8, frac in 0.0..1.0f64) {
        let ms: Vec<i32> = (-l..=l).filter(|&m| m != 0).collect();
        let m = ms[m_pick % ms.len()];
        let c = consts();
        let g = orbit_geometry(QuantumNumbers::new(l + 1, l, m).unwrap(), None, &c).unwrap();
        let t = frac * g.period;
        let lv = g.angular_momentum(t);
        let l_exact = f64::from(l * (l + 1)).sqrt() * c.hbar;
        prop_assert!((lv.norm() / l_exact - 1.0).abs() < 1e-12);
        prop_assert!((lv.z / (f64::from(m) * c.hbar) - 1.0).abs() < 1e-12);
        let r = g.position(t);
        prop_assert!((r.norm() / g.r_e - 1.0).abs() < 1e-12);
        prop_assert!((r.z - g.z_0).abs() < 1e-12 * g.r_e);
        prop_assert!((g.net_force(t).norm() / g.centripetal_force() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn phase_gradient_matches_differenced_action_unrotated(p in point(), m in prop::sample::select(vec![-1, 1])) {
        prop_assume!(p.x.hypot(p.y) > 0.2 * r_e());
        let c = consts();
        let qn = QuantumNumbers::new(2, 1, m).unwrap();
        let s0 = action(qn, SphericalPoint::from_cartesian(p), 0.0, &c).unwrap();
        let fd = finite_diff::gradient(
            |x| Ok(s0 + wrap(action(qn, SphericalPoint::from_cartesian(x), 0.0, &c)? - s0, c.hbar)),
            p,
            1e-5 * r_e(),
        ).unwrap();
        let exact = momentum_field(qn, SphericalPoint::from_cartesian(p), &c).unwrap();
        prop_assert!((fd - exact).norm() / exact.norm() < 1e-6);
    }

    #[test]
    fn phase_gradient_matches_differenced_action_rotated(b in beta(), p in point(), m in prop::sample::select(vec![-1, 1])) {
        prop_assume!(nodal_distance_sqr(b, p) > (0.2 * r_e()).powi(2));
        let c = consts();
        let state = RotatedState::new(m, RotationConfig::new(b)).unwrap();
        let jet = phase_jet(&state, p, &c).unwrap();
        let fd = finite_diff::gradient(
            |x| Ok(jet.s + wrap(phase_jet(&state, x, &c)?.s - jet.s, c.hbar)),
            p,
            1e-5 * r_e(),
        ).unwrap();
        prop_assert!((fd - jet.grad).norm() / jet.grad.norm() < 1e-6);
    }

    #[test]
    fn hessian_matches_differenced_gradient(b in beta(), p in point(), m in prop::sample::select(vec![-1, 1])) {
        prop_assume!(nodal_distance_sqr(b, p) > (0.2 * r_e()).powi(2));
        let c = consts();
        let state = RotatedState::new(m, RotationConfig::new(b)).unwrap();
        let jet = phase_jet(&state, p, &c).unwrap();
        let norm = jet.hess.iter().flatten().map(|h| h * h).sum::<f64>().sqrt();
        for i in 0..3 {
            let fd = finite_diff::gradient(|x| Ok(phase_jet(&state, x, &c)?.grad.to_array()[i]), p, 1e-5 * r_e()).unwrap();
            let row = Vec3::from_array(jet.hess[i]);
            prop_assert!((fd - row).norm() / norm < 1e-4, "row {i}: fd {fd} analytic {row}");
        }
        for i in 0..3 {
            for j in 0..3 {
                prop_assert!((jet.hess[i][j] - jet.hess[j][i]).abs() <= 1e-12 * norm);
            }
        }
    }

    #[test]
    fn opposite_m_share_density_and_negate_phase(b in beta(), p in point()) {
        prop_assume!(nodal_distance_sqr(b, p) > 1e-6 * r_e() * r_e());
        let c = consts();
        let up = RotatedState::new(1, RotationConfig::new(b)).unwrap();
        let down = RotatedState::new(-1, RotationConfig::new(b)).unwrap();
        let (a, d) = (phi_21m(&up, p), phi_21m(&down, p));
        prop_assert!((a.norm_sqr() / d.norm_sqr() - 1.0).abs() < 1e-13);
        let (ju, jd) = (phase_jet(&up, p, &c).unwrap(), phase_jet(&down, p, &c).unwrap());
        prop_assert!((ju.grad + jd.grad).norm() <= 1e-14 * ju.grad.norm());
        let zero = phase_jet(&RotatedState::new(0, RotationConfig::new(b)).unwrap(), p, &c).unwrap();
        prop_assert_eq!(zero.grad, Vec3::ZERO);
        prop_assert_eq!(phi_21m(&RotatedState::new(0, RotationConfig::new(b)).unwrap(), p).im, 0.0);
    }
}

#[test]
fn radial_distribution_peaks_at_shell_radius() {
    let c = consts();
    for (n, l) in [(1, 0), (2, 1), (3, 2), (4, 3)] {
        let qn = QuantumNumbers::new(n, l, 0).unwrap();
        let r_max = 4.0 * f64::from(n * n) * c.a_mu;
        let points = 8001;
        let peak = radial_distribution_peak(qn, r_max, points, &c).unwrap();
        let expected = f64::from(n * n) * c.a_mu;
        assert!(
            (peak - expected).abs() <= r_max / (points - 1) as f64,
            "n={n}: {peak} vs {expected}"
        );
        let d = |r: f64| radial_distribution(qn, r, &c).unwrap();
        assert!(d(expected) > d(0.9 * expected) && d(expected) > d(1.1 * expected));
    }
}
