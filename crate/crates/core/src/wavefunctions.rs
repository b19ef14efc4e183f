//! Hydrogenic eigenstates ψ_nlm and the special functions behind them.
//!
//! Associated Legendre functions carry the Condon–Shortley phase (-1)^m,
//! so `N_sp · P_1^1(cos θ) = -√(3/8π) sin θ` as in the usual ψ_211.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::PhysConsts;
use crate::error::{Error, Result};
use crate::vector::Vec3;

pub type ComplexAmplitude = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub n: u32,
    pub l: u32,
    pub m: i32,
}

impl QuantumNumbers {
    pub fn new(n: i32, l: i32, m: i32) -> Result<Self> {
        if n < 1 || l < 0 || l > n - 1 || m.abs() > l {
            return Err(Error::InvalidQuantumNumbers { n, l, m });
        }
        Ok(Self {
            n: n as u32,
            l: l as u32,
            m,
        })
    }

    pub fn validate(&self) -> Result<()> {
        Self::new(self.n as i32, self.l as i32, self.m).map(|_| ())
    }

    /// √(l(l+1)), the vector-model length of L in units of ħ.
    pub fn l_magnitude(&self) -> f64 {
        let l = f64::from(self.l);
        (l * (l + 1.0)).sqrt()
    }
}

impl std::fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.n, self.l, self.m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphericalPoint {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
}

impl SphericalPoint {
    pub fn new(r: f64, theta: f64, phi: f64) -> Self {
        Self { r, theta, phi }
    }

    pub fn from_cartesian(v: Vec3) -> Self {
        let r = v.norm();
        let theta = if r == 0.0 {
            0.0
        } else {
            (v.z / r).clamp(-1.0, 1.0).acos()
        };
        let phi = v.y.atan2(v.x);
        Self { r, theta, phi }
    }

    pub fn to_cartesian(self) -> Vec3 {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        Vec3::new(self.r * st * cp, self.r * st * sp, self.r * ct)
    }
}

pub(crate) fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

/// Generalized Laguerre polynomial L_k^(alpha)(x) by three-term recurrence.
pub fn laguerre(k: u32, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for j in 1..k {
        let j = f64::from(j);
        let next = ((2.0 * j + 1.0 + alpha - x) * cur - (j + alpha) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Associated Legendre function P_l^m(x) with the Condon–Shortley phase.
///
/// Upward recurrence in l from P_m^m; negative m uses
/// P_l^{-m} = (-1)^m (l-m)!/(l+m)! P_l^m.
pub fn assoc_legendre(l: i32, m: i32, x: f64) -> Result<f64> {
    if l < 0 || m.abs() > l || !(-1.0..=1.0).contains(&x) {
        return Err(Error::LegendreDomain { l, m, x });
    }
    let ma = m.unsigned_abs();
    let l = l as u32;

    let somx2 = ((1.0 - x) * (1.0 + x)).sqrt();
    let mut pmm = 1.0;
    let mut odd = 1.0;
    for _ in 0..ma {
        pmm *= -odd * somx2;
        odd += 2.0;
    }
    let value = if l == ma {
        pmm
    } else {
        let mut pmmp1 = x * f64::from(2 * ma + 1) * pmm;
        if l == ma + 1 {
            pmmp1
        } else {
            let mut pll = 0.0;
            for ll in (ma + 2)..=l {
                pll = (x * f64::from(2 * ll - 1) * pmmp1 - f64::from(ll + ma - 1) * pmm)
                    / f64::from(ll - ma);
                pmm = pmmp1;
                pmmp1 = pll;
            }
            pll
        }
    };

    if m >= 0 {
        Ok(value)
    } else {
        let sign = if ma.is_multiple_of(2) { 1.0 } else { -1.0 };
        Ok(sign * factorial(l - ma) / factorial(l + ma) * value)
    }
}

/// Spherical-harmonic normalization N_sp = √((2l+1)/(4π) · (l-m)!/(l+m)!).
pub fn spherical_norm(l: u32, m: i32) -> f64 {
    let lf = f64::from(2 * l + 1);
    let num = factorial((l as i32 - m) as u32);
    let den = factorial((l as i32 + m) as u32);
    (lf / (4.0 * PI) * num / den).sqrt()
}

/// Normalized radial function R_nl(r) in m^(-3/2).
pub fn radial(qn: QuantumNumbers, r: f64, consts: &PhysConsts) -> Result<f64> {
    qn.validate()?;
    if r.is_nan() || r < 0.0 {
        return Err(Error::Config(format!("radius must be >= 0, got {r}")));
    }
    let n = qn.n;
    let l = qn.l;
    let a = consts.a_mu / f64::from(consts.z);
    let nf = f64::from(n);
    let rho = 2.0 * r / (nf * a);
    let norm =
        ((2.0 / (nf * a)).powi(3) * factorial(n - l - 1) / (2.0 * nf * factorial(n + l))).sqrt();
    Ok(norm
        * (-rho / 2.0).exp()
        * rho.powi(l as i32)
        * laguerre(n - l - 1, f64::from(2 * l + 1), rho))
}

/// Real amplitude R(r, θ) = N_sp R_nl(r) P_l^m(cos θ), so that ψ = R e^{iS/ħ}.
///
/// The θ argument may lie outside [0, π]; only cos θ enters.
pub fn real_amplitude(qn: QuantumNumbers, r: f64, theta: f64, consts: &PhysConsts) -> Result<f64> {
    let x = theta.cos().clamp(-1.0, 1.0);
    Ok(spherical_norm(qn.l, qn.m) * radial(qn, r, consts)? * assoc_legendre(qn.l as i32, qn.m, x)?)
}

/// Bohr total energy E_n = -(μ/2ħ²)(Ze²/4πε₀)²/n² in J.
pub fn bohr_energy(n: u32, consts: &PhysConsts) -> f64 {
    let k = consts.coulomb_coupling();
    let nf = f64::from(n);
    -consts.mu / (2.0 * consts.hbar * consts.hbar) * k * k / (nf * nf)
}

/// ψ_nlm(r, θ, φ, t) including the stationary phase e^{-iE_n t/ħ}.
pub fn psi(
    qn: QuantumNumbers,
    p: SphericalPoint,
    t: f64,
    consts: &PhysConsts,
) -> Result<ComplexAmplitude> {
    let amp = real_amplitude(qn, p.r, p.theta, consts)?;
    let phase = f64::from(qn.m) * p.phi - bohr_energy(qn.n, consts) * t / consts.hbar;
    Ok(Complex64::from_polar(1.0, phase) * amp)
}

/// |ψ|² in m^-3.
pub fn probability_density(
    qn: QuantumNumbers,
    p: SphericalPoint,
    consts: &PhysConsts,
) -> Result<f64> {
    let amp = real_amplitude(qn, p.r, p.theta, consts)?;
    Ok(amp * amp)
}

/// Radial distribution D_nl(r) = r² R_nl(r)² in 1/m.
pub fn radial_distribution(qn: QuantumNumbers, r: f64, consts: &PhysConsts) -> Result<f64> {
    let rr = radial(qn, r, consts)?;
    Ok(r * r * rr * rr)
}

/// Grid argmax of D_nl on (0, r_max] with `points` uniform samples.
pub fn radial_distribution_peak(
    qn: QuantumNumbers,
    r_max: f64,
    points: usize,
    consts: &PhysConsts,
) -> Result<f64> {
    let step = r_max / points as f64;
    let mut best = (0.0, f64::NEG_INFINITY);
    for i in 1..=points {
        let r = step * i as f64;
        let d = radial_distribution(qn, r, consts)?;
        if d > best.1 {
            best = (r, d);
        }
    }
    Ok(best.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::default_constants;

    fn qn(n: i32, l: i32, m: i32) -> QuantumNumbers {
        QuantumNumbers::new(n, l, m).unwrap()
    }

    #[test]
    fn quantum_number_validation() {
        assert!(QuantumNumbers::new(2, 1, 1).is_ok());
        assert!(QuantumNumbers::new(2, 2, 0).is_err());
        assert!(QuantumNumbers::new(2, 1, 2).is_err());
        assert!(QuantumNumbers::new(0, 0, 0).is_err());
        assert!(QuantumNumbers::new(3, -1, 0).is_err());
    }

    #[test]
    fn legendre_low_orders() {
        for &x in &[-0.7, 0.0, 0.3, 1.0] {
            assert_eq!(assoc_legendre(1, 0, x).unwrap(), x);
        }
        assert_eq!(assoc_legendre(1, 1, 0.0).unwrap(), -1.0);
        assert_eq!(assoc_legendre(1, -1, 0.0).unwrap(), 0.5);
        // P_3^3 = -15 (1 - x²)^{3/2}
        assert_eq!(assoc_legendre(3, 3, 0.0).unwrap(), -15.0);
        let x: f64 = 0.4;
        let closed = -15.0 * (1.0 - x * x).powf(1.5);
        assert!((assoc_legendre(3, 3, x).unwrap() - closed).abs() < 1e-13);
        // P_4^2 = (15/2)(7x² - 1)(1 - x²)
        let closed = 7.5 * (7.0 * x * x - 1.0) * (1.0 - x * x);
        assert!((assoc_legendre(4, 2, x).unwrap() - closed).abs() < 1e-13);
    }

    #[test]
    fn legendre_domain_errors() {
        assert!(assoc_legendre(1, 2, 0.0).is_err());
        assert!(assoc_legendre(2, 0, 1.5).is_err());
    }

    #[test]
    fn laguerre_matches_closed_forms() {
        let x = 1.7;
        // L_2^(a)(x) = x²/2 - (a+2)x + (a+2)(a+1)/2
        let a = 3.0;
        let closed = x * x / 2.0 - (a + 2.0) * x + (a + 2.0) * (a + 1.0) / 2.0;
        assert!((laguerre(2, a, x) - closed).abs() < 1e-13);
        assert_eq!(laguerre(0, 5.0, x), 1.0);
    }

    #[test]
    fn radial_21_closed_form() {
        let c = default_constants();
        let a = c.a_mu;
        assert_eq!(radial(qn(2, 1, 0), 0.0, &c).unwrap(), 0.0);
        let expected = (1.0 / 3f64.sqrt()) * (1.0 / (2.0 * a)).powf(1.5) * (-0.5f64).exp();
        let got = radial(qn(2, 1, 1), a, &c).unwrap();
        assert!(((got - expected) / expected).abs() < 1e-13);
        for &r in &[0.3 * a, 2.0 * a, 7.5 * a] {
            let closed = (1.0 / 3f64.sqrt())
                * (1.0 / (2.0 * a)).powf(1.5)
                * (r / a)
                * (-r / (2.0 * a)).exp();
            let got = radial(qn(2, 1, 0), r, &c).unwrap();
            assert!(((got - closed) / closed).abs() < 1e-13);
        }
    }

    #[test]
    fn psi_211_matches_explicit_form() {
        let c = default_constants();
        let a_coef = (3.0 / (8.0 * PI)).sqrt();
        let p = SphericalPoint::new(3.0 * c.a_mu, 0.8, 1.1);
        let r21 = radial(qn(2, 1, 1), p.r, &c).unwrap();
        let expected = -a_coef * r21 * p.theta.sin() * Complex64::from_polar(1.0, p.phi);
        let got = psi(qn(2, 1, 1), p, 0.0, &c).unwrap();
        assert!((got - expected).norm() < 1e-12 * expected.norm());
        let expected_m1 = a_coef * r21 * p.theta.sin() * Complex64::from_polar(1.0, -p.phi);
        let got_m1 = psi(qn(2, 1, -1), p, 0.0, &c).unwrap();
        assert!((got_m1 - expected_m1).norm() < 1e-12 * expected_m1.norm());
    }

    #[test]
    fn psi_210_vanishes_on_equator() {
        let c = default_constants();
        let p = SphericalPoint::new(4.0 * c.a_mu, PI / 2.0, 0.3);
        let off = SphericalPoint::new(p.r, 0.0, 0.3);
        let scale = psi(qn(2, 1, 0), off, 0.0, &c).unwrap().norm();
        // cos(π/2) is 6e-17 in floating point, not 0
        assert!(psi(qn(2, 1, 0), p, 0.0, &c).unwrap().norm() < 1e-15 * scale);
    }

    #[test]
    fn psi_is_stationary() {
        let c = default_constants();
        let p = SphericalPoint::new(5.0 * c.a_mu, 0.6, -2.0);
        for q in [qn(2, 1, 1), qn(4, 3, -2), qn(3, 0, 0)] {
            let a0 = psi(q, p, 0.0, &c).unwrap().norm();
            for &t in &[1e-16, 3.7e-15, 2.0e-12] {
                let at = psi(q, p, t, &c).unwrap().norm();
                assert!((at - a0).abs() <= 1e-14 * a0);
            }
        }
    }

    #[test]
    fn radial_distribution_zero_at_origin_for_l_ge_1() {
        let c = default_constants();
        for q in [qn(2, 1, 0), qn(4, 3, 2), qn(3, 2, -1)] {
            assert_eq!(radial_distribution(q, 0.0, &c).unwrap(), 0.0);
        }
    }

    #[test]
    fn radial_distribution_peaks_at_bohr_radius() {
        let c = default_constants();
        let a = c.a_mu;
        let step = 60.0 * a / 60_000.0;
        let p21 = radial_distribution_peak(qn(2, 1, 0), 60.0 * a, 60_000, &c).unwrap();
        assert!((p21 - 4.0 * a).abs() <= step);
        let p43 = radial_distribution_peak(qn(4, 3, 0), 60.0 * a, 60_000, &c).unwrap();
        assert!((p43 - 16.0 * a).abs() <= step);
    }

    #[test]
    fn cartesian_round_trip() {
        let p = SphericalPoint::new(2.0e-10, 1.2, -0.4);
        let back = SphericalPoint::from_cartesian(p.to_cartesian());
        assert!((back.r - p.r).abs() < 1e-24);
        assert!((back.theta - p.theta).abs() < 1e-14);
        assert!((back.phi - p.phi).abs() < 1e-14);
    }
}
