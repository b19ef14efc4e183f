//! Quadrature used to check normalization of |ψ|².
//!
//! Gauss–Legendre in cos θ, trapezoid in φ (periodic, so spectrally
//! accurate), adaptive Simpson in r.

use std::f64::consts::PI;

use crate::constants::PhysConsts;
use crate::error::Result;
use crate::wavefunctions::{probability_density, QuantumNumbers, SphericalPoint};

/// Nodes and weights of the `n`-point Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Adaptive Simpson integration of `f` on [a, b] to absolute tolerance `tol`.
pub fn adaptive_simpson<F>(f: &mut F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let fa = f(a)?;
    let fb = f(b)?;
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F>(
    f: &mut F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm)?;
    let frm = f(rm)?;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    Ok(
        simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)?
            + simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)?,
    )
}

/// ∫|ψ_nlm|² dV over all space (radial cutoff 30·n²·a_μ/Z).
pub fn normalization(qn: QuantumNumbers, consts: &PhysConsts) -> Result<f64> {
    const THETA_NODES: usize = 24;
    const PHI_POINTS: usize = 16;
    let (xs, ws) = gauss_legendre(THETA_NODES);
    let r_max = 30.0 * consts.bohr_radius_of_shell(qn.n);

    // Work in units of a_μ so the integrand is O(1).
    let a = consts.a_mu;
    let mut shell = |s: f64| -> Result<f64> {
        let r = s * a;
        let mut acc = 0.0;
        for (x, w) in xs.iter().zip(&ws) {
            let theta = x.acos();
            let mut ring = 0.0;
            for k in 0..PHI_POINTS {
                let phi = 2.0 * PI * k as f64 / PHI_POINTS as f64;
                ring += probability_density(qn, SphericalPoint::new(r, theta, phi), consts)?;
            }
            acc += w * ring * 2.0 * PI / PHI_POINTS as f64;
        }
        Ok(acc * s * s * a * a * a)
    };
    // Unit panels keep the adaptive rule from accepting a coarse grid that
    // straddles the peak.
    let panels = (r_max / a).ceil() as usize;
    let width = r_max / a / panels as f64;
    let mut total = 0.0;
    for i in 0..panels {
        let lo = i as f64 * width;
        total += adaptive_simpson(&mut shell, lo, lo + width, 1e-11 / panels as f64)?;
    }
    Ok(total)
}
