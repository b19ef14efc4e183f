//! Central finite-difference stencils with one Richardson extrapolation.

use crate::error::Result;
use crate::vector::Vec3;

fn first_5pt<F: FnMut(f64) -> Result<f64>>(f: &mut F, x: f64, h: f64) -> Result<f64> {
    Ok((f(x - 2.0 * h)? - 8.0 * f(x - h)? + 8.0 * f(x + h)? - f(x + 2.0 * h)?) / (12.0 * h))
}

fn second_5pt<F: FnMut(f64) -> Result<f64>>(f: &mut F, x: f64, h: f64) -> Result<f64> {
    Ok(
        (-f(x - 2.0 * h)? + 16.0 * f(x - h)? - 30.0 * f(x)? + 16.0 * f(x + h)? - f(x + 2.0 * h)?)
            / (12.0 * h * h),
    )
}

/// f'(x): 5-point stencil at h and 2h, combined as (16 D_h - D_2h)/15.
pub fn derivative<F: FnMut(f64) -> Result<f64>>(mut f: F, x: f64, h: f64) -> Result<f64> {
    let fine = first_5pt(&mut f, x, h)?;
    let coarse = first_5pt(&mut f, x, 2.0 * h)?;
    Ok((16.0 * fine - coarse) / 15.0)
}

/// f''(x), same scheme as [`derivative`].
pub fn second_derivative<F: FnMut(f64) -> Result<f64>>(mut f: F, x: f64, h: f64) -> Result<f64> {
    let fine = second_5pt(&mut f, x, h)?;
    let coarse = second_5pt(&mut f, x, 2.0 * h)?;
    Ok((16.0 * fine - coarse) / 15.0)
}

/// Gradient of a scalar field by per-axis [`derivative`].
pub fn gradient<F: FnMut(Vec3) -> Result<f64>>(mut f: F, p: Vec3, h: f64) -> Result<Vec3> {
    let gx = derivative(|s| f(Vec3::new(s, p.y, p.z)), p.x, h)?;
    let gy = derivative(|s| f(Vec3::new(p.x, s, p.z)), p.y, h)?;
    let gz = derivative(|s| f(Vec3::new(p.x, p.y, s)), p.z, h)?;
    Ok(Vec3::new(gx, gy, gz))
}
