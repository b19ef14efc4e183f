//! Fixed-step classical Runge–Kutta for dy/dt = f(t, y) with y ∈ R³.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::Vec3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    /// Step size (s).
    pub dt: f64,
    pub steps: usize,
    /// Record every k-th step (the initial state is always recorded).
    pub record_every: usize,
}

impl IntegratorConfig {
    pub fn new(dt: f64, steps: usize, record_every: usize) -> Result<Self> {
        let cfg = Self {
            dt,
            steps,
            record_every,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// `steps_per_period` steps per period, for `periods` periods.
    pub fn for_periods(
        period: f64,
        periods: f64,
        steps_per_period: usize,
        record_every: usize,
    ) -> Result<Self> {
        if !(periods.is_finite() && periods >= 0.0) || steps_per_period == 0 {
            return Err(Error::Config(format!(
                "need periods >= 0 and steps per period >= 1, got {periods} and {steps_per_period}"
            )));
        }
        let steps = (periods * steps_per_period as f64).ceil() as usize;
        Self::new(period / steps_per_period as f64, steps, record_every)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::Config(format!("dt must be > 0, got {}", self.dt)));
        }
        if self.record_every == 0 {
            return Err(Error::Config("record_every must be >= 1".into()));
        }
        Ok(())
    }

    pub fn duration(&self) -> f64 {
        self.dt * self.steps as f64
    }

    pub fn sample_count(&self) -> usize {
        self.steps / self.record_every + 1
    }
}

/// One classical RK4 step: y + (dt/6)(k1 + 2k2 + 2k3 + k4).
pub fn rk4_step<F>(rhs: &F, y: Vec3, t: f64, dt: f64) -> Result<Vec3>
where
    F: Fn(f64, Vec3) -> Result<Vec3>,
{
    let half = 0.5 * dt;
    let k1 = rhs(t, y)?;
    let k2 = rhs(t + half, y + k1 * half)?;
    let k3 = rhs(t + half, y + k2 * half)?;
    let k4 = rhs(t + dt, y + k3 * dt)?;
    Ok(y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0))
}

/// Quantities sampled alongside the state at recorded steps.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Observation {
    pub angular_momentum: Vec3,
    pub net_force: Vec3,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t: f64,
    pub position: Vec3,
    pub velocity: Vec3,
    pub angular_momentum: Vec3,
    pub net_force: Vec3,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryMeta {
    pub label: String,
    pub config: IntegratorConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub meta: TrajectoryMeta,
    pub samples: Vec<Sample>,
}

impl Trajectory {
    pub fn last(&self) -> &Sample {
        self.samples
            .last()
            .expect("trajectory has at least the initial sample")
    }
}

/// Integrates from `y0` at t = 0, sampling velocity (the rhs itself) and
/// the observers every `record_every` steps.
///
/// A failing rhs evaluation aborts with [`Error::StepAborted`] carrying the
/// time and point where the step began.
pub fn integrate<F, O>(
    label: impl Into<String>,
    rhs: F,
    y0: Vec3,
    config: &IntegratorConfig,
    observe: O,
) -> Result<Trajectory>
where
    F: Fn(f64, Vec3) -> Result<Vec3>,
    O: Fn(f64, Vec3) -> Result<Observation>,
{
    config.validate()?;
    if !y0.is_finite() {
        return Err(Error::Config(format!("initial point is not finite: {y0}")));
    }
    let abort = |t: f64, point: Vec3| {
        move |e: Error| Error::StepAborted {
            t,
            point,
            source: Box::new(e),
        }
    };
    let record = |t: f64, y: Vec3| -> Result<Sample> {
        let velocity = rhs(t, y).map_err(abort(t, y))?;
        let obs = observe(t, y).map_err(abort(t, y))?;
        Ok(Sample {
            t,
            position: y,
            velocity,
            angular_momentum: obs.angular_momentum,
            net_force: obs.net_force,
        })
    };

    let mut samples = Vec::with_capacity(config.sample_count());
    let mut y = y0;
    samples.push(record(0.0, y)?);
    for step in 1..=config.steps {
        let t0 = (step - 1) as f64 * config.dt;
        y = rk4_step(&rhs, y, t0, config.dt).map_err(abort(t0, y))?;
        if step % config.record_every == 0 {
            samples.push(record(step as f64 * config.dt, y)?);
        }
    }
    Ok(Trajectory {
        meta: TrajectoryMeta {
            label: label.into(),
            config: *config,
        },
        samples,
    })
}
