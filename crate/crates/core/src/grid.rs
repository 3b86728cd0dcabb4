//! Uniform time grids and trapezoidal time averages.

use crate::error::{Error, Result};

/// Points `j * dt` for `j = 0..=steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub dt: f64,
    pub steps: usize,
}

impl TimeGrid {
    /// `t_max` must be a whole number of steps (to 1e-9 relative).
    pub fn new(t_max: f64, dt: f64) -> Result<Self> {
        if !(t_max.is_finite() && t_max > 0.0 && dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidParameter(format!("need t_max > 0 and dt > 0, got {t_max}, {dt}")));
        }
        let steps = (t_max / dt).round();
        if steps < 1.0 || (steps * dt - t_max).abs() > 1e-9 * t_max {
            return Err(Error::InvalidParameter(format!("t_max = {t_max} is not a multiple of dt = {dt}")));
        }
        Ok(Self { dt, steps: steps as usize })
    }

    pub fn t_max(&self) -> f64 {
        self.steps as f64 * self.dt
    }

    pub fn len(&self) -> usize {
        self.steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn time(&self, j: usize) -> f64 {
        j as f64 * self.dt
    }

    /// Same grid with every point multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self { dt: self.dt * factor, steps: self.steps }
    }

    /// `(1/T) ∫ f dt` by the trapezoidal rule over samples on this grid.
    pub fn trapezoid_mean(&self, values: &[f64]) -> f64 {
        assert_eq!(values.len(), self.len(), "one value per grid point");
        let inner: f64 = values[1..values.len() - 1].iter().sum();
        let ends = 0.5 * (values[0] + values[values.len() - 1]);
        (inner + ends) / self.steps as f64
    }
}
