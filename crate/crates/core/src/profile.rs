//! Sampled radial profiles with monotone cubic interpolation.

use crate::error::{Error, Result};

/// Samples `(θ_k, f(θ_k))` of a radial function, optionally with slopes.
///
/// Evaluation uses cubic Hermite interpolation. Without slopes, they are
/// estimated with the Fritsch–Butland harmonic mean; supplied slopes are kept
/// unless they would break monotonicity on an interval, in which case the
/// Fritsch–Carlson limiter trims them.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    thetas: Vec<f64>,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl RadialProfile {
    pub fn new(thetas: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        Self::validate(&thetas, &values)?;
        let slopes = estimate_slopes(&thetas, &values);
        Ok(Self {
            thetas,
            values,
            slopes,
        })
    }

    pub fn with_slopes(thetas: Vec<f64>, values: Vec<f64>, slopes: Vec<f64>) -> Result<Self> {
        Self::validate(&thetas, &values)?;
        if slopes.len() != thetas.len() {
            return Err(Error::invalid("slope count differs from node count"));
        }
        let slopes = limit_slopes(&thetas, &values, slopes);
        Ok(Self {
            thetas,
            values,
            slopes,
        })
    }

    fn validate(thetas: &[f64], values: &[f64]) -> Result<()> {
        if thetas.len() != values.len() {
            return Err(Error::invalid("theta and value sequences differ in length"));
        }
        if thetas.len() < 2 {
            return Err(Error::invalid("a radial profile needs at least two nodes"));
        }
        if thetas.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::invalid("profile thetas must be strictly increasing"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("profile values must be finite"));
        }
        Ok(())
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    pub fn theta_min(&self) -> f64 {
        self.thetas[0]
    }

    pub fn theta_max(&self) -> f64 {
        *self.thetas.last().expect("profile has nodes")
    }

    fn interval(&self, theta: f64) -> usize {
        let k = self.thetas.partition_point(|&t| t <= theta);
        k.clamp(1, self.thetas.len() - 1) - 1
    }

    /// Interpolated value; clamped to the end values outside the sampled range.
    pub fn eval(&self, theta: f64) -> f64 {
        if theta <= self.thetas[0] {
            return self.values[0];
        }
        if theta >= self.theta_max() {
            return *self.values.last().expect("profile has nodes");
        }
        let k = self.interval(theta);
        let (t0, t1) = (self.thetas[k], self.thetas[k + 1]);
        let h = t1 - t0;
        let s = (theta - t0) / h;
        let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
        let h10 = s * (1.0 - s) * (1.0 - s);
        let h01 = s * s * (3.0 - 2.0 * s);
        let h11 = s * s * (s - 1.0);
        h00 * self.values[k]
            + h10 * h * self.slopes[k]
            + h01 * self.values[k + 1]
            + h11 * h * self.slopes[k + 1]
    }

    /// Derivative of the interpolant (zero outside the sampled range).
    pub fn derivative(&self, theta: f64) -> f64 {
        if theta < self.thetas[0] || theta > self.theta_max() {
            return 0.0;
        }
        let k = self.interval(theta);
        let (t0, t1) = (self.thetas[k], self.thetas[k + 1]);
        let h = t1 - t0;
        let s = (theta - t0) / h;
        let d00 = 6.0 * s * (s - 1.0) / h;
        let d10 = (1.0 - s) * (1.0 - 3.0 * s);
        let d01 = -d00;
        let d11 = s * (3.0 * s - 2.0);
        d00 * self.values[k]
            + d10 * self.slopes[k]
            + d01 * self.values[k + 1]
            + d11 * self.slopes[k + 1]
    }

    pub fn is_non_increasing(&self) -> bool {
        self.values.windows(2).all(|w| w[1] <= w[0])
    }
}

fn secants(thetas: &[f64], values: &[f64]) -> Vec<f64> {
    thetas
        .windows(2)
        .zip(values.windows(2))
        .map(|(t, v)| (v[1] - v[0]) / (t[1] - t[0]))
        .collect()
}

fn estimate_slopes(thetas: &[f64], values: &[f64]) -> Vec<f64> {
    let n = thetas.len();
    let d = secants(thetas, values);
    if n == 2 {
        return vec![d[0], d[0]];
    }
    let h: Vec<f64> = thetas.windows(2).map(|w| w[1] - w[0]).collect();
    let mut m = vec![0.0; n];
    for k in 1..n - 1 {
        if d[k - 1] * d[k] > 0.0 {
            let w1 = 2.0 * h[k] + h[k - 1];
            let w2 = h[k] + 2.0 * h[k - 1];
            m[k] = (w1 + w2) / (w1 / d[k - 1] + w2 / d[k]);
        }
    }
    m[0] = end_slope(h[0], h[1], d[0], d[1]);
    m[n - 1] = end_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
    m
}

fn end_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if m * d0 <= 0.0 {
        0.0
    } else if d0 * d1 <= 0.0 && m.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        m
    }
}

fn limit_slopes(thetas: &[f64], values: &[f64], mut m: Vec<f64>) -> Vec<f64> {
    let d = secants(thetas, values);
    for (k, &dk) in d.iter().enumerate() {
        if dk == 0.0 {
            m[k] = 0.0;
            m[k + 1] = 0.0;
            continue;
        }
        let a = m[k] / dk;
        let b = m[k + 1] / dk;
        if a < 0.0 {
            m[k] = 0.0;
        }
        if b < 0.0 {
            m[k + 1] = 0.0;
        }
        let r2 = a * a + b * b;
        if r2 > 9.0 {
            let tau = 3.0 / r2.sqrt();
            m[k] = tau * a * dk;
            m[k + 1] = tau * b * dk;
        }
    }
    m
}
