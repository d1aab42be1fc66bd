//! Distribution functions and decreasing rearrangements of sampled fields.
//!
//! A field is a set of cells with values uᵢ ≥ 0 and measures mᵢ > 0. The
//! distribution function uses the strict convention V(t) = Σ{mᵢ : uᵢ > t}, so
//! on step data a level set never contains the cells sitting exactly at t. The
//! rearrangement u* is the right-continuous inverse of V: sorting cells by value
//! (descending, ties by index) and laying their measures end to end gives a
//! step function on [0, Σmᵢ).

use crate::error::{Error, Result};
use crate::profile::RadialProfile;
use crate::sphere_geometry::ManifoldSpec;

/// Default node count of [`radialize`].
pub const RADIAL_NODES: usize = 513;

/// Target number of bins for the smoothed view of a rearrangement.
const SMOOTHING_BINS: f64 = 512.0;
/// Values closer than this (relative to the maximum) are kept in one bin.
const TIE_BAND: f64 = 1e-7;

/// Cell values with their measures.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasuredSamples {
    values: Vec<f64>,
    measures: Vec<f64>,
}

impl MeasuredSamples {
    pub fn new(values: Vec<f64>, measures: Vec<f64>) -> Result<Self> {
        if values.len() != measures.len() {
            return Err(Error::invalid("values and measures differ in length"));
        }
        if values.is_empty() {
            return Err(Error::invalid("no samples"));
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::range(*v, "[0, inf) for a sample value"));
        }
        if let Some(m) = measures.iter().find(|m| !(m.is_finite() && **m > 0.0)) {
            return Err(Error::range(*m, "(0, inf) for a cell measure"));
        }
        Ok(Self { values, measures })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn measures(&self) -> &[f64] {
        &self.measures
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total_measure(&self) -> f64 {
        self.measures.iter().sum()
    }

    /// Σ uᵢᵖ mᵢ in cell order.
    pub fn lp_mass(&self, p: f64) -> f64 {
        self.values
            .iter()
            .zip(&self.measures)
            .map(|(u, m)| u.powf(p) * m)
            .sum()
    }
}

/// V(t) = Σ{mᵢ : uᵢ > t}.
pub fn distribution_function(samples: &MeasuredSamples, t: f64) -> f64 {
    samples
        .values
        .iter()
        .zip(&samples.measures)
        .filter(|(u, _)| **u > t)
        .map(|(_, m)| m)
        .sum()
}

/// A non-increasing step function: `values[k]` on `[breaks[k], breaks[k + 1])`.
#[derive(Debug, Clone, PartialEq)]
pub struct RearrangedProfile {
    breaks: Vec<f64>,
    values: Vec<f64>,
}

impl RearrangedProfile {
    pub fn from_steps(breaks: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() || breaks.len() != values.len() + 1 {
            return Err(Error::invalid("need one more break than step values"));
        }
        if breaks[0] != 0.0 {
            return Err(Error::invalid("breaks must start at 0"));
        }
        if breaks.windows(2).any(|w| !(w[1] > w[0])) || !breaks[breaks.len() - 1].is_finite() {
            return Err(Error::invalid("breaks must be strictly increasing and finite"));
        }
        if values.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::invalid("step values must be non-increasing"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("step values must be finite"));
        }
        Ok(Self { breaks, values })
    }

    pub fn breaks(&self) -> &[f64] {
        &self.breaks
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn total_volume(&self) -> f64 {
        self.breaks[self.breaks.len() - 1]
    }

    pub fn max_value(&self) -> f64 {
        self.values[0]
    }

    /// u*(s); zero from the total volume on.
    pub fn eval(&self, s: f64) -> f64 {
        if s < 0.0 {
            return self.values[0];
        }
        // Index of the first break strictly greater than s.
        let k = self.breaks.partition_point(|b| *b <= s);
        if k == 0 {
            self.values[0]
        } else if k > self.values.len() {
            0.0
        } else {
            self.values[k - 1]
        }
    }

    /// Measure of {u* > t}; equals V(t) of the source samples.
    pub fn distribution(&self, t: f64) -> f64 {
        let k = self.values.partition_point(|v| *v > t);
        self.breaks[k]
    }

    /// ∫₀^upper (u*)ᵖ ds, exact on steps.
    pub fn lp_mass(&self, p: f64, upper: f64) -> f64 {
        let mut acc = 0.0;
        for (k, v) in self.values.iter().enumerate() {
            let (a, b) = (self.breaks[k], self.breaks[k + 1]);
            if a >= upper {
                break;
            }
            acc += v.powf(p) * (b.min(upper) - a);
        }
        acc
    }

    /// ∫₀^s u*.
    pub fn cumulative(&self, s: f64) -> f64 {
        self.lp_mass(1.0, s)
    }

    /// Multiplies every value by `c > 0`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            breaks: self.breaks.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// A continuous, non-increasing view of u* built from bin averages.
    ///
    /// Consecutive steps are pooled until a bin holds at least 1/512 of the
    /// volume, never splitting values that agree to 1e-7 of the maximum (rings
    /// of a symmetric field differ only by rounding). Each bin contributes its
    /// mean at its volume midpoint; evaluation interpolates linearly between
    /// midpoints and extrapolates the end segments, clamped at zero.
    pub fn smoothed(&self) -> SmoothedProfile {
        let total = self.total_volume();
        let min_volume = total / SMOOTHING_BINS;
        let band = TIE_BAND * self.max_value().abs();
        let mut nodes = Vec::new();
        let mut means = Vec::new();
        let mut start = 0usize;
        let k_max = self.values.len();
        let mut k = 0;
        while k < k_max {
            let end = k + 1;
            let volume = self.breaks[end] - self.breaks[start];
            let tied_with_next = end < k_max && (self.values[k] - self.values[end]).abs() <= band;
            if (volume >= min_volume && !tied_with_next) || end == k_max {
                let (a, b) = (self.breaks[start], self.breaks[end]);
                let mass: f64 = (start..end)
                    .map(|j| self.values[j] * (self.breaks[j + 1] - self.breaks[j]))
                    .sum();
                nodes.push(0.5 * (a + b));
                means.push(mass / (b - a));
                start = end;
            }
            k = end;
        }
        SmoothedProfile { nodes, means }
    }
}

/// Piecewise-linear view of a rearrangement; see [`RearrangedProfile::smoothed`].
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothedProfile {
    nodes: Vec<f64>,
    means: Vec<f64>,
}

impl SmoothedProfile {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn eval(&self, s: f64) -> f64 {
        let m = self.nodes.len();
        if m == 1 {
            return self.means[0];
        }
        let k = self.nodes.partition_point(|x| *x <= s).clamp(1, m - 1);
        let (x0, x1) = (self.nodes[k - 1], self.nodes[k]);
        let (y0, y1) = (self.means[k - 1], self.means[k]);
        (y0 + (y1 - y0) * (s - x0) / (x1 - x0)).max(0.0)
    }
}

/// Sorts cells by value (descending, ties by index) and merges equal values.
pub fn decreasing_rearrangement(samples: &MeasuredSamples) -> RearrangedProfile {
    let mut order: Vec<usize> = (0..samples.len()).collect();
    let by_value = |a: &usize, b: &usize| {
        samples.values[*b]
            .total_cmp(&samples.values[*a])
            .then(a.cmp(b))
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::slice::ParallelSliceMut;
        order.par_sort_unstable_by(by_value);
    }
    #[cfg(not(feature = "parallel"))]
    order.sort_unstable_by(by_value);

    let mut breaks = vec![0.0];
    let mut values: Vec<f64> = Vec::new();
    let mut acc = 0.0;
    for i in order {
        let (u, m) = (samples.values[i], samples.measures[i]);
        acc += m;
        if values.last() == Some(&u) {
            *breaks.last_mut().expect("breaks start non-empty") = acc;
        } else {
            values.push(u);
            breaks.push(acc);
        }
    }
    RearrangedProfile { breaks, values }
}

/// ∫₀^upper (u*)ᵖ ds; `upper` defaults to the total volume.
pub fn lp_norm_rearranged(profile: &RearrangedProfile, p: f64, upper: Option<f64>) -> Result<f64> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::range(p, "(0, inf) for the exponent"));
    }
    let total = profile.total_volume();
    let upper = upper.unwrap_or(total);
    if !(0.0..=total).contains(&upper) {
        return Err(Error::range(upper, format!("[0, {total}] for the upper volume")));
    }
    Ok(profile.lp_mass(p, upper))
}

/// u⋆(θ) = u*(A(θ)) on `RADIAL_NODES` uniform nodes of [0, θ(Ω)].
pub fn radialize(profile: &RearrangedProfile, spec: &ManifoldSpec) -> Result<RadialProfile> {
    radialize_with(profile, spec, RADIAL_NODES)
}

pub fn radialize_with(
    profile: &RearrangedProfile,
    spec: &ManifoldSpec,
    nodes: usize,
) -> Result<RadialProfile> {
    if nodes < 2 {
        return Err(Error::invalid("radialization needs at least two nodes"));
    }
    let total = profile.total_volume();
    if total > spec.total_volume() * (1.0 + 1e-12) {
        return Err(Error::range(
            total,
            format!("[0, {}] for the rearranged volume", spec.total_volume()),
        ));
    }
    let theta_max = spec.radius_from_volume(total.min(spec.total_volume()))?;
    let smooth = profile.smoothed();
    let thetas: Vec<f64> = (0..nodes)
        .map(|k| theta_max * k as f64 / (nodes - 1) as f64)
        .collect();
    let mut values: Vec<f64> = thetas.iter().map(|t| smooth.eval(spec.cap_volume(*t))).collect();
    // Interpolation is monotone already; this only removes rounding ripples.
    for k in 1..values.len() {
        values[k] = values[k].min(values[k - 1]);
    }
    RadialProfile::new(thetas, values)
}

/// One sample of the integro-differential inequality −u*′(s) ≤ rhs(s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma22Term {
    pub s: f64,
    pub lhs: f64,
    pub rhs: f64,
}

impl Lemma22Term {
    pub fn residual(&self) -> f64 {
        self.rhs - self.lhs
    }
}

/// Difference quotients of the smoothed u* against
/// λ(βω_{n−1})^{−2} sin^{2−2n}θ(s) ∫₀^s u*, between consecutive bins.
pub fn lemma22_terms(
    profile: &RearrangedProfile,
    lambda: f64,
    spec: &ManifoldSpec,
) -> Result<Vec<Lemma22Term>> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::range(lambda, "(0, inf) for the eigenvalue"));
    }
    let smooth = profile.smoothed();
    let k = (spec.beta() * spec.omega_boundary()).powi(-2) * lambda;
    let e = 2 - 2 * spec.n() as i32;
    let mut terms = Vec::with_capacity(smooth.nodes.len().saturating_sub(1));
    for w in smooth.nodes.windows(2).zip(smooth.means.windows(2)) {
        let ((s0, s1), (u0, u1)) = ((w.0[0], w.0[1]), (w.1[0], w.1[1]));
        let s = 0.5 * (s0 + s1);
        let theta = spec.radius_from_volume(s.min(spec.total_volume()))?;
        let lhs = -(u1 - u0) / (s1 - s0);
        let rhs = k * theta.sin().powi(e) * profile.cumulative(s);
        terms.push(Lemma22Term { s, lhs, rhs });
    }
    Ok(terms)
}

/// Residuals rhs − lhs of [`lemma22_terms`].
pub fn lemma22_residual(
    profile: &RearrangedProfile,
    lambda: f64,
    spec: &ManifoldSpec,
) -> Result<Vec<f64>> {
    Ok(lemma22_terms(profile, lambda, spec)?
        .iter()
        .map(Lemma22Term::residual)
        .collect())
}
