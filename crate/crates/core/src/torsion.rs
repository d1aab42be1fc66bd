//! Torsion of caps and the Saint-Venant comparisons for domain warping
//! functions.
//!
//! On the cap of radius θ₀ in Sⁿ the warping function is radial,
//! v(θ) = ∫_θ^{θ₀} F(δ) / sin^{n−1}δ dδ with F(δ) = ∫₀^δ sin^{n−1}τ dτ,
//! so −v′ = F/sin^{n−1} = A/A′.

use crate::error::{Error, Result};
use crate::profile::RadialProfile;
use crate::quadrature::gl15;
use crate::rearrangement::{decreasing_rearrangement, radialize, MeasuredSamples};
use crate::report::{Tolerances, VerificationReport};
use crate::sphere_geometry::{unit_sphere_measure, ManifoldSpec};

/// Nodes of the cached cap torsion profile.
pub const TORSION_NODES: usize = 4097;
/// Same antipode margin as the shooting solver.
const DELTA_POLE: f64 = crate::cap_spectral::DELTA_POLE;
const SERIES_CUTOFF: f64 = 1e-3;

/// F(δ)/sin^{n−1}δ with the small-δ series δ/n + (n−1)δ³/(3n(n+2)).
fn ratio_series(n: usize, delta: f64) -> f64 {
    let n = n as f64;
    delta / n + (n - 1.0) * delta.powi(3) / (3.0 * n * (n + 2.0))
}

/// Cumulative F on a uniform grid; F between nodes is completed by one panel.
#[derive(Debug, Clone, PartialEq)]
struct CumulativeSine {
    e: i32,
    h: f64,
    f: Vec<f64>,
}

impl CumulativeSine {
    fn new(n: usize, theta0: f64, nodes: usize) -> Self {
        let e = n as i32 - 1;
        let h = theta0 / (nodes - 1) as f64;
        let mut f = Vec::with_capacity(nodes);
        f.push(0.0);
        let sine = |t: f64| t.sin().powi(e);
        for k in 1..nodes {
            let prev = f[k - 1];
            f.push(prev + gl15(&sine, (k - 1) as f64 * h, k as f64 * h));
        }
        Self { e, h, f }
    }

    fn at(&self, delta: f64) -> f64 {
        let k = ((delta / self.h).floor() as usize).min(self.f.len() - 1);
        let base = k as f64 * self.h;
        let e = self.e;
        self.f[k] + gl15(&|t: f64| t.sin().powi(e), base, delta)
    }

    fn ratio(&self, n: usize, delta: f64) -> f64 {
        if delta < SERIES_CUTOFF {
            ratio_series(n, delta)
        } else {
            self.at(delta) / delta.sin().powi(self.e)
        }
    }
}

/// Warping function of the cap of radius θ₀ in the unit sphere Sⁿ.
#[derive(Debug, Clone, PartialEq)]
pub struct TorsionCapProfile {
    pub n: usize,
    pub theta0: f64,
    pub profile: RadialProfile,
    /// ∫ v over the cap, unweighted by β.
    pub unit_rigidity: f64,
}

impl TorsionCapProfile {
    pub fn eval(&self, theta: f64) -> f64 {
        if theta >= self.theta0 {
            0.0
        } else {
            self.profile.eval(theta)
        }
    }

    pub fn sup(&self) -> f64 {
        self.profile.values()[0]
    }
}

pub fn cap_torsion_profile(n: usize, theta0: f64) -> Result<TorsionCapProfile> {
    if n < 2 {
        return Err(Error::invalid(format!("dimension must be >= 2, got {n}")));
    }
    let max = std::f64::consts::PI - DELTA_POLE;
    if !(theta0 > 0.0 && theta0 <= max) {
        return Err(Error::range(theta0, format!("(0, {max}] for the cap radius")));
    }
    let m = TORSION_NODES;
    let cum = CumulativeSine::new(n, theta0, m);
    let h = cum.h;
    let g = |d: f64| cum.ratio(n, d);
    let thetas: Vec<f64> = (0..m).map(|k| if k == m - 1 { theta0 } else { k as f64 * h }).collect();
    let mut values = vec![0.0; m];
    for k in (0..m - 1).rev() {
        values[k] = values[k + 1] + gl15(&g, thetas[k], thetas[k + 1]);
    }
    let slopes: Vec<f64> = thetas.iter().map(|t| -g(*t)).collect();
    // ∫ v sin^{n−1} = ∫ F²/sin^{n−1} after integrating by parts.
    let e = n as i32 - 1;
    let by_parts = |d: f64| {
        if d < SERIES_CUTOFF {
            let r = ratio_series(n, d);
            r * r * d.sin().powi(e)
        } else {
            let f = cum.at(d);
            f * f / d.sin().powi(e)
        }
    };
    let integral: f64 = thetas.windows(2).map(|w| gl15(&by_parts, w[0], w[1])).sum();
    let unit_rigidity = unit_sphere_measure(n as i64 - 1)? * integral;
    Ok(TorsionCapProfile {
        n,
        theta0,
        profile: RadialProfile::with_slopes(thetas, values, slopes)?,
        unit_rigidity,
    })
}

/// β T(D⋆) for the cap of radius θ₀.
pub fn cap_torsional_rigidity(n: usize, theta0: f64, spec: &ManifoldSpec) -> Result<f64> {
    if spec.n() != n {
        return Err(Error::invalid("manifold dimension differs from the cap's"));
    }
    Ok(spec.beta() * cap_torsion_profile(n, theta0)?.unit_rigidity)
}

/// Torsion ω_{n−1}θ₀^{n+2}/(n²(n+2)) of the Euclidean ball of radius θ₀.
pub fn flat_torsional_rigidity(n: usize, theta0: f64) -> Result<f64> {
    let nf = n as f64;
    Ok(unit_sphere_measure(n as i64 - 1)? * theta0.powi(n as i32 + 2) / (nf * nf * (nf + 2.0)))
}

/// A discrete warping function: values and measures of the domain cells.
#[derive(Debug, Clone, PartialEq)]
pub struct TorsionField {
    pub values: Vec<f64>,
    pub measures: Vec<f64>,
    /// ∫|∇w|² from the discrete operator.
    pub energy: f64,
}

impl TorsionField {
    pub fn new(values: Vec<f64>, measures: Vec<f64>, energy: f64) -> Result<Self> {
        if values.len() != measures.len() || values.is_empty() {
            return Err(Error::invalid("values and measures must be non-empty and equally long"));
        }
        Ok(Self {
            values,
            measures,
            energy,
        })
    }

    pub fn sup(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    pub fn volume(&self) -> f64 {
        self.measures.iter().sum()
    }

    pub fn rigidity(&self) -> f64 {
        torsional_rigidity_from_field(self)
    }

    /// Φ(w) = ∫|∇w|² / (∫w)², which equals 1/T at the minimizer.
    pub fn variational_quotient(&self) -> f64 {
        let t = self.rigidity();
        self.energy / (t * t)
    }

    pub fn samples(&self) -> Result<MeasuredSamples> {
        MeasuredSamples::new(self.values.iter().map(|v| v.max(0.0)).collect(), self.measures.clone())
    }
}

/// T(D) = Σ wᵢ mᵢ.
pub fn torsional_rigidity_from_field(field: &TorsionField) -> f64 {
    field.values.iter().zip(&field.measures).map(|(w, m)| w * m).sum()
}

fn comparison_radius(field: &TorsionField, spec: &ManifoldSpec) -> Result<f64> {
    spec.radius_from_volume(field.volume())
}

/// T(D) ≤ β T(D⋆) with β A_unit(θ₀) = vol(D).
pub fn saint_venant_check(field: &TorsionField, spec: &ManifoldSpec, tol: &Tolerances) -> Result<VerificationReport> {
    let theta0 = comparison_radius(field, spec)?;
    let lhs = field.rigidity();
    let rhs = cap_torsional_rigidity(spec.n(), theta0, spec)?;
    let report = VerificationReport::new("saint_venant", lhs, rhs, tol.torsion_slack * rhs);
    let equality = report.margin.abs() < tol.torsion_equality * rhs;
    Ok(report
        .with("theta0", theta0)
        .with("beta", spec.beta())
        .with("domain_volume", field.volume())
        .with("equality_suspected", equality))
}

/// max(w⋆ − v) over the radial nodes of w⋆, against 0 with slack `warping · sup v`.
pub fn warping_comparison_check(
    field: &TorsionField,
    spec: &ManifoldSpec,
    tol: &Tolerances,
) -> Result<VerificationReport> {
    let theta0 = comparison_radius(field, spec)?;
    let cap = cap_torsion_profile(spec.n(), theta0)?;
    let w = radialize(&decreasing_rearrangement(&field.samples()?), spec)?;
    let (mut worst, mut at) = (f64::NEG_INFINITY, 0.0);
    for (t, wv) in w.thetas().iter().zip(w.values()) {
        let d = wv - cap.eval(*t);
        if d > worst {
            worst = d;
            at = *t;
        }
    }
    Ok(VerificationReport::new("warping_comparison", worst, 0.0, tol.warping * cap.sup())
        .with("theta0", theta0)
        .with("theta_at_max", at)
        .with("sup_w", field.sup())
        .with("sup_v", cap.sup())
        .with("nodes", w.len()))
}

/// Half-width of the difference quotients in [`derivative_bound_check`], in
/// effective cell widths.
pub const DERIVATIVE_WINDOW_CELLS: f64 = 5.0;

/// −w⋆′ ≤ A/A′ with slack, tested at every interior radial node by the
/// difference quotient over [θ − δ, θ + δ] against the exact integral of A/A′,
/// which is the drop of the cap warping function. δ spans a few cells because
/// level sets crossing the grid make cell-scale quotients noisy. lhs is the
/// required fraction of nodes, rhs the achieved one.
pub fn derivative_bound_check(
    field: &TorsionField,
    spec: &ManifoldSpec,
    tol: &Tolerances,
) -> Result<VerificationReport> {
    derivative_bound_check_with(field, spec, tol, DERIVATIVE_WINDOW_CELLS)
}

pub fn derivative_bound_check_with(
    field: &TorsionField,
    spec: &ManifoldSpec,
    tol: &Tolerances,
    window_cells: f64,
) -> Result<VerificationReport> {
    let theta0 = comparison_radius(field, spec)?;
    let w = radialize(&decreasing_rearrangement(&field.samples()?), spec)?;
    let cap = cap_torsion_profile(spec.n(), theta0)?;
    let t = w.thetas();
    // Mean cell width on the unit sphere.
    let cell = (field.volume() / spec.beta() / field.values.len() as f64).powf(1.0 / spec.n() as f64);
    let node = t[1] - t[0];
    let delta = (window_cells * cell).max(node);
    let mut ok = 0usize;
    let mut worst = 0.0f64;
    let interior = t.len().saturating_sub(2);
    for &theta in &t[1..t.len() - 1] {
        let a = (theta - delta).max(0.0);
        let b = (theta + delta).min(theta0);
        let drop = w.eval(a) - w.eval(b);
        let bound = cap.eval(a) - cap.eval(b);
        worst = worst.max(drop / bound);
        if drop <= bound * (1.0 + tol.derivative_slack) {
            ok += 1;
        }
    }
    let fraction = if interior == 0 { 1.0 } else { ok as f64 / interior as f64 };
    Ok(VerificationReport::new("derivative_bound", tol.derivative_fraction, fraction, 0.0)
        .with("theta0", theta0)
        .with("window", delta)
        .with("interior_nodes", interior)
        .with("satisfied_nodes", ok)
        .with("worst_ratio", worst))
}
