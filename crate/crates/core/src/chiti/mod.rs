//! Comparison of a domain eigenfunction against the cap eigenfunction with the
//! same eigenvalue: normalization, crossings and the reverse Hölder inequality.
//! Also the Euclidean constant K(p, q, λ, n) the spherical ratio tends to for
//! small caps.

pub mod bessel;

use crate::cap_spectral::{cap_eigenvalue, profile_lp_norm, CapEigenpair};
use crate::error::{Error, Result};
use crate::quadrature::integrate;
use crate::rearrangement::{RearrangedProfile, SmoothedProfile};
use crate::report::{Tolerances, VerificationReport};
use crate::sphere_geometry::{unit_sphere_measure, ManifoldSpec};

pub use bessel::{bessel_first_zero, bessel_j, bessel_j_derivative, bessel_j_scaled};

/// Nodes of the θ grid used to locate crossings.
pub const CROSSING_NODES: usize = 4001;

/// A domain rearrangement u* and the cap eigenfunction v with the same
/// eigenvalue, with v scaled so that ∫u^p = β scale^p ∫v^p.
#[derive(Debug, Clone)]
pub struct ComparisonPair {
    pub u_star: RearrangedProfile,
    pub lambda_domain: f64,
    pub cap: CapEigenpair,
    pub scale: f64,
    pub p: f64,
    pub spec: ManifoldSpec,
    /// ∫_D u^p.
    pub u_mass: f64,
    /// ∫_cap v^p over the unit sphere.
    pub v_mass: f64,
    /// A(θ₁).
    pub cap_volume: f64,
}

impl ComparisonPair {
    pub fn domain_volume(&self) -> f64 {
        self.u_star.total_volume()
    }

    /// u⋆(θ) = u*(A(θ)), from the smoothed rearrangement.
    pub fn u_radial(&self) -> impl Fn(f64) -> f64 + '_ {
        let smooth: SmoothedProfile = self.u_star.smoothed();
        move |theta| smooth.eval(self.spec.cap_volume(theta))
    }
}

/// Scales the cap profile against u* in Lᵖ and checks the eigenvalue match and
/// the volume claim A(θ₁) ≤ vol(D).
pub fn normalize_pair(
    u_star: &RearrangedProfile,
    lambda_domain: f64,
    cap: &CapEigenpair,
    p: f64,
    spec: &ManifoldSpec,
    tol: &Tolerances,
) -> Result<ComparisonPair> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::range(p, "(0, inf) for p"));
    }
    if cap.n != spec.n() {
        return Err(Error::invalid("cap dimension differs from the manifold's"));
    }
    if (lambda_domain - cap.lambda).abs() > tol.eigen_match * lambda_domain.abs() {
        return Err(Error::EigenvalueMismatch {
            domain: lambda_domain,
            cap: cap.lambda,
        });
    }
    let domain_volume = u_star.total_volume();
    let cap_volume = spec.cap_volume(cap.theta1);
    if cap_volume > domain_volume * (1.0 + tol.claim) {
        return Err(Error::ClaimViolation {
            cap_volume,
            domain_volume,
        });
    }
    let u_mass = u_star.lp_mass(p, domain_volume);
    let v_mass = profile_lp_norm(cap, p)?;
    if !(u_mass > 0.0) {
        return Err(Error::invalid("domain field vanishes identically"));
    }
    let scale = (u_mass / (spec.beta() * v_mass)).powf(1.0 / p);
    Ok(ComparisonPair {
        u_star: u_star.clone(),
        lambda_domain,
        cap: cap.clone(),
        scale,
        p,
        spec: *spec,
        u_mass,
        v_mass,
        cap_volume,
    })
}

/// Sign changes of u⋆ − scale·v on (0, θ₁), ignoring excursions inside
/// ±deadband·scale (v(0) = 1 is the sup of v).
pub fn crossing_points(pair: &ComparisonPair, deadband: f64) -> Vec<f64> {
    crossing_points_with(pair, deadband, CROSSING_NODES)
}

pub fn crossing_points_with(pair: &ComparisonPair, deadband: f64, nodes: usize) -> Vec<f64> {
    let u = pair.u_radial();
    let theta1 = pair.cap.theta1;
    let band = deadband * pair.scale;
    let thetas: Vec<f64> = (1..nodes - 1)
        .map(|k| theta1 * k as f64 / (nodes - 1) as f64)
        .collect();
    let diffs: Vec<f64> = thetas
        .iter()
        .map(|t| u(*t) - pair.scale * pair.cap.eval(*t))
        .collect();
    let mut crossings = Vec::new();
    let mut state = 0i8;
    for k in 0..diffs.len() {
        let d = diffs[k];
        let sign = if d > band {
            1
        } else if d < -band {
            -1
        } else {
            0
        };
        if sign == 0 {
            continue;
        }
        if state != 0 && sign != state {
            // Last raw sign flip before node k locates the crossing.
            let mut j = k;
            while j > 0 && (diffs[j - 1] * sign as f64) > 0.0 {
                j -= 1;
            }
            let (a, b) = if j == 0 { (0, 0) } else { (j - 1, j) };
            let theta = if a == b {
                thetas[0]
            } else {
                let (da, db) = (diffs[a], diffs[b]);
                thetas[a] + (thetas[b] - thetas[a]) * da / (da - db)
            };
            crossings.push(theta);
        }
        state = sign;
    }
    crossings
}

/// ‖u‖_q/‖u‖_p ≤ β^{1/q−1/p} ‖v‖_q/‖v‖_p.
pub fn reverse_holder_check(pair: &ComparisonPair, q: f64, tol: &Tolerances) -> Result<VerificationReport> {
    let p = pair.p;
    if !(q >= p && q.is_finite()) {
        return Err(Error::range(q, format!("[{p}, inf) for q")));
    }
    let vol = pair.domain_volume();
    let uq = pair.u_star.lp_mass(q, vol);
    let vq = profile_lp_norm(&pair.cap, q)?;
    let lhs = uq.powf(1.0 / q) / pair.u_mass.powf(1.0 / p);
    let rhs = pair.spec.beta().powf(1.0 / q - 1.0 / p) * vq.powf(1.0 / q) / pair.v_mass.powf(1.0 / p);
    let report = VerificationReport::new("reverse_holder", lhs, rhs, tol.chiti_slack * rhs);
    let equality = report.margin.abs() < tol.chiti_equality * rhs
        && (vol - pair.cap_volume).abs() < tol.chiti_equality * vol;
    Ok(report
        .with("p", p)
        .with("q", q)
        .with("lambda", pair.lambda_domain)
        .with("theta1", pair.cap.theta1)
        .with("beta", pair.spec.beta())
        .with("scale", pair.scale)
        .with("domain_volume", vol)
        .with("cap_volume", pair.cap_volume)
        .with("isometry_suspected", equality))
}

/// K(p, q, λ, n) = ‖z‖_q/‖z‖_p for the first Dirichlet eigenfunction z of the
/// Euclidean ball with eigenvalue λ.
pub fn chiti_constant_euclidean(p: f64, q: f64, lambda: f64, n: usize) -> Result<f64> {
    if !(p > 0.0 && q >= p && q.is_finite()) {
        return Err(Error::invalid(format!("need q >= p > 0, got p={p}, q={q}")));
    }
    if n < 2 {
        return Err(Error::invalid(format!("dimension must be >= 2, got {n}")));
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::range(lambda, "(0, inf) for the eigenvalue"));
    }
    let nu = 0.5 * n as f64 - 1.0;
    let j = bessel_first_zero(nu)?;
    // r^{−ν} J_ν(jr) = j^ν (J_ν(x)/x^ν) at x = jr, bounded at r = 0.
    let radial = |r: f64| j.powf(nu) * bessel_j_scaled(nu, j * r).unwrap_or(0.0).max(0.0);
    let e = n as i32 - 1;
    let mass = |a: f64| integrate(|r: f64| r.powi(e) * radial(r).powf(a), 0.0, 1.0, 1e-13);
    let (ip, iq) = (mass(p), mass(q));
    let d = 1.0 / q - 1.0 / p;
    let omega = unit_sphere_measure(n as i64 - 1)?;
    let nf = n as f64;
    Ok(omega.powf(d)
        * lambda.powf((q - p) * nf / (2.0 * p * q))
        * j.powf(nf * d)
        * iq.powf(1.0 / q)
        / ip.powf(1.0 / p))
}

/// Compares the cap ratio ‖v‖_q/‖v‖_p (β = 1) at a small radius with
/// K(p, q, λ(θ₁), n). lhs is the relative gap, rhs the 1% allowance.
pub fn flat_limit_consistency(p: f64, q: f64, n: usize, theta1: f64) -> Result<VerificationReport> {
    if !(theta1 > 0.0 && theta1 <= 0.05) {
        return Err(Error::range(theta1, "(0, 0.05] for a flat-limit cap radius"));
    }
    let cap = cap_eigenvalue(n, theta1)?;
    let ratio = profile_lp_norm(&cap, q)?.powf(1.0 / q) / profile_lp_norm(&cap, p)?.powf(1.0 / p);
    let k = chiti_constant_euclidean(p, q, cap.lambda, n)?;
    let gap = if p == q { 0.0 } else { (ratio - k).abs() / k };
    Ok(VerificationReport::new("flat_limit_consistency", gap, 0.01, 0.0)
        .with("p", p)
        .with("q", q)
        .with("n", n)
        .with("theta1", theta1)
        .with("lambda", cap.lambda)
        .with("cap_ratio", ratio)
        .with("euclidean_constant", k))
}
