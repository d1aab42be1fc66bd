//! Geodesic caps of the model sphere: measures, the volume coordinate A(θ),
//! boundary areas L(θ) and the inverse θ(s).
//!
//! A(θ) = β ω_{n-1} ∫₀^θ sin^{n-1}τ dτ is the β-weighted volume of the cap of
//! angular radius θ in the unit sphere Sⁿ; L(θ) = ω_{n-1} sin^{n-1}θ = A'(θ)/β.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::integrate;

const QUAD_TOL: f64 = 1e-13;

/// k-dimensional measure of the unit k-sphere, ω_k = 2π^{(k+1)/2} / Γ((k+1)/2).
pub fn unit_sphere_measure(k: i64) -> Result<f64> {
    if k < 1 {
        return Err(Error::invalid(format!("sphere dimension must be >= 1, got {k}")));
    }
    let h = 0.5 * (k as f64 + 1.0);
    Ok((std::f64::consts::LN_2 + h * PI.ln() - libm::lgamma(h)).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Admissibility {
    /// The model manifold Sⁿ(r) with r ≤ 1, so Ric = (n-1)/r² ≥ n-1 and β = rⁿ.
    ScaledSphere,
    /// An abstract manifold whose Ricci bound is taken on trust; only β is known.
    AssumedAdmissible,
}

/// Ambient manifold: dimension, sphere scale and the volume ratio β = V(M)/ωₙ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ManifoldSpec {
    n: usize,
    r: f64,
    beta: f64,
    admissibility: Admissibility,
    omega_n: f64,
    omega_n_minus_1: f64,
}

impl ManifoldSpec {
    pub fn unit_sphere(n: usize) -> Result<Self> {
        Self::scaled_sphere(n, 1.0)
    }

    pub fn scaled_sphere(n: usize, r: f64) -> Result<Self> {
        if !(r > 0.0 && r <= 1.0) {
            return Err(Error::range(r, "(0, 1] for the sphere scale"));
        }
        Self::build(n, r, r.powi(n as i32), Admissibility::ScaledSphere)
    }

    /// A manifold known only through β; the Ricci bound is assumed, not checked.
    pub fn assumed_admissible(n: usize, beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::range(beta, "(0, inf) for beta"));
        }
        Self::build(n, 1.0, beta, Admissibility::AssumedAdmissible)
    }

    fn build(n: usize, r: f64, beta: f64, admissibility: Admissibility) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid(format!("manifold dimension must be >= 2, got {n}")));
        }
        Ok(Self {
            n,
            r,
            beta,
            admissibility,
            omega_n: unit_sphere_measure(n as i64)?,
            omega_n_minus_1: unit_sphere_measure(n as i64 - 1)?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn admissibility(&self) -> Admissibility {
        self.admissibility
    }

    /// ω_{n-1}, the measure of the unit (n-1)-sphere.
    pub fn omega_boundary(&self) -> f64 {
        self.omega_n_minus_1
    }

    /// β ωₙ, the largest admissible volume coordinate.
    pub fn total_volume(&self) -> f64 {
        self.beta * self.omega_n
    }

    /// A(θ); θ is clamped to [0, π].
    pub fn cap_volume(&self, theta: f64) -> f64 {
        let theta = theta.clamp(0.0, PI);
        if theta == 0.0 {
            return 0.0;
        }
        if theta == PI {
            return self.total_volume();
        }
        let e = self.n as i32 - 1;
        let partial = |b: f64| self.beta * self.omega_n_minus_1 * integrate(|t: f64| t.sin().powi(e), 0.0, b, QUAD_TOL);
        if theta <= FRAC_PI_2 {
            partial(theta)
        } else {
            // Past the equator subtract the antipodal cap, which keeps the
            // small remainder near θ = π accurate.
            self.total_volume() - partial(PI - theta)
        }
    }

    /// L(θ) = ω_{n-1} sin^{n-1}θ.
    pub fn cap_boundary_area(&self, theta: f64) -> f64 {
        self.omega_n_minus_1 * theta.sin().max(0.0).powi(self.n as i32 - 1)
    }

    /// θ(s), the inverse of A, by bisection to 1e-12 followed by Newton polish.
    pub fn radius_from_volume(&self, s: f64) -> Result<f64> {
        let total = self.total_volume();
        if !(s >= 0.0 && s <= total * (1.0 + 1e-14)) {
            return Err(Error::range(s, format!("[0, {total}] for the volume coordinate")));
        }
        if s == 0.0 {
            return Ok(0.0);
        }
        if s >= total {
            return Ok(PI);
        }
        let (mut lo, mut hi) = (0.0_f64, PI);
        while hi - lo > 1e-12 {
            let mid = 0.5 * (lo + hi);
            if self.cap_volume(mid) < s {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut theta = 0.5 * (lo + hi);
        for _ in 0..2 {
            let slope = self.beta * self.cap_boundary_area(theta);
            if slope <= 0.0 {
                break;
            }
            let next = theta - (self.cap_volume(theta) - s) / slope;
            // Only accept polish steps that stay inside the final bracket.
            if next >= lo - 1e-12 && next <= hi + 1e-12 {
                theta = next;
            }
        }
        Ok(theta.clamp(0.0, PI))
    }
}

/// Angular radius of a geodesic cap, in [0, π].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct CapRadius(f64);

impl CapRadius {
    pub fn new(theta: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::range(theta, "[0, pi] for a cap radius"));
        }
        Ok(Self(theta))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// A β-weighted volume coordinate s ∈ [0, β ωₙ].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct VolumeCoordinate(f64);

impl VolumeCoordinate {
    pub fn new(spec: &ManifoldSpec, s: f64) -> Result<Self> {
        let total = spec.total_volume();
        if !(s >= 0.0 && s <= total * (1.0 + 1e-14)) {
            return Err(Error::range(s, format!("[0, {total}] for the volume coordinate")));
        }
        Ok(Self(s.min(total)))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

pub fn cap_volume(spec: &ManifoldSpec, theta: CapRadius) -> VolumeCoordinate {
    VolumeCoordinate(spec.cap_volume(theta.0).min(spec.total_volume()))
}

pub fn cap_boundary_area(spec: &ManifoldSpec, theta: CapRadius) -> f64 {
    spec.cap_boundary_area(theta.0)
}

pub fn radius_from_volume(spec: &ManifoldSpec, s: VolumeCoordinate) -> CapRadius {
    CapRadius(
        spec.radius_from_volume(s.0)
            .expect("a VolumeCoordinate is always inside the admissible range"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_measures() {
        assert!((unit_sphere_measure(1).unwrap() - 2.0 * PI).abs() < 1e-14);
        assert!((unit_sphere_measure(2).unwrap() - 4.0 * PI).abs() < 1e-13);
        // ω_3 by the recursion ω_3 = ω_2 ∫₀^π sin²τ dτ, evaluated by quadrature.
        let recursive = 4.0 * PI * integrate(|t: f64| t.sin().powi(2), 0.0, PI, 1e-14);
        assert!((unit_sphere_measure(3).unwrap() - recursive).abs() < 1e-12);
        assert!((recursive - 2.0 * PI * PI).abs() < 1e-12);
        assert!(unit_sphere_measure(0).is_err());
        assert!(unit_sphere_measure(-3).is_err());
        // log-Γ keeps large dimensions finite.
        assert!(unit_sphere_measure(400).unwrap().is_finite());
    }

    #[test]
    fn manifold_invariants() {
        let s = ManifoldSpec::scaled_sphere(2, 0.8).unwrap();
        assert!((s.beta() - 0.64).abs() < 1e-15);
        assert_eq!(s.admissibility(), Admissibility::ScaledSphere);
        assert!(ManifoldSpec::scaled_sphere(2, 1.2).is_err());
        assert!(ManifoldSpec::scaled_sphere(2, 0.0).is_err());
        assert!(ManifoldSpec::scaled_sphere(1, 1.0).is_err());
        assert!(ManifoldSpec::assumed_admissible(3, 2.5).is_ok());
        assert!(ManifoldSpec::assumed_admissible(3, -1.0).is_err());
    }

    #[test]
    fn cap_volume_examples() {
        let s2 = ManifoldSpec::unit_sphere(2).unwrap();
        assert!((s2.cap_volume(PI) - 4.0 * PI).abs() < 1e-12);
        assert!((s2.cap_volume(PI / 2.0) - 2.0 * PI).abs() < 1e-12);
        let s3 = ManifoldSpec::unit_sphere(3).unwrap();
        // Closed-form antiderivative τ/2 − sin 2τ/4.
        let t = PI / 3.0;
        let exact = 4.0 * PI * (t / 2.0 - (2.0 * t).sin() / 4.0);
        assert!((s3.cap_volume(t) - exact).abs() < 1e-12);
        assert!((exact - 4.0 * PI * (PI / 6.0 - 3f64.sqrt() / 8.0)).abs() < 1e-13);
    }

    #[test]
    fn boundary_area_examples() {
        let s2 = ManifoldSpec::unit_sphere(2).unwrap();
        assert!((s2.cap_boundary_area(PI / 2.0) - 2.0 * PI).abs() < 1e-14);
        assert_eq!(s2.cap_boundary_area(0.0), 0.0);
        let s3 = ManifoldSpec::unit_sphere(3).unwrap();
        assert!((s3.cap_boundary_area(PI / 4.0) - 2.0 * PI).abs() < 1e-13);
        // A'(θ)/β by central difference.
        let h = 1e-5;
        let t = PI / 4.0;
        let d = (s3.cap_volume(t + h) - s3.cap_volume(t - h)) / (2.0 * h);
        assert!((d - 2.0 * PI).abs() < 1e-7);
    }

    #[test]
    fn inverse_examples() {
        let s2 = ManifoldSpec::unit_sphere(2).unwrap();
        assert!((s2.radius_from_volume(2.0 * PI).unwrap() - PI / 2.0).abs() < 1e-12);
        assert_eq!(s2.radius_from_volume(0.0).unwrap(), 0.0);
        let q = ManifoldSpec::scaled_sphere(2, 0.5).unwrap();
        let s = q.cap_volume(PI / 4.0);
        // β ω₁ (1 − cos π/4) with β = 1/4.
        assert!((s - 0.25 * 2.0 * PI * (1.0 - (PI / 4.0).cos())).abs() < 1e-13);
        assert!((q.radius_from_volume(s).unwrap() - PI / 4.0).abs() < 1e-12);
        assert!(s2.radius_from_volume(-1.0).is_err());
        assert!(s2.radius_from_volume(5.0 * PI).is_err());
    }

    #[test]
    fn monotone_on_fine_grid() {
        let s = ManifoldSpec::unit_sphere(4).unwrap();
        let mut prev = -1.0;
        for k in 0..=1000 {
            let a = s.cap_volume(PI * k as f64 / 1000.0);
            assert!(a > prev);
            prev = a;
        }
    }

    #[test]
    fn newtype_wrappers() {
        let s = ManifoldSpec::unit_sphere(2).unwrap();
        assert!(CapRadius::new(3.5).is_err());
        let v = cap_volume(&s, CapRadius::new(1.0).unwrap());
        let back = radius_from_volume(&s, v);
        assert!((back.get() - 1.0).abs() < 1e-12);
        assert!(VolumeCoordinate::new(&s, 13.0).is_err());
        assert!((cap_boundary_area(&s, CapRadius::new(PI / 2.0).unwrap()) - 2.0 * PI).abs() < 1e-14);
    }
}
