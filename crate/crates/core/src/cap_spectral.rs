//! First Dirichlet eigenpair of geodesic caps of Sⁿ.
//!
//! Radial eigenfunctions solve −((sin θ)^{n−1} v′)′ = λ (sin θ)^{n−1} v with v
//! finite at the pole. We shoot from the pole on the system (v, q) with
//! q = sin^{n−1}θ · v′, so the singular coefficient only enters through
//! v′ = q / sin^{n−1}θ, and locate the first zero of v. The cap radius θ₁ is a
//! strictly decreasing function of λ, which makes bisection on λ safe.

use std::f64::consts::PI;

use crate::chiti::bessel::bessel_first_zero;
use crate::error::{Error, Result};
use crate::ode::{error_norm, step, step_factor, State};
use crate::profile::RadialProfile;
use crate::quadrature::integrate;
use crate::rearrangement::RearrangedProfile;
use crate::sphere_geometry::{unit_sphere_measure, CapRadius, ManifoldSpec};

/// Shooting stops this far before the antipode.
pub const DELTA_POLE: f64 = 1e-6;
/// Caps with θ₁ > π − ANTIPODE_MARGIN are not solved for their eigenvalue.
pub const ANTIPODE_MARGIN: f64 = 1e-3;
/// Nodes of the sampled eigenfunction profile.
pub const PROFILE_NODES: usize = 2049;

const THETA_START: f64 = 1e-4;
const ODE_TOL: f64 = 1e-11;
const MAX_STEPS: usize = 200_000;
const MAX_BISECTIONS: usize = 300;

/// Eigenvalue λ, cap radius θ₁ and the radial eigenfunction with v(0) = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CapEigenpair {
    pub n: usize,
    pub theta1: f64,
    pub lambda: f64,
    pub profile: RadialProfile,
}

impl CapEigenpair {
    pub fn eval(&self, theta: f64) -> f64 {
        if theta >= self.theta1 {
            0.0
        } else {
            self.profile.eval(theta)
        }
    }
}

struct Radial {
    n_minus_1: i32,
    lambda: f64,
}

impl Radial {
    fn new(n: usize, lambda: f64) -> Self {
        Self {
            n_minus_1: n as i32 - 1,
            lambda,
        }
    }

    fn rhs(&self, t: f64, y: &State) -> State {
        let w = t.sin().powi(self.n_minus_1);
        [y[1] / w, -self.lambda * w * y[0]]
    }

    /// Pole series v = 1 + aθ² + bθ⁴, a = −λ/(2n), b = a((2/3)(n−1) − λ)/(4(n+2)).
    fn series(&self, t: f64) -> (f64, f64) {
        let n = self.n_minus_1 as f64 + 1.0;
        let a = -self.lambda / (2.0 * n);
        let b = a * (2.0 * (n - 1.0) / 3.0 - self.lambda) / (4.0 * (n + 2.0));
        let t2 = t * t;
        (1.0 + a * t2 + b * t2 * t2, 2.0 * a * t + 4.0 * b * t2 * t)
    }

    fn start(&self) -> (f64, State) {
        let (v, dv) = self.series(THETA_START);
        (THETA_START, [v, THETA_START.sin().powi(self.n_minus_1) * dv])
    }

    fn f(&self) -> impl Fn(f64, &State) -> State + '_ {
        move |t, y| self.rhs(t, y)
    }

    /// Smallest θ in (0, π − δ) where v vanishes, if any.
    fn first_zero(&self) -> Option<f64> {
        let f = self.f();
        let (mut t, mut y) = self.start();
        let end = PI - DELTA_POLE;
        let mut h = 1e-3_f64.min(0.1 / self.lambda.sqrt());
        for _ in 0..MAX_STEPS {
            if t >= end {
                return None;
            }
            h = h.min(end - t);
            let (y_new, err) = step(&f, t, &y, h);
            let norm = error_norm(&y, &y_new, &err, ODE_TOL, ODE_TOL);
            if norm <= 1.0 {
                if y_new[0] <= 0.0 {
                    return Some(self.locate_zero(t, &y, h, y_new[0]));
                }
                t += h;
                y = y_new;
            }
            h *= step_factor(norm);
        }
        None
    }

    /// Root of h* ↦ v(t + h*) for a single step from (t, y), Illinois method.
    fn locate_zero(&self, t: f64, y: &State, h: f64, v_end: f64) -> f64 {
        let f = self.f();
        let (mut a, mut fa) = (0.0, y[0]);
        let (mut b, mut fb) = (h, v_end);
        let mut side = 0;
        for _ in 0..100 {
            let c = (a * fb - b * fa) / (fb - fa);
            let fc = step(&f, t, y, c).0[0];
            if fc == 0.0 {
                return t + c;
            }
            if fc > 0.0 {
                a = c;
                fa = fc;
                if side == 1 {
                    fb *= 0.5;
                }
                side = 1;
            } else {
                b = c;
                fb = fc;
                if side == -1 {
                    fa *= 0.5;
                }
                side = -1;
            }
            if b - a <= 1e-16 * (t + h) {
                break;
            }
        }
        t + 0.5 * (a + b)
    }

    /// Adaptive integration from `t0` to exactly `t1`.
    fn advance(&self, mut t: f64, mut y: State, t1: f64, h: &mut f64) -> State {
        let f = self.f();
        while t < t1 {
            let last = *h >= t1 - t;
            let hh = if last { t1 - t } else { *h };
            let (y_new, err) = step(&f, t, &y, hh);
            let norm = error_norm(&y, &y_new, &err, ODE_TOL, ODE_TOL);
            if norm <= 1.0 {
                t = if last { t1 } else { t + hh };
                y = y_new;
                if !last {
                    *h = hh * step_factor(norm);
                }
            } else {
                *h = hh * step_factor(norm);
            }
        }
        y
    }

    /// v sampled on `PROFILE_NODES` uniform nodes of [0, θ₁], with exact slopes.
    fn profile(&self, theta1: f64) -> RadialProfile {
        let m = PROFILE_NODES;
        let dt = theta1 / (m - 1) as f64;
        let mut thetas = Vec::with_capacity(m);
        let mut values = Vec::with_capacity(m);
        let mut slopes = Vec::with_capacity(m);
        let (mut t, mut y) = self.start();
        let mut h = 1e-3_f64.min(0.1 / self.lambda.sqrt()).min(dt);
        for k in 0..m {
            let tk = if k == m - 1 { theta1 } else { k as f64 * dt };
            thetas.push(tk);
            if tk <= THETA_START {
                let (v, dv) = self.series(tk);
                values.push(v);
                slopes.push(dv);
                continue;
            }
            y = self.advance(t, y, tk, &mut h);
            t = tk;
            values.push(if k == m - 1 { 0.0 } else { y[0] });
            slopes.push(y[1] / tk.sin().powi(self.n_minus_1));
        }
        RadialProfile::with_slopes(thetas, values, slopes)
            .expect("uniform nodes are strictly increasing")
    }
}

fn check_dimension(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::invalid(format!("dimension must be >= 2, got {n}")));
    }
    Ok(())
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::range(lambda, "(0, inf) for the eigenvalue"));
    }
    Ok(())
}

/// First zero of the radial solution at eigenvalue `lambda`, or `None` if it
/// does not vanish before π − δ.
pub fn first_zero(n: usize, lambda: f64) -> Result<Option<f64>> {
    check_dimension(n)?;
    check_lambda(lambda)?;
    Ok(Radial::new(n, lambda).first_zero())
}

/// Shoots from the pole with v(0) = 1, v′(0) = 0 and returns the first zero
/// together with the profile on [0, θ₁].
pub fn shoot(n: usize, lambda: f64) -> Result<(CapRadius, RadialProfile)> {
    check_dimension(n)?;
    check_lambda(lambda)?;
    let radial = Radial::new(n, lambda);
    let theta1 = radial
        .first_zero()
        .ok_or(Error::NoZeroBeforeAntipode { lambda })?;
    Ok((CapRadius::new(theta1)?, radial.profile(theta1)))
}

/// Eigenvalue of the cap of radius θ₁, by bisection on λ.
pub fn cap_eigenvalue(n: usize, theta1: f64) -> Result<CapEigenpair> {
    check_dimension(n)?;
    if !(theta1 > 0.0 && theta1 <= PI - ANTIPODE_MARGIN) {
        return Err(Error::range(theta1, format!("(0, pi - {ANTIPODE_MARGIN}] for the cap radius")));
    }
    let nu = 0.5 * n as f64 - 1.0;
    let flat = if nu <= crate::chiti::bessel::MAX_ZERO_ORDER {
        bessel_first_zero(nu)?.powi(2) / (theta1 * theta1)
    } else {
        (nu + 2.0 * nu.cbrt()).powi(2) / (theta1 * theta1)
    };
    // zero(λ) > θ₁ (or absent) for λ below the eigenvalue, < θ₁ above it.
    let below = |lambda: f64| match Radial::new(n, lambda).first_zero() {
        None => true,
        Some(z) => z > theta1,
    };
    let mut lo = 0.25 * flat;
    let mut hi = 4.0 * flat;
    let mut guard = 0;
    while !below(lo) {
        lo *= 0.25;
        guard += 1;
        if guard > 60 {
            return Err(Error::BracketFailure { lo, hi });
        }
    }
    while below(hi) {
        hi *= 4.0;
        guard += 1;
        if guard > 60 {
            return Err(Error::BracketFailure { lo, hi });
        }
    }
    let mut iterations = 0;
    while hi - lo > 1e-13 * hi {
        let mid = 0.5 * (lo + hi);
        if below(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
        if iterations > MAX_BISECTIONS {
            return Err(Error::NonConvergence {
                what: "cap eigenvalue bisection",
                iterations,
            });
        }
    }
    let lambda = 0.5 * (lo + hi);
    let radial = Radial::new(n, lambda);
    let zero = radial.first_zero().unwrap_or(theta1);
    Ok(CapEigenpair {
        n,
        theta1: zero,
        lambda,
        profile: radial.profile(zero),
    })
}

/// Radius of the cap whose first Dirichlet eigenvalue is `lambda`.
pub fn cap_radius_from_eigenvalue(n: usize, lambda: f64) -> Result<CapEigenpair> {
    let (theta1, profile) = shoot(n, lambda)?;
    Ok(CapEigenpair {
        n,
        theta1: theta1.get(),
        lambda,
        profile,
    })
}

/// Steps of v* on [0, A(θ₁)] with v*(A(θ)) = v(θ).
///
/// Breaks sit at A of the profile nodes; each step carries v at the θ-midpoint
/// of its interval.
pub fn vstar(pair: &CapEigenpair, spec: &ManifoldSpec) -> Result<RearrangedProfile> {
    if spec.n() != pair.n {
        return Err(Error::invalid("manifold dimension differs from the eigenpair's"));
    }
    let thetas = pair.profile.thetas();
    let mut breaks = Vec::with_capacity(thetas.len());
    let mut acc = 0.0;
    breaks.push(0.0);
    let e = pair.n as i32 - 1;
    let scale = spec.beta() * spec.omega_boundary();
    for w in thetas.windows(2) {
        acc += scale * integrate(|t: f64| t.sin().powi(e), w[0], w[1], 1e-13);
        breaks.push(acc);
    }
    let values = thetas
        .windows(2)
        .map(|w| pair.profile.eval(0.5 * (w[0] + w[1])).max(0.0))
        .collect();
    RearrangedProfile::from_steps(breaks, values)
}

/// ω_{n−1} ∫₀^{θ₁} v(θ)^p sin^{n−1}θ dθ, the Lᵖ mass of v over the cap in the unit sphere.
pub fn profile_lp_norm(pair: &CapEigenpair, p: f64) -> Result<f64> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::range(p, "(0, inf) for the exponent"));
    }
    let omega = unit_sphere_measure(pair.n as i64 - 1)?;
    let e = pair.n as i32 - 1;
    let integral = integrate(
        |t: f64| pair.profile.eval(t).max(0.0).powf(p) * t.sin().powi(e),
        0.0,
        pair.theta1,
        1e-12,
    );
    Ok(omega * integral)
}
