//! WebAssembly bindings for the demo page in `www/`.
//!
//! Each export has a plain Rust counterpart returning `capspectra::Result`,
//! which is what the native tests exercise.

use capspectra::cap_spectral::cap_eigenvalue;
use capspectra::chiti::normalize_pair;
use capspectra::domain::{build_mesh, solve_dirichlet_eigenpair, solve_torsion, DomainMesh, DomainSpec};
use capspectra::rearrangement::{decreasing_rearrangement, radialize};
use capspectra::torsion::{cap_torsion_profile, saint_venant_check};
use capspectra::{chiti, Tolerances};
use wasm_bindgen::prelude::*;

/// Grid used for every domain solve in the page; small enough to stay
/// interactive without threads.
pub const DEMO_GRID: (usize, usize) = (64, 128);
const CURVE_POINTS: usize = 201;

/// Two sampled curves over a common θ axis plus a few scalars.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Comparison {
    thetas: Vec<f64>,
    domain: Vec<f64>,
    cap: Vec<f64>,
    crossings: Vec<f64>,
    lambda: f64,
    radius: f64,
    lhs: f64,
    rhs: f64,
}

#[wasm_bindgen]
impl Comparison {
    #[wasm_bindgen(getter)]
    pub fn thetas(&self) -> Vec<f64> {
        self.thetas.clone()
    }

    /// u⋆ or w⋆ of the domain.
    #[wasm_bindgen(getter)]
    pub fn domain(&self) -> Vec<f64> {
        self.domain.clone()
    }

    /// The cap profile it is compared with.
    #[wasm_bindgen(getter)]
    pub fn cap(&self) -> Vec<f64> {
        self.cap.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn crossings(&self) -> Vec<f64> {
        self.crossings.clone()
    }

    /// Domain eigenvalue (zero for torsion comparisons).
    #[wasm_bindgen(getter)]
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// θ₁ of the comparison cap, or θ₀ of D⋆.
    #[wasm_bindgen(getter)]
    pub fn radius(&self) -> f64 {
        self.radius
    }

    #[wasm_bindgen(getter)]
    pub fn lhs(&self) -> f64 {
        self.lhs
    }

    #[wasm_bindgen(getter)]
    pub fn rhs(&self) -> f64 {
        self.rhs
    }
}

fn axis(theta_max: f64) -> Vec<f64> {
    (0..CURVE_POINTS)
        .map(|k| theta_max * k as f64 / (CURVE_POINTS - 1) as f64)
        .collect()
}

fn mesh_from_json(json: &str) -> capspectra::Result<DomainMesh> {
    build_mesh(&DomainSpec::from_json(json)?, DEMO_GRID)
}

/// First Dirichlet eigenfunction of the cap of radius θ₁ in Sⁿ.
pub fn cap_curve(n: usize, theta1: f64) -> capspectra::Result<Comparison> {
    let pair = cap_eigenvalue(n, theta1)?;
    let thetas = axis(theta1);
    let values: Vec<f64> = thetas.iter().map(|t| pair.eval(*t)).collect();
    Ok(Comparison {
        domain: values.clone(),
        cap: values,
        thetas,
        crossings: Vec::new(),
        lambda: pair.lambda,
        radius: theta1,
        lhs: pair.lambda,
        rhs: pair.lambda,
    })
}

/// u⋆ of the domain's ground state against the scaled cap eigenfunction with
/// the same eigenvalue; lhs/rhs are the two sides of the reverse Hölder
/// inequality for (p, q).
pub fn chiti_curves(json: &str, p: f64, q: f64) -> capspectra::Result<Comparison> {
    let mesh = mesh_from_json(json)?;
    let spec = mesh.domain().manifold;
    let tol = Tolerances::default();
    let eigen = solve_dirichlet_eigenpair(&mesh)?;
    let cap = capspectra::cap_radius_from_eigenvalue(spec.n(), eigen.lambda)?;
    let u_star = decreasing_rearrangement(&mesh.samples(&eigen.field.values)?);
    let pair = normalize_pair(&u_star, eigen.lambda, &cap, p, &spec, &tol)?;
    let report = chiti::reverse_holder_check(&pair, q, &tol)?;
    let crossings = chiti::crossing_points(&pair, tol.crossing_deadband);
    let thetas = axis(cap.theta1);
    let u = pair.u_radial();
    Ok(Comparison {
        domain: thetas.iter().map(|t| u(*t)).collect(),
        cap: thetas.iter().map(|t| pair.scale * cap.eval(*t)).collect(),
        thetas,
        crossings,
        lambda: eigen.lambda,
        radius: cap.theta1,
        lhs: report.lhs,
        rhs: report.rhs,
    })
}

/// w⋆ of the domain's warping function against the warping function of D⋆;
/// lhs/rhs are T(D) and β T(D⋆).
pub fn torsion_curves(json: &str) -> capspectra::Result<Comparison> {
    let mesh = mesh_from_json(json)?;
    let spec = mesh.domain().manifold;
    let field = solve_torsion(&mesh)?;
    let report = saint_venant_check(&field, &spec, &Tolerances::default())?;
    let theta0 = spec.radius_from_volume(field.volume())?;
    let w = radialize(&decreasing_rearrangement(&field.samples()?), &spec)?;
    let v = cap_torsion_profile(spec.n(), theta0)?;
    let thetas = axis(theta0);
    Ok(Comparison {
        domain: thetas.iter().map(|t| w.eval(*t)).collect(),
        cap: thetas.iter().map(|t| v.eval(*t)).collect(),
        thetas,
        crossings: Vec::new(),
        lambda: 0.0,
        radius: theta0,
        lhs: report.lhs,
        rhs: report.rhs,
    })
}

fn js(e: capspectra::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen(js_name = capEigenfunction)]
pub fn cap_eigenfunction(n: usize, theta1: f64) -> Result<Comparison, JsError> {
    cap_curve(n, theta1).map_err(js)
}

#[wasm_bindgen(js_name = chitiComparison)]
pub fn chiti_comparison(domain_json: &str, p: f64, q: f64) -> Result<Comparison, JsError> {
    chiti_curves(domain_json, p, q).map_err(js)
}

#[wasm_bindgen(js_name = torsionComparison)]
pub fn torsion_comparison(domain_json: &str) -> Result<Comparison, JsError> {
    torsion_curves(domain_json).map_err(js)
}
