//! First Dirichlet eigenpair and warping function of a meshed domain.
//!
//! Both are solved on the unit sphere and rescaled: on S²(r), λ ↦ λ/r² and
//! w ↦ r²w.

use super::linalg::{dot, pcg, IncompleteCholesky};
use super::mesh::DomainMesh;
use crate::error::{Error, Result};
use crate::torsion::TorsionField;

/// Relative residual of every linear solve.
pub const LINEAR_TOL: f64 = 1e-10;
/// Relative change of the Rayleigh quotient that ends inverse iteration.
pub const RAYLEIGH_TOL: f64 = 1e-10;
const MAX_CG: usize = 20_000;
const MAX_POWER: usize = 500;

/// Per-cell values over a mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    pub values: Vec<f64>,
}

impl ScalarField {
    pub fn sup(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }
}

/// Ground state of −Δ with Dirichlet data, normalized to sup = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSolution {
    pub lambda: f64,
    pub field: ScalarField,
    pub power_iterations: usize,
    pub cg_iterations: usize,
}

fn factor(mesh: &DomainMesh) -> Result<IncompleteCholesky> {
    IncompleteCholesky::new(mesh.stiffness())
}

/// Unit-sphere torsion solve K w = M·1.
fn unit_torsion(mesh: &DomainMesh, pre: &IncompleteCholesky) -> Result<(Vec<f64>, usize)> {
    let b = mesh.unit_areas().to_vec();
    let mut w = vec![0.0; b.len()];
    let out = pcg(mesh.stiffness(), pre, &b, &mut w, LINEAR_TOL, MAX_CG)?;
    Ok((w, out.iterations))
}

/// Smallest eigenvalue of K u = λ M u by inverse iteration.
pub fn solve_dirichlet_eigenpair(mesh: &DomainMesh) -> Result<EigenSolution> {
    let k = mesh.stiffness();
    let m = mesh.unit_areas();
    let pre = factor(mesh)?;
    let (mut u, mut cg_total) = unit_torsion(mesh, &pre)?;
    let rayleigh = |u: &[f64]| {
        let mu: f64 = u.iter().zip(m).map(|(x, a)| x * x * a).sum();
        k.quadratic_form(u) / mu
    };
    let mut lambda = rayleigh(&u);
    let mut rhs = vec![0.0; u.len()];
    for it in 1..=MAX_POWER {
        for (r, (x, a)) in rhs.iter_mut().zip(u.iter().zip(m)) {
            *r = x * a;
        }
        // Warm start: the next iterate is close to u/λ.
        let mut next: Vec<f64> = u.iter().map(|x| x / lambda).collect();
        cg_total += pcg(k, &pre, &rhs, &mut next, LINEAR_TOL, MAX_CG)?.iterations;
        let scale = next.iter().copied().fold(0.0, f64::max);
        if !(scale > 0.0) {
            return Err(Error::NonConvergence {
                what: "inverse iteration (lost positivity)",
                iterations: it,
            });
        }
        next.iter_mut().for_each(|x| *x /= scale);
        let new_lambda = rayleigh(&next);
        u = next;
        let change = (new_lambda - lambda).abs() / new_lambda;
        lambda = new_lambda;
        if change <= RAYLEIGH_TOL {
            let r2 = mesh.domain().manifold.r().powi(2);
            return Ok(EigenSolution {
                lambda: lambda / r2,
                field: ScalarField {
                    values: u.into_iter().map(|x| x.max(0.0)).collect(),
                },
                power_iterations: it,
                cg_iterations: cg_total,
            });
        }
    }
    Err(Error::NonConvergence {
        what: "inverse iteration",
        iterations: MAX_POWER,
    })
}

/// Warping function of Δw + 1 = 0, w = 0 on the boundary.
pub fn solve_torsion(mesh: &DomainMesh) -> Result<TorsionField> {
    let pre = factor(mesh)?;
    let (w, _) = unit_torsion(mesh, &pre)?;
    let r2 = mesh.domain().manifold.r().powi(2);
    // On S²(r) both the energy and ∫w pick up r⁴ against the unit solve.
    let energy = r2 * r2 * mesh.stiffness().quadratic_form(&w);
    TorsionField::new(
        w.into_iter().map(|x| r2 * x.max(0.0)).collect(),
        mesh.measures(),
        energy,
    )
}

/// Discrete Dirichlet energy ∫|∇f|² of a field on S²(r) (scale-invariant in 2D).
pub fn dirichlet_energy(mesh: &DomainMesh, field: &[f64]) -> f64 {
    dot(field, &mesh.stiffness().mul(field))
}
