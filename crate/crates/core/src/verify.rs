//! End-to-end checks on a meshed domain: the eigenfunction comparison and
//! the torsion comparisons.

use crate::cap_spectral::{cap_radius_from_eigenvalue, CapEigenpair};
use crate::chiti::{crossing_points, normalize_pair, reverse_holder_check};
use crate::domain::{solve_dirichlet_eigenpair, solve_torsion, DomainMesh, EigenSolution};
use crate::error::Result;
use crate::rearrangement::{decreasing_rearrangement, lemma22_terms, RearrangedProfile};
use crate::report::{Tolerances, VerificationReport};
use crate::torsion::{derivative_bound_check, saint_venant_check, warping_comparison_check, TorsionField};

/// Everything the eigenfunction comparison produced for one domain.
#[derive(Debug, Clone)]
pub struct ChitiOutcome {
    pub eigen: EigenSolution,
    pub cap: CapEigenpair,
    pub u_star: RearrangedProfile,
    pub scale: f64,
    pub crossings: Vec<f64>,
    /// A(θ₁) ≤ vol(D).
    pub claim: VerificationReport,
    /// At most one crossing of u⋆ and the scaled cap profile.
    pub crossing: VerificationReport,
    /// One reverse Hölder report per q.
    pub reverse_holder: Vec<VerificationReport>,
    /// Smallest (rhs − lhs)/λ of the integro-differential inequality.
    pub lemma22_min_residual: f64,
}

impl ChitiOutcome {
    pub fn reports(&self) -> Vec<&VerificationReport> {
        let mut out = vec![&self.claim, &self.crossing];
        out.extend(self.reverse_holder.iter());
        out
    }

    pub fn all_pass(&self) -> bool {
        self.reports().iter().all(|r| r.pass)
    }
}

/// Solves the eigenproblem on `mesh`, builds the cap with the same
/// eigenvalue and runs the crossing and reverse Hölder checks for each q.
pub fn verify_chiti(mesh: &DomainMesh, p: f64, qs: &[f64], tol: &Tolerances) -> Result<ChitiOutcome> {
    let eigen = solve_dirichlet_eigenpair(mesh)?;
    compare_with_cap(mesh, eigen, p, qs, tol)
}

/// The comparison part of [`verify_chiti`] for an eigenpair already solved
/// on `mesh`.
pub fn compare_with_cap(
    mesh: &DomainMesh,
    eigen: EigenSolution,
    p: f64,
    qs: &[f64],
    tol: &Tolerances,
) -> Result<ChitiOutcome> {
    let spec = mesh.domain().manifold;
    let cap = cap_radius_from_eigenvalue(spec.n(), eigen.lambda)?;
    let u_star = decreasing_rearrangement(&mesh.samples(&eigen.field.values)?);
    let volume = u_star.total_volume();
    let cap_volume = spec.cap_volume(cap.theta1);
    let claim = VerificationReport::new("claim", cap_volume, volume, tol.claim * volume)
        .with("lambda", eigen.lambda)
        .with("theta1", cap.theta1)
        .with("beta", spec.beta());
    let pair = normalize_pair(&u_star, eigen.lambda, &cap, p, &spec, tol)?;
    let crossings = crossing_points(&pair, tol.crossing_deadband);
    let mut crossing = VerificationReport::new("crossing_count", crossings.len() as f64, 1.0, 0.0)
        .with("crossings", crossings.len())
        .with("theta1", cap.theta1)
        .with("p", p);
    if let Some(t) = crossings.first() {
        crossing = crossing.with("theta2", *t);
    }
    let reverse_holder = qs
        .iter()
        .map(|q| reverse_holder_check(&pair, *q, tol).map(|r| r.with_tolerances(tol)))
        .collect::<Result<Vec<_>>>()?;
    let lemma22_min_residual = lemma22_terms(&u_star, eigen.lambda, &spec)?
        .iter()
        .map(|t| t.residual() / eigen.lambda)
        .fold(f64::INFINITY, f64::min);
    Ok(ChitiOutcome {
        eigen,
        scale: pair.scale,
        cap,
        u_star,
        crossings,
        claim,
        crossing,
        reverse_holder,
        lemma22_min_residual,
    })
}

/// Warping function and the three torsion comparisons for one domain.
#[derive(Debug, Clone)]
pub struct TorsionOutcome {
    pub field: TorsionField,
    pub saint_venant: VerificationReport,
    pub warping: VerificationReport,
    pub derivative: VerificationReport,
}

impl TorsionOutcome {
    pub fn reports(&self) -> Vec<&VerificationReport> {
        vec![&self.saint_venant, &self.warping, &self.derivative]
    }

    pub fn all_pass(&self) -> bool {
        self.reports().iter().all(|r| r.pass)
    }
}

pub fn verify_torsion(mesh: &DomainMesh, tol: &Tolerances) -> Result<TorsionOutcome> {
    let field = solve_torsion(mesh)?;
    torsion_checks(mesh, field, tol)
}

/// The three torsion comparisons for a warping function solved on `mesh`.
pub fn torsion_checks(mesh: &DomainMesh, field: TorsionField, tol: &Tolerances) -> Result<TorsionOutcome> {
    let spec = mesh.domain().manifold;
    let saint_venant = saint_venant_check(&field, &spec, tol)?
        .with("rigidity", field.rigidity())
        .with("energy", field.energy)
        .with_tolerances(tol);
    let warping = warping_comparison_check(&field, &spec, tol)?.with_tolerances(tol);
    let derivative = derivative_bound_check(&field, &spec, tol)?.with_tolerances(tol);
    Ok(TorsionOutcome {
        field,
        saint_venant,
        warping,
        derivative,
    })
}
