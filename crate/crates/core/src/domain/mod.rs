//! Domains of S²(r): description, rasterization and finite-volume solves.

pub mod isoperimetric;
pub mod linalg;
pub mod mesh;
pub mod solve;
pub mod spec;

pub use isoperimetric::{contour_length, isoperimetric_check};
pub use mesh::{build_mesh, DomainMesh};
pub use solve::{solve_dirichlet_eigenpair, solve_torsion, EigenSolution, ScalarField};
pub use spec::{DomainKind, DomainSpec};
