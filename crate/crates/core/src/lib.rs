//! Spectral and torsional comparison geometry on spheres.
//!
//! Radial cap eigenpairs by shooting, decreasing rearrangements of sampled
//! fields, finite-volume eigen and torsion solves on domains of S²(r), and the
//! reverse Hölder, Saint-Venant and isoperimetric checks that tie them together.

// `!(x > 0.0)` is deliberate: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cap_spectral;
pub mod chiti;
pub mod domain;
pub mod error;
pub mod ode;
pub mod profile;
pub mod quadrature;
pub mod rearrangement;
pub mod report;
pub mod sphere_geometry;
pub mod torsion;
pub mod verify;

pub use cap_spectral::{cap_eigenvalue, cap_radius_from_eigenvalue, shoot, CapEigenpair};
pub use error::{Error, Result};
pub use profile::RadialProfile;
pub use rearrangement::{decreasing_rearrangement, MeasuredSamples, RearrangedProfile};
pub use report::{MetaValue, Tolerances, VerificationReport};
pub use sphere_geometry::{Admissibility, CapRadius, ManifoldSpec, VolumeCoordinate};
