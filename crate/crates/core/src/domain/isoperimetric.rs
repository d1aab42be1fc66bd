//! Boundary length by marching squares and the isoperimetric comparison
//! |∂D| ≥ β L(θ(vol D)).

use std::f64::consts::PI;

use super::mesh::DomainMesh;
use super::spec::geodesic_distance;
use crate::error::Result;
use crate::report::{Tolerances, VerificationReport};

type Point = (f64, f64);

/// Zero of the level set on the segment between two grid centers.
fn cut(a: Point, la: f64, b: Point, lb: f64) -> Point {
    let t = la / (la - lb);
    (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1))
}

/// Length on S²(r) of the zero contour of the level set sampled at cell
/// centers, with one ring of analytic ghost centers around the box.
pub fn contour_length(mesh: &DomainMesh) -> f64 {
    let bbox = mesh.bounding_box();
    let (n_lat, n_lon) = mesh.resolution();
    // No ghost row across a pole.
    let i_lo: isize = if bbox.theta.0 <= 0.0 { 0 } else { -1 };
    let i_hi: isize = if bbox.theta.1 >= PI { n_lat as isize - 1 } else { n_lat as isize };
    let (j_lo, j_hi): (isize, isize) = if bbox.periodic {
        (0, n_lon as isize)
    } else {
        (-1, n_lon as isize)
    };
    let mut total = 0.0;
    for i in i_lo..i_hi {
        for j in j_lo..j_hi {
            let corners = [(i, j), (i, j + 1), (i + 1, j + 1), (i + 1, j)];
            let pts: Vec<Point> = corners.iter().map(|(a, b)| mesh.center(*a, *b)).collect();
            let lv: Vec<f64> = corners
                .iter()
                .map(|(a, b)| {
                    let b = if bbox.periodic { b.rem_euclid(n_lon as isize) } else { *b };
                    mesh.level_grid(*a, b)
                })
                .collect();
            let inside: Vec<bool> = lv.iter().map(|v| *v > 0.0).collect();
            let mut cuts = Vec::with_capacity(4);
            for e in 0..4 {
                let f = (e + 1) % 4;
                if inside[e] != inside[f] {
                    cuts.push(cut(pts[e], lv[e], pts[f], lv[f]));
                }
            }
            match cuts.len() {
                2 => total += geodesic_distance(cuts[0], cuts[1]),
                4 => {
                    // Saddle: the mean decides which diagonal pair is joined.
                    let mean = lv.iter().sum::<f64>() / 4.0;
                    if (mean > 0.0) == inside[0] {
                        total += geodesic_distance(cuts[0], cuts[1]) + geodesic_distance(cuts[2], cuts[3]);
                    } else {
                        total += geodesic_distance(cuts[3], cuts[0]) + geodesic_distance(cuts[1], cuts[2]);
                    }
                }
                _ => {}
            }
        }
    }
    total * mesh.domain().manifold.r()
}

/// β L(θ(vol D)) ≤ |∂D|, with the contour estimate of |∂D|.
pub fn isoperimetric_check(mesh: &DomainMesh, tol: &Tolerances) -> Result<VerificationReport> {
    let spec = mesh.domain().manifold;
    let volume = mesh.volume();
    let theta = spec.radius_from_volume(volume)?;
    let bound = spec.beta() * spec.cap_boundary_area(theta);
    let length = contour_length(mesh);
    Ok(VerificationReport::new("isoperimetric", bound, length, tol.isoperimetric * bound)
        .with("ratio", length / bound)
        .with("theta", theta)
        .with("domain_volume", volume)
        .with("staircase_length", mesh.staircase_length())
        .with("beta", spec.beta()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::mesh::build_mesh;
    use crate::domain::spec::{DomainKind, DomainSpec};
    use crate::sphere_geometry::ManifoldSpec;

    #[test]
    fn cap_is_extremal() {
        let mesh = build_mesh(&DomainSpec::cap(1.0, 1.0).unwrap(), (64, 256)).unwrap();
        let r = isoperimetric_check(&mesh, &Tolerances::default()).unwrap();
        assert!(r.pass);
        assert!((r.meta_num("ratio").unwrap() - 1.0).abs() < 1e-3);
    }

    #[test]
    fn rectangle_perimeter() {
        let d = DomainSpec::rect((PI / 4.0, PI / 2.0), (0.0, PI / 2.0), 1.0).unwrap();
        let mesh = build_mesh(&d, (64, 128)).unwrap();
        let exact = PI / 2.0 + (PI / 2.0) * (1.0 + (PI / 4.0).sin());
        let c = contour_length(&mesh);
        // Each corner is cut by a diagonal, losing about (2 − √2)·h/2.
        assert!((c - exact).abs() / exact < 5e-3, "{c} vs {exact}");
        let r = isoperimetric_check(&mesh, &Tolerances::default()).unwrap();
        assert!(r.meta_num("ratio").unwrap() > 1.02);
    }

    #[test]
    fn off_pole_cap_contour_beats_staircase() {
        let d = DomainSpec::new(
            DomainKind::OffPoleCap {
                center: (1.3, 2.0),
                theta0: 0.5,
            },
            ManifoldSpec::unit_sphere(2).unwrap(),
        )
        .unwrap();
        let mesh = build_mesh(&d, (128, 256)).unwrap();
        let exact = 2.0 * PI * 0.5f64.sin();
        let c = contour_length(&mesh);
        assert!((c - exact).abs() / exact < 5e-3, "{c} vs {exact}");
        assert!(mesh.staircase_length() > 1.1 * exact);
    }
}
