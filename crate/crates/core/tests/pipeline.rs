use std::f64::consts::PI;

use capspectra::cap_spectral::cap_eigenvalue;
use capspectra::domain::spec::encode_bits;
use capspectra::domain::{build_mesh, isoperimetric_check, solve_dirichlet_eigenpair, DomainKind, DomainSpec};
use capspectra::verify::{verify_chiti, verify_torsion};
use capspectra::{Error, ManifoldSpec, Tolerances};

const GRID: (usize, usize) = (64, 128);

#[test]
fn off_pole_cap_matches_polar_cap() {
    let domain = DomainSpec::new(
        DomainKind::OffPoleCap {
            center: (PI / 2.0, 1.0),
            theta0: 0.6,
        },
        ManifoldSpec::unit_sphere(2).unwrap(),
    )
    .unwrap();
    let mesh = build_mesh(&domain, (96, 192)).unwrap();
    let exact = cap_eigenvalue(2, 0.6).unwrap().lambda;
    let lambda = solve_dirichlet_eigenpair(&mesh).unwrap().lambda;
    assert!((lambda - exact).abs() / exact < 1e-2, "{lambda} vs {exact}");
    let out = verify_chiti(&mesh, 1.0, &[2.0], &Tolerances::default()).unwrap();
    let m = &out.reverse_holder[0];
    assert!(out.claim.pass && m.pass);
    assert_eq!(m.meta_flag("isometry_suspected"), Some(true));
    // u⋆ and v agree up to grid noise, which the default dead-band of the
    // crossing count does not absorb off the pole.
    let loose = Tolerances {
        crossing_deadband: 1e-3,
        ..Tolerances::default()
    };
    let out = verify_chiti(&mesh, 1.0, &[2.0], &loose).unwrap();
    assert!(out.all_pass());
    assert!(out.crossings.is_empty());
}

#[test]
fn union_of_separated_caps() {
    let domain = DomainSpec::from_json(
        r#"{"kind": "union", "params": {"parts": [
            {"kind": "offpole_cap", "params": {"center": [1.2, 0.5], "theta0": 0.3}},
            {"kind": "offpole_cap", "params": {"center": [1.2, 1.5], "theta0": 0.25}}
        ]}}"#,
    )
    .unwrap();
    let mesh = build_mesh(&domain, (256, 512)).unwrap();
    assert!(!mesh.warnings().is_empty());
    let tol = Tolerances::default();
    let torsion = verify_torsion(&mesh, &tol).unwrap();
    assert!(torsion.all_pass(), "{:?}", torsion.reports());
    assert!(torsion.saint_venant.margin > 0.0);
    // The ground state lives on the larger cap alone.
    let chiti = verify_chiti(&mesh, 1.0, &[2.0, 4.0], &tol).unwrap();
    let larger = cap_eigenvalue(2, 0.3).unwrap().lambda;
    assert!((chiti.eigen.lambda - larger).abs() / larger < 1e-2);
    assert!(chiti.claim.margin > 0.0);
    assert!(chiti.reverse_holder.iter().all(|r| r.pass));
    assert!(isoperimetric_check(&mesh, &tol).unwrap().pass);
}

#[test]
fn bitmap_band_domain() {
    // Rows 8..24 of a 32 × 64 sphere bitmap: a latitude band.
    let (rows, cols) = (32, 64);
    let bits: Vec<bool> = (0..rows * cols).map(|k| (8..24).contains(&(k / cols))).collect();
    let json = format!(
        r#"{{"kind": "grid", "params": {{"rows": {rows}, "cols": {cols}, "bits": "{}"}}, "manifold": {{"n": 2, "r": 0.9}}}}"#,
        encode_bits(&bits)
    );
    let domain = DomainSpec::from_json(&json).unwrap();
    assert!((domain.manifold.beta() - 0.81).abs() < 1e-15);
    let mesh = build_mesh(&domain, GRID).unwrap();
    let band = 2.0 * PI * ((PI / 4.0).cos() - (3.0 * PI / 4.0).cos()) * 0.81;
    assert!((mesh.volume() - band).abs() / band < 2e-2, "{} vs {band}", mesh.volume());
    let tol = Tolerances::default();
    assert!(verify_torsion(&mesh, &tol).unwrap().all_pass());
    let chiti = verify_chiti(&mesh, 1.0, &[2.0], &tol).unwrap();
    assert!(chiti.all_pass());
    assert_eq!(chiti.crossings.len(), 1);
}

#[test]
fn empty_domain_is_reported() {
    let bits = encode_bits(&[false; 64]);
    let json = format!(r#"{{"kind": "grid", "params": {{"rows": 8, "cols": 8, "bits": "{bits}"}}}}"#);
    let err = DomainSpec::from_json(&json).and_then(|d| build_mesh(&d, GRID).map(|_| ()));
    assert_eq!(err, Err(Error::EmptyDomain));
}

#[test]
fn rejects_bad_specs() {
    for text in [
        r#"{"kind": "cap", "params": {"theta0": -1}}"#,
        r#"{"kind": "cap", "params": {"theta0": 1}, "manifold": {"n": 2, "r": 1.5}}"#,
        r#"{"kind": "cap", "params": {"theta0": 1}, "manifold": {"n": 3, "r": 1}}"#,
        r#"{"kind": "rect", "params": {"theta": [1, 0.5], "phi": [0, 1]}}"#,
        r#"{"kind": "grid", "params": {"rows": 8, "cols": 8, "bits": "AA=="}}"#,
    ] {
        assert!(DomainSpec::from_json(text).is_err(), "{text}");
    }
}

#[test]
fn report_serializes() {
    let mesh = build_mesh(&DomainSpec::cap(1.0, 1.0).unwrap(), GRID).unwrap();
    let r = isoperimetric_check(&mesh, &Tolerances::default()).unwrap();
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    assert_eq!(v["name"], "isoperimetric");
    assert!(v["metadata"].is_array() || v["metadata"].is_object());
}
