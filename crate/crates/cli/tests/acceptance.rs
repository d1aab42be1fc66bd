//! Acceptance gate: one line per criterion.
//!
//! Every tolerance and runtime budget below is fixed. Lines marked as known
//! failures are equality cases that the inequalities only attain on the unit
//! sphere; they are evaluated and printed like every other line, and the
//! process exits nonzero if any line deviates from its expected outcome.

use std::f64::consts::{LN_2, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use capspectra::cap_spectral::cap_eigenvalue;
use capspectra::chiti::{bessel_first_zero, chiti_constant_euclidean};
use capspectra::domain::{build_mesh, contour_length, isoperimetric_check, solve_dirichlet_eigenpair, solve_torsion};
use capspectra::domain::{DomainMesh, DomainSpec, EigenSolution};
use capspectra::rearrangement::{decreasing_rearrangement, distribution_function, lp_norm_rearranged, MeasuredSamples};
use capspectra::torsion::TorsionField;
use capspectra::verify::{compare_with_cap, torsion_checks, ChitiOutcome, TorsionOutcome};
use capspectra::{ManifoldSpec, Tolerances, VerificationReport};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

const GRID: (usize, usize) = (256, 512);
const R_SMALL: f64 = 0.8;

const HEMISPHERE_TOL: f64 = 1e-8;
const HEMISPHERE_BUDGET: Duration = Duration::from_millis(50);
const FLAT_TOL: f64 = 5e-3;
const FLAT_BUDGET: Duration = Duration::from_millis(100);
const PAYNE_RAYNER_TOL: f64 = 1e-8;
const EQUALITY_BAND: f64 = 1e-2;
const STRICT_FLOOR: f64 = 1e-3;
const STRICT_GAP: f64 = 1e-2;
const CHITI_EQUALITY_BUDGET: Duration = Duration::from_secs(60);
const CHITI_STRICT_BUDGET: Duration = Duration::from_secs(120);
const CLAIM_SLACK: f64 = 1e-3;
const RIGIDITY_BAND: f64 = 1e-2;
const TORSION_BUDGET: Duration = Duration::from_secs(60);
const ISOPERIMETRIC_BAND: f64 = 1e-2;
const ISOPERIMETRIC_GAP: f64 = 2e-2;
const SCALING_TOL: f64 = 1e-9;
const ROUND_TRIP_TOL: f64 = 1e-10;
const EQUIMEASURABLE_TOL: f64 = 1e-12;
const PROPERTY_CASES: u32 = 256;

#[derive(Clone, Copy, PartialEq)]
enum Expect {
    Pass,
    /// Cannot hold off the unit sphere; evaluated and reported anyway.
    KnownFailure,
}

struct Line {
    id: &'static str,
    title: &'static str,
    pass: bool,
    expect: Expect,
    detail: String,
}

impl Line {
    fn new(id: &'static str, title: &'static str, pass: bool, detail: String) -> Self {
        Self { id, title, pass, expect: Expect::Pass, detail }
    }

    fn known_failure(mut self) -> Self {
        self.expect = Expect::KnownFailure;
        self
    }

    fn as_expected(&self) -> bool {
        self.pass == (self.expect == Expect::Pass)
    }

    fn print(&self) {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        let note = match (self.expect, self.as_expected()) {
            (Expect::KnownFailure, true) => " (unattainable off the unit sphere)",
            (_, false) => " (UNEXPECTED)",
            _ => "",
        };
        println!("{:<4} {verdict}{note}  {}: {}", self.id, self.title, self.detail);
    }
}

fn error_line(id: &'static str, title: &'static str, e: impl std::fmt::Display) -> Line {
    Line::new(id, title, false, format!("error: {e}"))
}

/// One meshed domain with its solves and checks, computed once.
struct Fixture {
    label: &'static str,
    mesh: DomainMesh,
    eigen: EigenSolution,
    /// p = 1 with q ∈ {1.5, 2, 3, 5}.
    chiti: ChitiOutcome,
    /// p = 1/2 with q = 1.
    chiti_half: ChitiOutcome,
    chiti_time: Duration,
    torsion: TorsionOutcome,
    torsion_time: Duration,
    isoperimetric: VerificationReport,
}

impl Fixture {
    fn solve(label: &'static str, domain: DomainSpec, tol: &Tolerances) -> Result<Self, String> {
        let start = Instant::now();
        let mesh = build_mesh(&domain, GRID).map_err(|e| e.to_string())?;
        let eigen = solve_dirichlet_eigenpair(&mesh).map_err(|e| e.to_string())?;
        let eigen_time = start.elapsed();
        let chiti = compare_with_cap(&mesh, eigen.clone(), 1.0, &[1.5, 2.0, 3.0, 5.0], tol).map_err(|e| e.to_string())?;
        let chiti_half = compare_with_cap(&mesh, eigen.clone(), 0.5, &[1.0], tol).map_err(|e| e.to_string())?;
        let chiti_time = start.elapsed();
        let start = Instant::now();
        let field: TorsionField = solve_torsion(&mesh).map_err(|e| e.to_string())?;
        let torsion = torsion_checks(&mesh, field, tol).map_err(|e| e.to_string())?;
        let torsion_time = start.elapsed();
        let isoperimetric = isoperimetric_check(&mesh, tol).map_err(|e| e.to_string())?;
        eprintln!(
            "[fixture] {label}: λ = {:.6}, eigen {:.1}s, torsion {:.1}s",
            eigen.lambda,
            eigen_time.as_secs_f64(),
            torsion_time.as_secs_f64()
        );
        Ok(Self {
            label,
            mesh,
            eigen,
            chiti,
            chiti_half,
            chiti_time,
            torsion,
            torsion_time,
            isoperimetric,
        })
    }

    fn holder(&self, p: f64, q: f64) -> &VerificationReport {
        let pool = if p == 1.0 { &self.chiti } else { &self.chiti_half };
        pool.reverse_holder
            .iter()
            .find(|r| r.meta_num("q") == Some(q))
            .expect("requested exponent was computed")
    }

    fn rigidity(&self) -> f64 {
        self.torsion.field.rigidity()
    }
}

struct Fixtures {
    cap: Fixture,
    hemisphere: Fixture,
    rect: Fixture,
}

impl Fixtures {
    fn solve(r: f64, tol: &Tolerances) -> Result<Self, String> {
        let (cap, hemi, rect) = if r == 1.0 {
            ("Cap(π/3)", "Cap(π/2)", "Rect")
        } else {
            ("Cap(π/3), r=0.8", "Cap(π/2), r=0.8", "Rect, r=0.8")
        };
        let d = |e: capspectra::Error| e.to_string();
        Ok(Self {
            cap: Fixture::solve(cap, DomainSpec::cap(PI / 3.0, r).map_err(d)?, tol)?,
            hemisphere: Fixture::solve(hemi, DomainSpec::cap(PI / 2.0, r).map_err(d)?, tol)?,
            rect: Fixture::solve(rect, DomainSpec::rect((PI / 4.0, PI / 2.0), (0.0, PI / 2.0), r).map_err(d)?, tol)?,
        })
    }

    fn all(&self) -> [&Fixture; 3] {
        [&self.cap, &self.hemisphere, &self.rect]
    }
}

fn rel_margin(r: &VerificationReport) -> f64 {
    r.margin / r.rhs
}

fn hemisphere_eigenvalues() -> Line {
    let mut worst = 0.0f64;
    let mut slowest = Duration::ZERO;
    for n in 2..=6 {
        let start = Instant::now();
        let lambda = match cap_eigenvalue(n, PI / 2.0) {
            Ok(c) => c.lambda,
            Err(e) => return error_line("C1", "hemisphere eigenvalue", e),
        };
        slowest = slowest.max(start.elapsed());
        worst = worst.max((lambda - n as f64).abs());
    }
    Line::new(
        "C1",
        "hemisphere eigenvalue",
        worst <= HEMISPHERE_TOL && slowest < HEMISPHERE_BUDGET,
        format!("max |λ − n| = {worst:.2e} for n = 2..6, slowest {:.2} ms", ms(slowest)),
    )
}

fn flat_limit() -> Line {
    let theta = 0.05;
    let mut parts = Vec::new();
    let mut ok = true;
    for (n, nu) in [(2usize, 0.0), (3, 0.5)] {
        let start = Instant::now();
        let cap = match cap_eigenvalue(n, theta) {
            Ok(c) => c,
            Err(e) => return error_line("C2", "flat limit", e),
        };
        let elapsed = start.elapsed();
        let j = match bessel_first_zero(nu) {
            Ok(j) => j,
            Err(e) => return error_line("C2", "flat limit", e),
        };
        let rel = (cap.lambda * theta * theta - j * j).abs() / (j * j);
        ok &= rel <= FLAT_TOL && elapsed < FLAT_BUDGET;
        parts.push(format!("n={n}: λθ² = {:.5} vs {:.5} (rel {rel:.1e}, {:.2} ms)", cap.lambda * theta * theta, j * j, ms(elapsed)));
    }
    Line::new("C2", "flat limit", ok, parts.join("; "))
}

fn payne_rayner() -> Line {
    let mut worst = 0.0f64;
    for lambda in [1.0, 2.0, 10.0] {
        match chiti_constant_euclidean(1.0, 2.0, lambda, 2) {
            Ok(k) => worst = worst.max((k - (lambda / (4.0 * PI)).sqrt()).abs()),
            Err(e) => return error_line("C3", "Payne-Rayner constant", e),
        }
    }
    Line::new(
        "C3",
        "Payne-Rayner constant",
        worst <= PAYNE_RAYNER_TOL,
        format!("max |K(1,2,λ,2) − √(λ/4π)| = {worst:.2e} for λ ∈ {{1, 2, 10}}"),
    )
}

const EQUALITY_PAIRS: [(f64, f64); 3] = [(1.0, 2.0), (1.0, 5.0), (0.5, 1.0)];

/// Reverse Hölder margins within the band and no crossing.
fn chiti_equality(f: &Fixture) -> (bool, String) {
    let mut ok = f.chiti.crossings.is_empty();
    let mut parts = Vec::new();
    for (p, q) in EQUALITY_PAIRS {
        let m = rel_margin(f.holder(p, q));
        ok &= m.abs() <= EQUALITY_BAND;
        parts.push(format!("({p},{q}) m/rhs = {m:+.2e}"));
    }
    (
        ok,
        format!("{}: {}; crossings {}; {:.1} s", f.label, parts.join(", "), f.chiti.crossings.len(), f.chiti_time.as_secs_f64()),
    )
}

fn chiti_strict(f: &Fixture) -> (bool, String) {
    let margins: Vec<f64> = f.chiti.reverse_holder.iter().map(rel_margin).collect();
    let floor = margins.iter().all(|m| *m >= -STRICT_FLOOR);
    let strict = margins.iter().any(|m| *m > STRICT_GAP);
    let crossing_ok = f.chiti.crossings.len() == 1 && f.chiti.crossings[0] > 0.0 && f.chiti.crossings[0] < f.chiti.cap.theta1;
    let theta2 = f.chiti.crossings.first().map_or("none".to_string(), |t| format!("{t:.4}"));
    (
        floor && strict && crossing_ok,
        format!(
            "{}: m/rhs for q = 1.5, 2, 3, 5: [{}]; θ₂ = {theta2} in (0, θ₁ = {:.4}); {:.1} s",
            f.label,
            margins.iter().map(|m| format!("{m:.3e}")).collect::<Vec<_>>().join(", "),
            f.chiti.cap.theta1,
            f.chiti_time.as_secs_f64()
        ),
    )
}

fn claim(fixtures: &[&Fixture]) -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for f in fixtures {
        let a = f.chiti.claim.lhs;
        let vol = f.chiti.claim.rhs;
        ok &= a <= vol * (1.0 + CLAIM_SLACK);
        parts.push(format!("{} A/vol = {:.6}", f.label, a / vol));
    }
    (ok, parts.join(", "))
}

fn hemisphere_rigidity(r: f64) -> f64 {
    2.0 * PI * (2.0 * LN_2 - 1.0) * r.powi(4)
}

/// T against the closed form and against β·T(D⋆).
fn saint_venant_equality(f: &Fixture, r: f64) -> (bool, String) {
    let t = f.rigidity();
    let exact = hemisphere_rigidity(r);
    let sv = &f.torsion.saint_venant;
    let closed = (t - exact).abs() / exact;
    let cap = (sv.lhs - sv.rhs).abs() / sv.rhs;
    (
        closed <= RIGIDITY_BAND && cap <= RIGIDITY_BAND,
        format!(
            "{}: T = {t:.6}, closed form rel {closed:.1e}, vs βT(D⋆) = {:.6} rel {cap:.1e}; {:.1} s",
            f.label,
            sv.rhs,
            f.torsion_time.as_secs_f64()
        ),
    )
}

fn saint_venant_strict(f: &Fixture) -> (bool, String) {
    let sv = &f.torsion.saint_venant;
    (sv.margin > 0.0, format!("{}: T = {:.6} < βT(D⋆) = {:.6}", f.label, sv.lhs, sv.rhs))
}

fn warping_and_derivative(fixtures: &[&Fixture]) -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for f in fixtures {
        let w = &f.torsion.warping;
        let d = &f.torsion.derivative;
        ok &= w.pass && d.pass;
        parts.push(format!(
            "{} max(w⋆−v)/sup v = {:+.1e}, bound at {:.1}%",
            f.label,
            w.lhs / w.meta_num("sup_v").unwrap_or(f64::NAN),
            100.0 * d.rhs
        ));
    }
    (ok, parts.join("; "))
}

fn isoperimetric(caps: &[&Fixture], rect: &Fixture) -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for f in caps {
        let ratio = f.isoperimetric.meta_num("ratio").unwrap_or(f64::NAN);
        ok &= (ratio - 1.0).abs() <= ISOPERIMETRIC_BAND;
        parts.push(format!("{} ratio {ratio:.5}", f.label));
    }
    let ratio = rect.isoperimetric.meta_num("ratio").unwrap_or(f64::NAN);
    ok &= ratio >= 1.0 + ISOPERIMETRIC_GAP;
    parts.push(format!("{} ratio {ratio:.4}", rect.label));
    (ok, parts.join(", "))
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn unit_sphere_lines(f: &Fixtures) -> Vec<Line> {
    let mut out = Vec::new();
    let (ok, detail) = chiti_equality(&f.cap);
    let ok = ok && f.cap.chiti_time < CHITI_EQUALITY_BUDGET;
    out.push(Line::new("C4", "Chiti equality case", ok, detail));

    let (ok, detail) = chiti_strict(&f.rect);
    let ok = ok && f.rect.chiti_time < CHITI_STRICT_BUDGET;
    out.push(Line::new("C5", "Chiti strict case", ok, detail));

    let (ok, detail) = claim(&f.all());
    out.push(Line::new("C6", "volume claim", ok, detail));

    let (a, da) = saint_venant_equality(&f.hemisphere, 1.0);
    let (b, db) = saint_venant_strict(&f.rect);
    let fast = f.hemisphere.torsion_time < TORSION_BUDGET && f.rect.torsion_time < TORSION_BUDGET;
    out.push(Line::new("C7", "Saint-Venant", a && b && fast, format!("{da}; {db}")));

    let (ok, detail) = warping_and_derivative(&f.all());
    out.push(Line::new("C8", "warping comparison", ok, detail));
    out
}

/// Scaled sphere: inequalities, exact scaling laws, and the equality bands.
fn scaled_sphere_lines(unit: &Fixtures, small: &Fixtures) -> Vec<Line> {
    let mut inequalities = Vec::new();
    let mut ok = true;

    let (a, d) = chiti_strict(&small.rect);
    ok &= a;
    inequalities.push(d);
    let cap_floor = small.cap.chiti.reverse_holder.iter().chain(&small.cap.chiti_half.reverse_holder).all(|r| r.pass);
    ok &= cap_floor;
    inequalities.push(format!("{} reverse Hölder within slack: {cap_floor}", small.cap.label));
    let (a, d) = claim(&small.all());
    ok &= a;
    inequalities.push(d);
    let sv = small.all().iter().all(|f| f.torsion.saint_venant.pass);
    ok &= sv;
    inequalities.push(format!("Saint-Venant on all fixtures: {sv}"));
    let (a, d) = warping_and_derivative(&small.all());
    ok &= a;
    inequalities.push(d);
    let iso = small.all().iter().all(|f| f.isoperimetric.pass);
    let rect_gap = small.rect.isoperimetric.meta_num("ratio").unwrap_or(0.0) >= 1.0 + ISOPERIMETRIC_GAP;
    ok &= iso && rect_gap;
    inequalities.push(format!("isoperimetric on all fixtures: {iso}, rectangle gap: {rect_gap}"));
    let a_line = Line::new("C9a", "r = 0.8 inequalities", ok, inequalities.join("; "));

    let r2 = R_SMALL * R_SMALL;
    let mut worst = 0.0f64;
    for (u, s) in unit.all().iter().zip(small.all()) {
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs();
        worst = worst
            .max(rel(s.eigen.lambda * r2, u.eigen.lambda))
            .max(rel(s.mesh.volume(), u.mesh.volume() * r2))
            .max(rel(s.rigidity(), u.rigidity() * r2 * r2))
            .max(rel(contour_length(&s.mesh), contour_length(&u.mesh) * R_SMALL));
    }
    let b_line = Line::new(
        "C9b",
        "r = 0.8 scaling laws",
        worst <= SCALING_TOL,
        format!("λr², area/r², T/r⁴, length/r match r = 1 to {worst:.1e}"),
    );

    let (eq4, d4) = chiti_equality(&small.cap);
    let (eq7, d7) = saint_venant_equality(&small.hemisphere, R_SMALL);
    let (eq11, d11) = isoperimetric(&[&small.cap, &small.hemisphere], &small.rect);
    let c_line = Line::new(
        "C9c",
        "r = 0.8 equality bands",
        eq4 && eq7 && eq11,
        format!("{d4}; {d7}; {d11}"),
    )
    .known_failure();

    let overall = a_line.pass && b_line.pass && c_line.pass;
    let mut summary = Line::new(
        "C9",
        "nontrivial β",
        overall,
        "inequalities and scaling hold; equality bands need an isometric sphere".to_string(),
    );
    if a_line.pass && b_line.pass && !c_line.pass {
        summary = summary.known_failure();
    }
    vec![a_line, b_line, c_line, summary]
}

fn isoperimetric_line(f: &Fixtures) -> Line {
    let (ok, detail) = isoperimetric(&[&f.cap, &f.hemisphere], &f.rect);
    Line::new("C11", "isoperimetric comparison", ok, detail)
}

fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    })
}

/// Values and dyadic measures, so every partial sum is exact.
fn dyadic_samples() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    prop::collection::vec((0u32..40, 1u32..64), 1..120).prop_map(|cells| {
        let values = cells.iter().map(|(v, _)| *v as f64 / 8.0).collect();
        let measures = cells.iter().map(|(_, m)| *m as f64 / 64.0).collect();
        (values, measures)
    })
}

fn equimeasurability() -> Result<(), String> {
    runner()
        .run(
            &(prop::collection::vec((0.0f64..10.0, 1e-3f64..2.0), 1..200), dyadic_samples()),
            |(cells, (dv, dm))| {
                let (values, measures): (Vec<f64>, Vec<f64>) = cells.into_iter().unzip();
                let samples = MeasuredSamples::new(values, measures).unwrap();
                let profile = decreasing_rearrangement(&samples);
                for p in [0.5, 1.0, 2.0, 5.0] {
                    let direct = samples.lp_mass(p);
                    let rearranged = lp_norm_rearranged(&profile, p, None).unwrap();
                    prop_assert!((direct - rearranged).abs() <= EQUIMEASURABLE_TOL * direct.max(1.0));
                }
                let dyadic = MeasuredSamples::new(dv, dm).unwrap();
                let profile = decreasing_rearrangement(&dyadic);
                for k in 0..=41 {
                    let t = k as f64 / 8.0 - 0.0625;
                    prop_assert_eq!(profile.distribution(t), distribution_function(&dyadic, t));
                }
                Ok(())
            },
        )
        .map_err(|e| e.to_string())
}

/// Robin Hood transfers on g*ᵖ give fᵖ with ∫₀^s (f*)ᵖ ≤ ∫₀^s (g*)ᵖ.
fn hlp_dominance() -> Result<(), String> {
    let strategy = (
        prop::collection::vec(0.0f64..5.0, 2..80),
        prop::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>(), 0.0f64..1.0), 0..40),
        0.3f64..3.0,
        0.5f64..=1.0,
        any::<u64>(),
    );
    runner()
        .run(&strategy, |(g, transfers, p, shrink, seed)| {
            let n = g.len();
            let mut fp: Vec<f64> = g.iter().map(|v| v.powf(p)).collect();
            for (a, b, frac) in transfers {
                let (i, j) = (a.index(n), b.index(n));
                let (hi, lo) = if fp[i] >= fp[j] { (i, j) } else { (j, i) };
                let moved = 0.5 * frac * (fp[hi] - fp[lo]);
                fp[hi] -= moved;
                fp[lo] += moved;
            }
            // Shuffle so f is not already sorted.
            let mut order: Vec<usize> = (0..n).collect();
            let mut state = seed | 1;
            for k in (1..n).rev() {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                order.swap(k, (state % (k as u64 + 1)) as usize);
            }
            let f: Vec<f64> = order.iter().map(|&k| shrink * fp[k].max(0.0).powf(1.0 / p)).collect();
            let cells = vec![1.0; n];
            let fs = decreasing_rearrangement(&MeasuredSamples::new(f.clone(), cells.clone()).unwrap());
            let gs = decreasing_rearrangement(&MeasuredSamples::new(g.clone(), cells.clone()).unwrap());
            let slack = 1e-12 * gs.lp_mass(p, n as f64).max(1.0);
            for s in 0..=n {
                prop_assert!(fs.lp_mass(p, s as f64) <= gs.lp_mass(p, s as f64) + slack, "premise at s = {}", s);
            }
            for q in [p, 2.0 * p, 5.0 * p] {
                let lhs: f64 = f.iter().map(|v| v.powf(q)).sum();
                let rhs: f64 = g.iter().map(|v| v.powf(q)).sum();
                prop_assert!(lhs <= rhs * (1.0 + 1e-10) + 1e-300, "q = {}: {} > {}", q, lhs, rhs);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Beyond π − 0.1 the inverse loses more than 1e-10 to rounding of A alone,
/// since A′ vanishes like (π − θ)^{n−1} at the antipode.
const ROUND_TRIP_MAX_THETA: f64 = PI - 0.1;

fn volume_round_trip() -> Result<(), String> {
    runner()
        .run(&(2usize..=6, 0.5f64..=1.0, 1e-3f64..ROUND_TRIP_MAX_THETA), |(n, r, theta)| {
            let spec = ManifoldSpec::scaled_sphere(n, r).unwrap();
            let back = spec.radius_from_volume(spec.cap_volume(theta)).unwrap();
            prop_assert!((back - theta).abs() <= ROUND_TRIP_TOL, "n={} r={} θ={} back={}", n, r, theta, back);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn permutation_invariance() -> Result<(), String> {
    runner()
        .run(&dyadic_samples().prop_flat_map(|(v, m)| {
            let n = v.len();
            (Just(v), Just(m), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        }), |(values, measures, perm)| {
            let a = decreasing_rearrangement(&MeasuredSamples::new(values.clone(), measures.clone()).unwrap());
            let pv = perm.iter().map(|&k| values[k]).collect();
            let pm = perm.iter().map(|&k| measures[k]).collect();
            let b = decreasing_rearrangement(&MeasuredSamples::new(pv, pm).unwrap());
            prop_assert_eq!(a, b);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn cli_output(args: &[String]) -> (u8, Vec<u8>) {
    let mut out = Vec::new();
    let argv = std::iter::once("capspectra".to_string()).chain(args.iter().cloned());
    let code = capspectra_cli::run(argv, &mut out);
    (code, out)
}

fn cli_determinism() -> Result<(), String> {
    let strategy = prop_oneof![
        (2usize..=5, 0.05f64..3.0).prop_map(|(n, t)| vec![
            "cap-eig".to_string(),
            "--n".into(),
            n.to_string(),
            "--theta1".into(),
            t.to_string()
        ]),
        (0.5f64..2.0, 0.0f64..3.0, 0.5f64..20.0, 2usize..=4, any::<bool>()).prop_map(|(p, dq, l, n, csv)| {
            let mut a = vec![
                "chiti-constant".to_string(),
                "--p".into(),
                p.to_string(),
                "--q".into(),
                (p + dq).to_string(),
                "--lambda".into(),
                l.to_string(),
                "--n".into(),
                n.to_string(),
            ];
            if csv {
                a.extend(["--format".to_string(), "csv".to_string()]);
            }
            a
        }),
    ];
    runner()
        .run(&strategy, |args| {
            let (c1, a) = cli_output(&args);
            let (c2, b) = cli_output(&args);
            prop_assert_eq!(c1, 0);
            prop_assert_eq!(c2, 0);
            prop_assert_eq!(a, b);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn property_line() -> Line {
    type Suite = fn() -> Result<(), String>;
    let suites: [(&str, Suite); 5] = [
        ("equimeasurability", equimeasurability),
        ("HLP dominance", hlp_dominance),
        ("A/θ round trip", volume_round_trip),
        ("permutation invariance", permutation_invariance),
        ("CLI determinism", cli_determinism),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, suite) in suites {
        match suite() {
            Ok(()) => parts.push(format!("{name} ok")),
            Err(e) => {
                ok = false;
                parts.push(format!("{name} FAILED: {e}"));
            }
        }
    }
    Line::new("C10", "property suites", ok, format!("{PROPERTY_CASES} cases each: {}", parts.join(", ")))
}

fn main() -> ExitCode {
    let tol = Tolerances::default();
    let mut lines = vec![hemisphere_eigenvalues(), flat_limit(), payne_rayner()];

    let unit = Fixtures::solve(1.0, &tol);
    let small = Fixtures::solve(R_SMALL, &tol);
    match (&unit, &small) {
        (Ok(unit), Ok(small)) => {
            lines.extend(unit_sphere_lines(unit));
            lines.extend(scaled_sphere_lines(unit, small));
            lines.push(property_line());
            lines.push(isoperimetric_line(unit));
        }
        (Err(e), _) | (_, Err(e)) => {
            for (id, title) in [("C4", "Chiti equality case"), ("C5", "Chiti strict case"), ("C6", "volume claim"), ("C7", "Saint-Venant"), ("C8", "warping comparison"), ("C9", "nontrivial β"), ("C11", "isoperimetric comparison")] {
                lines.push(error_line(id, title, e));
            }
            lines.push(property_line());
        }
    }
    println!();
    println!("acceptance");
    for line in &lines {
        line.print();
    }
    let unexpected: Vec<&str> = lines.iter().filter(|l| !l.as_expected()).map(|l| l.id).collect();
    let known: Vec<&str> = lines
        .iter()
        .filter(|l| l.expect == Expect::KnownFailure && !l.pass)
        .map(|l| l.id)
        .collect();
    let passed = lines.iter().filter(|l| l.pass).count();
    println!(
        "summary: {passed}/{} lines pass; failing as documented: [{}]; unexpected: [{}]",
        lines.len(),
        known.join(", "),
        unexpected.join(", ")
    );
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
