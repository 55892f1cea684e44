//! Nine points: seven on a smooth conic, a line through two of them carrying
//! two more. The determinant of type (4,3) splits off the conic once and the
//! line three times, leaving a degree-7 residual.
//!
//! Run with `cargo run --release --example conic_and_line [seed]`.

use jumplines::analysis::{analyze, sample_points_on_component, AnalyzeOptions};
use jumplines::geometry::{named_config, position_report, NamedParams, PlaneCurve};
use jumplines::interp::{determinant, DetAlgorithm, InterpProblem};
use jumplines::logbundle::{cross_check, PencilRule, Sample};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    let z = named_config("example-5-2", NamedParams { seed: Some(seed), d: None })?;
    for (i, p) in z.points().iter().enumerate() {
        println!("P{i} = {p}");
    }
    let rep = position_report(&z);
    println!("collinear subsets: {:?}", rep.collinear);
    println!("coconic subsets:   {:?}", rep.coconic);

    let p = InterpProblem::with_parity(z.clone())?;
    let det = determinant(&p, DetAlgorithm::Interpolation)?;
    println!("(d, m) = ({}, {}), deg F = {}", p.d, p.m, det.canonical.degree());

    let report = analyze(&p, &det, &AnalyzeOptions::default())?;
    for c in &report.findings {
        println!(
            "{} through {} points: multiplicity {} (predicted >= {})",
            c.curve.label,
            c.curve.support.len(),
            c.observed_multiplicity,
            c.predicted_multiplicity
        );
    }
    println!("residual degree {}", report.residual.degree());
    for t in &report.h_tables {
        let hs: Vec<String> = t.rows.iter().map(|r| format!("h{}={}", r.j, r.actual)).collect();
        println!(
            "at {} on component {}: {} (sum {}), multiplicity of F there {}",
            t.point,
            t.component,
            hs.join(" "),
            t.h_sum,
            t.multiplicity_at_point
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let curves: Vec<&PlaneCurve> = report.findings.iter().map(|c| &c.curve).collect();
    let mut samples = Vec::new();
    for (i, c) in curves.iter().enumerate() {
        let others: Vec<&PlaneCurve> = curves.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, c)| *c).collect();
        for b in sample_points_on_component(c, &z, &others, 3, &mut rng) {
            samples.push(Sample::rational(&b, format!("component {i}")));
        }
    }
    let check = cross_check(&z, &det.raw, &samples, PencilRule::GramSchmidt)?;
    for r in &check.records {
        println!(
            "{:>12} B=({}) F(B)=0: {:5} splitting ({}, {}) jump {} agree {}",
            r.source,
            r.b.join(":"),
            r.f_is_zero,
            r.d1,
            r.d2,
            r.jump,
            r.agree
        );
    }
    Ok(())
}
