//! For `2k` points in general position and parameters `(2k-1, 2k-1)` the
//! determinant is the product of all secant lines. The example factors it and
//! compares vanishing with the splitting type of the dual arrangement at
//! generic points and at points on the secants.
//!
//! Run with `cargo run --release --example secant_lines [n] [seed]`.

use jumplines::analysis::{analyze, sample_points_on_component, AnalyzeOptions};
use jumplines::geometry::random_config;
use jumplines::interp::{determinant, DetAlgorithm, InterpProblem};
use jumplines::logbundle::{cross_check, generic_samples, PencilRule, Sample};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(4);
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1);
    let z = random_config(n, seed, 50)?;
    let p = InterpProblem::with_parity(z.clone())?;
    let det = determinant(&p, DetAlgorithm::Interpolation)?;
    println!("{} points, (d, m) = ({}, {}), deg F = {}", n, p.d, p.m, det.canonical.degree());

    let report = analyze(&p, &det, &AnalyzeOptions { h_tables: false, ..Default::default() })?;
    println!(
        "{} linear components, residual degree {}",
        report.findings.iter().filter(|c| c.curve.degree == 1).count(),
        report.residual.degree()
    );
    for c in &report.findings {
        println!("  {}  multiplicity {}", c.curve.poly, c.observed_multiplicity);
    }

    let mut samples: Vec<Sample> = generic_samples(10, seed, 60)
        .iter()
        .map(|b| Sample::rational(b, "generic"))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (i, c) in report.findings.iter().enumerate() {
        for b in sample_points_on_component(&c.curve, &z, &[], 1, &mut rng) {
            samples.push(Sample::rational(&b, format!("secant {i}")));
        }
    }
    let check = cross_check(&z, &det.raw, &samples, PencilRule::GramSchmidt)?;
    for r in &check.records {
        println!(
            "{:>9} F(B)=0: {:5} splitting ({}, {}) jump {} second generator {} agree {}",
            r.source, r.f_is_zero, r.d1, r.d2, r.jump, r.d2_restricted, r.agree
        );
    }
    println!("{} of {} samples agree", check.summary.agreements, check.summary.total);
    Ok(())
}
