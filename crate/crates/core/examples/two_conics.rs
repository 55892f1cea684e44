//! `2d + 1` points split as `d + 3` on one conic and `d + 2` on another conic
//! of the same pencil. At most one of the two conics divides the determinant.
//!
//! Run with `cargo run --release --example two_conics [d] [seeds]`.

use jumplines::analysis::{analyze, AnalyzeOptions};
use jumplines::geometry::{named_config, position_report, NamedParams};
use jumplines::interp::{determinant, DetAlgorithm, InterpProblem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let d: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(4);
    let seeds: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3);
    for seed in 0..seeds {
        let z = named_config("two-conics", NamedParams { seed: Some(seed), d: Some(d) })?;
        let sizes: Vec<usize> = position_report(&z).coconic.iter().map(Vec::len).collect();
        let p = InterpProblem::with_parity(z)?;
        let det = determinant(&p, DetAlgorithm::Interpolation)?;
        let rep = analyze(&p, &det, &AnalyzeOptions { h_tables: false, ..Default::default() })?;
        let conics: Vec<String> = rep
            .findings
            .iter()
            .filter(|c| c.curve.degree == 2)
            .map(|c| format!("conic through {} points (x{})", c.curve.support.len(), c.observed_multiplicity))
            .collect();
        println!(
            "seed {seed}: coconic sets of sizes {sizes:?}; deg F = {}; dividing conics: [{}]; residual degree {}",
            det.canonical.degree(),
            conics.join(", "),
            rep.residual.degree()
        );
    }
    Ok(())
}
