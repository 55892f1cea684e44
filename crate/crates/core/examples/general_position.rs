//! `2d + 1` points in general position with `(d, m) = (d, d - 1)`: the
//! determinant has degree `d(d - 1)`, no secant line or conic divides it, and
//! the irreducibility probe finds no rational factorization.
//!
//! Run with `cargo run --release --example general_position [max_d]`.

use std::time::Instant;

use jumplines::analysis::{detect_fixed_components, expected_jumping_degree, irreducibility_probe};
use jumplines::geometry::{candidate_components, random_config};
use jumplines::interp::{determinant, DetAlgorithm, InterpProblem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max_d: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(4);
    for d in 2..=max_d {
        let n = 2 * d as usize + 1;
        let start = Instant::now();
        let z = random_config(n, d as u64, 100)?;
        let p = InterpProblem::with_parity(z.clone())?;
        let det = determinant(&p, DetAlgorithm::Interpolation)?;
        let candidates: Vec<_> = candidate_components(&z, p.d, p.m).into_iter().map(|c| c.curve).collect();
        let found = detect_fixed_components(&det.canonical, &candidates, p.d, p.m)?;
        let probe = irreducibility_probe(&det.canonical, 8, 7, &[])?;
        println!(
            "d = {d}: {n} points, deg F = {} (expected {}), {} candidates, {} divide F, probe {:?} in {:.2?}",
            det.canonical.degree(),
            expected_jumping_degree(n)?,
            candidates.len(),
            found.len(),
            probe.verdict,
            start.elapsed()
        );
        for pat in probe.patterns.iter().take(4) {
            println!("    mod {}: factor degrees {:?}", pat.p, pat.degrees);
        }
    }
    Ok(())
}
