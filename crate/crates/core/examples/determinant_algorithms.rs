//! The two determinant algorithms (evaluation + interpolation, and
//! fraction-free elimination on polynomial entries) side by side, plus the
//! kernel-dimension view of the same vanishing.

use std::time::Instant;

use jumplines::exactalg::{Field, GridSampler};
use jumplines::geometry::{random_config, ProjPoint};
use jumplines::interp::{determinant, determinant_in, system_dimension, DetAlgorithm, InterpProblem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in [4, 5, 6, 7] {
        let z = random_config(n, 21, 40)?;
        let p = InterpProblem::with_parity(z.clone())?;
        let t = Instant::now();
        let a = determinant(&p, DetAlgorithm::Interpolation)?;
        let ta = t.elapsed();
        let t = Instant::now();
        let b = determinant(&p, DetAlgorithm::Bareiss)?;
        let tb = t.elapsed();
        println!(
            "n = {n}, (d, m) = ({}, {}): degree {}, {} terms; equal: {}; interpolation {ta:.2?}, bareiss {tb:.2?}",
            p.d,
            p.m,
            a.canonical.degree(),
            a.canonical.terms().len(),
            a.raw == b.raw
        );
        let f = Field::prime(1_000_003)?;
        let modp = determinant_in(&p, DetAlgorithm::Interpolation, f, &GridSampler::new(1))?;
        println!("  reduction mod 1000003 matches: {}", a.raw.to_field(f)? == modp.raw);

        let generic = ProjPoint::new(5, -8, 13)?;
        let on_secant = z.points()[0].combine(&1.into(), &z.points()[1], &1.into())?;
        for b in [generic, on_secant] {
            let value = a.raw.eval(&b.rational_coords())?;
            let dim = system_dimension(p.d, &[(b.clone(), p.m)], z.points())?;
            println!("  B = {b}: F(B) = {}, kernel dimension {dim}", value.to_decimal_string());
        }
    }
    Ok(())
}
