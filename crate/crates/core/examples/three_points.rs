//! Three points with a double fat point and conics: `(d, m) = (2, 2)`.
//!
//! For the coordinate triangle the determinant is the product of the three
//! sides; for three collinear points it is the cube of their line.

use jumplines::analysis::{detect_fixed_components, residual};
use jumplines::geometry::{candidate_components, named_config, NamedParams};
use jumplines::interp::{build_matrix, determinant, specialize_at_point, DetAlgorithm, InterpProblem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["triangle", "collinear3"] {
        let z = named_config(name, NamedParams::default())?;
        let p = InterpProblem::new(2, 2, z.clone())?;
        let m = build_matrix(&p)?;
        println!("{name}: {}x{} matrix", m.rows(), m.cols());
        for row in &m.entries {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            println!("  [{}]", cells.join(", "));
        }
        let det = determinant(&p, DetAlgorithm::Bareiss)?;
        println!("  raw determinant       {}", det.raw);
        println!("  canonical determinant {}", det.canonical);

        let candidates: Vec<_> = candidate_components(&z, 2, 2).into_iter().map(|c| c.curve).collect();
        let found = detect_fixed_components(&det.canonical, &candidates, 2, 2)?;
        for c in &found {
            println!("  component {} with multiplicity {}", c.curve.poly, c.observed_multiplicity);
        }
        println!("  residual {}", residual(&det.canonical, &found)?);

        let b = z.points()[0].combine(&2.into(), &z.points()[1], &5.into())?;
        let at_b = specialize_at_point(&m, &b)?;
        println!("  at B = {b} on a side: rank {} of 6", at_b.rank());
    }
    Ok(())
}
