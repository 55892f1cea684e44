//! Points of the determinant curve over a prime field, found as roots of its
//! restriction to random lines, checked against the splitting type over the
//! same field.

use jumplines::exactalg::Field;
use jumplines::geometry::{named_config, NamedParams};
use jumplines::interp::{determinant, DetAlgorithm, InterpProblem};
use jumplines::logbundle::{cross_check, zeros_mod_p, PencilRule, Sample};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = 10_007;
    let field = Field::prime(p)?;
    let z = named_config("example-5-2", NamedParams { seed: Some(5), d: None })?;
    let problem = InterpProblem::with_parity(z.clone())?;
    let det = determinant(&problem, DetAlgorithm::Interpolation)?;
    let f = det.canonical.to_field(field)?;
    let zeros = zeros_mod_p(&f, 10, 1)?;
    let samples: Vec<Sample> = zeros
        .into_iter()
        .map(|c| Sample {
            coords: c,
            source: "zero".into(),
        })
        .collect();
    let report = cross_check(&z, &f, &samples, PencilRule::Rotated)?;
    for r in &report.records {
        println!("B = ({}) F(B) = 0, splitting ({}, {}), jump {}, agree {}", r.b.join(":"), r.d1, r.d2, r.jump, r.agree);
    }
    println!("{} of {} agree over F_{p}", report.summary.agreements, report.summary.total);
    Ok(())
}
