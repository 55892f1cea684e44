//! The dual line arrangement of a configuration: Jacobian partials restricted
//! to the pencil of a point, their minimal syzygy degrees and the jump order.

use jumplines::exactalg::Field;
use jumplines::geometry::{random_config, ProjPoint};
use jumplines::logbundle::{arrangement_of, generic_d1, restrict_to_pencil, splitting_of, syzygy_degrees, PencilRule};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let z = random_config(5, 11, 40)?;
    let a = arrangement_of(&z)?;
    println!("f = {}", a.f);
    println!("Euler identity holds: {}", a.euler_holds());

    let b = ProjPoint::new(7, -3, 11)?;
    let g = restrict_to_pencil(&a, &b.rational_coords(), PencilRule::GramSchmidt)?;
    for (i, form) in g.iter().enumerate() {
        let c: Vec<String> = form.coeffs.iter().map(|c| c.to_decimal_string()).collect();
        println!("partial {i} on the pencil of {b}: [{}]", c.join(", "));
    }
    println!("syzygy generator degrees {:?}", syzygy_degrees(&g)?);

    let generic = generic_d1(z.len());
    for pt in [[7, -3, 11], [1, 0, 0], [2, 2, -1]] {
        let b = ProjPoint::new(pt[0], pt[1], pt[2])?;
        for rule in [PencilRule::GramSchmidt, PencilRule::Rotated] {
            let st = splitting_of(&a, &b.coords_in(Field::Rational)?, rule)?;
            println!(
                "B = {b} ({rule:?}): splitting ({}, {}), generic d1 {generic}, jump {}",
                st.d1, st.d2, st.jump_order
            );
        }
    }
    Ok(())
}
