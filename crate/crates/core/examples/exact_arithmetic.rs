//! The exact substrate: homogeneous polynomials over Q and F_p, kernels,
//! interpolation from an oracle, and factor degrees modulo a prime.

use jumplines::exactalg::{
    factor_degrees_mod_p, interpolate_homogeneous, Field, FieldMatrix, GridSampler, HPoly, Monomial3, PolyJson,
    UniPolyModP, VarSet,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = Field::Rational;
    let x = HPoly::var(VarSet::Xyz, q, 0);
    let y = HPoly::var(VarSet::Xyz, q, 1);
    let z = HPoly::var(VarSet::Xyz, q, 2);
    let f = x.add(&y)?.pow(2)?.mul(&z.sub(&x)?)?;
    println!("f = {f}");
    println!("f / (x + y) = {}", f.exact_divide(&x.add(&y)?)?.expect("divides"));
    println!("df/dz = {}", f.diff(2));
    println!("canonical form of -6 f = {}", f.scale(&q.from_i64(-6))?.canonicalize());
    println!("json: {}", serde_json::to_string(&PolyJson::from(&f))?);

    let m = FieldMatrix::from_i64(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]], q)?;
    let k = m.kernel_basis();
    println!("rank {}, kernel basis {:?}", k.rank, k.basis.iter().map(|v| v.iter().map(|c| c.to_decimal_string()).collect::<Vec<_>>()).collect::<Vec<_>>());

    let target = HPoly::monomial(VarSet::A, Monomial3([1, 1, 1]), q.from_i64(-2));
    let recovered = interpolate_homogeneous(3, VarSet::A, q, |pt| target.eval(pt), &GridSampler::new(0))?;
    println!("recovered from values: {recovered}");

    for (p, coeffs) in [(3u64, vec![1i64, 0, 1]), (5, vec![-1, 0, 1]), (2, vec![1, 1, 0, 1])] {
        let u = UniPolyModP::new(p, coeffs.clone());
        println!("{coeffs:?} mod {p}: factor degrees {:?}", factor_degrees_mod_p(&u)?);
    }
    Ok(())
}
