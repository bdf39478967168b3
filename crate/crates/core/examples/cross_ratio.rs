use galconf::numberfield::{NumberField, Poly, Rational};
use galconf::projgeom::{cross_ratio, transform, ProjPoint};

fn main() -> galconf::Result<()> {
    let k = NumberField::new(&Poly::parse("x^2 - x - 1")?)?;
    let z = k.gen();
    let zero = ProjPoint::from_ints(&k, [0, 0, 1]);
    let one = ProjPoint::from_ints(&k, [1, 0, 1]);
    let inf = ProjPoint::from_ints(&k, [1, 0, 0]);
    let zp = ProjPoint::affine(z.clone(), k.zero());
    println!("CR(0, 1, inf, z) = {}", cross_ratio(&zero, &one, &inf, &zp)?);

    // a projective map with coefficients in K moves the points off the axis
    let q = |n: i64, d: i64| k.from_rational(Rational::new(n.into(), d.into()));
    let m = [
        [q(2, 1), z.clone(), q(1, 3)],
        [q(-1, 1), q(5, 2), z.clone()],
        [q(1, 7), q(0, 1), &z + &k.one()],
    ];
    let moved: Vec<ProjPoint> =
        [&zero, &one, &inf, &zp].iter().map(|p| transform(&m, p)).collect::<galconf::Result<_>>()?;
    for p in &moved {
        println!("  {p:?}");
    }
    println!("after transform: {}", cross_ratio(&moved[0], &moved[1], &moved[2], &moved[3])?);
    Ok(())
}
