//! Arithmetic in Q[x]/(p) and the certified embeddings of the field into C.

use galconf::numberfield::{check_irreducible, embed, isolate_roots, NumberField, Poly};

fn main() -> galconf::Result<()> {
    let p = Poly::parse("x^3 - 2")?;
    println!("{p}: {}", check_irreducible(&p));
    let k = NumberField::new(&p)?;
    let z = k.gen();
    let a = &z + &k.one();
    let inv = a.inv()?;
    println!("1/(x + 1) = {inv}");
    println!("check: {}", &a * &inv);

    for e in isolate_roots(&p, 1e-12)? {
        let img = embed(&inv, &e);
        println!(
            "root {}: {:.12} {:+.12}i  ->  1/(z+1) = {:.12} {:+.12}i  (radius {:.1e})",
            e.root_index, e.center.re, e.center.im, img.center.re, img.center.im, img.radius
        );
    }

    for q in ["x^4 + 1", "x^4 - 5*x^2 + 6", "x^5 - x - 1"] {
        println!("{q}: {}", check_irreducible(&Poly::parse(q)?));
    }
    Ok(())
}
