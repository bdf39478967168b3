//! The three ruler gadgets and a Horner program run through them.

use galconf::numberfield::{NFElement, NumberField, Poly, Rational};
use galconf::projgeom::ProjPoint;
use galconf::slp::{compile_polynomial, emit_add_gadget, emit_configuration, emit_mul_gadget, emit_neg_gadget};

fn axis_value(p: &ProjPoint) -> NFElement {
    p.affine_coords().expect("finite axis point").0
}

fn main() -> galconf::Result<()> {
    let p = Poly::parse("x^3 - 2")?;
    let k = NumberField::new(&p)?;
    let z = k.gen();
    let h = Rational::from_integer(2.into());

    let sum = emit_add_gadget(&z, &k.from_int(3), &h)?;
    println!("z + 3   -> {} using {} lines", axis_value(&sum.output_point), sum.emitted_lines.len());
    let prod = emit_mul_gadget(&z, &z, &h)?;
    println!("z * z   -> {} using {} lines", axis_value(&prod.output_point), prod.emitted_lines.len());
    let neg = emit_neg_gadget(&z)?;
    println!("-z      -> {} using {} lines", axis_value(&neg.output_point), neg.emitted_lines.len());

    let slp = compile_polynomial(&p)?;
    println!("\nprogram for {p}:");
    for (i, ins) in slp.instructions.iter().enumerate() {
        println!("  r{i} = {ins}");
    }
    let build = emit_configuration(&slp, &k, 0)?;
    for t in &build.traces {
        let hs: Vec<String> = t.aux_params.iter().map(|h| h.to_string()).collect();
        println!("  {:?} {:?} -> r{}, heights [{}]", t.kind, t.inputs, t.output.unwrap(), hs.join(", "));
    }
    println!("result register at {}", axis_value(&build.register_points[slp.result]));
    let c = &build.configuration;
    println!("gadget configuration: {} lines, {} points", c.line_count(), c.points().len());
    Ok(())
}
