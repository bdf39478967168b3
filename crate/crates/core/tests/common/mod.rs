#![allow(dead_code)]

use std::sync::Arc;

use galconf::numberfield::{NFElement, NumberField, Poly, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const POLYS: [&str; 4] = ["x^2 - 2", "x^2 - x - 1", "x^3 - 2", "x^4 - x - 1"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn field(p: &str) -> Arc<NumberField> {
    NumberField::new(&Poly::parse(p).unwrap()).unwrap()
}

pub fn rational(rng: &mut ChaCha8Rng) -> Rational {
    let n: i64 = rng.gen_range(-50..=50);
    let d: i64 = rng.gen_range(1..=20);
    Rational::new(n.into(), d.into())
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let q = rational(rng);
        if q != Rational::from_integer(0.into()) {
            return q;
        }
    }
}

pub fn element(k: &Arc<NumberField>, rng: &mut ChaCha8Rng) -> NFElement {
    k.element((0..k.degree()).map(|_| rational(rng)).collect()).unwrap()
}

/// The same value recomputed from the affine x-coordinate `(x : 0 : 1)`.
pub fn axis_x(p: &galconf::projgeom::ProjPoint) -> Option<NFElement> {
    let c = p.coords();
    if !c[1].is_zero() || c[2].is_zero() {
        return None;
    }
    c[0].try_div(&c[2]).ok()
}
