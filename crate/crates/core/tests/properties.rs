mod common;

use galconf::cover::{ample_certificate, assign_branch_divisors, compute_M, select_m_for, PicClass};
use galconf::numberfield::{embed, isolate_roots, NumberField, Poly, Rational};
use galconf::pipeline::{build, PipelineConfig};
use galconf::projgeom::{join, meet, collinear, ProjPoint};
use galconf::slp::{compile_polynomial, emit_configuration};
use proptest::prelude::*;

use common::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn coeffs(n: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-40i64..=40, 1i64..=12), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(a in coeffs(3), b in coeffs(3), c in coeffs(3)) {
        let k = field("x^3 - x - 1");
        let el = |v: &[(i64, i64)]| k.element(v.iter().map(|&(n, d)| q(n, d)).collect()).unwrap();
        let (a, b, c) = (el(&a), el(&b), el(&c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn embedding_is_multiplicative(a in coeffs(2), b in coeffs(2)) {
        let k = field("x^2 - x - 1");
        let el = |v: &[(i64, i64)]| k.element(v.iter().map(|&(n, d)| q(n, d)).collect()).unwrap();
        let (a, b) = (el(&a), el(&b));
        for e in isolate_roots(k.modulus(), 1e-12).unwrap() {
            let lhs = embed(&(&a * &b), &e);
            let rhs = embed(&a, &e).mul(&embed(&b, &e));
            prop_assert!(rhs.widen(1e-9).contains(&lhs));
            if !a.is_zero() {
                prop_assert!(embed(&a, &e).excludes_zero());
            }
        }
    }

    #[test]
    fn join_meet_duality(p in coeffs(6)) {
        let k = field("x^2 - 2");
        let pt = |i: usize| ProjPoint::affine(
            &k.from_rational(q(p[i].0, p[i].1)) + &k.gen().scale(&q(1, 1 + i as i64)),
            k.from_rational(q(p[i + 1].0, p[i + 1].1)),
        );
        let (a, b, c) = (pt(0), pt(2), pt(4));
        prop_assume!(!collinear(&a, &b, &c));
        prop_assert_eq!(meet(&join(&a, &b).unwrap(), &join(&a, &c).unwrap()).unwrap(), a);
    }

    #[test]
    fn ampleness_is_monotone(h in 0i64..40, b in prop::collection::vec(0i64..5, 1..6), k in 0i64..20) {
        let cls = PicClass { h, b: b.clone() };
        let bigger = PicClass { h: h + k, b };
        if ample_certificate(&cls).is_certified() {
            prop_assert!(ample_certificate(&bigger).is_certified());
        }
    }

    #[test]
    fn selected_m_is_valid(lines in 2usize..200, extra in 0usize..400) {
        let s = 2 * (lines + extra);
        let m = select_m_for(lines, s);
        prop_assert_eq!(m[0], 0);
        prop_assert_eq!(m[4], lines as u64);
        let x = (0..8u8).filter(|&g| m[g as usize] % 2 == 1).fold(0u8, |a, g| a ^ g);
        prop_assert_eq!(x, 0);
    }
}

#[test]
fn register_values_match_points() {
    for p in POLYS {
        let poly = Poly::parse(p).unwrap();
        let k = NumberField::new(&poly).unwrap();
        let slp = compile_polynomial(&poly).unwrap();
        let values = slp.evaluate(&k.gen());
        let g = emit_configuration(&slp, &k, 0).unwrap();
        for (v, pt) in values.iter().zip(&g.register_points) {
            assert_eq!(axis_x(pt).as_ref(), Some(v), "{p}");
        }
        assert!(values[slp.result].is_zero());
        for t in &g.traces {
            assert!(t.aux_params.iter().all(|h| *h != q(0, 1)));
        }
    }
}

#[test]
fn pipeline_invariants_for_several_seeds() {
    for seed in [0, 1, 7, -3] {
        let b = build(&PipelineConfig::parse("x^2 - x - 1").unwrap().with_seed(seed)).unwrap();
        let c = &b.configuration;
        assert!(c.verify_incidence());
        c.check_pair_coverage().unwrap();
        let pts = c.points();
        let unique: std::collections::HashSet<_> = pts.iter().collect();
        assert_eq!(unique.len(), pts.len());
        let lines: std::collections::HashSet<_> = c.lines().iter().collect();
        assert_eq!(lines.len(), c.line_count());
        // every line pair is counted at exactly one point
        let pairs: usize = (0..pts.len()).map(|i| c.valence(i) * (c.valence(i) - 1) / 2).sum();
        assert_eq!(pairs, c.line_count() * (c.line_count() - 1) / 2);
        assert!((0..pts.len()).all(|i| c.valence(i) >= 2));
    }
}

#[test]
fn proper_transform_matches_valences() {
    let c = build(&PipelineConfig::parse("x^3 - 2").unwrap()).unwrap().configuration;
    let s: usize = (0..c.points().len()).map(|i| c.valence(i)).sum();
    let m = select_m_for(c.line_count(), s);
    let b = assign_branch_divisors(&c, &m).unwrap();
    let d_alpha = &b.d[4];
    let h = PicClass::hyperplane_multiple(1, c.points().len());
    assert_eq!(d_alpha.dot(&h), c.line_count() as i64);
    let report = c.valences();
    for (q, e) in report.entries {
        let mut eq = PicClass::zero(c.points().len());
        eq.b[q] = 1;
        // eq is the class -E_q
        assert_eq!(-d_alpha.dot(&eq), e as i64);
    }
    let ms = compute_M(&b).unwrap();
    assert!(ms[0].is_zero());
    // linearity in m on the H part: add 2 to every entry outside 0 and α
    let mut m2 = m;
    for g in [1, 2, 3, 5, 6, 7] {
        m2[g] += 2;
    }
    let ms2 = compute_M(&assign_branch_divisors(&c, &m2).unwrap()).unwrap();
    for chi in 0..8u8 {
        let hits = [1u8, 2, 3, 5, 6, 7].iter().filter(|&&g| (chi & g).count_ones() % 2 == 1).count() as i64;
        assert_eq!(ms2[chi as usize].h - ms[chi as usize].h, hits);
        assert_eq!(ms2[chi as usize].b, ms[chi as usize].b);
    }
}

#[test]
fn doubling_needs_even_line_count() {
    for lines in [58usize, 61] {
        let mut m = select_m_for(lines, 3 * lines);
        for g in [1, 2, 3, 5, 6, 7] {
            m[g] *= 2;
        }
        let x = (0..8u8).filter(|&g| m[g as usize] % 2 == 1).fold(0u8, |a, g| a ^ g);
        assert_eq!(x == 0, lines % 2 == 0);
    }
}
