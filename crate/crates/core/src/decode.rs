//! Recovering `z` from a configuration, and certifying that the conjugate
//! configurations decode to distinct numbers.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::configuration::Configuration;
use crate::error::{Error, Result};
use crate::numberfield::{embed, isolate_roots, Disc, EmbeddingApprox, NFElement, Poly};
use crate::pipeline::{build, PipelineConfig};
use crate::projgeom::{collinear, cross_ratio, join, ProjPoint};

/// Indices of the four points with the most lines through them, in order.
/// Marks are ignored; the ladder must be strict.
pub fn top_four(c: &Configuration) -> Result<[usize; 4]> {
    let v = c.valences().entries;
    if v.len() < 4 {
        return Err(Error::AmbiguousValences(format!("only {} points", v.len())));
    }
    for i in 0..4 {
        if let Some(next) = v.get(i + 1) {
            if next.1 >= v[i].1 {
                return Err(Error::AmbiguousValences(format!(
                    "valence {} at rank {} ties with rank {}",
                    v[i].1,
                    i + 1,
                    i + 2
                )));
            }
        }
    }
    Ok([v[0].0, v[1].0, v[2].0, v[3].0])
}

/// Cross-ratio of the four highest-valence points.
pub fn decode(c: &Configuration) -> Result<NFElement> {
    let [a, b, cc, d] = top_four(c)?;
    let p = c.points();
    if !collinear(&p[a], &p[b], &p[cc]) || !collinear(&p[a], &p[b], &p[d]) {
        return Err(Error::NotCollinear);
    }
    cross_ratio(&p[a], &p[b], &p[cc], &p[d])
}

fn embed_triple(p: &ProjPoint, e: &EmbeddingApprox) -> [Disc; 3] {
    [0, 1, 2].map(|i| embed(&p.coords()[i], e))
}

fn disc_cross(u: &[Disc; 3], v: &[Disc; 3], k: usize) -> Disc {
    let (i, j) = ((k + 1) % 3, (k + 2) % 3);
    u[i].mul(&v[j]).sub(&u[j].mul(&v[i]))
}

/// The cross-ratio of four collinear points computed after embedding their
/// coordinates, with the same bracket convention as the exact version.
pub fn numeric_cross_ratio(q: [&ProjPoint; 4], e: &EmbeddingApprox) -> Result<Disc> {
    let line = join(q[0], q[1])?;
    let k = line.coords().iter().position(|c| !c.is_zero()).unwrap();
    let [a, b, c, d] = q.map(|p| embed_triple(p, e));
    let num = disc_cross(&d, &a, k).mul(&disc_cross(&b, &c, k));
    let den = disc_cross(&d, &c, k).mul(&disc_cross(&b, &a, k));
    num.div(&den).ok_or(Error::PrecisionExhausted { requested: e.radius, achieved: den.radius })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmbeddingValue {
    pub root_index: usize,
    pub real: bool,
    pub root: Disc,
    /// Image of the decoded element.
    pub value: Disc,
    /// Cross-ratio of the embedded top four points.
    pub numeric_cross_ratio: Disc,
    pub equivariant: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub v: u32,
    pub poly: String,
    pub seed: i64,
    pub precision: f64,
    pub lines: usize,
    pub points: usize,
    /// Valences of the five highest points.
    pub valence_ladder: Vec<usize>,
    pub decoded: Vec<crate::io::RationalJson>,
    pub decoded_is_gen: bool,
    pub embeddings: Vec<EmbeddingValue>,
    pub pairwise_disjoint: bool,
    pub statement: String,
}

pub const SEPARATION_STATEMENT: &str = "for every pair of embeddings i != j the decoded invariants differ";

const REFINEMENTS: usize = 4;

/// Build, decode, and embed; certify that the images of the decoded value are
/// pairwise disjoint across all embeddings.
pub fn separation_certificate(cfg: &PipelineConfig) -> Result<Certificate> {
    let b = build(cfg)?;
    let c = &b.configuration;
    let w = decode(c)?;
    let top = top_four(c)?;
    let quad = top.map(|i| &c.points()[i]);

    let mut precision = cfg.precision;
    let mut last = None;
    for _ in 0..REFINEMENTS {
        match embeddings_at(&cfg.poly, &w, quad, precision) {
            Ok(values) => {
                let disjoint = (0..values.len())
                    .all(|i| (i + 1..values.len()).all(|j| values[i].value.disjoint(&values[j].value)));
                if disjoint {
                    let ladder = c.valences().entries.iter().take(5).map(|e| e.1).collect();
                    return Ok(Certificate {
                        v: 1,
                        poly: cfg.poly.to_string(),
                        seed: cfg.seed,
                        precision,
                        lines: c.line_count(),
                        points: c.points().len(),
                        valence_ladder: ladder,
                        decoded: crate::io::element_json(&w),
                        decoded_is_gen: w == b.field.gen(),
                        embeddings: values,
                        pairwise_disjoint: true,
                        statement: SEPARATION_STATEMENT.to_string(),
                    });
                }
                last = Some(Error::PrecisionExhausted { requested: precision, achieved: precision });
            }
            Err(e @ Error::PrecisionExhausted { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
        precision *= 1e-3;
    }
    Err(last.unwrap())
}

fn embeddings_at(p: &Poly, w: &NFElement, quad: [&ProjPoint; 4], precision: f64) -> Result<Vec<EmbeddingValue>> {
    isolate_roots(p, precision)?
        .into_iter()
        .map(|e| {
            let value = embed(w, &e);
            let numeric = numeric_cross_ratio(quad, &e)?;
            Ok(EmbeddingValue {
                root_index: e.root_index,
                real: e.real,
                root: e.disc(),
                equivariant: !value.disjoint(&numeric),
                value,
                numeric_cross_ratio: numeric,
            })
        })
        .collect()
}

fn complex_str(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{:.12}", z.re)
    } else {
        format!("{:.12} {} {:.12}i", z.re, if z.im < 0.0 { '-' } else { '+' }, z.im.abs())
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "separation certificate for {} (seed {})", self.poly, self.seed)?;
        writeln!(f, "  lines {}, points {}, valence ladder {:?}", self.lines, self.points, self.valence_ladder)?;
        writeln!(f, "  decoded element is the generator: {}", self.decoded_is_gen)?;
        for e in &self.embeddings {
            writeln!(
                f,
                "  embedding {}: {} (radius {:.1e}){}",
                e.root_index,
                complex_str(e.value.center),
                e.value.radius,
                if e.equivariant { "" } else { "  [cross-ratio mismatch]" }
            )?;
        }
        writeln!(f, "  discs pairwise disjoint: {}", self.pairwise_disjoint)?;
        write!(f, "  {}", self.statement)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::derive_points;
    use crate::numberfield::NumberField;
    use crate::projgeom::ProjLine;

    #[test]
    fn round_trip_sqrt_two() {
        let b = build(&PipelineConfig::parse("x^2 - 2").unwrap()).unwrap();
        assert_eq!(decode(&b.configuration).unwrap(), b.field.gen());
        let mut erased = b.configuration.clone();
        erased.marks = None;
        assert_eq!(decode(&erased).unwrap(), b.field.gen());
    }

    #[test]
    fn concurrent_pencils_tie() {
        let k = NumberField::new(&Poly::from_ints(&[-2, 0, 1])).unwrap();
        let lines = [[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, -1, 0]].map(|v| ProjLine::from_ints(&k, v));
        let mut c = derive_points(&k, &lines).unwrap();
        for v in [[1, 0, -1], [0, 1, -2], [1, 1, -3], [1, -1, 1]] {
            c.add_line(ProjLine::from_ints(&k, v)).unwrap();
        }
        assert!(matches!(decode(&c), Err(Error::AmbiguousValences(_))));
        let three = derive_points(&k, &lines[..3]).unwrap();
        assert!(matches!(decode(&three), Err(Error::AmbiguousValences(_))));
    }

    #[test]
    fn certificate_for_golden_ratio() {
        let cert = separation_certificate(&PipelineConfig::parse("x^2 - x - 1").unwrap()).unwrap();
        assert!(cert.decoded_is_gen && cert.pairwise_disjoint);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((cert.embeddings[0].value.center.re - phi).abs() < 1e-9);
        assert!((cert.embeddings[1].value.center.re - (1.0 - phi)).abs() < 1e-9);
        assert!(cert.embeddings.iter().all(|e| e.equivariant));
    }

    #[test]
    fn certificate_rejects_degree_one() {
        let err = separation_certificate(&PipelineConfig::parse("x + 3").unwrap()).unwrap_err();
        assert_eq!(err, Error::TrivialField(1));
    }
}
