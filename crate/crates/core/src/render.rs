//! SVG pictures of a configuration under one embedding of its field.

use std::fmt::Write;

use crate::configuration::Configuration;
use crate::error::{Error, Result};
use crate::numberfield::{embed, isolate_roots, EmbeddingApprox, NFElement};

const SIZE: f64 = 800.0;
const MARGIN: f64 = 40.0;

#[derive(Clone, Debug)]
pub struct Rendering {
    pub svg: String,
    pub warnings: Vec<String>,
}

fn real_value(a: &NFElement, e: &EmbeddingApprox) -> Option<f64> {
    let d = embed(a, e);
    (d.center.im.abs() <= d.radius).then_some(d.center.re)
}

/// Real coordinates of a triple, if its image is real under `e`.
fn real_triple(c: &[NFElement; 3], e: &EmbeddingApprox, complex: bool) -> Option<[f64; 3]> {
    if complex && !c.iter().all(NFElement::is_rational) {
        return None;
    }
    Some([real_value(&c[0], e)?, real_value(&c[1], e)?, real_value(&c[2], e)?])
}

#[derive(Clone, Copy, Debug)]
struct Box2 {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

fn quantile(v: &mut [f64], q: f64) -> f64 {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v[((v.len() - 1) as f64 * q).round() as usize]
}

fn bounding_box(pts: &[(f64, f64)], must: &[(f64, f64)]) -> Box2 {
    let mut xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let mut ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let (mut x0, mut x1, mut y0, mut y1) = if xs.is_empty() {
        (-1.0, 1.0, -1.0, 1.0)
    } else {
        (quantile(&mut xs, 0.1), quantile(&mut xs, 0.9), quantile(&mut ys, 0.1), quantile(&mut ys, 0.9))
    };
    for &(x, y) in must {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let w = (x1 - x0).max(y1 - y0).max(1.0) * 0.6;
    let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
    Box2 { x0: cx - w, x1: cx + w, y0: cy - w, y1: cy + w }
}

/// The segment of `ax + by + c = 0` inside the box.
fn clip(l: [f64; 3], b: Box2) -> Option<((f64, f64), (f64, f64))> {
    let [a, bb, c] = l;
    let mut hits = Vec::new();
    if bb.abs() > 1e-12 {
        for x in [b.x0, b.x1] {
            let y = -(a * x + c) / bb;
            if y >= b.y0 && y <= b.y1 {
                hits.push((x, y));
            }
        }
    }
    if a.abs() > 1e-12 {
        for y in [b.y0, b.y1] {
            let x = -(bb * y + c) / a;
            if x >= b.x0 && x <= b.x1 {
                hits.push((x, y));
            }
        }
    }
    hits.sort_by(|p, q| p.partial_cmp(q).unwrap());
    hits.dedup_by(|p, q| (p.0 - q.0).abs() < 1e-9 && (p.1 - q.1).abs() < 1e-9);
    (hits.len() >= 2).then(|| (hits[0], hits[hits.len() - 1]))
}

/// Draw the configuration under embedding `index`. For a complex embedding
/// only lines and points with rational coordinates are drawn.
pub fn render(c: &Configuration, index: usize, precision: f64) -> Result<Rendering> {
    let roots = isolate_roots(c.field().modulus(), precision)?;
    let e = roots
        .get(index)
        .ok_or_else(|| Error::Schema(format!("embedding {index} out of range 0..{}", roots.len())))?;
    let complex = !e.real;
    let mut warnings = Vec::new();
    if complex {
        warnings.push(format!("embedding {index} is not real; drawing only rational lines and points"));
    }

    let mut pts = Vec::new();
    for (i, p) in c.points().iter().enumerate() {
        if let Some([x, y, w]) = real_triple(p.coords(), e, complex) {
            if w != 0.0 {
                pts.push((i, x / w, y / w));
            }
        }
    }
    let marks = c.marks;
    let mark_xy = |idx: usize| pts.iter().find(|p| p.0 == idx).map(|p| (p.1, p.2));
    let must: Vec<(f64, f64)> = marks
        .map(|m| [m.zero, m.one, m.z].iter().filter_map(|&i| mark_xy(i)).collect())
        .unwrap_or_default();
    let plain: Vec<(f64, f64)> = pts.iter().map(|p| (p.1, p.2)).collect();
    let bx = bounding_box(&plain, &must);
    let scale = (SIZE - 2.0 * MARGIN) / (bx.x1 - bx.x0);
    let sx = |x: f64| MARGIN + (x - bx.x0) * scale;
    let sy = |y: f64| SIZE - MARGIN - (y - bx.y0) * scale;

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    writeln!(svg, "  <title>{} under embedding {index}</title>", c.field().modulus()).unwrap();
    writeln!(svg, r##"  <rect width="100%" height="100%" fill="#ffffff"/>"##).unwrap();
    writeln!(svg, r##"  <g stroke="#3a5f8a" stroke-width="0.8" fill="none">"##).unwrap();
    let mut skipped = 0;
    for l in c.lines() {
        match real_triple(l.coords(), e, complex).and_then(|t| clip(t, bx)) {
            Some(((x0, y0), (x1, y1))) => {
                writeln!(svg, r#"    <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#, sx(x0), sy(y0), sx(x1), sy(y1))
                    .unwrap();
            }
            None => skipped += 1,
        }
    }
    writeln!(svg, "  </g>").unwrap();
    if complex && skipped > 0 {
        warnings.push(format!("{skipped} lines not drawn"));
    }
    writeln!(svg, r##"  <g fill="#202020">"##).unwrap();
    for &(i, x, y) in &pts {
        if x < bx.x0 || x > bx.x1 || y < bx.y0 || y > bx.y1 {
            continue;
        }
        let r = 1.0 + 0.35 * c.valence(i) as f64;
        writeln!(svg, r#"    <circle cx="{:.2}" cy="{:.2}" r="{r:.2}"/>"#, sx(x), sy(y)).unwrap();
    }
    writeln!(svg, "  </g>").unwrap();
    if let Some(m) = marks {
        writeln!(svg, r##"  <g fill="#b03030" font-family="sans-serif" font-size="16">"##).unwrap();
        for (idx, label) in [(m.zero, "0"), (m.one, "1"), (m.z, "z")] {
            if let Some((x, y)) = mark_xy(idx) {
                writeln!(svg, r#"    <text x="{:.2}" y="{:.2}">{label}</text>"#, sx(x) + 4.0, sy(y) - 6.0).unwrap();
            }
        }
        writeln!(svg, r#"    <text x="{:.2}" y="{:.2}">∞ →</text>"#, SIZE - MARGIN - 10.0, sy(0.0) - 6.0).unwrap();
        writeln!(svg, "  </g>").unwrap();
    }
    writeln!(svg, "</svg>").unwrap();
    Ok(Rendering { svg, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clip_diagonal() {
        let b = Box2 { x0: -1.0, x1: 1.0, y0: -1.0, y1: 1.0 };
        let ((x0, y0), (x1, y1)) = clip([1.0, -1.0, 0.0], b).unwrap();
        assert_eq!((x0, y0, x1, y1), (-1.0, -1.0, 1.0, 1.0));
        assert!(clip([1.0, 0.0, -5.0], b).is_none());
    }
}
