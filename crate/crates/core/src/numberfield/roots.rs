//! Certified complex root isolation and disc arithmetic.
//!
//! Roots are approximated with Aberth–Ehrlich iteration in `f64`, then each
//! approximation is certified exactly: the centers are converted to exact
//! rationals and the Weierstrass corrections `W_i = p(z_i) / ∏_{j≠i}(z_i − z_j)`
//! are evaluated in exact arithmetic. The discs `D(z_i, n·|W_i|)` cover all
//! roots and every connected component of their union holds as many roots as
//! discs, so pairwise disjoint discs isolate exactly one root each.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::field::NFElement;
use super::poly::Poly;
use super::Rational;
use crate::error::{Error, Result};

const EPS: f64 = f64::EPSILON;

/// A closed disc in ℂ, used as an outward-rounded complex interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Disc {
    pub center: Complex64,
    pub radius: f64,
}

fn up(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v * (1.0 + 4.0 * EPS) + f64::MIN_POSITIVE
    }
}

impl Disc {
    pub fn point(center: Complex64) -> Disc {
        Disc { center, radius: 0.0 }
    }

    /// Smallest disc guaranteed to contain the exact rational `q`.
    pub fn from_rational(q: &Rational) -> Disc {
        let c = q.to_f64().unwrap_or(f64::NAN);
        let err = match Rational::from_float(c) {
            Some(exact) => rational_upper(&(q - exact).abs_ref()),
            None => f64::INFINITY,
        };
        Disc { center: Complex64::new(c, 0.0), radius: err }
    }

    pub fn add(&self, other: &Disc) -> Disc {
        let center = self.center + other.center;
        let err = if self.center.im == 0.0 && other.center.im == 0.0 && exact_sum(self.center.re, other.center.re) {
            0.0
        } else {
            EPS * center.norm()
        };
        Disc { center, radius: up(self.radius + other.radius + err) }
    }

    pub fn neg(&self) -> Disc {
        Disc { center: -self.center, radius: self.radius }
    }

    pub fn sub(&self, other: &Disc) -> Disc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Disc) -> Disc {
        let center = self.center * other.center;
        let a = self.center.norm();
        let b = other.center.norm();
        let err = 4.0 * EPS * a * b;
        Disc { center, radius: up(a * other.radius + b * self.radius + self.radius * other.radius + err) }
    }

    /// Reciprocal; `None` when the disc contains zero.
    pub fn recip(&self) -> Option<Disc> {
        let m = self.center.norm();
        let m_low = m * (1.0 - 4.0 * EPS);
        if m_low <= self.radius {
            return None;
        }
        let center = self.center.inv();
        let err = 4.0 * EPS * center.norm();
        let radius = self.radius / (m_low * (m_low - self.radius));
        Some(Disc { center, radius: up(radius + err) })
    }

    pub fn div(&self, other: &Disc) -> Option<Disc> {
        Some(self.mul(&other.recip()?))
    }

    pub fn contains_point(&self, z: Complex64) -> bool {
        (z - self.center).norm() <= up(self.radius)
    }

    /// True if `other` lies entirely inside `self`.
    pub fn contains(&self, other: &Disc) -> bool {
        (other.center - self.center).norm() + other.radius <= up(self.radius)
    }

    pub fn widen(&self, slack: f64) -> Disc {
        Disc { center: self.center, radius: up(self.radius + slack) }
    }

    pub fn disjoint(&self, other: &Disc) -> bool {
        let d = (self.center - other.center).norm() * (1.0 - 4.0 * EPS);
        d > self.radius + other.radius
    }

    pub fn excludes_zero(&self) -> bool {
        self.center.norm() * (1.0 - 4.0 * EPS) > self.radius
    }

    pub fn intersects_real_axis(&self) -> bool {
        self.center.im.abs() <= self.radius
    }
}

fn exact_sum(a: f64, b: f64) -> bool {
    let s = a + b;
    s - a == b && s - b == a && s.is_finite()
}

trait AbsRef {
    fn abs_ref(&self) -> Rational;
}

impl AbsRef for Rational {
    fn abs_ref(&self) -> Rational {
        if self < &Rational::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

/// An `f64` upper bound for a nonnegative rational.
fn rational_upper(q: &Rational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let v = q.to_f64().unwrap_or(f64::INFINITY);
    if v == 0.0 {
        f64::MIN_POSITIVE
    } else {
        up(v)
    }
}

/// One certified embedding `K → ℂ`, given by an isolating disc of a root.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingApprox {
    pub root_index: usize,
    pub center: Complex64,
    pub radius: f64,
    /// The isolated root is certified real: the disc is symmetric about the
    /// real axis and holds exactly one root of a real polynomial.
    pub real: bool,
}

impl EmbeddingApprox {
    pub fn disc(&self) -> Disc {
        Disc { center: self.center, radius: self.radius }
    }
}

#[derive(Clone, Debug)]
struct CRat {
    re: Rational,
    im: Rational,
}

impl CRat {
    fn from_c64(z: Complex64) -> CRat {
        CRat {
            re: Rational::from_float(z.re).expect("finite root approximation"),
            im: Rational::from_float(z.im).expect("finite root approximation"),
        }
    }
    fn mul(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn sub(&self, o: &CRat) -> CRat {
        CRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

fn eval_exact(p: &Poly, z: &CRat) -> CRat {
    let mut acc = CRat { re: Rational::zero(), im: Rational::zero() };
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z);
        acc.re += c;
    }
    acc
}

fn eval_f64(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn aberth(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lc = coeffs[n];
    let bound = 1.0 + coeffs[..n].iter().map(|c| (c / lc).abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(bound, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..1000 {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = eval_f64(coeffs, z[k]);
            if p == Complex64::zero() {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if w.is_finite() {
                z[k] -= w;
                max_step = max_step.max(w.norm() / z[k].norm().max(1.0));
            }
        }
        if max_step < 1e-17 {
            break;
        }
    }
    // Newton polish
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval_f64(coeffs, *zk);
            let step = p / dp;
            if step.is_finite() {
                *zk -= step;
            }
        }
    }
    z
}

/// Order roots: real roots by decreasing value, then complex roots by
/// decreasing real part with the upper half-plane first.
fn sort_roots(z: &mut [Complex64]) {
    z.sort_by(|a, b| {
        let ra = a.im == 0.0;
        let rb = b.im == 0.0;
        rb.cmp(&ra)
            .then(b.re.partial_cmp(&a.re).unwrap())
            .then(b.im.partial_cmp(&a.im).unwrap())
    });
}

/// Isolate every root of the squarefree part of `p` in a certified disc of
/// radius ≤ `precision`.
pub fn isolate_roots(p: &Poly, precision: f64) -> Result<Vec<EmbeddingApprox>> {
    let q = p.squarefree();
    let n = match q.degree() {
        None | Some(0) => return Ok(Vec::new()),
        Some(n) => n,
    };
    let coeffs: Vec<f64> = q.coeffs().iter().map(|c| c.to_f64().unwrap()).collect();
    let mut z = if n == 1 { vec![Complex64::new(-coeffs[0] / coeffs[1], 0.0)] } else { aberth(&coeffs) };

    // snap near-real roots onto the axis and pair up conjugates
    let scale = z.iter().map(|r| r.norm()).fold(1.0, f64::max);
    for r in z.iter_mut() {
        if r.im.abs() < 1e-7 * scale {
            r.im = 0.0;
        }
    }
    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] || z[i].im == 0.0 {
            continue;
        }
        let partner = (0..n)
            .filter(|&j| j != i && !used[j] && z[j].im != 0.0)
            .min_by(|&a, &b| {
                (z[a] - z[i].conj()).norm().partial_cmp(&(z[b] - z[i].conj()).norm()).unwrap()
            });
        if let Some(j) = partner {
            let avg = (z[i] + z[j].conj()) * 0.5;
            z[i] = avg;
            z[j] = avg.conj();
            used[i] = true;
            used[j] = true;
        }
    }
    sort_roots(&mut z);

    let exact: Vec<CRat> = z.iter().map(|&c| CRat::from_c64(c)).collect();
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let num = eval_exact(&q, &exact[i]).norm_sqr();
        let radius = if num.is_zero() {
            0.0
        } else {
            let mut den = Rational::from_integer(1.into());
            for j in (0..n).filter(|&j| j != i) {
                den *= exact[i].sub(&exact[j]).norm_sqr();
            }
            if den.is_zero() {
                f64::INFINITY
            } else {
                let w2 = rational_upper(&(num / den));
                up(n as f64 * up(w2.sqrt()))
            }
        };
        radii.push(radius);
    }
    let discs: Vec<EmbeddingApprox> = (0..n)
        .map(|i| EmbeddingApprox { root_index: i, center: z[i], radius: radii[i], real: false })
        .collect();

    let worst = radii.iter().cloned().fold(0.0, f64::max);
    if worst > precision || !worst.is_finite() {
        return Err(Error::PrecisionExhausted { requested: precision, achieved: worst });
    }
    for i in 0..n {
        for j in i + 1..n {
            if !discs[i].disc().disjoint(&discs[j].disc()) {
                return Err(Error::PrecisionExhausted { requested: precision, achieved: worst });
            }
        }
    }
    Ok(discs
        .into_iter()
        .map(|mut e| {
            e.real = e.center.im == 0.0;
            e
        })
        .collect())
}

/// Image of `a` under the embedding `e`, as a disc guaranteed to contain it.
pub fn embed(a: &NFElement, e: &EmbeddingApprox) -> Disc {
    embed_poly(a.coeffs(), &e.disc())
}

/// Evaluate a rational coefficient vector on a disc with outward rounding.
pub fn embed_poly(coeffs: &[Rational], x: &Disc) -> Disc {
    let last = coeffs.iter().rposition(|c| !c.is_zero());
    let Some(last) = last else { return Disc::point(Complex64::zero()) };
    let mut acc = Disc::from_rational(&coeffs[last]);
    for c in coeffs[..last].iter().rev() {
        acc = acc.mul(x);
        if !c.is_zero() {
            acc = acc.add(&Disc::from_rational(c));
        }
    }
    acc
}
