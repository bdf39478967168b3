//! The projective plane over a number field.
//!
//! Points and lines are homogeneous triples scaled so that the first nonzero
//! coordinate is 1. That form is unique, so equality and hashing work directly
//! on the stored coordinates.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numberfield::{NFElement, NumberField, Rational};

fn cross(u: &[NFElement; 3], v: &[NFElement; 3]) -> [NFElement; 3] {
    [
        &(&u[1] * &v[2]) - &(&u[2] * &v[1]),
        &(&u[2] * &v[0]) - &(&u[0] * &v[2]),
        &(&u[0] * &v[1]) - &(&u[1] * &v[0]),
    ]
}

fn dot(u: &[NFElement; 3], v: &[NFElement; 3]) -> NFElement {
    &(&(&u[0] * &v[0]) + &(&u[1] * &v[1])) + &(&u[2] * &v[2])
}

fn canonical(mut v: [NFElement; 3]) -> Result<[NFElement; 3]> {
    let k = v.iter().position(|c| !c.is_zero()).ok_or(Error::DivisionByZero)?;
    if !v[k].is_one() {
        let inv = v[k].inv()?;
        for c in v[k..].iter_mut() {
            *c = &*c * &inv;
        }
    }
    Ok(v)
}

macro_rules! homogeneous {
    ($name:ident) => {
        #[derive(Clone, PartialEq, Eq, Hash)]
        pub struct $name {
            coords: [NFElement; 3],
        }

        impl $name {
            /// Canonicalize an arbitrary nonzero triple.
            pub fn new(a: NFElement, b: NFElement, c: NFElement) -> Result<Self> {
                if !(a.same_field(&b) && b.same_field(&c)) {
                    return Err(Error::FieldMismatch);
                }
                Ok($name { coords: canonical([a, b, c])? })
            }

            pub fn from_rationals(field: &Arc<NumberField>, v: [Rational; 3]) -> Result<Self> {
                let [a, b, c] = v;
                Self::new(field.from_rational(a), field.from_rational(b), field.from_rational(c))
            }

            pub fn from_ints(field: &Arc<NumberField>, v: [i64; 3]) -> Self {
                Self::new(field.from_int(v[0]), field.from_int(v[1]), field.from_int(v[2]))
                    .expect("nonzero integer triple")
            }

            pub fn coords(&self) -> &[NFElement; 3] {
                &self.coords
            }

            pub fn field(&self) -> &Arc<NumberField> {
                self.coords[0].field()
            }

            /// All three coordinates are rational.
            pub fn is_rational(&self) -> bool {
                self.coords.iter().all(NFElement::is_rational)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "({} : {} : {})", self.coords[0], self.coords[1], self.coords[2])
            }
        }
    };
}

homogeneous!(ProjPoint);
homogeneous!(ProjLine);

impl ProjPoint {
    /// The affine point `(x, y)`, i.e. `(x : y : 1)`.
    pub fn affine(x: NFElement, y: NFElement) -> ProjPoint {
        let one = x.field().one();
        ProjPoint::new(x, y, one).expect("affine point is nonzero")
    }

    pub fn is_at_infinity(&self) -> bool {
        self.coords[2].is_zero()
    }

    /// Affine coordinates, or `None` at infinity.
    pub fn affine_coords(&self) -> Option<(NFElement, NFElement)> {
        if self.is_at_infinity() {
            return None;
        }
        let inv = self.coords[2].inv().ok()?;
        Some((&self.coords[0] * &inv, &self.coords[1] * &inv))
    }

    pub fn lies_on(&self, line: &ProjLine) -> bool {
        dot(&self.coords, &line.coords).is_zero()
    }
}

impl ProjLine {
    pub fn at_infinity(field: &Arc<NumberField>) -> ProjLine {
        ProjLine::from_ints(field, [0, 0, 1])
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        p.lies_on(self)
    }

    /// The point where this line meets the line at infinity.
    pub fn direction(&self) -> Result<ProjPoint> {
        meet(self, &ProjLine::at_infinity(self.field()))
    }
}

/// The line through two distinct points.
pub fn join(p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine> {
    if p == q {
        return Err(Error::DegenerateJoin);
    }
    let [a, b, c] = cross(&p.coords, &q.coords);
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(Error::DegenerateJoin);
    }
    ProjLine::new(a, b, c)
}

/// The intersection point of two distinct lines.
pub fn meet(l: &ProjLine, m: &ProjLine) -> Result<ProjPoint> {
    if l == m {
        return Err(Error::DegenerateMeet);
    }
    let [a, b, c] = cross(&l.coords, &m.coords);
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(Error::DegenerateMeet);
    }
    ProjPoint::new(a, b, c)
}

/// Exact test that the 3×3 determinant of the coordinates vanishes.
pub fn collinear(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> bool {
    dot(&p.coords, &cross(&q.coords, &r.coords)).is_zero()
}

/// The image of `d` under the projective map of the common line sending
/// `a, b, c` to `0, 1, ∞`.
///
/// With brackets `[u v]` taken relative to the line,
/// the value is `[d a][b c] / ([d c][b a])`, so `cross_ratio(0, 1, ∞, w) = w`.
pub fn cross_ratio(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint, d: &ProjPoint) -> Result<NFElement> {
    if a == b || a == c || b == c || a == d || b == d {
        return Err(Error::DegenerateQuadruple);
    }
    if d == c {
        return Err(Error::InfiniteCrossRatio);
    }
    if !collinear(a, b, c) || !collinear(a, b, d) {
        return Err(Error::NotCollinear);
    }
    let line = join(a, b)?;
    let k = line.coords.iter().position(|c| !c.is_zero()).unwrap();
    // line coordinate k is 1, so this is the scalar λ in u × v = λ·line
    let bracket = |u: &ProjPoint, v: &ProjPoint| cross(&u.coords, &v.coords)[k].clone();
    let num = &bracket(d, a) * &bracket(b, c);
    let den = &bracket(d, c) * &bracket(b, a);
    num.try_div(&den)
}

/// Apply a 3×3 matrix (row-major) to a point.
pub fn transform(m: &[[NFElement; 3]; 3], p: &ProjPoint) -> Result<ProjPoint> {
    let [a, b, c] = [0, 1, 2].map(|i| dot(&m[i], &p.coords));
    ProjPoint::new(a, b, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::Poly;

    fn field() -> Arc<NumberField> {
        NumberField::new(&Poly::from_ints(&[-2, 0, 1])).unwrap()
    }

    #[test]
    fn join_meet_examples() {
        let k = field();
        let p = |v| ProjPoint::from_ints(&k, v);
        let l = |v| ProjLine::from_ints(&k, v);
        assert_eq!(join(&p([0, 0, 1]), &p([1, 0, 1])).unwrap(), l([0, 1, 0]));
        assert_eq!(meet(&l([0, 1, 0]), &l([1, 0, 0])).unwrap(), p([0, 0, 1]));
        assert_eq!(join(&p([0, 0, 1]), &p([0, 1, 0])).unwrap(), l([1, 0, 0]));
        assert_eq!(join(&p([1, 2, 3]), &p([2, 4, 6])), Err(Error::DegenerateJoin));
        assert_eq!(meet(&l([1, 2, 3]), &l([1, 2, 3])), Err(Error::DegenerateMeet));
    }

    #[test]
    fn collinearity_examples() {
        let k = field();
        let p = |v| ProjPoint::from_ints(&k, v);
        assert!(collinear(&p([0, 0, 1]), &p([1, 0, 1]), &p([1, 0, 0])));
        assert!(!collinear(&p([0, 0, 1]), &p([1, 0, 1]), &p([0, 1, 1])));
        let z = ProjPoint::affine(k.gen(), k.zero());
        assert!(collinear(&p([0, 0, 1]), &z, &p([1, 0, 0])));
    }

    #[test]
    fn cross_ratio_examples() {
        let k = field();
        let p = |v| ProjPoint::from_ints(&k, v);
        let (zero, one, inf) = (p([0, 0, 1]), p([1, 0, 1]), p([1, 0, 0]));
        let z = ProjPoint::affine(k.gen(), k.zero());
        assert_eq!(cross_ratio(&zero, &one, &inf, &z).unwrap(), k.gen());
        assert_eq!(cross_ratio(&zero, &one, &inf, &p([-1, 0, 1])).unwrap(), k.from_int(-1));
        let half = Rational::new(1.into(), 2.into());
        let half_pt = ProjPoint::affine(k.from_rational(half.clone()), k.zero());
        assert_eq!(cross_ratio(&zero, &one, &inf, &half_pt).unwrap(), k.from_rational(half));
    }

    #[test]
    fn cross_ratio_errors() {
        let k = field();
        let p = |v| ProjPoint::from_ints(&k, v);
        let (zero, one, inf) = (p([0, 0, 1]), p([1, 0, 1]), p([1, 0, 0]));
        assert_eq!(cross_ratio(&zero, &one, &inf, &inf), Err(Error::InfiniteCrossRatio));
        assert_eq!(cross_ratio(&zero, &one, &inf, &p([0, 1, 1])), Err(Error::NotCollinear));
        assert_eq!(cross_ratio(&zero, &zero, &inf, &one), Err(Error::DegenerateQuadruple));
        assert_eq!(cross_ratio(&zero, &one, &inf, &one), Err(Error::DegenerateQuadruple));
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let k = field();
        let x = k.gen();
        let q = ProjPoint::new(&x + &k.one(), x.clone(), k.from_int(3)).unwrap();
        assert!(q.coords()[0].is_one());
        let again = ProjPoint::new(q.coords()[0].clone(), q.coords()[1].clone(), q.coords()[2].clone()).unwrap();
        assert_eq!(q, again);
        let scaled = ProjPoint::new(&q.coords()[0] * &x, &q.coords()[1] * &x, &q.coords()[2] * &x).unwrap();
        assert_eq!(q, scaled);
    }
}
