use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::poly::Poly;
use super::Rational;
use crate::error::{Error, Result};

/// The abstract field ℚ[x]/(modulus).
#[derive(Debug, PartialEq, Eq)]
pub struct NumberField {
    modulus: Poly,
}

impl NumberField {
    /// Build the field from any polynomial of degree ≥ 2; it is made monic.
    ///
    /// Irreducibility is not checked here (see [`check_irreducible`]); a
    /// reducible modulus is detected lazily when an inverse hits a zero divisor.
    ///
    /// [`check_irreducible`]: super::check_irreducible
    pub fn new(modulus: &Poly) -> Result<Arc<NumberField>> {
        let deg = modulus.degree().unwrap_or(0);
        if deg < 2 {
            return Err(Error::TrivialField(deg));
        }
        Ok(Arc::new(NumberField { modulus: modulus.monic() }))
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn zero(self: &Arc<Self>) -> NFElement {
        NFElement { field: Arc::clone(self), coeffs: vec![Rational::zero(); self.degree()] }
    }

    pub fn one(self: &Arc<Self>) -> NFElement {
        self.from_rational(Rational::one())
    }

    pub fn from_int(self: &Arc<Self>, v: i64) -> NFElement {
        self.from_rational(Rational::from_integer(v.into()))
    }

    pub fn from_rational(self: &Arc<Self>, v: Rational) -> NFElement {
        let mut e = self.zero();
        e.coeffs[0] = v;
        e
    }

    /// The class of `x`.
    pub fn gen(self: &Arc<Self>) -> NFElement {
        let mut e = self.zero();
        e.coeffs[1] = Rational::one();
        e
    }

    /// Reduce an arbitrary polynomial into the field.
    pub fn from_poly(self: &Arc<Self>, p: &Poly) -> NFElement {
        let r = p.rem(&self.modulus);
        let mut coeffs = r.into_coeffs();
        coeffs.resize(self.degree(), Rational::zero());
        NFElement { field: Arc::clone(self), coeffs }
    }

    /// Element from an exact coefficient vector of length `degree`.
    pub fn element(self: &Arc<Self>, coeffs: Vec<Rational>) -> Result<NFElement> {
        if coeffs.len() != self.degree() {
            return Err(Error::Schema(format!(
                "element has {} coefficients, field degree is {}",
                coeffs.len(),
                self.degree()
            )));
        }
        Ok(NFElement { field: Arc::clone(self), coeffs })
    }
}

/// An element of a [`NumberField`], stored as its reduced representative.
#[derive(Clone)]
pub struct NFElement {
    field: Arc<NumberField>,
    coeffs: Vec<Rational>,
}

impl NFElement {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.is_rational()
    }

    /// True when only the constant coefficient may be nonzero.
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational, if it is one.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.coeffs[0])
    }

    pub fn same_field(&self, other: &NFElement) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field == other.field
    }

    fn check(&self, other: &NFElement) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &NFElement) -> Result<NFElement> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &NFElement) -> Result<NFElement> {
        self.check(other)?;
        Ok(self.add_unchecked(&other.neg_ref()))
    }

    pub fn try_mul(&self, other: &NFElement) -> Result<NFElement> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &NFElement) -> NFElement {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        NFElement { field: Arc::clone(&self.field), coeffs }
    }

    fn neg_ref(&self) -> NFElement {
        NFElement { field: Arc::clone(&self.field), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, s: &Rational) -> NFElement {
        NFElement {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    fn mul_unchecked(&self, other: &NFElement) -> NFElement {
        if let Some(r) = self.as_rational() {
            return other.scale(r);
        }
        if let Some(r) = other.as_rational() {
            return self.scale(r);
        }
        let n = self.field.degree();
        let mut out = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        let m = self.field.modulus.coeffs();
        for k in (n..2 * n - 1).rev() {
            let c = std::mem::take(&mut out[k]);
            if c.is_zero() {
                continue;
            }
            // x^n ≡ -(m_0 + … + m_{n-1} x^{n-1})
            for (j, mj) in m[..n].iter().enumerate() {
                if !mj.is_zero() {
                    out[k - n + j] -= &c * mj;
                }
            }
        }
        out.truncate(n);
        NFElement { field: Arc::clone(&self.field), coeffs: out }
    }

    /// Multiplicative inverse by extended Euclid against the modulus.
    pub fn inv(&self) -> Result<NFElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(self.field.from_rational(r.recip()));
        }
        // invariant: s_i * a ≡ r_i (mod modulus)
        let (mut r0, mut r1) = (self.field.modulus.clone(), self.to_poly());
        let (mut s0, mut s1) = (Poly::zero(), Poly::constant(Rational::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if !r0.is_constant() {
            return Err(Error::ReducibleModulus { factor: r0.monic().to_string() });
        }
        let c = r0.coeff(0).recip();
        Ok(self.field.from_poly(&s0.scale(&c)))
    }

    pub fn try_div(&self, other: &NFElement) -> Result<NFElement> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    pub fn pow(&self, mut e: u32) -> NFElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl PartialEq for NFElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.same_field(other)
    }
}

impl Eq for NFElement {}

impl Hash for NFElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NFElement({self})")
    }
}

impl fmt::Display for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

// Operator forms panic on mixed fields; the `try_*` methods report it.
impl Add for &NFElement {
    type Output = NFElement;
    fn add(self, rhs: &NFElement) -> NFElement {
        self.try_add(rhs).expect("field mismatch")
    }
}

impl Sub for &NFElement {
    type Output = NFElement;
    fn sub(self, rhs: &NFElement) -> NFElement {
        self.try_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &NFElement {
    type Output = NFElement;
    fn mul(self, rhs: &NFElement) -> NFElement {
        self.try_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &NFElement {
    type Output = NFElement;
    fn neg(self) -> NFElement {
        self.neg_ref()
    }
}
