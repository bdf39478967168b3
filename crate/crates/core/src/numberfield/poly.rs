use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Univariate polynomial over ℚ, coefficients in ascending degree.
///
/// The coefficient list is kept trimmed: the last entry is nonzero, and the
/// zero polynomial is the empty list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => {
                let inv = lc.recip();
                Poly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
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
        Poly::new(out)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = &rem[k] * &lc_inv;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[k - dd + j] -= &q * d;
                }
            }
            quot[k - dd] = q;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Squarefree part, made monic.
    pub fn squarefree(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        if g.is_constant() {
            self.monic()
        } else {
            self.div_rem(&g).0.monic()
        }
    }

    /// Scale to a primitive integer polynomial with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        for c in ints.iter_mut() {
            *c = &*c / &content * &sign;
        }
        ints
    }

    pub fn from_big_ints(coeffs: &[BigInt]) -> Poly {
        Poly::new(coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    /// Parse an integer-coefficient polynomial in `x`, e.g. `"2*x^2 - 3*x + 1"`.
    pub fn parse(input: &str) -> Result<Poly> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let mut start = 0;
        let mut negative = false;
        let bytes = s.as_bytes();
        for i in 0..=bytes.len() {
            let at_sign = i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-');
            if i == bytes.len() || at_sign {
                // a sign directly after '^' belongs to an exponent, which is unsupported anyway
                if i == 0 {
                    negative = bytes[0] == b'-';
                    start = 1;
                    continue;
                }
                let term = &s[start..i];
                if term.is_empty() {
                    return Err(Error::Parse(format!("dangling sign in {input:?}")));
                }
                terms.push((negative, term));
                if at_sign {
                    negative = bytes[i] == b'-';
                    start = i + 1;
                }
            }
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (neg, term) in terms {
            let (coef, power) = parse_term(term).ok_or_else(|| {
                Error::Parse(format!("cannot parse term {term:?} in {input:?}"))
            })?;
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigInt::zero());
            }
            if neg {
                coeffs[power] -= coef;
            } else {
                coeffs[power] += coef;
            }
        }
        let p = Poly::from_big_ints(&coeffs);
        if p.is_zero() {
            return Err(Error::Parse(format!("{input:?} is the zero polynomial")));
        }
        Ok(p)
    }
}

fn parse_term(term: &str) -> Option<(BigInt, usize)> {
    let (coef_part, var_part) = match term.find('x') {
        None => return Some((term.parse().ok()?, 0)),
        Some(pos) => (&term[..pos], &term[pos + 1..]),
    };
    let coef = match coef_part {
        "" => BigInt::one(),
        c => c.strip_suffix('*')?.parse().ok()?,
    };
    let power = match var_part {
        "" => 1,
        v => v.strip_prefix('^')?.parse().ok()?,
    };
    Some((coef, power))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_coef = k == 0 || !mag.is_one();
            if show_coef {
                write!(f, "{mag}")?;
                if k > 0 {
                    write!(f, "*")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}
