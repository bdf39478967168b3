//! Irreducibility over ℚ: exact for small degree, a finite-field screen above.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use super::Rational;

/// Outcome of [`check_irreducible`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// A nontrivial factor, as a primitive integer polynomial.
    Reducible(Poly),
    Unverified,
}

impl std::fmt::Display for Irreducibility {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Irreducibility::Irreducible => write!(f, "irreducible"),
            Irreducibility::Reducible(g) => write!(f, "reducible, factor {g}"),
            Irreducibility::Unverified => write!(f, "unverified"),
        }
    }
}

/// Largest coefficient magnitude for which divisor enumeration is attempted.
const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

const SCREEN_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

/// Decide irreducibility of `p` over ℚ.
///
/// Degree ≤ 4 is decided exactly (rational roots, then Kronecker search for
/// quadratic factors). From degree 5 on, the same searches can still expose
/// a factor, and otherwise the factorization degree patterns modulo small
/// primes are intersected; an empty intersection proves irreducibility.
pub fn check_irreducible(p: &Poly) -> Irreducibility {
    let ints = p.primitive_integer();
    let n = match ints.len().checked_sub(1) {
        None | Some(0) => return Irreducibility::Unverified,
        Some(1) => return Irreducibility::Irreducible,
        Some(n) => n,
    };
    let prim = Poly::from_big_ints(&ints);

    match linear_factor(&ints) {
        Some(Some(f)) => return Irreducibility::Reducible(f),
        Some(None) => {}
        None => return screen_or_unverified(&ints, n),
    }
    if n <= 3 {
        return Irreducibility::Irreducible;
    }
    match quadratic_factor(&ints, &prim) {
        Some(Some(f)) => Irreducibility::Reducible(f),
        Some(None) if n <= 5 => Irreducibility::Irreducible,
        Some(None) | None => screen_or_unverified(&ints, n),
    }
}

fn screen_or_unverified(ints: &[BigInt], n: usize) -> Irreducibility {
    if finite_field_screen(ints, n) {
        Irreducibility::Irreducible
    } else {
        Irreducibility::Unverified
    }
}

fn positive_divisors(v: &BigInt) -> Option<Vec<u64>> {
    let v = v.abs().to_u64()?;
    if v == 0 || v > DIVISOR_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            small.push(d);
            if d * d != v {
                large.push(v / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Rational root test. `None` when coefficients are too large to enumerate.
fn linear_factor(ints: &[BigInt]) -> Option<Option<Poly>> {
    if ints[0].is_zero() {
        return Some(Some(Poly::x()));
    }
    let num_divs = positive_divisors(&ints[0])?;
    let den_divs = positive_divisors(ints.last().unwrap())?;
    let p = Poly::from_big_ints(ints);
    for &a in &num_divs {
        for &b in &den_divs {
            if BigInt::from(a).gcd(&BigInt::from(b)) != BigInt::one() {
                continue;
            }
            for sign in [1i64, -1] {
                let r = Rational::new(BigInt::from(a) * sign, BigInt::from(b));
                if p.eval(&r).is_zero() {
                    // b*x - a*sign
                    let f = Poly::from_big_ints(&[BigInt::from(a) * -sign, BigInt::from(b)]);
                    return Some(Some(f));
                }
            }
        }
    }
    Some(None)
}

/// Kronecker's method restricted to degree-2 factors. Assumes no rational roots.
fn quadratic_factor(ints: &[BigInt], prim: &Poly) -> Option<Option<Poly>> {
    let mut nodes: Vec<(i64, BigInt)> = Vec::new();
    let mut t = 0i64;
    while nodes.len() < 3 {
        let v = prim.eval(&Rational::from_integer(t.into()));
        // nonzero, since there is no rational root
        nodes.push((t, v.to_integer()));
        t = if t <= 0 { 1 - t } else { -t };
    }
    let divs: Vec<Vec<u64>> = nodes.iter().map(|(_, v)| positive_divisors(v)).collect::<Option<_>>()?;
    let lead = ints.last().unwrap();
    let konst = &ints[0];
    for &d0 in &divs[0] {
        for &d1 in &divs[1] {
            for &d2 in &divs[2] {
                for s1 in [1i64, -1] {
                    for s2 in [1i64, -1] {
                        let vals = [
                            Rational::from_integer(d0.into()),
                            Rational::from_integer(BigInt::from(d1) * s1),
                            Rational::from_integer(BigInt::from(d2) * s2),
                        ];
                        let q = interpolate(&nodes, &vals);
                        if q.degree() != Some(2) || q.coeffs().iter().any(|c| !c.is_integer()) {
                            continue;
                        }
                        let qa = q.coeff(2).to_integer();
                        let q0 = q.coeff(0).to_integer();
                        if !lead.is_multiple_of(&qa) || q0.is_zero() || !konst.is_multiple_of(&q0) {
                            continue;
                        }
                        if prim.rem(&q).is_zero() {
                            return Some(Some(Poly::from_big_ints(&q.primitive_integer())));
                        }
                    }
                }
            }
        }
    }
    Some(None)
}

fn interpolate(nodes: &[(i64, BigInt)], vals: &[Rational; 3]) -> Poly {
    let mut acc = Poly::zero();
    for (i, (ti, _)) in nodes.iter().enumerate() {
        let mut basis = Poly::constant(Rational::one());
        for (j, (tj, _)) in nodes.iter().enumerate() {
            if i != j {
                let factor = Poly::from_ints(&[-tj, 1]);
                basis = basis.mul(&factor).scale(&Rational::new(1.into(), (ti - tj).into()));
            }
        }
        acc = acc.add(&basis.scale(&vals[i]));
    }
    acc
}

/// True when the degree patterns modulo small primes leave no room for a
/// proper factor over ℚ.
fn finite_field_screen(ints: &[BigInt], n: usize) -> bool {
    // bit k set: some factorization admits a factor of degree k
    let full: u128 = if n >= 127 { return false } else { (1u128 << (n + 1)) - 1 };
    let mut possible = full;
    for &prime in SCREEN_PRIMES.iter() {
        let Some(pattern) = gf::factor_degrees(ints, prime) else { continue };
        let mut sums: u128 = 1;
        for d in pattern {
            sums |= sums << d;
        }
        possible &= sums & full;
        if possible == 1 | (1u128 << n) {
            return true;
        }
    }
    false
}

/// Polynomials over 𝔽_p for small primes p, coefficients ascending.
pub(crate) mod gf {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::ToPrimitive;

    type P = Vec<u64>;

    fn trim(mut a: P) -> P {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        pow_mod(a, p - 2, p)
    }

    fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    }

    pub fn reduce(ints: &[BigInt], p: u64) -> P {
        let pb = BigInt::from(p);
        trim(ints.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> P {
        let db = b.len() - 1;
        let inv = inv_mod(b[db], p);
        let mut r = a.to_vec();
        while r.len() > db {
            let k = r.len() - 1;
            let q = r[k] * inv % p;
            if q != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    r[k - db + j] = (r[k - db + j] + p - q * bj % p) % p;
                }
            }
            r.pop();
            r = trim(r);
        }
        trim(r)
    }

    pub fn div(a: &[u64], b: &[u64], p: u64) -> P {
        let db = b.len() - 1;
        let inv = inv_mod(b[db], p);
        let mut r = a.to_vec();
        let mut q = vec![0; a.len().saturating_sub(db)];
        while r.len() > db {
            let k = r.len() - 1;
            let c = r[k] * inv % p;
            q[k - db] = c;
            for (j, &bj) in b.iter().enumerate() {
                r[k - db + j] = (r[k - db + j] + p - c * bj % p) % p;
            }
            r.pop();
        }
        trim(q)
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> P {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> P {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    fn sub(a: &[u64], b: &[u64], p: u64) -> P {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|k| (a.get(k).copied().unwrap_or(0) + p - b.get(k).copied().unwrap_or(0)) % p)
                .collect(),
        )
    }

    fn derivative(a: &[u64], p: u64) -> P {
        trim(a.iter().enumerate().skip(1).map(|(k, &c)| (k as u64 % p) * c % p).collect())
    }

    fn pow_mod_poly(base: &[u64], mut e: u64, m: &[u64], p: u64) -> P {
        let mut acc = vec![1];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        acc
    }

    /// Degrees of the irreducible factors of `ints` modulo `p`, or `None`
    /// when `p` divides the leading coefficient or the reduction is not squarefree.
    pub fn factor_degrees(ints: &[BigInt], p: u64) -> Option<Vec<usize>> {
        let n = ints.len() - 1;
        let f = reduce(ints, p);
        if f.len() != n + 1 {
            return None;
        }
        let df = derivative(&f, p);
        if df.is_empty() || gcd(&f, &df, p).len() != 1 {
            return None;
        }
        let mut degrees = Vec::new();
        let mut rest = f;
        let x = vec![0, 1];
        let mut h = x.clone();
        let mut d = 1;
        while rest.len() - 1 >= 2 * d {
            h = pow_mod_poly(&h, p, &rest, p);
            let g = gcd(&rest, &sub(&h, &x, p), p);
            let gd = g.len() - 1;
            if gd > 0 {
                degrees.extend(std::iter::repeat(d).take(gd / d));
                rest = div(&rest, &g, p);
                h = rem(&h, &rest, p);
            }
            d += 1;
        }
        if rest.len() > 1 {
            degrees.push(rest.len() - 1);
        }
        Some(degrees)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(c: &[i64]) -> Irreducibility {
        check_irreducible(&Poly::from_ints(c))
    }

    #[test]
    fn small_degree_examples() {
        assert_eq!(check(&[-2, 0, 1]), Irreducibility::Irreducible);
        assert_eq!(check(&[-1, 0, 1]), Irreducibility::Reducible(Poly::from_ints(&[-1, 1])));
        assert_eq!(check(&[-2, 0, 0, 1]), Irreducibility::Irreducible);
        assert_eq!(check(&[-1, -1, 0, 0, 1]), Irreducibility::Irreducible);
        assert_eq!(check(&[-1, -1, 1]), Irreducibility::Irreducible);
    }

    #[test]
    fn quartic_with_quadratic_factors() {
        // (x^2 + 1)(x^2 - 2)
        match check(&[-2, 0, -1, 0, 1]) {
            Irreducibility::Reducible(f) => {
                assert_eq!(f.degree(), Some(2));
                assert!(Poly::from_ints(&[-2, 0, -1, 0, 1]).rem(&f).is_zero());
            }
            other => panic!("unexpected {other:?}"),
        }
        // x^4 + 1 is irreducible over ℚ but reducible modulo every prime
        assert_eq!(check(&[1, 0, 0, 0, 1]), Irreducibility::Irreducible);
    }

    #[test]
    fn quintic_screen() {
        assert_eq!(check(&[-1, -1, 0, 0, 0, 1]), Irreducibility::Irreducible);
        // (x^2 + x + 1)(x^3 + 2) is caught by the quadratic search
        let p = Poly::from_ints(&[1, 1, 1]).mul(&Poly::from_ints(&[2, 0, 0, 1]));
        assert!(matches!(check_irreducible(&p), Irreducibility::Reducible(_)));
        // a product of two cubics has no small factor; the screen cannot prove anything
        let p = Poly::from_ints(&[2, 0, 0, 1]).mul(&Poly::from_ints(&[3, 1, 0, 1]));
        assert_eq!(check_irreducible(&p), Irreducibility::Unverified);
    }

    /// Exhaustive trial division by every monic polynomial of degree 1 and 2 over 𝔽_p.
    fn irreducible_mod_by_enumeration(c: &[i64], p: u64) -> bool {
        let f: Vec<u64> = c.iter().map(|&v| v.rem_euclid(p as i64) as u64).collect();
        let deg = f.len() - 1;
        for d in 1..=deg / 2 {
            let count = p.pow(d as u32);
            for idx in 0..count {
                let mut g = Vec::with_capacity(d + 1);
                let mut k = idx;
                for _ in 0..d {
                    g.push(k % p);
                    k /= p;
                }
                g.push(1);
                // long division
                let mut r = f.clone();
                while r.len() > d {
                    let top = *r.last().unwrap();
                    let shift = r.len() - 1 - d;
                    for (j, &gj) in g.iter().enumerate() {
                        r[shift + j] = (r[shift + j] + p * p - top * gj % p) % p;
                    }
                    r.pop();
                }
                if r.iter().all(|&v| v == 0) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn quintic_irreducible_mod_three_oracle() {
        let c = [-1, -1, 0, 0, 0, 1];
        assert!(irreducible_mod_by_enumeration(&c, 3));
        let ints: Vec<BigInt> = c.iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(gf::factor_degrees(&ints, 3), Some(vec![5]));
    }

    #[test]
    fn ddf_matches_enumeration_on_small_cases() {
        // x^4 + 1 mod 3 splits into two quadratics
        let ints: Vec<BigInt> = [1, 0, 0, 0, 1].iter().map(|&v: &i64| BigInt::from(v)).collect();
        assert_eq!(gf::factor_degrees(&ints, 3), Some(vec![2, 2]));
        assert!(!irreducible_mod_by_enumeration(&[1, 0, 0, 0, 1], 3));
    }
}
