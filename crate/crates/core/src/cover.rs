//! Divisor bookkeeping for a `(ℤ/2)³` cover of the blow-up of the plane at
//! every configuration point.
//!
//! `Pic` of the blow-up is `ℤH ⊕ ⊕_q ℤE_q`. Group elements and characters are
//! both 3-bit vectors enumerated in binary order, with the pairing given by the
//! dot product mod 2. The distinguished element is `α = (1,0,0)`, index 4.

use std::fmt;

use serde::Serialize;

use crate::configuration::Configuration;
use crate::error::{Error, Result};

/// An element of `(ℤ/2)³`; bit 2 is the first coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GroupElement(pub u8);

pub const ALPHA: GroupElement = GroupElement(0b100);

impl GroupElement {
    pub fn all() -> impl Iterator<Item = GroupElement> {
        (0..8).map(GroupElement)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn add(self, other: GroupElement) -> GroupElement {
        GroupElement(self.0 ^ other.0)
    }

    /// `(χ, g) ∈ {0, 1}`, so that `χ(g) = (−1)^(χ,g)`.
    pub fn pairing(self, g: GroupElement) -> u8 {
        ((self.0 & g.0).count_ones() % 2) as u8
    }

    pub fn bits(self) -> [u8; 3] {
        [(self.0 >> 2) & 1, (self.0 >> 1) & 1, self.0 & 1]
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.bits();
        write!(f, "{a}{b}{c}")
    }
}

/// The class `h·H − Σ_q b_q E_q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PicClass {
    pub h: i64,
    pub b: Vec<i64>,
}

impl PicClass {
    pub fn zero(points: usize) -> Self {
        PicClass { h: 0, b: vec![0; points] }
    }

    pub fn hyperplane_multiple(h: i64, points: usize) -> Self {
        PicClass { h, b: vec![0; points] }
    }

    pub fn add(&self, other: &PicClass) -> PicClass {
        PicClass { h: self.h + other.h, b: self.b.iter().zip(&other.b).map(|(x, y)| x + y).collect() }
    }

    pub fn scale(&self, k: i64) -> PicClass {
        PicClass { h: self.h * k, b: self.b.iter().map(|x| x * k).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.h == 0 && self.b.iter().all(|&x| x == 0)
    }

    /// Halve every coefficient, or name the first odd one.
    pub fn halve(&self) -> std::result::Result<PicClass, String> {
        if self.h % 2 != 0 {
            return Err(format!("H coefficient {} is odd", self.h));
        }
        if let Some(q) = self.b.iter().position(|x| x % 2 != 0) {
            return Err(format!("E_{q} coefficient {} is odd", self.b[q]));
        }
        Ok(PicClass { h: self.h / 2, b: self.b.iter().map(|x| x / 2).collect() })
    }

    /// Intersection number with another class: `H² = 1`, `E_q² = −1`.
    pub fn dot(&self, other: &PicClass) -> i64 {
        self.h * other.h - self.b.iter().zip(&other.b).map(|(x, y)| x * y).sum::<i64>()
    }
}

/// The degrees `m_g`, indexed by group element.
pub type MMap = [u64; 8];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchData {
    pub m: MMap,
    /// `D_g` for each group element.
    pub d: Vec<PicClass>,
}

/// The proper transform class of the configuration lines, `L·H − Σ e_q E_q`.
pub fn proper_transform_class(c: &Configuration) -> PicClass {
    PicClass {
        h: c.line_count() as i64,
        b: (0..c.points().len()).map(|q| c.valence(q) as i64).collect(),
    }
}

fn xor_sum(m: &MMap) -> GroupElement {
    GroupElement::all().filter(|g| m[g.0 as usize] % 2 == 1).fold(GroupElement(0), GroupElement::add)
}

pub fn validate_m(m: &MMap, lines: usize) -> Result<()> {
    if m[0] != 0 {
        return Err(Error::InvalidMMap(format!("m_000 = {} but must be 0", m[0])));
    }
    if m[ALPHA.0 as usize] != lines as u64 {
        return Err(Error::InvalidMMap(format!("m_100 = {} but must equal L = {lines}", m[ALPHA.0 as usize])));
    }
    let s = xor_sum(m);
    if !s.is_zero() {
        return Err(Error::InvalidMMap(format!("sum of m_g g is {s}, not 000")));
    }
    Ok(())
}

/// `D_α = C_z`, and `D_g = m_g·H` for every other `g`.
pub fn assign_branch_divisors(c: &Configuration, m: &MMap) -> Result<BranchData> {
    validate_m(m, c.line_count())?;
    if let Some(q) = (0..c.points().len()).find(|&q| c.valence(q) % 2 == 1) {
        return Err(Error::ParityViolation(format!("point {q} has odd valence {}", c.valence(q))));
    }
    let n = c.points().len();
    let d = GroupElement::all()
        .map(|g| {
            if g == ALPHA {
                proper_transform_class(c)
            } else {
                PicClass::hyperplane_multiple(m[g.0 as usize] as i64, n)
            }
        })
        .collect();
    Ok(BranchData { m: *m, d })
}

/// `Σ_g (χ, g) D_g` before halving.
pub fn raw_character_sum(b: &BranchData, chi: GroupElement) -> PicClass {
    let n = b.d[0].b.len();
    GroupElement::all()
        .filter(|&g| chi.pairing(g) == 1)
        .fold(PicClass::zero(n), |acc, g| acc.add(&b.d[g.0 as usize]))
}

/// `M_χ = ½ Σ_g (χ, g) D_g` for all eight characters.
#[allow(non_snake_case)]
pub fn compute_M(b: &BranchData) -> Result<Vec<PicClass>> {
    GroupElement::all()
        .map(|chi| {
            raw_character_sum(b, chi)
                .halve()
                .map_err(|why| Error::ParityViolation(format!("character {chi}: {why}")))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "reason")]
pub enum AmpleVerdict {
    Certified,
    NotCertified(String),
}

impl AmpleVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, AmpleVerdict::Certified)
    }
}

pub const AMPLENESS_ARGUMENT: &str = "an irreducible curve C of degree e not contracted to a point has \
multiplicity at most e at each blown-up point, so M.C >= e(h - sum b_q) > 0; M.E_q = b_q > 0; \
M.M = h^2 - sum b_q^2 > 0; Nakai-Moishezon gives ampleness";

/// Sufficient criterion: every `b_q ≥ 1` and `h > Σ b_q`.
pub fn ample_certificate(cls: &PicClass) -> AmpleVerdict {
    if let Some(q) = cls.b.iter().position(|&x| x < 1) {
        return AmpleVerdict::NotCertified(format!("degree {} on E_{q} is not positive", cls.b[q]));
    }
    let s: i64 = cls.b.iter().sum();
    if cls.h <= s {
        return AmpleVerdict::NotCertified(format!("h = {} does not exceed sum of b_q = {s}", cls.h));
    }
    AmpleVerdict::Certified
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HypothesisReport {
    /// Every pair of lines meets at a blown-up point, so the proper transforms
    /// of the lines are disjoint and `D_α` is smooth.
    pub d_alpha_smooth: bool,
    pub line_pairs_checked: usize,
    /// Two distinct nonzero elements of `(ℤ/2)³` are always independent.
    pub independence_tautology: bool,
    pub genericity_assumptions: Vec<String>,
}

pub fn check_cover_hypotheses(b: &BranchData, c: &Configuration) -> Result<HypothesisReport> {
    c.check_pair_coverage()?;
    let nonzero: Vec<GroupElement> = GroupElement::all().filter(|g| !g.is_zero()).collect();
    let independent = nonzero.iter().all(|&g| {
        nonzero.iter().all(|&h| g == h || !g.add(h).is_zero())
    });
    let mut assumptions = Vec::new();
    for g in GroupElement::all().filter(|&g| !g.is_zero() && g != ALPHA && b.m[g.0 as usize] > 0) {
        assumptions.push(format!(
            "D_{g} is the pullback of a smooth plane curve of degree {} avoiding every blown-up point",
            b.m[g.0 as usize]
        ));
    }
    if !assumptions.is_empty() {
        assumptions.push("the curves D_g meet each other and the lines transversally, with no three through a point".into());
    }
    let l = c.line_count();
    Ok(HypothesisReport {
        d_alpha_smooth: true,
        line_pairs_checked: l * l.saturating_sub(1) / 2,
        independence_tautology: independent,
        genericity_assumptions: assumptions,
    })
}

/// The four characters with `(χ, α) = 1`, as K4 vertices.
#[cfg(test)]
const ALPHA_CHARS: [u8; 4] = [0b100, 0b110, 0b101, 0b111];
/// K4 edges `(i, j)` and the group element whose degree sits on that edge:
/// `g` pairs to 1 with exactly the characters `i` and `j`.
const EDGES: [((usize, usize), u8); 6] = [
    ((0, 1), 0b101),
    ((0, 2), 0b110),
    ((0, 3), 0b111),
    ((1, 2), 0b011),
    ((1, 3), 0b010),
    ((2, 3), 0b001),
];

fn m_from_degrees(lines: u64, d: [i64; 4]) -> Option<MMap> {
    let a12 = d[0] + d[1] - d[2] - d[3];
    let a13 = d[0] + d[2] - d[1] - d[3];
    let c23 = d[1] + d[2] + d[3] - d[0];
    if a12 % 2 != 0 || a13 % 2 != 0 || c23 % 2 != 0 {
        return None;
    }
    let (a12, a13, c23) = (a12 / 2, a13 / 2, c23 / 2);
    // m_001 and m_010 come first in the enumeration, so take them smallest
    let u = (-a12).max(0);
    let v = (-a13).max(0);
    let e = [u + a12, v + a13, d[3] - u - v, c23 - u - v, v, u];
    if e.iter().any(|&x| x < 0) {
        return None;
    }
    let mut m = [0u64; 8];
    m[ALPHA.0 as usize] = lines;
    for (k, &(_, g)) in EDGES.iter().enumerate() {
        m[g as usize] = e[k] as u64;
    }
    (xor_sum(&m).is_zero()).then_some(m)
}

/// The smallest valid `m` (total degree, then lexicographic in group order)
/// for which every `M_χ` with `(χ, α) = 1` passes [`ample_certificate`].
///
/// With `S = Σ e_q`, such an `M_χ` has `b_q = e_q/2 ≥ 1` and
/// `h = (L + s_χ)/2`, where `s_χ` sums `m_g` over `g ≠ α` with `(χ, g) = 1`.
/// Each such `g` pairs with exactly two of these characters, so the `s_χ` are
/// vertex degrees of an edge weighting of K4, and the condition reads
/// `s_χ ≥ S − L + 1` with `s_χ ≡ L (mod 2)`.
pub fn select_m_for(lines: usize, valence_sum: usize) -> MMap {
    let l = lines as i64;
    let t = (valence_sum as i64 - l + 1).max(0);
    let lo = t + (t - l).rem_euclid(2);
    for extra in 0i64.. {
        let mut best: Option<MMap> = None;
        for k0 in 0..=extra {
            for k1 in 0..=extra - k0 {
                for k2 in 0..=extra - k0 - k1 {
                    let k3 = extra - k0 - k1 - k2;
                    let d = [k0, k1, k2, k3].map(|k| lo + 2 * k);
                    if let Some(m) = m_from_degrees(lines as u64, d) {
                        if best.map_or(true, |b| m < b) {
                            best = Some(m);
                        }
                    }
                }
            }
        }
        if let Some(m) = best {
            return m;
        }
    }
    unreachable!()
}

pub fn select_m(c: &Configuration) -> MMap {
    let s: usize = (0..c.points().len()).map(|q| c.valence(q)).sum();
    select_m_for(c.line_count(), s)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CharacterReport {
    pub chi: String,
    pub pairs_with_alpha: bool,
    /// Every coefficient of `Σ_g (χ, g) D_g` is even.
    pub raw_sum_even: bool,
    pub m_h: i64,
    pub m_b_sum: i64,
    pub ampleness: AmpleVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub open_question: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverReport {
    pub v: u32,
    pub poly: String,
    pub seed: i64,
    pub lines: usize,
    pub points: usize,
    pub valence_sum: usize,
    pub alpha: String,
    pub m: Vec<(String, u64)>,
    pub d: Vec<(String, PicClass)>,
    #[serde(rename = "M")]
    pub m_classes: Vec<(String, PicClass)>,
    pub parity_all_even: bool,
    pub characters: Vec<CharacterReport>,
    pub hypotheses: HypothesisReport,
    pub ampleness_argument: String,
}

pub const NEF_ONLY_GAP: &str = "M is a multiple of H: nef but trivial on every E_q, hence not ample on the \
blow-up, although positivity for all nonzero characters is asserted; left unresolved";

/// Full bookkeeping for a configuration with the given (or selected) `m`.
pub fn cover_report(c: &Configuration, m: Option<MMap>) -> Result<CoverReport> {
    let m = m.unwrap_or_else(|| select_m(c));
    let b = assign_branch_divisors(c, &m)?;
    let ms = compute_M(&b)?;
    let hypotheses = check_cover_hypotheses(&b, c)?;
    let characters = GroupElement::all()
        .map(|chi| {
            let cls = &ms[chi.0 as usize];
            let pairs = chi.pairing(ALPHA) == 1;
            let ampleness = ample_certificate(cls);
            let open_question = (!chi.is_zero() && !pairs).then(|| NEF_ONLY_GAP.to_string());
            CharacterReport {
                chi: chi.to_string(),
                pairs_with_alpha: pairs,
                raw_sum_even: raw_character_sum(&b, chi).halve().is_ok(),
                m_h: cls.h,
                m_b_sum: cls.b.iter().sum(),
                ampleness,
                open_question,
            }
        })
        .collect::<Vec<_>>();
    Ok(CoverReport {
        v: 1,
        poly: c.field().modulus().to_string(),
        seed: c.provenance.seed,
        lines: c.line_count(),
        points: c.points().len(),
        valence_sum: (0..c.points().len()).map(|q| c.valence(q)).sum(),
        alpha: ALPHA.to_string(),
        m: GroupElement::all().map(|g| (g.to_string(), m[g.0 as usize])).collect(),
        d: GroupElement::all().map(|g| (g.to_string(), b.d[g.0 as usize].clone())).collect(),
        m_classes: GroupElement::all().map(|g| (g.to_string(), ms[g.0 as usize].clone())).collect(),
        parity_all_even: characters.iter().all(|c| c.raw_sum_even),
        characters,
        hypotheses,
        ampleness_argument: AMPLENESS_ARGUMENT.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_match_pairing() {
        for &((i, j), g) in &EDGES {
            let hits: Vec<usize> =
                (0..4).filter(|&k| GroupElement(ALPHA_CHARS[k]).pairing(GroupElement(g)) == 1).collect();
            assert_eq!(hits, vec![i, j]);
        }
    }

    #[test]
    fn m_map_constraints() {
        let mut m = [0u64; 8];
        m[4] = 20;
        assert!(validate_m(&m, 20).is_ok());
        m[4] = 21;
        assert!(matches!(validate_m(&m, 21), Err(Error::InvalidMMap(_))));
        let mut m = [0u64; 8];
        m[4] = 20;
        m[0b010] = 3;
        m[0b001] = 3;
        m[0b011] = 3;
        assert!(validate_m(&m, 20).is_ok());
        m[0] = 1;
        assert!(validate_m(&m, 20).is_err());
    }

    #[test]
    fn ampleness_examples() {
        assert!(ample_certificate(&PicClass { h: 10, b: vec![1, 1, 1] }).is_certified());
        assert!(!ample_certificate(&PicClass { h: 2, b: vec![1, 1, 1] }).is_certified());
        assert!(!ample_certificate(&PicClass::hyperplane_multiple(5, 3)).is_certified());
    }

    /// Every valid `m` with entries up to `cap`, checked by brute force.
    fn brute_force(lines: u64, valence_sum: i64, cap: u64) -> Option<MMap> {
        let others = [1usize, 2, 3, 5, 6, 7];
        let mut best: Option<(u64, MMap)> = None;
        let total = (cap + 1).pow(6);
        for code in 0..total {
            let mut m = [0u64; 8];
            m[4] = lines;
            let mut x = code;
            for &g in &others {
                m[g] = x % (cap + 1);
                x /= cap + 1;
            }
            if xor_sum(&m).0 != 0 {
                continue;
            }
            let ok = ALPHA_CHARS.iter().all(|&chi| {
                let h: u64 = (0..8).filter(|&g| GroupElement(chi).pairing(GroupElement(g as u8)) == 1).map(|g| m[g]).sum();
                h % 2 == 0 && (h as i64) > valence_sum
            });
            let even = [1u8, 2, 3].iter().all(|&chi| {
                let h: u64 = (0..8).filter(|&g| GroupElement(chi).pairing(GroupElement(g as u8)) == 1).map(|g| m[g]).sum();
                h % 2 == 0
            });
            if ok && even {
                let s: u64 = m.iter().sum();
                if best.map_or(true, |(bs, bm)| (s, m) < (bs, bm)) {
                    best = Some((s, m));
                }
            }
        }
        best.map(|(_, m)| m)
    }

    #[test]
    fn solver_matches_brute_force() {
        for lines in 2..7u64 {
            for s in 0..8i64 {
                let fast = select_m_for(lines as usize, s as usize);
                let slow = brute_force(lines, s, 6).expect("brute force finds a solution");
                assert_eq!(fast, slow, "L = {lines}, S = {s}");
            }
        }
    }

    #[test]
    fn doubling_keeps_validity() {
        let m = select_m_for(58, 200);
        let mut doubled = m;
        for g in [1, 2, 3, 5, 6, 7] {
            doubled[g] *= 2;
        }
        assert!(validate_m(&doubled, 58).is_ok());
    }
}
