//! Point-line configurations: lines, all their pairwise intersections, and
//! the augmentation passes that make every valence even and put the marked
//! points on top of the valence order.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numberfield::{NumberField, Rational};
use crate::projgeom::{collinear, join, meet, ProjLine, ProjPoint};

/// Attempts allowed for each generic line before giving up.
pub const RETRY_BUDGET: usize = 64;

/// Point indices of the four marked points on the axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Marks {
    pub zero: usize,
    pub one: usize,
    pub inf: usize,
    pub z: usize,
}

impl Marks {
    /// Indices in ladder order: 0, 1, ∞, z.
    pub fn in_order(&self) -> [usize; 4] {
        [self.zero, self.one, self.inf, self.z]
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.in_order().contains(&idx)
    }
}

/// Reproducibility metadata carried along with a configuration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Provenance {
    pub seed: i64,
    /// Gadget parameters skipped because of degeneracy.
    pub gadget_retries: u32,
    /// Generic-line candidates rejected during augmentation.
    pub generic_retries: u32,
}

#[derive(Clone, Debug)]
pub struct Configuration {
    field: Arc<NumberField>,
    lines: Vec<ProjLine>,
    points: Vec<ProjPoint>,
    /// For each point, the sorted indices of the lines through it.
    incidence: Vec<Vec<usize>>,
    point_index: HashMap<ProjPoint, usize>,
    line_index: HashMap<ProjLine, usize>,
    pub marks: Option<Marks>,
    pub provenance: Provenance,
}

impl PartialEq for Configuration {
    fn eq(&self, other: &Self) -> bool {
        self.lines == other.lines
            && self.points == other.points
            && self.incidence == other.incidence
            && self.marks == other.marks
            && self.provenance == other.provenance
    }
}

/// Per-point valences, sorted by decreasing valence (ties by point index).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValenceReport {
    pub entries: Vec<(usize, usize)>,
}

impl ValenceReport {
    pub fn valence_of(&self, point: usize) -> Option<usize> {
        self.entries.iter().find(|(p, _)| *p == point).map(|(_, e)| *e)
    }

    pub fn sum(&self) -> usize {
        self.entries.iter().map(|(_, e)| e).sum()
    }
}

impl Configuration {
    fn empty(field: &Arc<NumberField>) -> Self {
        Configuration {
            field: Arc::clone(field),
            lines: Vec::new(),
            points: Vec::new(),
            incidence: Vec::new(),
            point_index: HashMap::new(),
            line_index: HashMap::new(),
            marks: None,
            provenance: Provenance::default(),
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    /// Lines through each point, as sorted line indices.
    pub fn incidence(&self) -> &[Vec<usize>] {
        &self.incidence
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    pub fn point_of(&self, p: &ProjPoint) -> Option<usize> {
        self.point_index.get(p).copied()
    }

    pub fn line_of(&self, l: &ProjLine) -> Option<usize> {
        self.line_index.get(l).copied()
    }

    pub fn valence(&self, point: usize) -> usize {
        self.incidence[point].len()
    }

    /// Number of configuration lines through `p`, whether or not `p` is a
    /// configuration point.
    pub fn lines_through(&self, p: &ProjPoint) -> usize {
        match self.point_of(p) {
            Some(i) => self.valence(i),
            None => self.lines.iter().filter(|l| l.contains(p)).count(),
        }
    }

    pub fn valences(&self) -> ValenceReport {
        let mut entries: Vec<(usize, usize)> =
            self.incidence.iter().enumerate().map(|(i, ls)| (i, ls.len())).collect();
        entries.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        ValenceReport { entries }
    }

    /// Dense lines × points incidence matrix.
    pub fn incidence_matrix(&self) -> Vec<Vec<bool>> {
        let mut m = vec![vec![false; self.points.len()]; self.lines.len()];
        for (p, ls) in self.incidence.iter().enumerate() {
            for &l in ls {
                m[l][p] = true;
            }
        }
        m
    }

    /// Recompute every incidence entry from coordinates and compare with the
    /// stored one. Quadratic in the size; meant for verification.
    pub fn verify_incidence(&self) -> bool {
        let m = self.incidence_matrix();
        self.lines.iter().enumerate().all(|(li, l)| {
            self.points.iter().enumerate().all(|(pi, p)| l.contains(p) == m[li][pi])
        })
    }

    /// Insert a line, updating points and incidences. Returns its index.
    pub fn add_line(&mut self, line: ProjLine) -> Result<usize> {
        if let Some(&i) = self.line_index.get(&line) {
            return Err(Error::DuplicateLine(i));
        }
        let meets = self
            .lines
            .iter()
            .map(|other| meet(&line, other))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.insert_with_meets(line, meets.into_iter().enumerate().collect()))
    }

    fn insert_with_meets(&mut self, line: ProjLine, meets: Vec<(usize, ProjPoint)>) -> usize {
        let k = self.lines.len();
        for (i, q) in meets {
            match self.point_index.get(&q) {
                Some(&pi) => {
                    if self.incidence[pi].last() != Some(&k) {
                        self.incidence[pi].push(k);
                    }
                }
                None => {
                    let pi = self.points.len();
                    self.point_index.insert(q.clone(), pi);
                    self.points.push(q);
                    self.incidence.push(vec![i, k]);
                }
            }
        }
        self.line_index.insert(line.clone(), k);
        self.lines.push(line);
        k
    }

    /// Insert the line through `points[target]` only if it is generic: it
    /// must not pass through any other existing point, and its new crossings
    /// must be pairwise distinct (no new triple points).
    fn try_add_generic(&mut self, target: usize, candidate: ProjLine) -> Result<bool> {
        if self.line_index.contains_key(&candidate) {
            return Ok(false);
        }
        let through: HashSet<usize> = self.incidence[target].iter().copied().collect();
        let target_pt = self.points[target].clone();
        let mut meets = Vec::with_capacity(self.lines.len());
        let mut fresh = HashSet::new();
        for (i, other) in self.lines.iter().enumerate() {
            if through.contains(&i) {
                meets.push((i, target_pt.clone()));
                continue;
            }
            let q = meet(&candidate, other)?;
            if self.point_index.contains_key(&q) || !fresh.insert(q.clone()) {
                return Ok(false);
            }
            meets.push((i, q));
        }
        self.insert_with_meets(candidate, meets);
        Ok(true)
    }

    /// Add one generic line through the existing point `target`, drawing the
    /// second point of the line from `rng`.
    fn add_generic_line(&mut self, target: usize, rng: &mut ChaCha8Rng) -> Result<()> {
        let target_pt = self.points[target].clone();
        for _ in 0..RETRY_BUDGET {
            let other = random_affine_point(&self.field, rng);
            if other == target_pt {
                self.provenance.generic_retries += 1;
                continue;
            }
            let candidate = join(&target_pt, &other)?;
            if self.try_add_generic(target, candidate)? {
                return Ok(());
            }
            self.provenance.generic_retries += 1;
        }
        Err(Error::GenericityExhausted(format!(
            "no generic line through point {target} after {RETRY_BUDGET} attempts"
        )))
    }

    /// Every unordered pair of lines meets at exactly one stored point.
    pub fn check_pair_coverage(&self) -> Result<()> {
        let n = self.lines.len();
        let mut seen = vec![false; n * n];
        for ls in &self.incidence {
            for (a, &i) in ls.iter().enumerate() {
                for &j in &ls[a + 1..] {
                    if std::mem::replace(&mut seen[i * n + j], true) {
                        return Err(Error::Schema(format!("lines {i} and {j} share two points")));
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if !seen[i * n + j] {
                    return Err(Error::MissedIntersection(i, j));
                }
            }
        }
        Ok(())
    }

    /// Remove a stored point, keeping everything else. Only useful to build
    /// faulty configurations for testing downstream checks.
    pub fn without_point(&self, idx: usize) -> Configuration {
        let mut c = self.clone();
        let p = c.points.remove(idx);
        c.incidence.remove(idx);
        c.point_index.remove(&p);
        for v in c.point_index.values_mut() {
            if *v > idx {
                *v -= 1;
            }
        }
        c.marks = None;
        c
    }

    /// Resolve the four axis points as marks, if all are configuration points.
    pub fn locate_marks(&self, z: &ProjPoint) -> Option<Marks> {
        let ax = AxisPoints::new(&self.field);
        Some(Marks {
            zero: self.point_of(&ax.zero)?,
            one: self.point_of(&ax.one)?,
            inf: self.point_of(&ax.inf)?,
            z: self.point_of(z)?,
        })
    }
}

/// The fixed frame on the marked axis `y = 0`.
#[derive(Clone, Debug)]
pub struct AxisPoints {
    pub zero: ProjPoint,
    pub one: ProjPoint,
    pub inf: ProjPoint,
    pub axis: ProjLine,
}

impl AxisPoints {
    pub fn new(field: &Arc<NumberField>) -> Self {
        AxisPoints {
            zero: ProjPoint::from_ints(field, [0, 0, 1]),
            one: ProjPoint::from_ints(field, [1, 0, 1]),
            inf: ProjPoint::from_ints(field, [1, 0, 0]),
            axis: ProjLine::from_ints(field, [0, 1, 0]),
        }
    }
}

fn random_affine_point(field: &Arc<NumberField>, rng: &mut ChaCha8Rng) -> ProjPoint {
    let mut coord = || {
        let n: i64 = rng.gen_range(-97..=97);
        let d: i64 = rng.gen_range(1..=13);
        field.from_rational(Rational::new(n.into(), d.into()))
    };
    let x = coord();
    let y = coord();
    ProjPoint::affine(x, y)
}

fn pass_rng(seed: i64, pass: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64((seed as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ pass)
}

/// Build a configuration from distinct lines, deriving all pairwise
/// intersections and their incidences.
pub fn derive_points(field: &Arc<NumberField>, lines: &[ProjLine]) -> Result<Configuration> {
    let mut c = Configuration::empty(field);
    for l in lines {
        c.add_line(l.clone())?;
    }
    Ok(c)
}

/// Add one generic line through each point of odd valence ≥ 3.
pub fn augment_even_valence(c: &Configuration) -> Result<Configuration> {
    let mut out = c.clone();
    let mut rng = pass_rng(c.provenance.seed, 1);
    let odd: Vec<usize> = (0..c.points.len()).filter(|&i| c.valence(i) >= 3 && c.valence(i) % 2 == 1).collect();
    for target in odd {
        out.add_generic_line(target, &mut rng)?;
    }
    Ok(out)
}

/// Valence targets for the marks, in ladder order 0, 1, ∞, z.
///
/// With `M` the largest non-marked valence rounded up to even, the targets are
/// `M+8, M+6, M+4, M+2`. A mark that already exceeds its rung pushes its rung
/// (and the rungs above it) up, keeping every step even and strict.
pub fn mark_targets(c: &Configuration, marks: &Marks) -> [usize; 4] {
    let m = (0..c.points.len())
        .filter(|i| !marks.contains(*i))
        .map(|i| c.valence(i))
        .max()
        .unwrap_or(0);
    let m = m + m % 2;
    let even_up = |v: usize| v + v % 2;
    let order = marks.in_order();
    let mut targets = [0usize; 4];
    let mut floor = m + 2;
    for rung in (0..4).rev() {
        let t = floor.max(even_up(c.valence(order[rung])));
        targets[rung] = t;
        floor = t + 2;
    }
    targets
}

/// Add generic lines through the marks until their valences are strictly
/// above every other point, in the order 0, 1, ∞, z.
pub fn amplify_marks(c: &Configuration) -> Result<Configuration> {
    let marks = c.marks.ok_or_else(|| Error::Schema("configuration has no marks".into()))?;
    if let Some(i) = (0..c.points.len()).find(|&i| c.valence(i) % 2 == 1) {
        return Err(Error::ParityViolation(format!("point {i} has odd valence before amplification")));
    }
    let targets = mark_targets(c, &marks);
    let mut out = c.clone();
    let mut rng = pass_rng(c.provenance.seed, 2);
    let order = marks.in_order();
    for rung in (0..4).rev() {
        let idx = order[rung];
        while out.valence(idx) < targets[rung] {
            out.add_generic_line(idx, &mut rng)?;
        }
    }
    Ok(out)
}

/// True when the marks are distinct, collinear, and on the axis.
pub fn marks_on_axis(c: &Configuration, marks: &Marks) -> bool {
    let o = marks.in_order();
    let distinct = (0..4).all(|i| (i + 1..4).all(|j| o[i] != o[j]));
    let axis = AxisPoints::new(&c.field).axis;
    distinct
        && o.iter().all(|&i| c.points[i].lies_on(&axis))
        && collinear(&c.points[o[0]], &c.points[o[1]], &c.points[o[3]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::Poly;

    fn field() -> Arc<NumberField> {
        NumberField::new(&Poly::from_ints(&[-2, 0, 1])).unwrap()
    }

    #[test]
    fn three_generic_lines() {
        let k = field();
        let lines = [[1, 0, 0], [0, 1, 0], [1, 1, -1]].map(|v| ProjLine::from_ints(&k, v));
        let c = derive_points(&k, &lines).unwrap();
        assert_eq!(c.points().len(), 3);
        assert_eq!(c.line_count(), 3);
        assert!(c.valences().entries.iter().all(|&(_, e)| e == 2));
        assert!(c.verify_incidence());
    }

    #[test]
    fn three_concurrent_lines() {
        let k = field();
        let lines = [[1, 0, 0], [0, 1, 0], [1, 1, 0]].map(|v| ProjLine::from_ints(&k, v));
        let c = derive_points(&k, &lines).unwrap();
        assert_eq!(c.points().len(), 1);
        assert_eq!(c.valence(0), 3);
        assert!(c.verify_incidence());
    }

    #[test]
    fn duplicate_line_rejected() {
        let k = field();
        let lines = [[1, 0, 0], [2, 0, 0]].map(|v| ProjLine::from_ints(&k, v));
        assert_eq!(derive_points(&k, &lines).unwrap_err(), Error::DuplicateLine(0));
    }

    #[test]
    fn odd_point_gets_one_line() {
        let k = field();
        let lines = [[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, 1, -1]].map(|v| ProjLine::from_ints(&k, v));
        let c = derive_points(&k, &lines).unwrap();
        let origin = c.point_of(&ProjPoint::from_ints(&k, [0, 0, 1])).unwrap();
        assert_eq!(c.valence(origin), 3);
        let a = augment_even_valence(&c).unwrap();
        assert_eq!(a.valence(origin), 4);
        assert_eq!(a.line_count(), 5);
        assert!(a.valences().entries.iter().all(|&(_, e)| e % 2 == 0));
        assert!(a.verify_incidence());
    }

    #[test]
    fn even_configuration_unchanged() {
        let k = field();
        let lines = [[1, 0, 0], [0, 1, 0], [1, 1, -1]].map(|v| ProjLine::from_ints(&k, v));
        let c = derive_points(&k, &lines).unwrap();
        assert_eq!(augment_even_valence(&c).unwrap(), c);
    }

    #[test]
    fn pair_coverage_detects_missing_point() {
        let k = field();
        let lines = [[1, 0, 0], [0, 1, 0], [1, 1, -1]].map(|v| ProjLine::from_ints(&k, v));
        let c = derive_points(&k, &lines).unwrap();
        assert!(c.check_pair_coverage().is_ok());
        assert!(matches!(c.without_point(1).check_pair_coverage(), Err(Error::MissedIntersection(..))));
    }
}
