//! JSON encodings, schema version 1.
//!
//! Rationals are `{"n": "<int>", "d": "<int>"}` with decimal strings, field
//! elements are arrays of rationals, points and lines are arrays of three
//! elements. A configuration file is authoritative in its lines; points and
//! incidences are optional and, when present, must agree with the lines.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::configuration::{derive_points, Configuration, Marks, Provenance};
use crate::error::{Error, Result};
use crate::numberfield::{check_irreducible, Irreducibility, NFElement, NumberField, Poly, Rational};
use crate::projgeom::{ProjLine, ProjPoint};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub n: String,
    pub d: String,
}

impl From<&Rational> for RationalJson {
    fn from(q: &Rational) -> Self {
        RationalJson { n: q.numer().to_string(), d: q.denom().to_string() }
    }
}

impl RationalJson {
    pub fn to_rational(&self) -> Result<Rational> {
        let parse = |s: &str| BigInt::from_str(s).map_err(|_| Error::Schema(format!("bad integer {s:?}")));
        let (n, d) = (parse(&self.n)?, parse(&self.d)?);
        if !d.is_positive() {
            return Err(Error::Schema(format!("denominator {d} is not positive")));
        }
        Ok(Rational::new(n, d))
    }
}

pub fn element_json(a: &NFElement) -> Vec<RationalJson> {
    a.coeffs().iter().map(RationalJson::from).collect()
}

pub fn element_from_json(field: &Arc<NumberField>, v: &[RationalJson]) -> Result<NFElement> {
    field.element(v.iter().map(RationalJson::to_rational).collect::<Result<_>>()?)
}

type TripleJson = [Vec<RationalJson>; 3];

fn triple_json(c: &[NFElement; 3]) -> TripleJson {
    [0, 1, 2].map(|i| element_json(&c[i]))
}

fn triple_from_json(field: &Arc<NumberField>, t: &TripleJson) -> Result<[NFElement; 3]> {
    Ok([element_from_json(field, &t[0])?, element_from_json(field, &t[1])?, element_from_json(field, &t[2])?])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarksJson {
    pub zero: usize,
    pub one: usize,
    pub inf: usize,
    pub z: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceJson {
    pub seed: i64,
    pub gadget_retries: u32,
    pub generic_retries: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigurationFile {
    pub v: u32,
    /// Human-readable modulus; informational.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
    /// Ascending coefficients of the modulus.
    pub modulus: Vec<RationalJson>,
    #[serde(default)]
    pub provenance: ProvenanceJson,
    pub lines: Vec<TripleJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<TripleJson>>,
    /// For each point, the indices of the lines through it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub incidence: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marks: Option<MarksJson>,
}

pub fn configuration_to_file(c: &Configuration) -> ConfigurationFile {
    let modulus = c.field().modulus();
    let p = c.provenance;
    ConfigurationFile {
        v: SCHEMA_VERSION,
        poly: Some(modulus.to_string()),
        modulus: modulus.coeffs().iter().map(RationalJson::from).collect(),
        provenance: ProvenanceJson { seed: p.seed, gadget_retries: p.gadget_retries, generic_retries: p.generic_retries },
        lines: c.lines().iter().map(|l| triple_json(l.coords())).collect(),
        points: Some(c.points().iter().map(|q| triple_json(q.coords())).collect()),
        incidence: Some(c.incidence().to_vec()),
        marks: c.marks.map(|m| MarksJson { zero: m.zero, one: m.one, inf: m.inf, z: m.z }),
    }
}

/// Modulus of a stored configuration, rejecting moduli known to be reducible.
fn field_from_modulus(coeffs: &[RationalJson]) -> Result<Arc<NumberField>> {
    let p = Poly::new(coeffs.iter().map(RationalJson::to_rational).collect::<Result<_>>()?);
    if p.is_zero() {
        return Err(Error::Schema("zero modulus".into()));
    }
    if let Irreducibility::Reducible(f) = check_irreducible(&Poly::from_big_ints(&p.primitive_integer())) {
        return Err(Error::ReducibleModulus { factor: f.to_string() });
    }
    NumberField::new(&p)
}

pub fn configuration_from_file(f: &ConfigurationFile) -> Result<Configuration> {
    if f.v != SCHEMA_VERSION {
        return Err(Error::Schema(format!("unsupported schema version {}", f.v)));
    }
    let field = field_from_modulus(&f.modulus)?;
    let lines = f
        .lines
        .iter()
        .map(|t| {
            let [a, b, c] = triple_from_json(&field, t)?;
            ProjLine::new(a, b, c).map_err(|_| Error::Schema("zero line".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    if lines.len() < 2 {
        return Err(Error::Schema("a configuration needs at least two lines".into()));
    }
    let mut c = derive_points(&field, &lines)?;
    if let Some(points) = &f.points {
        let stored = points
            .iter()
            .map(|t| {
                let [a, b, cc] = triple_from_json(&field, t)?;
                ProjPoint::new(a, b, cc).map_err(|_| Error::Schema("zero point".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        if stored != c.points() {
            return Err(Error::Schema("stored points disagree with the lines".into()));
        }
    }
    if let Some(inc) = &f.incidence {
        if inc.as_slice() != c.incidence() {
            return Err(Error::Schema("stored incidence disagrees with the lines".into()));
        }
    }
    let p = f.provenance;
    c.provenance = Provenance { seed: p.seed, gadget_retries: p.gadget_retries, generic_retries: p.generic_retries };
    if let Some(m) = f.marks {
        let n = c.points().len();
        if [m.zero, m.one, m.inf, m.z].iter().any(|&i| i >= n) {
            return Err(Error::Schema("mark index out of range".into()));
        }
        let marks = Marks { zero: m.zero, one: m.one, inf: m.inf, z: m.z };
        if !crate::configuration::marks_on_axis(&c, &marks) {
            return Err(Error::Schema("marks are not distinct points on the axis".into()));
        }
        c.marks = Some(marks);
    }
    Ok(c)
}

pub fn configuration_to_json(c: &Configuration) -> String {
    to_json(&configuration_to_file(c))
}

pub fn configuration_from_json(s: &str) -> Result<Configuration> {
    let value: Value = serde_json::from_str(s).map_err(|e| Error::Schema(e.to_string()))?;
    match value.get("v") {
        Some(Value::Number(n)) if n.as_u64() == Some(SCHEMA_VERSION as u64) => {}
        Some(v) => return Err(Error::Schema(format!("unsupported schema version {v}"))),
        None => return Err(Error::Schema("missing schema version \"v\"".into())),
    }
    let file: ConfigurationFile = serde_json::from_value(value).map_err(|e| Error::Schema(e.to_string()))?;
    configuration_from_file(&file)
}

/// Pretty JSON with a trailing newline; field order is fixed by the types.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::{build_configuration, PipelineConfig};

    #[test]
    fn rational_encoding() {
        let q = Rational::new((-3).into(), 6.into());
        let j = RationalJson::from(&q);
        assert_eq!(j, RationalJson { n: "-1".into(), d: "2".into() });
        assert_eq!(j.to_rational().unwrap(), q);
        assert!(RationalJson { n: "1".into(), d: "0".into() }.to_rational().is_err());
        assert!(RationalJson { n: "x".into(), d: "1".into() }.to_rational().is_err());
    }

    #[test]
    fn configuration_round_trip() {
        let c = build_configuration(&PipelineConfig::parse("x^2 - 2").unwrap()).unwrap();
        let s = configuration_to_json(&c);
        let back = configuration_from_json(&s).unwrap();
        assert_eq!(back, c);
        assert_eq!(configuration_to_json(&back), s);
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(configuration_from_json("{}"), Err(Error::Schema(_))));
        assert!(matches!(configuration_from_json("{\"v\":2}"), Err(Error::Schema(_))));
        assert!(matches!(configuration_from_json("not json"), Err(Error::Schema(_))));
        let c = build_configuration(&PipelineConfig::parse("x^2 - 2").unwrap()).unwrap();
        let mut f = configuration_to_file(&c);
        f.incidence.as_mut().unwrap()[0].push(999);
        assert!(matches!(configuration_from_file(&f), Err(Error::Schema(_))));
        let mut f = configuration_to_file(&c);
        let dup = f.lines[3].clone();
        f.lines.push(dup);
        f.points = None;
        f.incidence = None;
        assert!(matches!(configuration_from_file(&f), Err(Error::DuplicateLine(3))));
    }
}
