//! The full encoding pipeline: irreducibility check, SLP, gadgets, and the
//! two augmentation passes.

use std::sync::Arc;

use crate::configuration::{amplify_marks, augment_even_valence, Configuration};
use crate::error::{Error, Result};
use crate::numberfield::{check_irreducible, Irreducibility, NumberField, Poly};
use crate::slp::{compile_polynomial, emit_configuration, Slp};

pub const DEFAULT_PRECISION: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineConfig {
    pub poly: Poly,
    pub seed: i64,
    pub precision: f64,
}

impl PipelineConfig {
    pub fn new(poly: Poly) -> Self {
        PipelineConfig { poly, seed: 0, precision: DEFAULT_PRECISION }
    }

    pub fn parse(poly: &str) -> Result<Self> {
        Ok(Self::new(Poly::parse(poly)?))
    }

    pub fn with_seed(mut self, seed: i64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_precision(mut self, precision: f64) -> Self {
        self.precision = precision;
        self
    }
}

/// Intermediate products of one pipeline run.
#[derive(Clone, Debug)]
pub struct Build {
    pub field: Arc<NumberField>,
    pub irreducibility: Irreducibility,
    pub slp: Slp,
    /// The gadget configuration before augmentation.
    pub gadgets: Configuration,
    pub configuration: Configuration,
}

/// Field for `p`, refusing moduli known to be reducible.
pub fn field_for(p: &Poly) -> Result<(Arc<NumberField>, Irreducibility)> {
    let deg = p.degree().unwrap_or(0);
    if deg < 2 {
        return Err(Error::TrivialField(deg));
    }
    let verdict = check_irreducible(&Poly::from_big_ints(&p.primitive_integer()));
    if let Irreducibility::Reducible(f) = &verdict {
        return Err(Error::ReducibleModulus { factor: f.to_string() });
    }
    Ok((NumberField::new(p)?, verdict))
}

pub fn build(cfg: &PipelineConfig) -> Result<Build> {
    let (field, irreducibility) = field_for(&cfg.poly)?;
    let slp = compile_polynomial(&cfg.poly)?;
    let gadgets = emit_configuration(&slp, &field, cfg.seed)?.configuration;
    let even = augment_even_valence(&gadgets)?;
    let configuration = amplify_marks(&even)?;
    Ok(Build { field, irreducibility, slp, gadgets, configuration })
}

pub fn build_configuration(cfg: &PipelineConfig) -> Result<Configuration> {
    build(cfg).map(|b| b.configuration)
}
