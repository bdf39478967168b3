//! Encoding algebraic numbers as point-line configurations over their number
//! field, decoding them back by valences and cross-ratios, and the divisor
//! bookkeeping of a `(ℤ/2)³` branched cover of the blown-up plane.

pub mod configuration;
pub mod cover;
pub mod decode;
pub mod error;
pub mod io;
pub mod numberfield;
pub mod pipeline;
pub mod projgeom;
pub mod render;
pub mod slp;

pub use error::{Error, Result};
