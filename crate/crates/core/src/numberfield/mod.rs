//! Exact arithmetic in ℚ and in ℚ[x]/(p), plus certified embeddings into ℂ.

mod field;
mod irreducible;
mod poly;
mod roots;

pub use field::{NFElement, NumberField};
pub use irreducible::{check_irreducible, Irreducibility};
pub use poly::Poly;
pub use roots::{embed, embed_poly, isolate_roots, Disc, EmbeddingApprox};

/// Arbitrary-precision rational; always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;
