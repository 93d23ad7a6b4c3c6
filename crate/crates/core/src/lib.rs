//! Exact lower algebraic K-theory of small finite rings, lazy infinite
//! matrices for cone and Toeplitz identities, and cyclic/bar homology of
//! finite-dimensional rational algebras.

pub mod abelian;
pub mod check;
pub mod cone;
pub mod config;
pub mod error;
pub mod excision;
pub mod homology;
pub mod kone;
pub mod kzero;
pub mod matgroup;
pub mod ring;
pub mod scalar;
pub mod toeplitz;

pub use abelian::{
    group_from_presentation, smith_normal_form, Coords, IntMatrix, PresentedAbelianGroup,
};
pub use config::{Budget, Cache, Context};
pub use error::{Error, Result};
pub use ring::{unitalize_finite, Catalog, Elem, FiniteRing, RMatrix, RingSpec};

/// Exact integers used by every abelian-group computation.
pub type Integer = num_bigint::BigInt;
/// Exact rationals used by the homology complexes.
pub type Rational = num_rational::Ratio<Integer>;
