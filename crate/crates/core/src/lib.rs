//! Exact toric models of tangential varieties of Segre–Veronese varieties.
//!
//! Given `(k, a, b)` the crate builds the affine semigroup of the local
//! toric chart, its group, cone and facets, and decides smoothness,
//! normality, the Cohen–Macaulay and the Gorenstein property with exact
//! integer arithmetic (window-bounded where a search is unavoidable).
//!
//! The lattice layer is generic over the integer type ([`Scalar`]); the
//! aliases below fix the choices used by the model.

pub mod blocks;
pub mod classify;
pub mod dd;
pub mod error;
pub mod fixtures;
pub mod hoa_trung;
pub mod lattice;
pub mod membership;
pub mod model;
pub mod params;
pub mod scalar;
pub mod simplicial;
pub mod toric_ideal;

pub use error::{Error, Result};
pub use lattice::{IntegerMatrix, LatticeVector, Sublattice};
pub use model::{AffineSemigroup, Facet, FacetId};
pub use params::SVParams;
pub use scalar::Scalar;

/// Arbitrary-precision integer used by every normal form.
pub type Int = num_bigint::BigInt;
/// Matrix over [`Int`].
pub type Matrix = IntegerMatrix<Int>;
/// Sublattice with an arbitrary-precision Hermite basis.
pub type Lattice = Sublattice<Int>;
/// Machine-word lattice for hot-path membership tests.
pub type SmallLattice = Sublattice<i64>;
/// A point of the model, coordinates in lexicographic index order.
pub type Point = LatticeVector<i64>;
