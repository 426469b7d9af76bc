//! Exact combinatorial invariants of graph algebras.
//!
//! The crate covers finite directed and separated graphs, finitely presented
//! commutative monoids with certified decisions, self-similar graph actions,
//! canonical resolutions of bipartite separated graphs, configuration-space
//! balls and integer K-theory.
//!
//! Integer linear algebra is generic over [`scalar::ExactInt`]; the aliases
//! below fix the arbitrary-precision instantiation used everywhere else.

pub mod configspace;
pub mod graphs;
pub mod ktheory;
pub mod linalg;
pub mod monoids;
pub mod resolution;
pub mod scalar;
pub mod selfsimilar;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Arbitrary-precision integer used by all public algorithms.
pub type Integer = BigInt;
/// Exact rational used for invariant weights and measures.
pub type Rational = BigRational;
/// Integer matrix over [`Integer`].
pub type IntMatrix = linalg::Matrix<Integer>;
/// Smith decomposition over [`Integer`].
pub type Smith = ktheory::SmithDecomposition<Integer>;
/// Finitely generated abelian group descriptor over [`Integer`].
pub type GroupDescriptor = ktheory::AbelianGroupDescriptor<Integer>;
