//! Exact permutation group algebras for wreath-like groups.
//!
//! Orbits of a wreath-like group on finite sets are identified with words
//! (ordered case) or multisets (unordered case) of weighted *blocks*. The
//! group itself never appears: a [`GroupModel`] carries an alphabet profile
//! and a split table describing how each block decomposes when a subset is
//! removed, which is all that products, suborbit counts and Ramsey orderings
//! need.
//!
//! Coefficient arithmetic is generic over [`Scalar`]; the aliases below fix
//! the exact rational instantiation used throughout the verifiers.

pub mod algebra;
pub mod blocks;
pub mod error;
pub mod kantor;
pub mod models;
pub mod ramsey;
pub mod scalar;
pub mod shuffle;
pub mod transforms;
pub mod verify;

pub use algebra::AlgebraElement;
pub use blocks::{Block, BlockMultiset, OrbitKey, Word};
pub use error::{Error, Result};
pub use kantor::Matrix;
pub use models::{GroupKind, GroupModel};
pub use scalar::Scalar;
pub use shuffle::WordPolynomial;
pub use transforms::IntSeries;

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;

/// Algebra elements with exact rational coefficients.
pub type Element = AlgebraElement<Rational>;

/// Algebra elements with double precision coefficients (approximate).
pub type Element64 = AlgebraElement<f64>;

/// Exact rational matrices.
pub type QMatrix = Matrix<Rational>;

/// Double precision matrices (approximate ranks only).
pub type Matrix64 = Matrix<f64>;
