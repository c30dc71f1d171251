//! Exact symbolic computation in two-parameter quantum groups of finite
//! symmetric type.
//!
//! The crate works entirely over the field Q(v,t) of rational functions in
//! two variables, with arbitrary-precision rational coefficients.  On top of
//! that field it builds, bottom up:
//!
//! * [`scalars`] — Laurent polynomials, rational functions, quantum integers;
//! * [`cartan`] — Cartan data, the three bilinear forms, root and weight
//!   lattices, Weyl groups, weight multiplicities;
//! * [`freealg`] — the free algebra on the Chevalley-type symbols, its
//!   twisted coproduct and bilinear form, and graded bases of the quotient
//!   by the radical;
//! * [`algebra`] — the quantum group itself: triangular normal forms, the
//!   Hopf structure, the adjoint action, commutation maps, the graded star
//!   product;
//! * [`pairing`] — the skew-Hopf pairing between the Borel halves, the
//!   invariant bilinear form, dual bases;
//! * [`repr`] — truncated Verma modules, simple modules, quantum traces;
//! * [`centre`] — the Harish-Chandra map, central-element constructions and
//!   the criterion for extra central elements in nonzero degrees.
//!
//! Everything is exact: there is no floating point anywhere, and every
//! equality test is an identity in Q(v,t).

pub mod scalars;
pub(crate) mod linalg;
pub mod cartan;
pub mod freealg;
pub mod algebra;
pub mod pairing;
pub mod repr;
pub mod centre;
pub mod text;

#[cfg(doctest)]
mod book;

pub use algebra::{Algebra, StarSign, TensorUElement, UElement};
pub use cartan::{CartanDatum, RootVec, Weight, WeylGroup};
pub use centre::{CartanElement, CentralCandidate};
pub use freealg::{FreeElement, GradedBasis, Word};
pub use repr::WeightModule;
pub use scalars::{LaurentPoly, RationalFunction};

/// Errors shared by every layer of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at t = 1")]
    PoleAtTOne,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("not of finite type: {0}")]
    NotFiniteType(String),
    #[error("algebras require a symmetric-type matrix (all diagonal entries equal to 1)")]
    NotSymmetricType,
    #[error("exponent is not an integer: {0}")]
    FractionalExponent(String),
    #[error("singular Gram matrix: pairing degenerate at degree {0}")]
    DegeneratePairing(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
