//! Exact computation in complex hyperbolic geometry: trace fields of
//! finitely generated subgroups of SU(2,1), conjugation of such groups into
//! their trace field, cross-ratio invariants of ideal tetrahedra, and
//! arithmeticity data for unitary groups over CM fields.
//!
//! Everything runs in one of two scalar modes. Exact mode works over a
//! number field E = Q(alpha) stable under complex conjugation, with
//! certified interval embeddings into C; equalities and signs are decided,
//! not estimated. Float mode uses complex doubles with explicit tolerances
//! and is available for everything that does not require recognizing a
//! field, which exact mode alone can do.

pub mod arithmetic;
pub mod error;
pub mod hermitian;
pub mod interval;
pub mod isometry;
pub mod json;
pub mod linalg;
pub mod matrix;
pub mod numberfield;
pub mod poly;
pub mod rational;
pub mod scalar;
pub mod tetrahedron;
pub mod trace_field;
pub mod words;

pub use error::{Error, Result};
pub use hermitian::{BoundaryPoint, HermitianForm, PointType};
pub use matrix::{Matrix, Vector};
pub use numberfield::{subfield_generated, FieldElement, NumberField, Sign, SubfieldBasis};
pub use rational::Rational;
pub use scalar::Scalar;

/// Default residual tolerance for float-mode predicates.
pub const DEFAULT_TOL: f64 = 1e-9;
