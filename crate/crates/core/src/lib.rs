//! Exact computation of Kac counting polynomials and cuspidal polynomials of
//! quivers, inside a finite dimension box.
//!
//! The crate is organized bottom-up:
//!
//! * [`exact`] — rationals, univariate polynomials and rational functions,
//!   partitions; everything is exact arithmetic.
//! * [`series`] — box-truncated multivariate power series with plethystic
//!   Exp/Log and Adams operations.
//! * [`quiver`] — the quiver data model, Euler forms, vertex classification
//!   and simple reflections.
//! * [`fforacle`] — the finite-field counting oracle: conjugacy classes of
//!   `GL_n(F_p)`, Burnside orbit counts, interpolation to the H/I/A tables.
//! * [`borcherds`] — Weyl group enumeration and the denominator-formula
//!   engine for characters of enveloping algebras.
//! * [`cuspidal`] — the recursions computing `C` and `C^abs` tables, the
//!   closed forms for totally negative quivers, and the consistency checkers.

pub mod borcherds;
pub mod cuspidal;
pub mod exact;
pub mod fforacle;
pub mod quiver;
pub mod series;

use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("box mismatch between series operands")]
    BoxMismatch,
    #[error("series not invertible")]
    NotInvertible,
    #[error("Exp requires augmentation-ideal input")]
    NonzeroConstantTerm,
    #[error("unsupported dimension {0} for the finite-field oracle")]
    UnsupportedDimension(String),
    #[error("degree bound violated")]
    DegreeBoundViolated,
    #[error("oracle inconsistency: {0}")]
    OracleInconsistency(String),
    #[error("consistency violation: {0}")]
    ConsistencyViolation(String),
    #[error("transfer failed integrality: {0}")]
    TransferIntegrality(String),
    #[error("reflection only at real vertices")]
    ReflectionAtImaginaryVertex,
    #[error("internal: W moved an imaginary root negative")]
    NegativeExponent,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
