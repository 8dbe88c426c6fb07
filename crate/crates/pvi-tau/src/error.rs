//! Crate-wide error type.

use alloc::string::String;

use crate::poly::Poly;
use crate::rational::Rational;

/// Errors raised by exact operations.
///
/// Anomalies discovered while *generating* a sequence (a recurrence step
/// whose division is not exact, a degree-law violation, ...) are data on
/// the sequence, not errors; see [`crate::toda::Anomaly`].
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Polynomial division left a nonzero remainder.
    #[error("division is not exact, remainder {remainder}")]
    NonExactDivision { remainder: Poly<Rational> },

    /// An operation that requires integer coefficients saw a proper fraction.
    #[error("polynomial has a non-integral coefficient {coefficient} at degree {degree}")]
    NonIntegralInput { degree: usize, coefficient: Rational },

    /// Discriminant of a constant polynomial.
    #[error("discriminant requires a nonconstant polynomial")]
    ConstantPolynomial,

    /// Division by the zero rational function.
    #[error("division by the zero rational function")]
    DivisionByZeroFunction,

    /// Evaluation at a pole of the rational function.
    #[error("evaluation at a pole, t = {at}")]
    PoleEvaluation { at: Rational },

    /// A parameter choice makes a coefficient formula or denominator vanish.
    #[error("parameter pole: {0}")]
    ParameterPole(String),

    /// A tau sequence is too short for the requested index.
    #[error("sequence of length {len} is too short for index {wanted}")]
    SequenceTooShort { wanted: usize, len: usize },

    /// q is identically 0, 1 or t, which degenerates the Hamiltonian
    /// formulas.
    #[error("q is degenerate (identically 0, 1 or t)")]
    DegenerateQ,

    /// The supplied q does not satisfy the Riccati equation for b.
    #[error("q does not satisfy the Riccati equation for the given chart")]
    RiccatiViolation,

    /// A formula that requires the collapsed chart b1 = b3 + 1 was called
    /// off-chart.
    #[error("chart violation: b1 != b3 + 1")]
    ChartViolation,

    /// The Bäcklund denominator vanishes identically.
    #[error("degenerate transformation: denominator is identically zero")]
    DegenerateTransformation,

    /// A discriminant-model factor vanishes at a sample point.
    #[error("sample ({r}, {s}) lies on a zero of model factor {factor}")]
    SampleAtFactorZero { r: Rational, s: Rational, factor: String },

    /// Invalid input that is not one of the structured cases above.
    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = core::result::Result<T, Error>;
