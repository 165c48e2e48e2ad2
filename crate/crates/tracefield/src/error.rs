use thiserror::Error;

/// Errors shared across the whole crate.
///
/// Variants carry enough context to be actionable from the CLI; exact-mode
/// operations never silently degrade to floats on error.
#[derive(Debug, Clone, Error)]
pub enum Error {
    // ---- number fields ----
    #[error("minimal polynomial is reducible over Q: {0}")]
    ReducibleMinimalPolynomial(String),
    #[error("complex conjugate of the selected root is not expressible inside the field")]
    ConjugationNotInternal,
    #[error("root hint does not isolate a single root of the minimal polynomial")]
    AmbiguousRoot,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different number fields")]
    FieldMismatch,
    #[error("cannot mix exact and float values: {0}")]
    ModeMismatch(String),

    // ---- hermitian geometry ----
    #[error("Hermitian form is degenerate (zero eigenvalue)")]
    DegenerateForm,
    #[error("point is not in the interior of complex hyperbolic space")]
    NotInteriorPoint,
    #[error("points are proportional, no polar vector exists")]
    ProportionalPoints,
    #[error("transform matrix is singular")]
    SingularTransform,

    // ---- isometries ----
    #[error("matrix is not special unitary for the given form")]
    NotUnitary,
    #[error("float-mode classification is undecidable at this tolerance: {0}")]
    BoundaryCase(String),
    #[error("trace belongs to a unipotent lift; eigenvalue is trace/3 directly")]
    UnipotentTrace,
    #[error("2 Re(tr) + 3 = 0 forces a unipotent-type parabolic; use the unipotent branch")]
    DegenerateDenominator,
    #[error("matrix is not parabolic")]
    NotParabolic,
    #[error("field does not contain a primitive cube root of unity")]
    CubeRootUnavailable,

    // ---- trace field pipeline ----
    #[error("operation requires exact mode")]
    FloatModeUnsupported,
    #[error("search failed: {0}")]
    NotFound(String),
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("theorem hypothesis could not be certified: {0}")]
    HypothesisNotCertified(String),
    #[error("Gram matrix of the word basis is singular")]
    GramSingular,
    #[error("internal contradiction, a derived invariant failed: {0}")]
    InternalContradiction(String),

    // ---- tetrahedra ----
    #[error("vertices are in degenerate position: {0}")]
    DegeneratePosition(String),
    #[error("zero denominator in invariant formula")]
    ZeroDenominator,
    #[error("linear system for the fourth vertex is singular")]
    SingularSystem,
    #[error("invariant quadruple is inconsistent with any actual tetrahedron")]
    InconsistentInvariant,
    #[error("degenerate point triple: {0}")]
    DegenerateTriple(String),
    #[error("value is not representable in the ambient field: {0}")]
    FieldRepresentationFailure(String),

    // ---- arithmetic groups ----
    #[error("matrix entry lies outside the declared field")]
    EntryOutsideField,
    #[error("form does not have signature (n,1) at the identity place")]
    WrongSignatureAtIdentity,
    #[error("no integral basis construction for this field shape: {0}")]
    NoIntegralBasis(String),
    #[error("element is not loxodromic")]
    NotLoxodromic,
    #[error("extension is not CM: {0}")]
    NotCmExtension(String),

    // ---- input handling ----
    #[error("invalid input at {pointer}: {message}")]
    Schema { pointer: String, message: String },
}

impl Error {
    pub fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
