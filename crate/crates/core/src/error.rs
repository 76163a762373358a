use thiserror::Error;

/// Errors raised by the algebra engine, its solvers and the text-format parser.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("scalar syntax error at column {column}: {message}")]
    ScalarSyntax { column: usize, message: String },

    #[error("tensor order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("invalid permutation {0:?}")]
    BadPermutation(Vec<usize>),

    #[error("operation needs a coproduct")]
    MissingCoproduct,

    #[error("a form of order {form} cannot be applied to legs {legs:?} of an order-{order} tensor")]
    LegMismatch {
        form: usize,
        legs: Vec<usize>,
        order: usize,
    },

    #[error("axiom violated: {0}")]
    AxiomViolation(String),

    #[error("pivotal data (pivot and Drinfeld twist) is required")]
    MissingPivotalData,

    #[error("{0} solution space is zero-dimensional")]
    DimensionZero(String),

    #[error("inconsistent modulus: {0}")]
    InconsistentModulus(String),

    #[error("expected a {expected}-dimensional solution space, found dimension {found}")]
    WrongSolutionDim { expected: usize, found: usize },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("modules over different algebras")]
    AlgebraMismatch,

    #[error("algebra is not unimodular")]
    NotUnimodular,

    #[error("form is not a symmetrised cointegral: {0}")]
    NotSymmetrisedCointegral(String),

    #[error("invalid projective presentation: {0}")]
    BadPresentation(String),

    #[error("beta^4 = {found}, expected {expected}")]
    BadBeta { found: String, expected: String },

    #[error("N = {n} exceeds the configured maximum {max}")]
    Overflow { n: usize, max: usize },

    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Semantic(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
