use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("ill-formed homomorphism: {0}")]
    IllFormedHom(String),

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("triple is not composable: {0}")]
    NonComposableTriple(String),

    #[error("coboundary search space too large: l = {0} (at most 4 supported)")]
    SearchSpaceTooLarge(usize),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("invalid functor: {0}")]
    InvalidFunctor(String),

    #[error("not a P-graph: {0}")]
    NotAPGraph(String),

    #[error("degree is not an order-two generator: {0}")]
    DegreeNotOrderTwo(String),

    #[error("missing grading label for edge {0:?}")]
    MissingLabel(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("invalid input: {0}")]
    Invalid(String),
}
