use num_rational::BigRational;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("ZeroDenominator: division by the zero rational function")]
    ZeroDenominator,
    #[error("EvaluationAtPole: {root} is a root of the denominator")]
    EvaluationAtPole { root: BigRational },
    #[error("DivergesAtInfinity: numerator degree {num_deg} exceeds denominator degree {den_deg}")]
    DivergesAtInfinity { num_deg: usize, den_deg: usize },
    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("invalid Lie presentation: {0}")]
    InvalidLie(String),
    #[error("Jacobi identity fails on ({0}, {1}, {2})")]
    JacobiFailure(String, String, String),
    #[error("form is not invariant on ({0}, {1}, {2})")]
    InvarianceFailure(String, String, String),
    #[error("SingularForm: the Gram matrix of the invariant form is not invertible")]
    SingularForm,
    #[error("NotSimple: the adjoint Casimir does not act by a scalar")]
    NotSimple,
    #[error("CriticalLevel: level equals minus the dual Coxeter number")]
    CriticalLevel,
    #[error("elements belong to different presentations")]
    MixedPresentations,
    #[error("inhomogeneous element; grades present: {0}")]
    Inhomogeneous(String),
    #[error("invalid vertex algebra presentation: {0}")]
    InvalidPresentation(String),
    #[error("coefficient field mismatch between presentations")]
    ParameterMismatch,
    #[error("NotTorusDiagonal: zero mode of current {0} is not diagonal on the basis")]
    NotTorusDiagonal(usize),
    #[error("homomorphism check failed: {0}")]
    HomomorphismFailure(String),
    #[error("divergent coefficient at infinity on monomial {0}")]
    DivergentLimit(String),
    #[error("decoupling hypothesis fails: commutant dimension {commutant}, span of words {words}")]
    DecouplingHypothesis { commutant: usize, words: usize },
    #[error("unknown family or parameters: {0}")]
    UnknownFamily(String),
    #[error("{0}")]
    Usage(String),
}
