use thiserror::Error;

/// Errors raised by the algebraic operations.
///
/// Every variant is an input error in the sense of the CLI exit codes: the
/// arguments do not satisfy the operation's precondition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QError {
    #[error("element {elem} is outside the carrier (size {size})")]
    OutOfCarrier { elem: usize, size: usize },

    #[error("object {0} does not exist in the base")]
    UnknownObject(usize),

    #[error("incompatible objects: {0}")]
    IncompatibleObjects(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("invalid quantaloid: {0}")]
    InvalidQuantaloid(String),

    #[error("different base quantaloids")]
    DifferentBases,

    #[error("not a regular semicategory")]
    NotRegular,

    #[error("not a totally regular semicategory")]
    NotTotallyRegular,

    #[error("not a category")]
    NotCategory,

    #[error("not a normal category")]
    NotNormal,

    #[error("not a regular semidistributor")]
    NotRegularSemidistributor,

    #[error("not a semifunctor")]
    NotSemifunctor,

    #[error("not a regular semifunctor")]
    NotRegularSemifunctor,

    #[error("object map is not type-preserving at object {0}")]
    NotTypePreserving(usize),

    #[error("not a left adjoint")]
    NotLeftAdjoint,

    #[error("arrow {0} is not idempotent")]
    NotIdempotent(String),

    #[error("arrow {0} is not a monad")]
    NotMonad(String),

    #[error("monad {monad} at object {object} does not split")]
    NoSplitting { object: String, monad: String },

    #[error("structure is not Cauchy complete")]
    NotCauchyComplete,

    #[error("base is not a split-idempotent completion of the expected quantaloid")]
    NotIdmBase,

    #[error("unsupported base: {0}")]
    UnsupportedBase(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("unknown property suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T, E = QError> = std::result::Result<T, E>;
