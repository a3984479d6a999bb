use thiserror::Error;

/// Violations reported by [`crate::group::FiniteGroup::from_table`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("table is not square (row {row} has {len} entries, expected {expected})")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("empty table")]
    Empty,
    #[error("entry {value} at ({row}, {col}) is out of range")]
    NotClosed { row: usize, col: usize, value: usize },
    #[error("element 0 is not a two-sided identity (witness {0})")]
    NoIdentityAtZero(usize),
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    Group(#[from] GroupError),
    #[error("invalid invariant factors: {0}")]
    InvalidFactors(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("not a homomorphism: f({a}·{b}) ≠ f({a})·f({b})")]
    NotHomomorphism { a: usize, b: usize },
    #[error("coboundary is only defined up to degree 3, got degree {0}")]
    DegreeTooHigh(usize),
    #[error("not a cocycle: coboundary is non-zero at {witness:?}")]
    NotACocycle { witness: Vec<usize> },
    #[error("value at {witness:?} breaks normalization")]
    NotNormalized { witness: Vec<usize> },
    #[error("coefficient map is not equivariant at group element {x}, generator {generator}")]
    NotEquivariant { x: usize, generator: usize },
    #[error("{what} of size {size} exceeds the cap {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },
    #[error("obstruction class is non-zero: {class:?}")]
    ObstructionNonzero { class: Vec<i64> },
    #[error("functors cannot be composed: source/target mismatch")]
    SourceTargetMismatch,
    #[error("abelian cocycle identity {identity} fails at {witness:?}")]
    NotAbelianCocycle { identity: usize, witness: Vec<usize> },
    #[error("realization mismatch: {0}")]
    RealizationMismatch(String),
    #[error("psi does not land in the object classes: {0}")]
    PsiNotIntoPi0(String),
    #[error("factor set violates {equation} at {witness:?}")]
    FactorSetInvalid { equation: &'static str, witness: Vec<usize> },
    #[error("extensions induce different kernel maps")]
    IncompatibleKernels,
    #[error("strictness fails: {0}")]
    NotStrict(String),
    #[error("trace isomorphism check failed: {0}")]
    MismatchFound(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
