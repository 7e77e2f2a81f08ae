use thiserror::Error;

use crate::digroup::Element;
use crate::exactla::Field;

#[derive(Debug, Error)]
pub enum Error {
    #[error("scalar field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("{0} is not a bar-unit")]
    NotBarUnit(Element),
    #[error("not a representation: {0}")]
    NotARepresentation(String),
    #[error("objects live over different digroups")]
    DigroupMismatch,
    #[error("subspace is not stable under the operators")]
    NotStable,
    #[error("vectors are linearly dependent")]
    DependentVectors,
    #[error("p divides |G|: characteristic {characteristic} divides group order {order}, averaging is undefined")]
    MaschkeHypothesis { characteristic: u64, order: usize },
    #[error("no linear section: quotient map is not surjective")]
    NoSection,
    #[error("not a short exact sequence: {0}")]
    NotExact(String),
    #[error("section is not rho-equivariant: {0}")]
    NotEquivariant(String),
    #[error("family is not a cocycle: {0}")]
    NotACocycle(String),
    #[error("map does not intertwine the rho operators")]
    NotRhoEquivariant,
    #[error("invalid algebra module: {0}")]
    InvalidModule(String),
    #[error("invalid semilinear object: {0}")]
    InvalidSemilinear(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("generator caps exceeded: {0}")]
    CapsExceeded(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("unknown example {0:?}")]
    UnknownExample(String),
    #[error("invalid input: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
