use thiserror::Error;

/// Errors raised by the library. Variants carry enough context for the CLI to
/// print a precise diagnostic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{n} exceeds the configured bound {bound}")]
    FieldTooLarge { p: u32, n: u32, bound: u64 },
    #[error("field mismatch: GF({left_p}^{left_n}) vs GF({right_p}^{right_n})")]
    FieldMismatch {
        left_p: u32,
        left_n: u32,
        right_p: u32,
        right_n: u32,
    },
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("invalid vector: {0}")]
    InvalidVector(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("cocharacter is not weakly decreasing")]
    NonMonotone,
    #[error("invalid slope function: {0}")]
    InvalidSlopeFunction(String),
    #[error("subfunction lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },
    #[error("{0} is not a minimal-length coset representative")]
    NotKostantRep(String),
    #[error("subspace must be nonzero")]
    ZeroSubspace,
    #[error("family {0} is not contained in the semistable family")]
    FamilyNotSemistable(String),
    #[error("enumeration needs {required} flag x subspace tests, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("malformed complex: d^{degree} composed with its predecessor is nonzero")]
    MalformedComplex { degree: i32 },
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("parabolic types are not nested: {0} is not contained in {1}")]
    NotNested(String, String),
    #[error("two independent computations disagree: {0}")]
    MethodDisagreement(String),
    #[error("double coset labelling failed: {0}")]
    KappaFailure(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
