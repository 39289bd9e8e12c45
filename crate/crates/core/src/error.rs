use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("factor matrix {factor} is singular")]
    SingularFactor { factor: usize },
    #[error("invalid permutation of {n} factors")]
    InvalidPermutation { n: usize },
    #[error("index encoding {encoding} out of range for n = {n}")]
    IndexOutOfRange { encoding: usize, n: usize },
    #[error("factor {factor} out of range 1..={n}")]
    FactorOutOfRange { factor: usize, n: usize },
    #[error("polynomial is not a weight vector")]
    NotAWeightVector,
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous of degree {degree}")]
    NotHomogeneous { degree: usize },
    #[error("expected {expected} vectors for polarization, got {found}")]
    WrongVectorCount { expected: usize, found: usize },
    #[error("degree {degree} in the top variable exceeds 2")]
    TopDegreeTooHigh { degree: usize },
    #[error("partition sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition {0} has more than two parts")]
    TooManyParts(String),
    #[error("weight {weight} is incompatible with degree {degree}")]
    ParityViolation { weight: i64, degree: usize },
    #[error("polynomial is not a highest weight vector (raise in factor {factor} is nonzero)")]
    NotHighestWeight { factor: usize },
    #[error("invalid triple {0:?}")]
    InvalidTriple([usize; 3]),
    #[error("n = {n} is below the minimum {min}")]
    TooSmall { n: usize, min: usize },
    #[error("n = {n} exceeds the supported maximum {max}")]
    TooLarge { n: usize, max: usize },
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("coordinate at [0,...,0] is zero; reconstruction needs the open chart z_0 != 0")]
    ZeroLeadingCoordinate,
    #[error("s_{{{i},{j}}} = {value} is not a rational square")]
    NonSquare { i: usize, j: usize, value: String },
    #[error("no off-diagonal sign pattern matches the 3x3 principal minors")]
    NoConsistentSigns,
    #[error("reconstructed matrix disagrees with the input at index {encoding}")]
    VerificationFailed { encoding: usize },
}
