use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("size guard exceeded: {0}")]
    TooLarge(String),
    #[error("zero polynomial has no roots")]
    ZeroPolynomial,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("polynomial is not in the image of the relative Frobenius")]
    NotInImage,
    #[error("one-form is not closed")]
    NotClosed,
    #[error("no solution within degree bound {0}")]
    NoSolution(usize),
    #[error("twist mismatch between Weyl algebra elements")]
    TwistMismatch,
    #[error("universal Lie polynomial index {0} out of range 1..p-1")]
    BadIndex(usize),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("relation failure: {0}")]
    RelationFailure(String),
    #[error("connection is not flat")]
    NotFlat,
    #[error("p-curvature failed R-linearity: {0}")]
    LinearityFailure(String),
    #[error("Frobenius descent failed for a characteristic coefficient: {0}")]
    DescentFailure(String),
    #[error("Higgs field entries do not commute")]
    NotCommuting,
    #[error("characteristic polynomial has non-constant coefficients")]
    NotConstantCoefficients,
    #[error("spectral cover is not multiplicity free: {0}")]
    NotMultiplicityFree(String),
    #[error("no rank-one lift of the section within degree bound {0}")]
    NoLift(usize),
    #[error("verification failed: {0}")]
    VerificationFailure(String),
    #[error("flat sections do not give a basis within degree bound {0}")]
    KernelRankMismatch(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
