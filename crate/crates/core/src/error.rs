use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {0} exceeds the supported limit")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is coprime-degenerate for the cubic residue symbol")]
    NotCoprime(i64),
    #[error("bad prime {p}: {reason}")]
    BadPrime { p: u64, reason: String },
    #[error("bad reduction at p = {p}: {detail}")]
    BadReduction { p: u64, detail: String },
    #[error("Weierstrass model is singular (discriminant vanishes identically)")]
    SingularModel,
    #[error("coefficient a{index} has degree {degree} > {bound} for chi = {chi}")]
    DegreeTooLarge { index: u8, degree: usize, bound: usize, chi: u32 },
    #[error("section does not satisfy the Weierstrass equation")]
    NotOnCurve,
    #[error("section is not integral at the given place")]
    NotIntegral,
    #[error("unresolved intersection: {0}")]
    Unresolved(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("inconsistent eigenvalue data: {0}")]
    InconsistentEigenvalues(String),
    #[error("incomplete pairing table: {0}")]
    IncompletePairing(String),
    #[error("singular Gram matrix")]
    SingularGram,
    #[error("Tate's algorithm failed: {0}")]
    Tate(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
