use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroExtensionDegree,
    #[error("field of size {p}^{m} exceeds the supported limit of 2^16 elements")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field element {value} out of range for q = {q}")]
    ElementOutOfRange { value: u64, q: u32 },
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd(0, 0) is undefined")]
    ZeroGcd,
    #[error("expected a polynomial of positive degree")]
    ConstantInput,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("degree must be at least {min}, got {got}")]
    DegreeTooSmall { min: i64, got: i64 },
    #[error("arguments are not coprime")]
    NotCoprime,
    #[error("integer overflow computing {0}")]
    Overflow(&'static str),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("inseparable: f has zero derivative in x")]
    Inseparable,
    #[error("inadmissible polynomial: {0}")]
    Inadmissible(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal contract violated: {0}")]
    Internal(String),
    #[error("work budget exceeded: needs {needed} evaluations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("tail not certifiable at M = {m} (B = {b}); raise M")]
    TailNotCertifiable { m: u32, b: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
