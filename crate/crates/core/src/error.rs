use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },

    #[error("unsupported degree {0} (supported: 2..=64)")]
    UnsupportedDegree(u32),

    #[error("polynomial {0} is reducible")]
    Reducible(String),

    #[error("polynomial {0} is irreducible but not primitive")]
    NotPrimitive(String),

    #[error("no primitive polynomial of degree {n} with at most {max_terms} terms")]
    NoPrimitivePolynomial { n: u32, max_terms: u32 },

    #[error("invalid polynomial: {0}")]
    PolyParse(String),

    #[error("matrix is singular over F2")]
    SingularMatrix,

    #[error("matrix order exceeds iteration cap {0}")]
    OrderCapExceeded(u64),

    #[error("zero has no discrete logarithm")]
    ZeroElement,

    #[error("discrete-log table limited to n <= {cap}, got n = {n}")]
    DlogCap { n: u32, cap: u32 },

    #[error("{a} is not invertible modulo {modulus}")]
    NotInvertible { a: u64, modulus: u64 },

    #[error("failed to factor {0}")]
    Factorization(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid circuit: {}", .0.join("; "))]
    InvalidCircuit(Vec<String>),

    #[error("qubit count mismatch: {left} vs {right}")]
    QubitCountMismatch { left: usize, right: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("kappa must be at least 2, got {0}")]
    InvalidKappa(u64),

    #[error("invalid kickback plan: {0}")]
    InvalidPlan(String),

    #[error("simulation cap exceeded ({cap} qubits): requested {requested}")]
    SimulationCap { requested: usize, cap: usize },

    #[error("empty sample")]
    EmptySample,

    #[error("invalid state file: {0}")]
    StateFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by a size/capability limit rather than bad input.
    pub fn is_capability(&self) -> bool {
        matches!(
            self,
            Error::SimulationCap { .. } | Error::DlogCap { .. } | Error::OrderCapExceeded(_)
        )
    }
}
