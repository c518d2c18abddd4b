use thiserror::Error;

pub type Result<T> = std::result::Result<T, SplineError>;

/// Everything that can go wrong when building or analyzing labeled graphs.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplineError {
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("{label} is not a divisor of the modulus {modulus}; edge labels are given by their divisor generator")]
    BadLabel { label: u64, modulus: u64 },
    #[error("value {value} out of range for modulus {modulus}")]
    ValueOutOfRange { value: u64, modulus: u64 },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("empty vertex name")]
    EmptyVertexName,
    #[error("unknown edge id {0}")]
    UnknownEdge(usize),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(usize),
    #[error("missing value for vertex `{0}`")]
    MissingValue(String),
    #[error("expected {expected} values, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("modulus {0} is not a prime power; the nested-ideal reduction needs a uniserial ring")]
    NotPrimePower(u64),
    #[error("ideal ({generator}) of Z_{modulus} has no complementary ideal: gcd({generator}, {cofactor}) != 1, so quotient splines cannot be lifted")]
    NoComplement { generator: u64, modulus: u64, cofactor: u64 },
    #[error("quotient by the unit ideal gives the zero ring, which is not supported")]
    UnitQuotient,
    #[error("element {element} is not in the ideal ({generator}) of Z_{modulus}")]
    NotInIdeal { element: u64, generator: u64, modulus: u64 },
    #[error("edge {0} is not labeled (0); only zero-labeled edges may be contracted")]
    NotZeroLabeled(usize),
    #[error("edge {0} is a loop and cannot be contracted")]
    LoopEdge(usize),
    #[error("edge {edge} does not dominate: its label does not contain the label of edge {other}")]
    NotDominating { edge: usize, other: usize },
    #[error("deleting edge {0} would disconnect the graph and its label is not (1)")]
    WouldDisconnect(usize),
    #[error("graph is disconnected; this operation assumes a connected graph")]
    Disconnected,
    #[error("graph is not a tree")]
    NotATree,
    #[error("enumeration needs {needed} states, above the cap of {cap}")]
    CapExceeded { needed: String, cap: u64 },
    #[error("not a spline: edge {edge} ({u}, {v}) violates its label")]
    NotASpline { edge: usize, u: String, v: String },
    #[error("cut hypothesis violated: a component of G - E(H) contains {found} vertices of H (exactly one required)")]
    InvalidCut { found: usize },
    #[error("module already has a basepoint")]
    AlreadyBased,
    #[error("modulus {modulus} has {primes} distinct prime factors; zero-edge bounds exist only for at most 3")]
    TooManyPrimes { modulus: u64, primes: usize },
    #[error("distinct prime count must be 1, 2 or 3, got {0}")]
    BadPrimeCount(usize),
    #[error("grid dimensions must be positive, got {rows} x {cols}")]
    InvalidDimensions { rows: usize, cols: usize },
    #[error("vertex names do not describe a triangulated grid dual: {0}")]
    NotAGridDual(String),
}
