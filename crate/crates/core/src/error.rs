use thiserror::Error;

/// Which bound of a pair is missing when a poset fails to be a lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MissingBound {
    Glb,
    Lub,
}

impl std::fmt::Display for MissingBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MissingBound::Glb => f.write_str("glb"),
            MissingBound::Lub => f.write_str("lub"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("invalid label `{0}`: labels are nonempty and contain no whitespace")]
    InvalidLabel(String),
    #[error("order relation has a cycle through `{0}` and `{1}`")]
    CycleDetected(String, String),
    #[error("the pair {{{x}, {y}}} has no {missing}")]
    NotALattice {
        x: String,
        y: String,
        missing: MissingBound,
    },
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("empty subset")]
    EmptySubset,
    #[error("empty factor list")]
    EmptyFactorList,
    #[error("subset of size {size} exceeds the exhaustive cap {cap}")]
    SubsetTooLarge { size: usize, cap: usize },
    #[error("product of size {size} exceeds the cap {cap}")]
    ProductTooLarge { size: usize, cap: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("carrier of size {size} exceeds the cap {cap}")]
    CarrierTooLarge { size: usize, cap: usize },
    #[error("closed-set family is missing {0}")]
    MissingSet(&'static str),
    #[error("closed-set family is not closed under {op}: {{{a}}} and {{{b}}}")]
    NotClosedUnder {
        op: &'static str,
        a: String,
        b: String,
    },
    #[error("interval family is missing the ray {0}")]
    MissingRay(String),
    #[error("unknown label `{0}` in closed set")]
    UnknownLabel(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FunctionError {
    #[error("table has {got} entries but the domain has {expected} elements")]
    TableSize { expected: usize, got: usize },
    #[error("value {value} at `{element}` is not a position of the labeled codomain")]
    NotInCodomain { element: String, value: String },
    #[error("the operation needs a rational codomain; labeled chains carry no additive structure")]
    LabeledCodomainUnsupported,
    #[error("the domain is not a product lattice")]
    NotAProductDomain,
    #[error("split index {split} out of range for {factors} factors")]
    BadSplit { split: usize, factors: usize },
    #[error(
        "value map is not strictly increasing on the image: {lo} < {hi} but t({lo}) >= t({hi})"
    )]
    NotStrictlyIncreasing { lo: String, hi: String },
    #[error("functions have different domains")]
    DomainMismatch,
    #[error("topology carrier does not match the function domain")]
    CarrierMismatch,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArgmaxError {
    #[error("correspondence value at index `{0}` is empty")]
    EmptyValue(String),
    #[error("correspondence value at index `{0}` has no greatest element")]
    NoGreatestElement(String),
    #[error("correspondence value at index `{0}` has no least element")]
    NoLeastElement(String),
    #[error("correspondence index is not a chain: `{0}` and `{1}` are incomparable")]
    IndexNotAChain(String, String),
    #[error("premises hold but the conclusion fails: {0}")]
    TheoremFalsified(String),
    #[error(transparent)]
    Function(#[from] FunctionError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("malformed game: {0}")]
    Structural(String),
    #[error("joint strategy space of size {size} exceeds the cap {cap}")]
    StateSpaceTooLarge { size: usize, cap: usize },
    #[error("game failed validation: {0}")]
    NotValidated(String),
    #[error("best response of player `{player}` at {at} has no {which} element")]
    NoExtremeResponse {
        player: String,
        at: String,
        which: &'static str,
    },
    #[error("iteration did not reach a fixed point within {0} steps")]
    NoFixedPoint(usize),
    #[error(transparent)]
    Function(#[from] FunctionError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invariant violation: {0}")]
    Invariant(String),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

macro_rules! invariant_from {
    ($($t:ty),*) => {$(
        impl From<$t> for FormatError {
            fn from(e: $t) -> Self {
                FormatError::Invariant(e.to_string())
            }
        }
    )*};
}
invariant_from!(LatticeError, TopologyError, FunctionError, GameError);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerateError {
    #[error("requested size {size} exceeds the cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("rejection budget of {0} candidates exhausted")]
    RejectionBudgetExhausted(usize),
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("generated instance failed re-verification: {0}")]
    Unsound(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Function(#[from] FunctionError),
    #[error(transparent)]
    Game(#[from] GameError),
}
