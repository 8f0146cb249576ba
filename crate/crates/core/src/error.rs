use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable sets differ: [{left}] vs [{right}]")]
    VarSetMismatch { left: String, right: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),

    #[error("weight vector has length {got}, expected {expected}")]
    WeightLength { expected: usize, got: usize },

    #[error("weights must be strictly positive, got {0}")]
    NonPositiveWeight(String),

    #[error("possibly infinite quotient: more than {cap} standard monomials")]
    PossiblyInfiniteQuotient { cap: usize },

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("not w-homogeneous: rho({first}) = {first_degree} but rho({second}) = {second_degree}")]
    NotWeightedHomogeneous {
        first: String,
        first_degree: String,
        second: String,
        second_degree: String,
    },

    #[error("polynomial has w-degree {0}; a positive degree is required")]
    DegenerateDegree(String),

    #[error("singularity at the origin is not isolated (Milnor algebra is infinite)")]
    NonIsolatedSingularity,

    #[error("not a b-function of a nonempty hypersurface: -1 is not a root")]
    MissingTrivialRoot,

    #[error("the b-function has no roots")]
    EmptyBFunction,

    #[error("polynomial does not split into rational linear factors: {0}")]
    IrrationalRoots(String),

    #[error("no b-function of s-degree <= {max_sdeg} within the search bounds")]
    NoBFunctionWithinBounds { max_sdeg: usize },

    #[error("operator context mismatch")]
    ContextMismatch,

    #[error("operator must not involve t or dt in this context")]
    UnexpectedTVariable,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("element lies outside the truncation window")]
    OutsideWindow,

    #[error("snapshot at level {0} is not saturated")]
    Unsaturated(String),

    #[error("axiom violation at level {level} ({check}): witness {witness}")]
    AxiomViolation {
        level: String,
        check: String,
        witness: String,
    },

    #[error("b(s) has a root {0} outside (-1, 0]")]
    RootOutOfRange(String),
}

impl Error {
    /// Stable snake_case name of the variant, for machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::VarSetMismatch { .. } => "var_set_mismatch",
            Error::UnknownVariable(_) => "unknown_variable",
            Error::DuplicateVariable(_) => "duplicate_variable",
            Error::WeightLength { .. } => "weight_length",
            Error::NonPositiveWeight(_) => "non_positive_weight",
            Error::PossiblyInfiniteQuotient { .. } => "possibly_infinite_quotient",
            Error::Parse { .. } => "parse",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::NotWeightedHomogeneous { .. } => "not_weighted_homogeneous",
            Error::DegenerateDegree(_) => "degenerate_degree",
            Error::NonIsolatedSingularity => "non_isolated_singularity",
            Error::MissingTrivialRoot => "missing_trivial_root",
            Error::EmptyBFunction => "empty_b_function",
            Error::IrrationalRoots(_) => "irrational_roots",
            Error::NoBFunctionWithinBounds { .. } => "bounds_exhausted",
            Error::ContextMismatch => "context_mismatch",
            Error::UnexpectedTVariable => "unexpected_t_variable",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::OutsideWindow => "outside_window",
            Error::Unsaturated(_) => "unsaturated",
            Error::AxiomViolation { .. } => "axiom_violation",
            Error::RootOutOfRange(_) => "root_out_of_range",
        }
    }
}
