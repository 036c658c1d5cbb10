use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library reports. Variant names double as the
/// machine-readable error names printed by the command-line driver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("ideal is not marked as a Groebner basis")]
    NotGroebnerBasis,

    #[error("fields {i} and {j} do not commute: bracket component along `{var}` is {component}")]
    CommutationFailure {
        i: usize,
        j: usize,
        var: String,
        component: String,
    },

    #[error("field {field} is not tangent to the chart: applied to `{generator}` it gives {image}")]
    TangencyFailure {
        field: usize,
        generator: String,
        image: String,
    },

    #[error("vector fields are not generically linearly independent")]
    DependentFields,

    #[error("connection is not flat: curvature ({i},{j}) entry ({row},{col}) is {component}")]
    FlatnessFailure {
        i: usize,
        j: usize,
        row: usize,
        col: usize,
        component: String,
    },

    #[error("denominator `{0}` vanishes identically on the chart")]
    ChartDenominator(String),

    #[error("point is off the chart: {0}")]
    PointOffChart(String),

    #[error("order k = {k} is outside 1..={n}")]
    KOutOfRange { k: usize, n: usize },

    #[error("{count} generator subsets exceed the subset cap {cap}")]
    SubsetCapExceeded { count: u128, cap: u128 },

    #[error("minor enumeration needs {needed} determinants, budget is {budget}")]
    MinorBudgetExceeded { needed: u128, budget: u128 },

    #[error("field {field} moves parameter `{param}` (component {component})")]
    ParameterNotConstant {
        field: usize,
        param: String,
        component: String,
    },

    #[error("pole order {0} in y is not odd")]
    PoleOrderParity(u32),

    #[error("invalid hyperelliptic family: {0}")]
    InvalidFamily(String),

    #[error("differential is not of the second kind: residue {0}")]
    NotSecondKind(String),

    #[error("truncation order {requested} is below the required {needed}")]
    TruncationTooSmall { requested: i64, needed: i64 },

    #[error("series coefficient t^{exponent} lies beyond the truncation order {truncation}")]
    BeyondTruncation { exponent: i64, truncation: i64 },

    #[error("pairing matrix is degenerate")]
    DegeneratePairing,

    #[error("branch points collide at the requested base point (separation {separation:e})")]
    BranchPointCollision { separation: f64 },

    #[error("B block of the period matrix is numerically singular")]
    SingularBBlock,

    #[error("numeric homology basis could not be fixed: {0}")]
    HomologyBasis(String),
}

impl Error {
    /// Stable name of the error kind.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "ParseError",
            Error::UnknownVariable(_) => "UnknownVariable",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NotGroebnerBasis => "NotGroebnerBasis",
            Error::CommutationFailure { .. } => "CommutationFailure",
            Error::TangencyFailure { .. } => "TangencyFailure",
            Error::DependentFields => "DependentFields",
            Error::FlatnessFailure { .. } => "FlatnessFailure",
            Error::ChartDenominator(_) => "ChartDenominator",
            Error::PointOffChart(_) => "PointOffChart",
            Error::KOutOfRange { .. } => "KOutOfRange",
            Error::SubsetCapExceeded { .. } => "SubsetCapExceeded",
            Error::MinorBudgetExceeded { .. } => "MinorBudgetExceeded",
            Error::ParameterNotConstant { .. } => "ParameterNotConstant",
            Error::PoleOrderParity(_) => "PoleOrderParity",
            Error::InvalidFamily(_) => "InvalidFamily",
            Error::NotSecondKind(_) => "NotSecondKind",
            Error::TruncationTooSmall { .. } => "TruncationTooSmall",
            Error::BeyondTruncation { .. } => "BeyondTruncation",
            Error::DegeneratePairing => "DegeneratePairing",
            Error::BranchPointCollision { .. } => "BranchPointCollision",
            Error::SingularBBlock => "SingularBBlock",
            Error::HomologyBasis(_) => "HomologyBasis",
        }
    }

    /// Parse and input-shape errors, as opposed to mathematical precondition failures.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::UnknownVariable(_) | Error::DimensionMismatch(_)
        )
    }
}
