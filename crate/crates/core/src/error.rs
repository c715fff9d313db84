use thiserror::Error;

pub type Result<T> = std::result::Result<T, GeomError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("empty point set")]
    EmptyPointSet,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unsupported dimension {0} (exact operations need dimension 2 or 3)")]
    UnsupportedDimension(usize),
    #[error("origin not interior")]
    OriginNotInterior,
    #[error("degenerate body: {0}")]
    Degenerate(&'static str),
    #[error("body is not origin-symmetric")]
    NotSymmetric,
    #[error("coefficient set is not 1-unconditional")]
    NotUnconditional,
    #[error("determinant budget exceeded ({subsets} subsets > {budget}); use the hull fallback (zonotope_to_vpolytope + volume)")]
    BudgetExceeded { subsets: u128, budget: u128 },
    #[error("symmetral needs more than {max} breakpoints")]
    VertexBudget { max: usize },
    #[error("too many generators for 3-D vertex conversion: {got} > {max}")]
    TooManyGenerators { got: usize, max: usize },
    #[error("polar unbounded, infinite measure")]
    UnboundedPolar,
    #[error("quadrature not certified: relative change {rel:.3e} under node doubling")]
    QuadratureNotCertified { rel: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
