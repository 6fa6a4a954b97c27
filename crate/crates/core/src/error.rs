use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// An argument exceeds the range the reduction machinery supports.
    #[error("argument {value} exceeds the supported maximum {max}")]
    Range { value: String, max: String },

    /// A kernel evaluation landed within tolerance of a pole.
    #[error("pole encountered at n = {n} (distance {distance:e} from the singularity)")]
    Pole { n: u64, distance: f64 },

    /// A pole coincides with a jump of the floor integrator.
    #[error("common discontinuity between integrand and floor integrator at t = {n}")]
    CommonDiscontinuity { n: u64 },

    /// A pole inside the recursive half-angle decomposition.
    #[error("pole in recursive decomposition at level k = {k}")]
    RecursionPole { k: u32 },

    /// Two independent computation paths disagree beyond tolerance.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("requested {requested} convergents but the digit string supports at most {max}")]
    Depth { requested: usize, max: usize },

    #[error("class fit failed: {0}")]
    Fit(String),

    #[error("degenerate curve: discriminant is zero for a = {a}, b = {b}")]
    DegenerateCurve { a: f64, b: f64 },

    #[error("unsupported parameter: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain { op, detail: detail.into() }
    }

    /// True for the pole family (plain poles and floor-integrator coincidences).
    pub fn is_pole(&self) -> bool {
        matches!(
            self,
            Error::Pole { .. } | Error::CommonDiscontinuity { .. } | Error::RecursionPole { .. }
        )
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain",
            Error::Range { .. } => "range",
            Error::Pole { .. } => "pole",
            Error::CommonDiscontinuity { .. } => "common_discontinuity",
            Error::RecursionPole { .. } => "pole",
            Error::Consistency(_) => "consistency",
            Error::Parse(_) => "parse",
            Error::Depth { .. } => "depth",
            Error::Fit(_) => "fit",
            Error::DegenerateCurve { .. } => "degenerate_curve",
            Error::Unsupported(_) => "unsupported",
        }
    }
}
