use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LabError {
    #[error("invalid coefficients: {0}")]
    InvalidCoefficients(String),

    #[error("inner series of a composition must have zero constant term (found {0})")]
    NonzeroInnerConstant(String),

    #[error("radius {radius} outside the admissible range [0, {limit}]")]
    RadiusOutOfRange { radius: f64, limit: f64 },

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("lambda = {lambda} is within {tolerance:e} of the diagonal value 1/{denominator}")]
    NearDiagonal {
        lambda: String,
        denominator: usize,
        tolerance: f64,
    },

    #[error("point {0} lies on the branch cut (-1, 0] or outside the open unit disc")]
    OnBranchCut(String),

    #[error("integral route requires vanishing order {order} > Re(1/lambda) - 1 = {bound}")]
    VanishingOrder { order: usize, bound: f64 },

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
}

impl LabError {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        LabError::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, LabError>;
