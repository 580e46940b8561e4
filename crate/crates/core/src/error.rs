use alloc::string::String;

use crate::numerics::Precision;

/// Errors raised by the numerical core.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("precision mismatch: {left} vs {right}")]
    PrecisionMismatch { left: Precision, right: Precision },
    #[error("working precision must be at least 16 digits, got {0}")]
    InvalidPrecision(u32),
    #[error("series has a zero constant term")]
    NonUnitLeadingTerm,
    #[error("logarithm needs constant terms equal to 1")]
    LeadingCoefficientNotOne,
    #[error("exact mode cannot represent the principal power of the constant term")]
    IrrationalPower,
    #[error("not enough Taylor coefficients: need {needed}, have {available}")]
    InsufficientData { needed: usize, available: usize },
    #[error("denominator vanishes at the evaluation point")]
    PoleAtEvaluationPoint,
    #[error("homogeneous solve returned the zero vector")]
    AllZeroSolution,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("non-generic case: {0}")]
    NonGenericCase(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("Newton seed does not satisfy the defining equation (residual {residual:e})")]
    SeedMismatch { residual: f64 },
    #[error("point lies on the branch cut [-1, 1]")]
    OnBranchCut,
    #[error("point lies on the segment [-1, 1]")]
    OnSet,
    #[error("point cloud contains the origin")]
    PointAtOrigin,
    #[error("budget N = {0} does not admit both a Padé and a type II construction")]
    InadmissibleBudget(usize),
    #[error("polynomial has degree zero")]
    ConstantPolynomial,
}

pub type Result<T> = core::result::Result<T, Error>;
