use thiserror::Error;

/// Errors raised by algebra, representation and inverse computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("INVALID_SIGNATURE: ({p},{q}) needs 1 <= p + q <= {max}")]
    InvalidSignature { p: usize, q: usize, max: usize },

    #[error("SIGNATURE_MISMATCH: DL({0}) vs DL({1})")]
    SignatureMismatch(String, String),

    #[error("MASK_OUT_OF_RANGE: blade mask {mask:#b} with n = {n}")]
    MaskOutOfRange { mask: u32, n: usize },

    #[error("GRADE_OUT_OF_RANGE: grade {k} with n = {n}")]
    GradeOutOfRange { k: usize, n: usize },

    #[error("GENERATOR_OUT_OF_RANGE: e{index} with n = {n}")]
    GeneratorOutOfRange { index: usize, n: usize },

    #[error("COEFFICIENT_COUNT: expected {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },

    #[error("GRADE_LEAK: non-scalar residue {residue:e} in a product that must be scalar")]
    GradeLeak { residue: f64 },

    #[error("NOT_INVERTIBLE: determinant is {det}")]
    NotInvertible { det: String },

    #[error("ZERO_INPUT: the zero element is trivially a zero divisor")]
    ZeroInput,
}

impl AlgebraError {
    /// Stable machine-readable code, the prefix of the message.
    pub fn code(&self) -> &'static str {
        match self {
            Self::InvalidSignature { .. } => "INVALID_SIGNATURE",
            Self::SignatureMismatch(..) => "SIGNATURE_MISMATCH",
            Self::MaskOutOfRange { .. } => "MASK_OUT_OF_RANGE",
            Self::GradeOutOfRange { .. } => "GRADE_OUT_OF_RANGE",
            Self::GeneratorOutOfRange { .. } => "GENERATOR_OUT_OF_RANGE",
            Self::CoefficientCount { .. } => "COEFFICIENT_COUNT",
            Self::GradeLeak { .. } => "GRADE_LEAK",
            Self::NotInvertible { .. } => "NOT_INVERTIBLE",
            Self::ZeroInput => "ZERO_INPUT",
        }
    }
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
