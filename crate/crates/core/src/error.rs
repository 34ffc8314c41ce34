use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// One failed condition of the pseudoidentity definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PseudoidentityViolation {
    /// `C` carries positive powers of `z`, or `D` carries negative ones.
    Support,
    /// `C * adjoint(D) != I`.
    ProductNotIdentity,
    /// `C(1) != I` or `D(1) != I`.
    EvalOneNotIdentity,
    /// `det C != 1` or `det D != 1`.
    DetNotOne,
}

impl PseudoidentityViolation {
    pub fn code(&self) -> &'static str {
        match self {
            Self::Support => "SUPPORT_VIOLATION",
            Self::ProductNotIdentity => "PRODUCT_NOT_IDENTITY",
            Self::EvalOneNotIdentity => "EVAL_ONE_NOT_IDENTITY",
            Self::DetNotOne => "DET_NOT_ONE",
        }
    }
}

/// One failed condition of the biorthogonal wavelet pair definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WaveletViolation {
    /// `L * adjoint(R) != m I`.
    Quadratic,
    /// Block row sums of `L` or `R` differ from `(m, 0, ..., 0)`.
    Linear,
}

impl WaveletViolation {
    pub fn code(&self) -> &'static str {
        match self {
            Self::Quadratic => "QUADRATIC_VIOLATION",
            Self::Linear => "LINEAR_VIOLATION",
        }
    }
}

struct Codes<'a, T>(&'a [T], fn(&T) -> &'static str);

impl<T> fmt::Display for Codes<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, v) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            f.write_str((self.1)(v))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different scalar fields")]
    FieldMismatch,
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("operand is not a polynomial in t = z^-1")]
    NotPolynomial,
    #[error("zero input")]
    ZeroInput,
    #[error("deg(a) must not exceed deg(c)")]
    DegreeOrder,
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("determinant is not 1")]
    NotUnimodular,
    #[error("zero matrix has no block form")]
    ZeroMatrix,
    #[error("determinant is not a nonzero monomial")]
    NotMonomialDet,
    #[error("not a pseudoidentity pair: {}", Codes(.0, PseudoidentityViolation::code))]
    NotPseudoidentity(Vec<PseudoidentityViolation>),
    #[error("matrix has positive powers of z")]
    SupportViolation,
    #[error("matrix does not evaluate to the identity at z = 1")]
    EvalOneNotIdentity,
    #[error("empty sequence")]
    EmptySequence,
    #[error("exponents must be positive and strictly increasing")]
    NonincreasingExponents,
    #[error("coefficients must be nonzero")]
    ZeroCoefficient,
    #[error("operation requires rank 2")]
    RankNotTwo,
    #[error("constant C has no block below the leading one")]
    ConstantC,
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("residual constant after the sweep is not the identity")]
    ResidualConstantNotIdentity,
    #[error("vector does not have unit norm")]
    NotUnitVector,
    #[error("no built-in Haar matrix for rank {0}; supply one")]
    HaarUndefined(usize),
    #[error("supplied Haar matrix is invalid")]
    HaarInvalid,
    #[error("nilpotent part has genus {found}, exceeding the declared {declared}")]
    GenusViolation { found: usize, declared: usize },
    #[error("not a biorthogonal wavelet pair: {}", Codes(.0, WaveletViolation::code))]
    NotBiorthogonal(Vec<WaveletViolation>),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not nilpotent of order two")]
    NotNilpotent,
}

impl Error {
    /// Stable machine-readable code for reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DIVISION_BY_ZERO",
            Error::FieldMismatch => "FIELD_MISMATCH",
            Error::Parse { .. } => "PARSE_ERROR",
            Error::ZeroDenominator => "ZERO_DENOMINATOR",
            Error::NotPolynomial => "NOT_POLYNOMIAL",
            Error::ZeroInput => "ZERO_INPUT",
            Error::DegreeOrder => "DEGREE_ORDER",
            Error::RankMismatch(..) => "RANK_MISMATCH",
            Error::NotUnimodular => "NOT_UNIMODULAR",
            Error::ZeroMatrix => "ZERO_MATRIX",
            Error::NotMonomialDet => "NOT_MONOMIAL_DET",
            Error::NotPseudoidentity(_) => "NOT_PSEUDOIDENTITY",
            Error::SupportViolation => "SUPPORT_VIOLATION",
            Error::EvalOneNotIdentity => "EVAL_ONE_NOT_IDENTITY",
            Error::EmptySequence => "EMPTY_SEQUENCE",
            Error::NonincreasingExponents => "NONINCREASING_EXPONENTS",
            Error::ZeroCoefficient => "ZERO_COEFFICIENT",
            Error::RankNotTwo => "RANK_NOT_TWO",
            Error::ConstantC => "CONSTANT_C",
            Error::BadParams(_) => "BAD_PARAMS",
            Error::ResidualConstantNotIdentity => "RESIDUAL_CONSTANT_NOT_IDENTITY",
            Error::NotUnitVector => "NOT_UNIT_VECTOR",
            Error::HaarUndefined(_) => "HAAR_UNDEFINED",
            Error::HaarInvalid => "HAAR_INVALID",
            Error::GenusViolation { .. } => "GENUS_VIOLATION",
            Error::NotBiorthogonal(_) => "NOT_BIORTHOGONAL",
            Error::Singular => "SINGULAR",
            Error::NotNilpotent => "NOT_NILPOTENT",
        }
    }
}
