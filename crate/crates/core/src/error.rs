use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("square root of a negative value")]
    NegativeInput,
    #[error("{0} is not the square of a rational")]
    NotAPerfectSquare(String),
    #[error("invalid tolerance {0}: must be strictly positive and finite")]
    InvalidTolerance(f64),
    #[error("field mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("invalid algebra parameters: {0}")]
    InvalidParams(String),
    #[error("operation requires the standard division parameters (-1,-1,-1)")]
    RequiresStandardParams,
    #[error("syntax error at position {pos}: {message}")]
    SyntaxError { pos: usize, message: String },
    #[error("variable x{index} out of range 1..={max}")]
    VariableIndexOutOfRange { index: usize, max: usize },
    #[error("expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("Malcev product requires pure octonion inputs (argument {0} has nonzero scalar part)")]
    NonPureInputForMalcev(usize),
    #[error("polynomial is not multilinear")]
    NotMultilinear,
    #[error("polynomial is not semihomogeneous with nonzero weighted degree")]
    NotSemihomogeneous,
    #[error("basic evaluation at {tuple:?} has {nonzero} nonzero coordinates")]
    Lemma3Violation { tuple: Vec<usize>, nonzero: usize },
    #[error("consistency violation for verdict {verdict}: {detail}")]
    ConsistencyViolation { verdict: String, detail: String },
    #[error("the polynomial image is not all of O (verdict {0})")]
    NotFullImage(String),
    #[error("random draws stayed degenerate after {0} attempts")]
    DegenerateDraw(usize),
    #[error("input octonion is zero")]
    ZeroInput,
    #[error("input octonion is not pure")]
    NotPure,
    #[error("automorphism verification failed: residual {0:e}")]
    VerificationFailed(f64),
    #[error("polynomial vanishes identically on V; nonzero targets are unreachable")]
    NotSurjective,
    #[error("norm along every drawn ray stayed below the target after {0} attempts")]
    DegenerateRay(usize),
    #[error("value has a zero eigenvalue (norm 0)")]
    ZeroEigenvalue,
    #[error("{vars} variables exceed the scan budget of {max}")]
    BudgetExceeded { vars: usize, max: usize },
    #[error("invalid octonion literal: {0}")]
    InvalidOctonion(String),
}

impl Error {
    /// The variant name, e.g. `"NotMultilinear"`.
    pub fn kind(&self) -> String {
        format!("{self:?}").chars().take_while(char::is_ascii_alphanumeric).collect()
    }

    /// True for the conditions that can only arise if the mathematics (or this
    /// implementation of it) is broken, as opposed to bad input.
    pub fn is_math_violation(&self) -> bool {
        matches!(
            self,
            Error::Lemma3Violation { .. } | Error::ConsistencyViolation { .. } | Error::VerificationFailed(_)
        )
    }
}
