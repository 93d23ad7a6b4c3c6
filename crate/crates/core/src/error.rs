use thiserror::Error;

/// Errors raised by the computational core.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring axiom `{axiom}` fails at witness {witness:?}")]
    AxiomViolation { axiom: String, witness: Vec<u32> },

    #[error("polynomial {poly:?} is not irreducible over F_{p}")]
    NotIrreducible { p: u64, poly: Vec<u64> },

    #[error("ring `{0}` has no multiplicative identity")]
    NotUnital(String),

    #[error("budget exceeded: estimated {estimated} candidates, budget {budget}")]
    BudgetExceeded { estimated: u128, budget: u128 },

    #[error("operands live over different rings (`{0}` vs `{1}`)")]
    RingMismatch(String, String),

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("identity `{which}` failed: {witness}")]
    IdentityFailed { which: String, witness: String },

    #[error("lift does not reduce to the given matrix at entry ({row}, {col})")]
    LiftMismatch { row: usize, col: usize },

    #[error("matrix entry ({row}, {col}) escapes the ideal")]
    NotInIdeal { row: usize, col: usize },

    #[error("field has {0} elements; need at least 3")]
    FieldTooSmall(usize),

    #[error("algebra `{0}` is unital; bar homology vanishes identically")]
    UnitalInput(String),

    #[error("expression does not have finite support")]
    NotFiniteSupport,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid input: {0}")]
    BadInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Fails with [`Error::BudgetExceeded`] if `base^exp` exceeds `budget`.
pub(crate) fn check_budget(base: usize, exp: usize, budget: u128) -> Result<u128> {
    let mut total: u128 = 1;
    for _ in 0..exp {
        total = total.saturating_mul(base as u128);
    }
    if total > budget {
        return Err(Error::BudgetExceeded {
            estimated: total,
            budget,
        });
    }
    Ok(total)
}
