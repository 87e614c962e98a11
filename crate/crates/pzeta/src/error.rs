use pzeta_core::{DirichletError, GroupError, RationalityError, ZetaError};
use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// A computation failed (for example an inexact division).
    pub const FAILURE: i32 = 1;
    /// Unreadable input, bad arguments or an empty factor list.
    pub const PARSE: i32 = 2;
    /// A group or lattice exceeded the configured budget.
    pub const BUDGET: i32 = 3;
    /// A verification mismatch under `--strict`.
    pub const MISMATCH: i32 = 4;
    /// Factor data outside the hypotheses of the replayed argument.
    pub const HYPOTHESIS: i32 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Dirichlet(#[from] DirichletError),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error(transparent)]
    Rationality(#[from] RationalityError),
    #[error("verification mismatch: {0}")]
    Mismatch(String),
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

fn group_code(e: &GroupError) -> i32 {
    match e {
        GroupError::OrderBoundExceeded { .. }
        | GroupError::SubgroupBoundExceeded { .. }
        | GroupError::Interrupted { .. } => exit::BUDGET,
        GroupError::InvalidPermutation(_) | GroupError::DegreeMismatch { .. } | GroupError::InvalidParameter(_) => {
            exit::PARSE
        }
        GroupError::NotNormal | GroupError::MoebiusOverflow => exit::FAILURE,
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => exit::PARSE,
            CliError::Group(e) | CliError::Zeta(ZetaError::Group(e)) => group_code(e),
            CliError::Dirichlet(DirichletError::ZeroIndex | DirichletError::NonUnitDenominator { .. }) => exit::PARSE,
            CliError::Dirichlet(_) | CliError::Zeta(_) => exit::FAILURE,
            CliError::Rationality(e) => match e {
                RationalityError::EmptyInput | RationalityError::InvalidDescriptor { .. } => exit::PARSE,
                RationalityError::HypothesisViolated(_) => exit::HYPOTHESIS,
                RationalityError::NoWitness | RationalityError::Dirichlet(_) => exit::FAILURE,
            },
            CliError::Mismatch(_) => exit::MISMATCH,
        }
    }
}
