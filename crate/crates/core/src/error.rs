use alloc::string::String;

use thiserror::Error;

use crate::dirichlet::Index;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DirichletError {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("no exact quotient with support bounded by {bound}")]
    NotDivisible { bound: Index },
    #[error("factor {position} has constant term {constant}, expected 1")]
    FactorNotUnital { position: usize, constant: String },
    #[error("denominator constant term is {constant}, expected +1 or -1")]
    NonUnitDenominator { constant: String },
    #[error("Dirichlet index overflow")]
    IndexOverflow,
    #[error("index 0 is not a valid Dirichlet index")]
    ZeroIndex,
    #[error("shift exponent must be positive")]
    ZeroShift,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order exceeds the bound of {bound} elements")]
    OrderBoundExceeded { bound: usize },
    #[error("subgroup count exceeds the bound of {bound} (found {found} so far in {classes} classes)")]
    SubgroupBoundExceeded { bound: usize, found: usize, classes: usize },
    #[error("lattice construction interrupted after {found} subgroups in {classes} classes")]
    Interrupted { found: usize, classes: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("generator of degree {found} in a group of degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("Möbius value overflow")]
    MoebiusOverflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZetaError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Dirichlet(#[from] DirichletError),
    #[error("chief factor {factor}: {detail}")]
    InconsistentFactor { factor: usize, detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalityError {
    #[error("empty factor list")]
    EmptyInput,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("no index of the required shape carries a nonzero coefficient")]
    NoWitness,
    #[error("invalid descriptor {id}: {detail}")]
    InvalidDescriptor { id: u64, detail: String },
    #[error(transparent)]
    Dirichlet(#[from] DirichletError),
}
