use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A value leaves the range the routine can represent or tabulate.
    #[error("range error: {0}")]
    Range(String),
    /// Matrix that should be symmetric positive definite failed to factor.
    #[error("matrix not positive definite: pivot {index} is {pivot:e}")]
    NotPositiveDefinite { index: usize, pivot: f64 },
    /// A discretization is too coarse to represent the operator faithfully.
    #[error("invalid discretization: {0}")]
    Discretization(String),
    /// The shooting integration left the Hastings-McLeod branch.
    #[error("Painleve integration unstable at y = {y}: |u| = {magnitude:e}")]
    Unstable { y: f64, magnitude: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
