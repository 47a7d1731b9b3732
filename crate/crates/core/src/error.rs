//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("incomparable sizes: |mu| = {left} but |nu| = {right}")]
    IncomparableSizes { left: u32, right: u32 },
    #[error("not a 2-core: {0}")]
    NotATwoCore(String),
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("outside first-occurrence range: r' = {r_prime} < r = {r}")]
    OutsideRange { r: u32, r_prime: u32 },
    #[error("inconsistent label: {0}")]
    InconsistentLabel(String),
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("singular Gram matrix")]
    SingularGram,
    #[error("scale guard exceeded: estimated size {estimate} > limit {limit}")]
    ScaleGuard { estimate: u128, limit: u128 },
    #[error("element does not preserve the form")]
    NotAnIsometry,
    #[error("element is not in the parabolic subgroup")]
    NotInParabolic,
    #[error("subspace is not a maximal isotropic")]
    NotLagrangian,
    #[error("non-integer multiplicity {value} (deviation {deviation})")]
    NonIntegerMultiplicity { value: f64, deviation: f64 },
    #[error("multiplicity not constant on a rank class: {0}")]
    NonConstantMultiplicity(String),
    #[error("eta constituent of maximal rank is not unique: {0}")]
    NonUniqueEta(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
