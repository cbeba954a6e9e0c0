//! Exact cyclotomic arithmetic, the clique structure of cyclotomic ideals,
//! truncated Habiro-ring elements and their values at roots of unity.
//!
//! The Habiro ring is the inverse limit of `Z[q]/(q;q)_n` with
//! `(q;q)_n = (1-q)(1-q^2)...(1-q^n)`. Elements are stored as compatible
//! residue sequences; the series form `sum a_n(q) (q;q)_n` is an input and
//! output format only. The descending product `(q^n-1)...(q-1)` differs from
//! `(q;q)_n` by `(-1)^n`, see [`q_factorial_descending`].

mod clique;
mod cyclo;
mod poly;
mod series;
mod zagier;

use thiserror::Error;

pub use clique::{
    clique_graph, comaximal, cyclotomic_resultant, hits_every_component, is_saturated,
    prime_power_ratio, CliqueGraph,
};
pub(crate) use cyclo::bigint_json;
pub use cyclo::{cyclotomic, divisors, euler_phi, prime_power, CyclotomicInteger};
pub use poly::IntPolynomial;
pub use series::{
    evaluate_at_root, habiro_from_series, q_factorial_descending, q_pochhammer, HabiroElement,
};
pub use zagier::{
    chi12, default_radii, radial_series, richardson_to_zero, zagier_radial_check, RadialReport,
    DEFAULT_TOLERANCE,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HabiroError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("divisor must have leading coefficient 1 or -1")]
    NonUnitLeadingCoefficient,
    #[error("polynomial division left a remainder")]
    InexactDivision,
    #[error("{0}")]
    Domain(String),
    #[error("{0} is not an element of the ambient set")]
    NotSubset(u64),
    #[error("truncation level {level} is too small; evaluation needs level {needed}")]
    InsufficientTruncation { level: usize, needed: usize },
    #[error("residues are not compatible")]
    IncompatibleResidues,
    #[error("series did not converge: {0}")]
    NonConvergence(String),
}
