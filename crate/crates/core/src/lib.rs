//! Linearity of monomial ideals.
//!
//! Decides and certifies linear resolutions, linear quotients,
//! quasi-linearity and strong linearity of monomial ideals, backed by an
//! exact multigraded Betti number engine over prime fields. Companion
//! modules cover quadratic ideals and their graphs, stable ideals,
//! simplicial complexes under Alexander duality, and uniform clutters.
//!
//! ```
//! use monolin::{betti_summary, is_quasi_linear, FieldSpec, Monomial, MonomialIdeal};
//!
//! // (x1^2, x1*x2) has a 2-linear resolution
//! let i = MonomialIdeal::new(2, [Monomial::new(vec![2, 0]), Monomial::new(vec![1, 1])]).unwrap();
//! let s = betti_summary(&i, FieldSpec::default()).unwrap();
//! assert!(s.linear);
//! assert!(is_quasi_linear(&i).verdict);
//! ```

pub mod betti;
pub mod clutter;
pub mod complex;
pub mod error;
pub mod explore;
pub mod field;
pub mod format;
pub mod linearity;
pub mod monomial;
pub mod par;
pub mod quadratic;
pub mod random;
pub mod stable;

pub use betti::{
    betti_summary, has_linear_resolution, lcm_lattice, multigraded_betti, BettiConfig,
    BettiMethod, BettiSummary, BettiTable, Convention,
};
pub use error::{Error, Result};
pub use field::FieldSpec;
pub use linearity::{
    find_critical_base, has_linear_quotients, is_critical_linear, is_linear_over,
    is_quasi_linear, is_strongly_linear, one_step_extension, predicted_betti_delta,
    strongly_linear_chain, strongly_linear_over_search, BettiDelta, ChainStep,
    QuasiLinearReport,
};
pub use monomial::{
    colon, colon_ideal, intersect, is_generated_by_variables, minimal_generators,
    monomial_lattice_ops, polarize, Monomial, MonomialIdeal, VariableSet, VariableTest,
};
pub use par::Parallelism;
