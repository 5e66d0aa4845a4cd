//! Exact computer algebra for linear dependencies among powers of binary
//! forms.
//!
//! The crate is organized around an exact scalar tower (`exact`), dense
//! binary-form algebra (`forms`), a linear-dependence engine (`dependence`),
//! the 2-Sylvester rank test and simultaneous diagonalization (`sylvester`),
//! certified identity generators and bound calculators (`constructions`),
//! the tame/wild classification machinery (`case_analysis`), and numeric
//! Klein-set geometry (`klein`). The `quadpow` binary exposes all of it as a
//! CLI emitting JSON reports.

pub mod exact;
pub mod forms;
pub mod matrix;
pub mod poly;
pub mod dependence;
pub mod sylvester;
pub mod constructions;
pub mod case_analysis;
pub mod klein;
pub mod report;

pub use exact::{
    eval_complex, parse_scalar, scalar_arith, sqrt_rational, AlgebraicScalar, ArithError,
    CyclotomicNumber, Rational,
};
pub use forms::{BinaryForm, FormSet, LinearChange};
pub use dependence::PowerIdentity;
