//! Exact normal ordering of powers of the operator `A = u(z)·d/dz`.
//!
//! `A^k` is rewritten as `Σ_s P_k^s(u) (d/dz)^s`, where each `P_k^s` is an
//! integer polynomial in the jet variables `u, u', u'', …`. The crate builds
//! those polynomials, reads off the combinatorial numbers hiding in them,
//! regenerates the same numbers by independent recurrences, specializes the
//! expansion to concrete choices of `u`, and checks everything against a
//! brute-force Laurent series oracle.
//!
//! Everything here is pure and allocation-only; IO, rendering and the command
//! line live in the `opow` crate.

#![no_std]

extern crate alloc;

pub mod coefficients;
pub mod diffpoly;
pub mod operator_power;
pub mod report;
pub mod series_oracle;
pub mod special_u;
pub mod suite;

pub use coefficients::{CKey, CTable, CompositionIndex};
pub use diffpoly::{DiffMonomial, DiffPolynomial, ExponentVector};
pub use operator_power::{expand, CEntry, OperatorExpansion};
pub use report::{Failure, Report};
pub use series_oracle::{Precision, TruncatedLaurentSeries};
pub use special_u::{ATable, SpecialTerm, URule};
pub use suite::Suite;

/// Unbounded signed integer used for every coefficient.
pub type ExactInt = num_bigint::BigInt;

/// Exact rational in lowest terms with a positive denominator.
pub type ExactRational = num_rational::BigRational;
