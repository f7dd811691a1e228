//! Asymptotic expansions of reciprocal Dirichlet series at s → +∞.
//!
//! The crate provides exact rational arithmetic for expansions of the form
//! 1/F(s) = Σ cᵢ·βᵢˢ, a catalog of arithmetic series, rational sign laws,
//! and arbitrary-precision evaluation of the special functions involved.

pub mod arith;
pub mod catalog;
pub mod error;
pub mod expansion;
pub mod numerics;
pub mod rational;
pub mod signs;

pub use catalog::{default_catalog, make_series, Orientation, SeriesId};
pub use error::{Error, Result};
pub use expansion::{
    analytic_transform, oracle_coefficient, reciprocal_expansion, series_product, Expansion, PowerTerm, SeriesSpec,
    DEFAULT_TERM_CAP,
};
pub use rational::Rational;
pub use signs::{audit_signs, lambda_a, lambda_v, residue_sign_report, AuditReport, Law, Prediction};
