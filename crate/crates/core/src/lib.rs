//! Verification toolkit for the α-type (fractal) real number system and the
//! generalized Young, Hölder, Minkowski and Radon-type inequalities built on it.
//!
//! - [`alpha`]: exact base-space arithmetic for `a^α` tokens.
//! - [`catalog`]: signed-gap evaluators for every inequality.
//! - [`harness`]: seeded instance generation, batch verification and shrinking.
//! - [`certifier`]: numerical certification of the equality conditions.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod alpha;
pub mod catalog;
pub mod certifier;
pub mod error;
pub mod harness;
mod logspace;

pub use alpha::{AlphaReal, Dimension, Sign};
pub use catalog::{
    evaluate, ConjugatePair, Direction, ExponentTuple, Exponents, FormVariant, InequalityId, Instance, InstanceSpec,
    Regime, Status, TolerancePolicy, Verdict,
};
pub use certifier::{CertParams, EqualityCertificate, Region};
pub use error::{Error, Result};
pub use harness::{AlphaPolicy, BernoulliDomain, ParamOverrides, SuiteConfig, SuiteReport, Trial};
