//! Biorthogonal curvature of algebraic curvature operators, and a
//! homeomorphism classifier for smoothable closed simply-connected
//! 4-manifolds built on their intersection forms.
//!
//! - [`bivector`]: Λ²ℝⁿ, planes, Hodge star.
//! - [`curvature`]: curvature operators, the cone `{sec⊥ > 0}` and its exact
//!   certifier in dimension 4, model operators.
//! - [`minimizer`]: numerical minimization over orthogonal plane pairs in
//!   any dimension `n ≥ 4`.
//! - [`forms`]: exact invariants of unimodular forms and the verdict.
//! - [`sumword`]: connected-sum words, rewriting and certificates.
//! - [`cli`]: the command-line front end.

#![allow(clippy::needless_range_loop)]

pub mod bivector;
pub mod cli;
pub mod curvature;
pub mod forms;
pub mod minimizer;
pub mod sumword;
pub mod testing;

pub use bivector::{Bivector, Plane};
pub use curvature::{ConeStatus, ConeVerdict, CurvatureOperator, Model};
pub use forms::{HomeoClass, HomeoTag, IntersectionForm, VerdictReport};
pub use minimizer::{FramePair, MinimizeOptions, MinimizeResult};
pub use sumword::{Certificate, SumWord};
