//! Exact partial measures on finite σ-algebras.
//!
//! A partial measure is an extended-real set function defined on part of an
//! algebra, such that its restriction to each trace `𝒜 ∩ B`, `B` in the
//! domain, is a measure. This crate builds and validates them, computes the
//! Jordan-type decomposition `μ = μ⁺ − μ⁻` from the sup formulas over
//! `F⁺(μ)` and `F⁻(μ)`, produces witnesses for sets outside the domain, and
//! recovers densities with respect to a probability. All arithmetic is exact.
//!
//! [`example3`] holds a symbolic model of a maximal partial measure on an
//! infinite algebra that has no Hahn-type split.

pub mod density;
pub mod error;
pub mod example3;
pub mod extreal;
pub mod finite_space;
pub mod json;
pub mod laws;
pub mod measure;
pub mod partial;
pub mod random;

pub use density::{ess_sup, is_abs_continuous, positive_split, rn_derivative, Probability, RandomVariable};
pub use error::{Error, Result};
pub use extreal::ExtReal;
pub use finite_space::{FiniteSpace, MeasurableSet, DEFAULT_ENUMERATION_CAP, MAX_ATOMS};
pub use measure::{Measure, PositiveMeasure};
pub use partial::{JordanDecomposition, MaximalPartialMeasure, PartialMeasure, Side};
