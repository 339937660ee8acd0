//! Dynamical zeta functions and the monoid of time-changes that preserve
//! them.
//!
//! A sequence `a_n` counts the period-`n` points of some map exactly when its
//! Möbius transform is non-negative and divisible by `n`. A map `h: N -> N`
//! belongs to the monoid when `n -> a_{h(n)}` is again such a sequence for
//! every such `a`. The crate checks realizability, converts between fixed
//! point counts and zeta series, evaluates and rewrites words in the
//! generators `g_{p,t}`, `h_{p,t}`, and compiles per-prime exponent maps into
//! words.

pub mod arith;
pub mod characterization;
pub mod compiler;
pub mod error;
pub mod json;
pub mod maps;
pub mod monoid;
pub mod realizable;
pub mod report;
pub mod series;

pub use arith::Natural;
pub use characterization::{DpFunction, DpSpec};
pub use compiler::{compile, CompileResult};
pub use error::{Error, Result};
pub use maps::{BuiltinMap, TimeChange};
pub use monoid::{Generator, Kind, Word};
pub use realizable::{FixSequence, OrbitCounts, RealizabilityVerdict};
pub use series::{FixSource, RationalSeries};
