//! Exact enumeration and verification toolkit for generalized non-crossing
//! (GNC) trees and their pattern-avoidance classes.
//!
//! Three independent routes to every count are provided: exhaustive
//! generation ([`trees`], [`patterns`]), exact generating-function solving
//! ([`series`]), and closed forms ([`formulas`]). [`schroder`] realizes the
//! bijection between increasing GNC-trees and little Schröder paths, and
//! [`verify`] cross-checks everything.

pub mod combinat;
pub mod count;
pub mod formulas;
pub mod error;
pub mod patterns;
pub mod schroder;
pub mod sequences;
pub mod series;
pub mod trees;
pub mod verify;

pub use combinat::BigCount;
pub use error::{Error, Result};
pub use patterns::{Pattern, PatternSet, StatCensus};
pub use schroder::{CokerPath, SchroderPath};
pub use series::{TriPoly, TriSeries, UniSeries};
pub use trees::{GncTree, Limits, NcTree};
