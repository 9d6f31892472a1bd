//! Constructive uniform embeddings of bounded-geometry metric spaces into an
//! ℓ²-direct sum of ℓ^{p_n} blocks, and proper affine isometric actions of
//! finitely generated groups on the same kind of space, each with numerical
//! certificates for every bound the construction promises.
//!
//! Pipeline for a finite metric space:
//!
//! 1. [`metric::FiniteMetricSpace`] from a graph or a distance matrix;
//! 2. tents `φⁿ_x` ([`tent::tent`]), checked by [`tent::verify_partition`];
//! 3. an exponent schedule `p_n` ([`exponent::schedule_for_space`]);
//! 4. the embedding and its distortion ([`embed::distortion_profile`],
//!    [`embed::certify`]).
//!
//! The group side lives in [`group`]; random regular graphs and spectral
//! diagnostics in [`expander`].
//!
//! Property A proper (with ℓ²-valued partitions) is stronger than the sup-norm
//! tent conditions checked here and is not computed.

pub mod embed;
pub mod error;
pub mod exact;
pub mod exponent;
pub mod expander;
pub mod group;
pub mod metric;
pub mod mixed_norm;
pub mod report;
pub mod sparse;
pub mod tent;

pub use error::{Error, MetricAxiom, Result};
pub use exponent::{Exponent, ExponentSchedule};
pub use metric::{FiniteMetricSpace, Graph, GrowthProfile};
pub use mixed_norm::MixedNormVector;
pub use sparse::SparseFunction;
