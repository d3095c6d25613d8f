//! Piercing-point selection: exact depth oracles, the partition-driven
//! selection pipeline and the pinning pipeline.

pub mod oracle;
pub mod pinning;
pub mod pipeline;

pub use oracle::{brute_force_deepest, colorful_deepest, colorful_floor, pierced_open, DepthResult};
pub use pinning::{pinning_pipeline, PinnedFamily, PinningOutcome};
pub use pipeline::{select_point, RChoice, SelectConfig, SelectionCase, SelectionTrace, TraceLevel};
