//! Train a graph classifier, extract occlusion-based ground-truth edge
//! importances, train a conditional generative explainer against them, and
//! score explanations with accuracy and fidelity metrics.
//!
//! The `examples/` directory holds one runnable example per capability; the
//! `acx` binary drives the same pipeline through run directories.

pub mod datasets;
pub mod error;
pub mod explainer;
pub mod export;
pub mod gnn;
pub mod granger;
pub mod graph;
pub mod instances;
pub mod metrics;
mod model_io;
pub mod numeric;
pub mod workbench;

pub use error::{Error, Result};
