//! Minimal dense neural-network substrate.
//!
//! Everything trains through these pieces: row-major `f64` matrices, MLPs with
//! cached forward passes and exact reverse-mode gradients, Adam, diagonal
//! Gaussian sampling/log-density, named deterministic RNG streams, and a
//! binary checkpoint format.

mod adam;
mod checkpoint;
mod gaussian;
mod matrix;
mod mlp;
pub mod rng;

pub use adam::{AdamOutcome, AdamState};
pub use checkpoint::Checkpoint;
pub use gaussian::{
    clamp_log_std, gaussian_entropy, gaussian_logprob, gaussian_sample, LOG_STD_MAX, LOG_STD_MIN,
};
pub use matrix::Matrix;
pub use mlp::{Activation, ForwardCache, Layer, Mlp, MlpGrads};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum TensorError {
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("non-finite value: {0}")]
    NonFinite(String),
    #[error("stale forward cache: {0}")]
    StaleCache(String),
    #[error("checkpoint format: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
