//! Constrained 2D navigation environment.
//!
//! A unicycle robot with a fan of lidar rays drives through an occupancy
//! grid toward a goal. Reward is shaped on goal progress with a per-step
//! cost, a goal bonus, and a collision penalty; collisions terminate the
//! episode.

mod env;
mod format;
mod raycast;
mod task;

pub use env::{Action, EnvParams, EnvState, NavEnv, RewardParams, Status, StepResult};
pub use format::{parse_map, write_map};
pub use raycast::raycast;
pub use task::{GridTask, OccupancyGrid, Pose};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GridError {
    #[error("invalid task: {0}")]
    InvalidTask(String),
    #[error("step called on a finished episode")]
    EpisodeOver,
    #[error("map format: {0}")]
    MapFormat(String),
}
