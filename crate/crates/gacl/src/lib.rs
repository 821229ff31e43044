//! Grounded adaptive curriculum learning for constrained 2D navigation.
//!
//! A stateful teacher agent proposes navigation tasks in the latent space of a
//! VAE pretrained on reference maps. A PPO student and a co-trained antagonist
//! roll out on each task; the gap between their empirical returns (regret)
//! is the teacher's reward. With probability epsilon the teacher instead draws
//! a real reference map, keeping the curriculum grounded in the target domain.
//!
//! Module layout:
//! - [`tensorcore`]: dense matrices, MLP forward/backward, Adam, Gaussian heads
//! - [`gridnav`]: the navigation environment (unicycle dynamics, lidar raycast)
//! - [`taskgen`]: procedural reference maps, solvability repair, difficulty
//! - [`taskvae`]: grid VAE (encode/decode/pretrain) and latent-to-task decoding
//! - [`policyopt`]: rollout collection, GAE, clipped-surrogate updates
//! - [`teacher`]: teacher state, latent proposals, epsilon-grounded selection
//! - [`harness`]: the full training loop, baselines, ablations, eval, export

pub mod gridnav;
pub mod harness;
pub mod policyopt;
pub mod taskgen;
pub mod taskvae;
pub mod teacher;
pub mod tensorcore;
