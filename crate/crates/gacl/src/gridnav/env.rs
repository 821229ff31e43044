use serde::{Deserialize, Serialize};

use super::raycast::raycast;
use super::task::{GridTask, Pose};
use super::GridError;

/// Linear and angular velocity command. Values are clipped to the
/// environment bounds before integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Action {
    pub v: f64,
    pub omega: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct RewardParams {
    /// Progress coefficient on the drop in Euclidean goal distance.
    pub progress: f64,
    /// Flat per-step cost.
    pub step_cost: f64,
    pub goal_bonus: f64,
    pub collision_penalty: f64,
}

impl Default for RewardParams {
    fn default() -> Self {
        RewardParams {
            progress: 1.0,
            step_cost: 0.01,
            goal_bonus: 10.0,
            collision_penalty: 10.0,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct EnvParams {
    pub dt: f64,
    pub v_max: f64,
    pub omega_max: f64,
    pub robot_radius: f64,
    pub goal_radius: f64,
    pub horizon: usize,
    pub n_rays: usize,
    /// Lidar field of view, radians.
    pub fov: f64,
    pub ray_range: f64,
    pub reward: RewardParams,
}

impl Default for EnvParams {
    fn default() -> Self {
        EnvParams {
            dt: 0.1,
            v_max: 2.0,
            omega_max: std::f64::consts::PI,
            robot_radius: 0.4,
            goal_radius: 0.5,
            horizon: 128,
            n_rays: 16,
            fov: 1.5 * std::f64::consts::PI,
            ray_range: 8.0,
            reward: RewardParams::default(),
        }
    }
}

impl EnvParams {
    /// Observation layout: pose (2) + heading sin/cos (2) + rays (n_rays) +
    /// goal distance (1) + bearing sin/cos (2).
    pub fn observation_dim(&self) -> usize {
        self.n_rays + 7
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Running,
    ReachedGoal,
    Collided,
    TimedOut,
}

#[derive(Debug, Clone)]
pub struct EnvState {
    pub task: GridTask,
    pub pose: Pose,
    pub steps_elapsed: usize,
    pub cumulative_reward: f64,
    pub status: Status,
}

pub struct StepResult {
    pub observation: Vec<f64>,
    pub reward: f64,
    pub done: bool,
    /// The clipped command actually integrated (for speed metrics).
    pub executed: Action,
}

/// One navigation episode: unicycle dynamics on a validated task.
pub struct NavEnv {
    params: EnvParams,
    state: EnvState,
}

impl NavEnv {
    /// Validates the task and starts an episode at its start pose.
    pub fn reset(task: GridTask, params: &EnvParams) -> Result<NavEnv, GridError> {
        // GridTask is validated on construction, but tasks may arrive from
        // files or decoders that bypassed it; re-check cheaply.
        let task = GridTask::new(task.grid().clone(), task.start(), task.goal())?;
        let pose = task.start();
        Ok(NavEnv {
            params: *params,
            state: EnvState {
                task,
                pose,
                steps_elapsed: 0,
                cumulative_reward: 0.0,
                status: Status::Running,
            },
        })
    }

    pub fn state(&self) -> &EnvState {
        &self.state
    }

    pub fn params(&self) -> &EnvParams {
        &self.params
    }

    fn goal_distance(&self, pose: &Pose) -> f64 {
        let (gx, gy) = self.state.task.goal();
        ((pose.x - gx).powi(2) + (pose.y - gy).powi(2)).sqrt()
    }

    /// Flat observation vector; see [`EnvParams::observation_dim`] for layout.
    pub fn observe(&self) -> Vec<f64> {
        let p = &self.params;
        let s = &self.state;
        let (w, h) = (s.task.width() as f64, s.task.height() as f64);
        let mut obs = Vec::with_capacity(p.observation_dim());
        obs.push((s.pose.x / w).clamp(0.0, 1.0));
        obs.push((s.pose.y / h).clamp(0.0, 1.0));
        obs.push(s.pose.heading.sin());
        obs.push(s.pose.heading.cos());
        obs.extend(raycast(
            &s.task,
            s.pose.x,
            s.pose.y,
            s.pose.heading,
            p.n_rays,
            p.fov,
            p.ray_range,
        ));
        let d = self.goal_distance(&s.pose);
        obs.push((d / s.task.diagonal()).clamp(0.0, 1.0));
        let (gx, gy) = s.task.goal();
        let bearing = (gy - s.pose.y).atan2(gx - s.pose.x) - s.pose.heading;
        obs.push(bearing.sin());
        obs.push(bearing.cos());
        debug_assert!(obs.iter().all(|v| v.is_finite()));
        obs
    }

    /// Advance one step. Rejected once the episode has finished.
    pub fn step(&mut self, action: Action) -> Result<StepResult, GridError> {
        if self.state.status != Status::Running {
            return Err(GridError::EpisodeOver);
        }
        let p = self.params;
        let v = action.v.clamp(0.0, p.v_max);
        let omega = action.omega.clamp(-p.omega_max, p.omega_max);

        let prev = self.state.pose;
        let d_prev = self.goal_distance(&prev);
        let pose = Pose::new(
            prev.x + v * prev.heading.cos() * p.dt,
            prev.y + v * prev.heading.sin() * p.dt,
            prev.heading + omega * p.dt,
        );
        let d_new = self.goal_distance(&pose);

        let collided = self.collides(&pose);
        let reached = d_new < p.goal_radius;

        let mut reward = p.reward.progress * (d_prev - d_new) - p.reward.step_cost;
        if reached {
            reward += p.reward.goal_bonus;
        }
        if collided {
            reward -= p.reward.collision_penalty;
        }

        self.state.pose = pose;
        self.state.steps_elapsed += 1;
        self.state.cumulative_reward += reward;
        self.state.status = if collided {
            Status::Collided
        } else if reached {
            Status::ReachedGoal
        } else if self.state.steps_elapsed >= p.horizon {
            Status::TimedOut
        } else {
            Status::Running
        };

        Ok(StepResult {
            observation: self.observe(),
            reward,
            done: self.state.status != Status::Running,
            executed: Action { v, omega },
        })
    }

    /// True when any occupied cell's square lies within `robot_radius` of the pose.
    fn collides(&self, pose: &Pose) -> bool {
        let r = self.params.robot_radius;
        let x0 = (pose.x - r).floor() as i64;
        let x1 = (pose.x + r).floor() as i64;
        let y0 = (pose.y - r).floor() as i64;
        let y1 = (pose.y + r).floor() as i64;
        for cy in y0..=y1 {
            for cx in x0..=x1 {
                if self.state.task.is_occupied(cx, cy) {
                    let px = pose.x.clamp(cx as f64, cx as f64 + 1.0);
                    let py = pose.y.clamp(cy as f64, cy as f64 + 1.0);
                    if (px - pose.x).powi(2) + (py - pose.y).powi(2) <= r * r {
                        return true;
                    }
                }
            }
        }
        false
    }
}
