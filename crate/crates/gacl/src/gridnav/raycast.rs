use super::task::GridTask;

/// Cast a fan of `n_rays` over `fov` radians centered on `heading`.
///
/// Ray `k` points along `heading - fov/2 + k * fov/(n_rays-1)`. Each result
/// is the distance to the boundary of the first occupied cell (grid DDA
/// traversal), capped at `r_max` and normalized by it, so values lie in
/// `[0, 1]`. A pose inside an occupied cell returns all zeros; callers flag
/// that as a collision.
pub fn raycast(
    task: &GridTask,
    x: f64,
    y: f64,
    heading: f64,
    n_rays: usize,
    fov: f64,
    r_max: f64,
) -> Vec<f64> {
    if task.occupied_at(x, y) {
        return vec![0.0; n_rays];
    }
    (0..n_rays)
        .map(|k| {
            let angle = if n_rays == 1 {
                heading
            } else {
                heading - fov / 2.0 + k as f64 * fov / (n_rays - 1) as f64
            };
            cast_ray(task, x, y, angle, r_max) / r_max
        })
        .collect()
}

/// Distance along one ray to the first occupied cell boundary, capped at `r_max`.
fn cast_ray(task: &GridTask, x: f64, y: f64, angle: f64, r_max: f64) -> f64 {
    let (dx, dy) = (angle.cos(), angle.sin());
    let (mut ix, mut iy) = (x.floor() as i64, y.floor() as i64);

    let step_x: i64 = if dx > 0.0 { 1 } else { -1 };
    let step_y: i64 = if dy > 0.0 { 1 } else { -1 };
    let t_delta_x = if dx != 0.0 { 1.0 / dx.abs() } else { f64::INFINITY };
    let t_delta_y = if dy != 0.0 { 1.0 / dy.abs() } else { f64::INFINITY };
    let mut t_max_x = if dx > 0.0 {
        (ix as f64 + 1.0 - x) / dx
    } else if dx < 0.0 {
        (ix as f64 - x) / dx
    } else {
        f64::INFINITY
    };
    let mut t_max_y = if dy > 0.0 {
        (iy as f64 + 1.0 - y) / dy
    } else if dy < 0.0 {
        (iy as f64 - y) / dy
    } else {
        f64::INFINITY
    };

    loop {
        let t;
        if t_max_x < t_max_y {
            t = t_max_x;
            t_max_x += t_delta_x;
            ix += step_x;
        } else {
            t = t_max_y;
            t_max_y += t_delta_y;
            iy += step_y;
        }
        if t >= r_max {
            return r_max;
        }
        if task.is_occupied(ix, iy) {
            return t;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gridnav::task::{GridTask, OccupancyGrid, Pose};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const FOV: f64 = 1.5 * std::f64::consts::PI;

    fn open_arena() -> GridTask {
        GridTask::empty(64, 64, Pose::new(32.0, 32.0, 0.0), (60.5, 60.5)).unwrap()
    }

    #[test]
    fn open_interior_saturates_all_rays() {
        let task = open_arena();
        let d = raycast(&task, 32.0, 32.0, 0.3, 16, FOV, 8.0);
        assert_eq!(d.len(), 16);
        assert!(d.iter().all(|&v| v == 1.0), "{d:?}");
    }

    #[test]
    fn flat_wall_normal_distance() {
        // Wall column at x = 7; face at x = 7.0; pose two units away.
        let mut grid = OccupancyGrid::empty_walled(16, 16);
        for y in 1..15 {
            grid.set(7, y, true);
        }
        let task = GridTask::new(grid, Pose::new(2.5, 2.5, 0.0), (2.5, 12.5)).unwrap();
        let d = raycast(&task, 5.0, 8.5, 0.0, 1, FOV, 8.0);
        assert!((d[0] - 0.25).abs() < 1e-12, "{}", d[0]);
    }

    #[test]
    fn pose_inside_obstacle_returns_zeros() {
        let task = open_arena();
        let d = raycast(&task, 0.5, 0.5, 0.0, 16, FOV, 8.0);
        assert!(d.iter().all(|&v| v == 0.0));
    }

    /// Brute-force oracle: march along the ray in 1e-3 steps until the
    /// containing cell is occupied.
    fn march_ray(task: &GridTask, x: f64, y: f64, angle: f64, r_max: f64) -> f64 {
        let (dx, dy) = (angle.cos(), angle.sin());
        let mut t = 0.0;
        while t < r_max {
            t += 1e-3;
            if task.occupied_at(x + t * dx, y + t * dy) {
                return t;
            }
        }
        r_max
    }

    fn random_task(rng: &mut impl Rng) -> GridTask {
        loop {
            let mut grid = OccupancyGrid::empty_walled(16, 16);
            for y in 1..15 {
                for x in 1..15 {
                    grid.set(x, y, rng.gen_bool(0.25));
                }
            }
            grid.clear_neighborhood(2, 2);
            grid.clear_neighborhood(13, 13);
            if let Ok(t) = GridTask::new(grid, Pose::new(2.5, 2.5, 0.0), (13.5, 13.5)) {
                return t;
            }
        }
    }

    #[test]
    fn dda_matches_marching_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..10 {
            let task = random_task(&mut rng);
            let (px, py) = (2.5 + rng.gen::<f64>() * 0.8 - 0.4, 2.5 + rng.gen::<f64>() * 0.8 - 0.4);
            let heading = rng.gen::<f64>() * std::f64::consts::TAU;
            let dda = raycast(&task, px, py, heading, 16, FOV, 8.0);
            for (k, &d) in dda.iter().enumerate() {
                let angle = heading - FOV / 2.0 + k as f64 * FOV / 15.0;
                let oracle = march_ray(&task, px, py, angle, 8.0) / 8.0;
                assert!(
                    (d - oracle).abs() < 0.01,
                    "ray {k}: dda {d} vs march {oracle}"
                );
            }
        }
    }

    #[test]
    fn mirroring_reverses_the_ray_vector() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let task = random_task(&mut rng);
            let mirrored = task.mirrored_x();
            let (px, py) = (2.3 + rng.gen::<f64>(), 2.3 + rng.gen::<f64>());
            let heading = rng.gen::<f64>() * std::f64::consts::TAU;
            let d = raycast(&task, px, py, heading, 16, FOV, 8.0);
            let dm = raycast(
                &mirrored,
                16.0 - px,
                py,
                std::f64::consts::PI - heading,
                16,
                FOV,
                8.0,
            );
            for k in 0..16 {
                assert!(
                    (d[k] - dm[15 - k]).abs() < 1e-7,
                    "ray {k}: {} vs {}",
                    d[k],
                    dm[15 - k]
                );
            }
        }
    }
}
