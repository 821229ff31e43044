use std::collections::VecDeque;

use super::GridError;

pub const MAX_SIDE: usize = 64;

/// Raw occupancy grid, row-major, `true` = obstacle. Carries no invariants;
/// generators and the VAE decoder mutate these freely before wrapping them
/// into a validated [`GridTask`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccupancyGrid {
    pub width: usize,
    pub height: usize,
    pub cells: Vec<bool>,
}

impl OccupancyGrid {
    pub fn filled(width: usize, height: usize, occupied: bool) -> Self {
        OccupancyGrid {
            width,
            height,
            cells: vec![occupied; width * height],
        }
    }

    pub fn empty_walled(width: usize, height: usize) -> Self {
        let mut g = Self::filled(width, height, false);
        g.force_border_walls();
        g
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.cells[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, occupied: bool) {
        self.cells[y * self.width + x] = occupied;
    }

    /// Out-of-range cells count as occupied.
    pub fn is_occupied(&self, x: i64, y: i64) -> bool {
        if x < 0 || y < 0 || x >= self.width as i64 || y >= self.height as i64 {
            return true;
        }
        self.get(x as usize, y as usize)
    }

    pub fn force_border_walls(&mut self) {
        for x in 0..self.width {
            self.set(x, 0, true);
            self.set(x, self.height - 1, true);
        }
        for y in 0..self.height {
            self.set(0, y, true);
            self.set(self.width - 1, y, true);
        }
    }

    /// Clear the cell and its 8-neighborhood (clipped to the interior).
    pub fn clear_neighborhood(&mut self, cx: usize, cy: usize) {
        for dy in -1i64..=1 {
            for dx in -1i64..=1 {
                let (x, y) = (cx as i64 + dx, cy as i64 + dy);
                if x > 0 && y > 0 && (x as usize) < self.width - 1 && (y as usize) < self.height - 1
                {
                    self.set(x as usize, y as usize, false);
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    pub x: f64,
    pub y: f64,
    pub heading: f64,
}

impl Pose {
    pub fn new(x: f64, y: f64, heading: f64) -> Self {
        Pose { x, y, heading }
    }
}

/// A validated navigation task: walled occupancy grid, start pose, goal.
///
/// Invariants, enforced on construction:
/// - `0 < width, height <= 64`, border cells all occupied
/// - start and goal cells plus their 8-neighborhoods are free
/// - a 4-connected free path exists from start cell to goal cell
#[derive(Debug, Clone, PartialEq)]
pub struct GridTask {
    grid: OccupancyGrid,
    start: Pose,
    goal: (f64, f64),
}

impl GridTask {
    pub fn new(grid: OccupancyGrid, start: Pose, goal: (f64, f64)) -> Result<Self, GridError> {
        let task = GridTask { grid, start, goal };
        task.validate()?;
        Ok(task)
    }

    /// Empty walled arena.
    pub fn empty(
        width: usize,
        height: usize,
        start: Pose,
        goal: (f64, f64),
    ) -> Result<Self, GridError> {
        Self::new(OccupancyGrid::empty_walled(width, height), start, goal)
    }

    fn validate(&self) -> Result<(), GridError> {
        let (w, h) = (self.grid.width, self.grid.height);
        if w == 0 || h == 0 || w > MAX_SIDE || h > MAX_SIDE {
            return Err(GridError::InvalidTask(format!(
                "dimensions {w}x{h} outside (0, {MAX_SIDE}]"
            )));
        }
        if self.grid.cells.len() != w * h {
            return Err(GridError::InvalidTask(format!(
                "occupancy length {} != {w}x{h}",
                self.grid.cells.len()
            )));
        }
        for x in 0..w {
            if !self.grid.get(x, 0) || !self.grid.get(x, h - 1) {
                return Err(GridError::InvalidTask("border not fully walled".into()));
            }
        }
        for y in 0..h {
            if !self.grid.get(0, y) || !self.grid.get(w - 1, y) {
                return Err(GridError::InvalidTask("border not fully walled".into()));
            }
        }
        for (label, (x, y)) in [
            ("start", (self.start.x, self.start.y)),
            ("goal", self.goal),
        ] {
            if !x.is_finite() || !y.is_finite() || x < 0.0 || y < 0.0 || x >= w as f64 || y >= h as f64
            {
                return Err(GridError::InvalidTask(format!(
                    "{label} ({x}, {y}) outside the grid"
                )));
            }
            let (cx, cy) = (x.floor() as i64, y.floor() as i64);
            for dy in -1..=1 {
                for dx in -1..=1 {
                    if self.grid.is_occupied(cx + dx, cy + dy) {
                        return Err(GridError::InvalidTask(format!(
                            "{label} cell ({cx}, {cy}) neighborhood is not free"
                        )));
                    }
                }
            }
        }
        if !reachable(&self.grid, self.start_cell(), self.goal_cell()) {
            return Err(GridError::InvalidTask(
                "no free 4-connected path from start to goal".into(),
            ));
        }
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.grid.width
    }

    pub fn height(&self) -> usize {
        self.grid.height
    }

    pub fn grid(&self) -> &OccupancyGrid {
        &self.grid
    }

    pub fn start(&self) -> Pose {
        self.start
    }

    pub fn goal(&self) -> (f64, f64) {
        self.goal
    }

    pub fn start_cell(&self) -> (usize, usize) {
        (self.start.x.floor() as usize, self.start.y.floor() as usize)
    }

    pub fn goal_cell(&self) -> (usize, usize) {
        (self.goal.0.floor() as usize, self.goal.1.floor() as usize)
    }

    pub fn is_occupied(&self, x: i64, y: i64) -> bool {
        self.grid.is_occupied(x, y)
    }

    /// Occupancy of the cell containing a continuous point.
    pub fn occupied_at(&self, x: f64, y: f64) -> bool {
        self.grid.is_occupied(x.floor() as i64, y.floor() as i64)
    }

    pub fn diagonal(&self) -> f64 {
        ((self.width() * self.width() + self.height() * self.height()) as f64).sqrt()
    }

    /// Mirror the task left-right (used by symmetry tests).
    pub fn mirrored_x(&self) -> GridTask {
        let (w, h) = (self.grid.width, self.grid.height);
        let mut grid = OccupancyGrid::filled(w, h, false);
        for y in 0..h {
            for x in 0..w {
                grid.set(w - 1 - x, y, self.grid.get(x, y));
            }
        }
        GridTask {
            grid,
            start: Pose::new(
                w as f64 - self.start.x,
                self.start.y,
                std::f64::consts::PI - self.start.heading,
            ),
            goal: (w as f64 - self.goal.0, self.goal.1),
        }
    }
}

/// 4-connected BFS reachability over free cells.
fn reachable(grid: &OccupancyGrid, from: (usize, usize), to: (usize, usize)) -> bool {
    if grid.is_occupied(from.0 as i64, from.1 as i64) || grid.is_occupied(to.0 as i64, to.1 as i64)
    {
        return false;
    }
    let (w, h) = (grid.width, grid.height);
    let mut seen = vec![false; w * h];
    let mut queue = VecDeque::new();
    seen[from.1 * w + from.0] = true;
    queue.push_back(from);
    while let Some((x, y)) = queue.pop_front() {
        if (x, y) == to {
            return true;
        }
        for (dx, dy) in [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)] {
            let (nx, ny) = (x as i64 + dx, y as i64 + dy);
            if !grid.is_occupied(nx, ny) && !seen[ny as usize * w + nx as usize] {
                seen[ny as usize * w + nx as usize] = true;
                queue.push_back((nx as usize, ny as usize));
            }
        }
    }
    false
}
