//! `GACLMAP v1` map files.
//!
//! ```text
//! GACLMAP v1
//! <width> <height>
//! <height rows of '.' (free) / '#' (obstacle), row y = 0 first>
//! S <x> <y> <theta>
//! G <x> <y>
//! ```
//! Numbers are decimal, space-separated; lines end with `\n`. Floats are
//! written shortest-roundtrip, so parse(write(t)) == t bit-exactly.

use super::task::{GridTask, OccupancyGrid, Pose};
use super::GridError;

const MAGIC: &str = "GACLMAP v1";

pub fn write_map(task: &GridTask) -> String {
    let mut out = String::new();
    out.push_str(MAGIC);
    out.push('\n');
    out.push_str(&format!("{} {}\n", task.width(), task.height()));
    for y in 0..task.height() {
        for x in 0..task.width() {
            out.push(if task.grid().get(x, y) { '#' } else { '.' });
        }
        out.push('\n');
    }
    let s = task.start();
    out.push_str(&format!("S {} {} {}\n", s.x, s.y, s.heading));
    out.push_str(&format!("G {} {}\n", task.goal().0, task.goal().1));
    out
}

pub fn parse_map(text: &str) -> Result<GridTask, GridError> {
    let mut lines = text.lines();
    let mut next = |what: &str| {
        lines
            .next()
            .ok_or_else(|| GridError::MapFormat(format!("unexpected end of file, wanted {what}")))
    };

    let magic = next("magic")?;
    if magic != MAGIC {
        return Err(GridError::MapFormat(format!("bad magic {magic:?}")));
    }
    let dims = next("dimensions")?;
    let mut it = dims.split_whitespace();
    let width: usize = parse_num(it.next(), "width")?;
    let height: usize = parse_num(it.next(), "height")?;
    if it.next().is_some() {
        return Err(GridError::MapFormat("trailing tokens on dimension line".into()));
    }

    let mut grid = OccupancyGrid::filled(width, height, false);
    for y in 0..height {
        let row = next("map row")?;
        if row.chars().count() != width {
            return Err(GridError::MapFormat(format!(
                "row {y} has {} cells, expected {width}",
                row.chars().count()
            )));
        }
        for (x, c) in row.chars().enumerate() {
            match c {
                '.' => grid.set(x, y, false),
                '#' => grid.set(x, y, true),
                other => {
                    return Err(GridError::MapFormat(format!(
                        "row {y} col {x}: bad cell {other:?}"
                    )))
                }
            }
        }
    }

    let start_line = next("start line")?;
    let mut it = start_line.split_whitespace();
    if it.next() != Some("S") {
        return Err(GridError::MapFormat("expected start line 'S x y theta'".into()));
    }
    let start = Pose::new(
        parse_num(it.next(), "start x")?,
        parse_num(it.next(), "start y")?,
        parse_num(it.next(), "start theta")?,
    );

    let goal_line = next("goal line")?;
    let mut it = goal_line.split_whitespace();
    if it.next() != Some("G") {
        return Err(GridError::MapFormat("expected goal line 'G x y'".into()));
    }
    let goal = (parse_num(it.next(), "goal x")?, parse_num(it.next(), "goal y")?);

    GridTask::new(grid, start, goal)
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, what: &str) -> Result<T, GridError> {
    let tok = tok.ok_or_else(|| GridError::MapFormat(format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| GridError::MapFormat(format!("bad {what}: {tok:?}")))
}
