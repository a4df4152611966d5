//! Sprague-Grundy grids: computation, g-position extraction and comparison
//! between rule sets.

mod engine;
mod io;
mod reference;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ruleset::{Position, RuleSet};

pub use engine::{compute_grid, compute_grid_with, GridOptions, Strategy, DEFAULT_CELL_CAP};
pub use reference::compute_grid_reference;

/// Smallest natural number absent from `values`.
pub fn mex<I: IntoIterator<Item = u32>>(values: I) -> u32 {
    let mut seen: Vec<bool> = Vec::new();
    for v in values {
        let v = v as usize;
        if v >= seen.len() {
            seen.resize(v + 1, false);
        }
        seen[v] = true;
    }
    seen.iter().position(|&s| !s).unwrap_or(seen.len()) as u32
}

/// The nim sum (bitwise exclusive or).
pub const fn nim_sum(x: u32, y: u32) -> u32 {
    x ^ y
}

/// Nim-values of one rule set on the box `[0, width) x [0, height)`.
///
/// Values are exact everywhere in the box: every move lowers a coordinate,
/// so no cell depends on anything outside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrundyGrid {
    rule: RuleSet,
    width: u32,
    height: u32,
    values: Vec<u32>,
}

impl GrundyGrid {
    pub(crate) fn from_parts(rule: RuleSet, width: u32, height: u32, values: Vec<u32>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidParameter(format!("grid dimensions must be positive, got {width}x{height}")));
        }
        if values.len() as u64 != width as u64 * height as u64 {
            return Err(Error::MalformedGrid(format!(
                "{} values for a {width}x{height} grid",
                values.len()
            )));
        }
        Ok(GrundyGrid { rule, width, height, values })
    }

    pub fn rule(&self) -> RuleSet {
        self.rule
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Row-major values, `values()[y * width + x]`.
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn contains(&self, pos: Position) -> bool {
        pos.x < self.width && pos.y < self.height
    }

    /// Value at `(x, y)`. Panics outside the box.
    pub fn value(&self, x: u32, y: u32) -> u32 {
        assert!(x < self.width && y < self.height, "({x},{y}) outside {}x{} grid", self.width, self.height);
        self.values[(y as usize) * self.width as usize + x as usize]
    }

    pub fn get(&self, pos: Position) -> Option<u32> {
        self.contains(pos).then(|| self.value(pos.x, pos.y))
    }

    pub fn row(&self, y: u32) -> &[u32] {
        let w = self.width as usize;
        &self.values[y as usize * w..(y as usize + 1) * w]
    }

    /// Every cell with value exactly `g`.
    pub fn g_positions(&self, g: u32) -> PositionSet {
        let positions = self.cells().filter(|&(_, v)| v == g).map(|(p, _)| p).collect();
        PositionSet { positions, width: self.width, height: self.height }
    }

    /// Cells in row-major order with their values.
    pub fn cells(&self) -> impl Iterator<Item = (Position, u32)> + '_ {
        let w = self.width;
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (Position::new(i as u32 % w, i as u32 / w), v))
    }

    /// Position of value `g` in row `y`, if it lies inside the box.
    pub fn find_in_row(&self, y: u32, g: u32) -> Option<u32> {
        self.row(y).iter().position(|&v| v == g).map(|x| x as u32)
    }

    /// The top-left `width x height` corner of this grid.
    pub fn sub_grid(&self, width: u32, height: u32) -> Result<GrundyGrid> {
        if width > self.width || height > self.height {
            return Err(Error::InvalidParameter(format!(
                "{width}x{height} does not fit in {}x{}",
                self.width, self.height
            )));
        }
        let values = (0..height).flat_map(|y| self.row(y)[..width as usize].iter().copied()).collect();
        GrundyGrid::from_parts(self.rule, width, height, values)
    }
}

/// Free function form of [`GrundyGrid::g_positions`].
pub fn g_positions(grid: &GrundyGrid, g: u32) -> PositionSet {
    grid.g_positions(g)
}

/// A finite set of positions, complete within the box
/// `[0, width) x [0, height)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PositionSet {
    pub positions: BTreeSet<Position>,
    pub width: u32,
    pub height: u32,
}

impl PositionSet {
    pub fn new(width: u32, height: u32) -> Self {
        PositionSet { positions: BTreeSet::new(), width, height }
    }

    /// Inserts `pos` if it lies in the box, returning whether it did.
    pub fn insert_bounded(&mut self, pos: Position) -> bool {
        if pos.x < self.width && pos.y < self.height {
            self.positions.insert(pos);
            true
        } else {
            false
        }
    }

    pub fn contains(&self, pos: Position) -> bool {
        self.positions.contains(&pos)
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Position> + '_ {
        self.positions.iter().copied()
    }

    /// Adds the mirror image of every member that stays inside the box.
    pub fn mirrored(&self) -> PositionSet {
        let mut out = self.clone();
        for p in &self.positions {
            out.insert_bounded(p.mirrored());
        }
        out
    }

    /// Only the members with `x <= y`.
    pub fn upper_half(&self) -> PositionSet {
        PositionSet {
            positions: self.positions.iter().copied().filter(|p| p.x <= p.y).collect(),
            width: self.width,
            height: self.height,
        }
    }

    /// First member (row-major) of the symmetric difference, with a flag
    /// telling whether it belongs to `self`.
    pub fn first_difference(&self, other: &PositionSet) -> Option<(Position, bool)> {
        let a = self.positions.difference(&other.positions).next().map(|&p| (p, true));
        let b = other.positions.difference(&self.positions).next().map(|&p| (p, false));
        match (a, b) {
            (Some(x), Some(y)) => Some(if x.0 <= y.0 { x } else { y }),
            (x, y) => x.or(y),
        }
    }

    /// Writes the set as CSV with header `x,y`, in row-major order.
    pub fn write_csv<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "x,y")?;
        for p in &self.positions {
            writeln!(out, "{},{}", p.x, p.y)?;
        }
        Ok(())
    }
}

/// One disagreement between two grids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GridDisagreement {
    pub g: u32,
    pub position: Position,
    pub value_a: u32,
    pub value_b: u32,
}

/// Per-g comparison of the g-position sets of two grids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AgreementReport {
    pub g_max_checked: u32,
    pub per_g_equal: Vec<bool>,
    pub first_witness: Option<GridDisagreement>,
}

impl AgreementReport {
    pub fn all_equal(&self) -> bool {
        self.first_witness.is_none()
    }

    /// Whether the g-position sets agree for every `g <= g_max`.
    pub fn equal_through(&self, g_max: u32) -> bool {
        self.per_g_equal.iter().take(g_max as usize + 1).all(|&e| e)
    }
}

/// Compares the g-positions of `a` and `b` for every `g` in `0..=g_max`.
///
/// The witness is the smallest disagreement ordered by `g`, then `y`, then
/// `x`.
pub fn grids_agree_up_to(a: &GrundyGrid, b: &GrundyGrid, g_max: u32) -> Result<AgreementReport> {
    if (a.width, a.height) != (b.width, b.height) {
        return Err(Error::DimensionMismatch(a.width, a.height, b.width, b.height));
    }
    let mut per_g_equal = vec![true; g_max as usize + 1];
    let mut best: Option<GridDisagreement> = None;
    for ((pos, va), &vb) in a.cells().zip(b.values.iter()) {
        if va == vb {
            continue;
        }
        for g in [va, vb] {
            if g > g_max {
                continue;
            }
            per_g_equal[g as usize] = false;
            let cand = GridDisagreement { g, position: pos, value_a: va, value_b: vb };
            if best.is_none_or(|b| (g, pos) < (b.g, b.position)) {
                best = Some(cand);
            }
        }
    }
    Ok(AgreementReport { g_max_checked: g_max, per_g_equal, first_witness: best })
}
