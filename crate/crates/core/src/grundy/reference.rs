use crate::error::{Error, Result};
use crate::grundy::{mex, GrundyGrid};
use crate::ruleset::{Position, RuleSet};

/// Naive grid computation: every cell recomputes the mex of its full move
/// list from scratch. Kept as the oracle for the incremental engine.
pub fn compute_grid_reference(rule: RuleSet, width: u32, height: u32) -> Result<GrundyGrid> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidParameter(format!("grid dimensions must be positive, got {width}x{height}")));
    }
    let w = width as usize;
    let mut values = vec![0u32; w * height as usize];
    for y in 0..height {
        for x in 0..width {
            let options = rule.moves(Position::new(x, y));
            values[y as usize * w + x as usize] =
                mex(options.iter().map(|q| values[q.y as usize * w + q.x as usize]));
        }
    }
    GrundyGrid::from_parts(rule, width, height, values)
}
