//! Incremental-mex grid engine.
//!
//! Every row, column and diagonal keeps a presence bitset of the values
//! already placed on it. A cell's options are its row prefix, its column
//! prefix and the legal part of its diagonal, so its value is the first bit
//! absent from the union of three bitsets. The row scan starts at the row's
//! own mex, which only grows.
//!
//! For rule sets whose diagonal legality depends only on the target cell,
//! the diagonal bitset holds just the enterable cells. `T_k` legality also
//! depends on the source, so its diagonal options are enumerated per cell.
//!
//! Cells with equal `x + y` never depend on each other. The parallel
//! strategy computes one anti-diagonal at a time from read-only state, then
//! commits the results sequentially, giving output identical to the
//! row-major sequential strategy.

use crate::error::{Error, Result};
use crate::grundy::GrundyGrid;
use crate::par;
use crate::ruleset::{Position, RuleSet};

pub const DEFAULT_CELL_CAP: u64 = 16_000_000;

/// Anti-diagonals shorter than this are computed inline.
const PAR_MIN_CELLS: u32 = 96;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Row-major order on the calling thread.
    Sequential,
    /// Anti-diagonal wavefronts on the rayon pool. Falls back to row-major
    /// order when only one worker is available.
    #[default]
    Parallel,
}

#[derive(Clone, Copy, Debug)]
pub struct GridOptions {
    pub cell_cap: u64,
    pub strategy: Strategy,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions { cell_cap: DEFAULT_CELL_CAP, strategy: Strategy::default() }
    }
}

/// Computes the nim-value grid of `rule` on `[0, width) x [0, height)` with
/// default options.
pub fn compute_grid(rule: RuleSet, width: u32, height: u32) -> Result<GrundyGrid> {
    compute_grid_with(rule, width, height, &GridOptions::default())
}

pub fn compute_grid_with(rule: RuleSet, width: u32, height: u32, opts: &GridOptions) -> Result<GrundyGrid> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidParameter(format!("grid dimensions must be positive, got {width}x{height}")));
    }
    let cells = width as u64 * height as u64;
    if cells > opts.cell_cap {
        return Err(Error::ResourceLimit { cells, cap: opts.cell_cap });
    }
    let mut state = State::new(rule, width, height);
    match opts.strategy {
        Strategy::Sequential => state.run_row_major(),
        Strategy::Parallel if par::workers() > 1 => state.run_wavefront(true),
        Strategy::Parallel => state.run_row_major(),
    }
    GrundyGrid::from_parts(rule, width, height, state.values)
}

/// Growable bitset of small naturals.
#[derive(Clone, Default)]
struct Presence {
    words: Vec<u64>,
}

impl Presence {
    #[inline]
    fn insert(&mut self, v: u32) {
        let w = (v / 64) as usize;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << (v % 64);
    }

    #[inline]
    fn contains(&self, v: u32) -> bool {
        self.word((v / 64) as usize) & (1 << (v % 64)) != 0
    }

    #[inline]
    fn word(&self, i: usize) -> u64 {
        self.words.get(i).copied().unwrap_or(0)
    }
}

/// First value `>= from` absent from all three sets. Every value below
/// `from` must be present in `a`.
#[inline]
fn first_absent(a: &Presence, b: &Presence, c: &Presence, from: u32) -> u32 {
    let mut wi = (from / 64) as usize;
    let mut word = a.word(wi) | b.word(wi) | c.word(wi) | ((1u64 << (from % 64)) - 1);
    loop {
        if word != u64::MAX {
            return wi as u32 * 64 + (!word).trailing_zeros();
        }
        wi += 1;
        word = a.word(wi) | b.word(wi) | c.word(wi);
    }
}

struct State {
    rule: RuleSet,
    width: u32,
    height: u32,
    values: Vec<u32>,
    rows: Vec<Presence>,
    row_mex: Vec<u32>,
    cols: Vec<Presence>,
    /// Indexed by `x - y + height - 1`; empty for `T_k` with finite `k`.
    diags: Vec<Presence>,
    /// Cached enterability for target-only rules, row-major.
    enterable: Vec<bool>,
    empty: Presence,
}

impl State {
    fn new(rule: RuleSet, width: u32, height: u32) -> Self {
        let cells = width as usize * height as usize;
        let target_only = rule.diagonal_depends_on_target_only();
        let enterable = if target_only {
            (0..cells)
                .map(|i| {
                    let p = Position::new((i % width as usize) as u32, (i / width as usize) as u32);
                    rule.diagonal_enterable(p).unwrap_or(false)
                })
                .collect()
        } else {
            Vec::new()
        };
        let n_diags = if target_only { (width + height - 1) as usize } else { 0 };
        State {
            rule,
            width,
            height,
            values: vec![0; cells],
            rows: vec![Presence::default(); height as usize],
            row_mex: vec![0; height as usize],
            cols: vec![Presence::default(); width as usize],
            diags: vec![Presence::default(); n_diags],
            enterable,
            empty: Presence::default(),
        }
    }

    #[inline]
    fn idx(&self, x: u32, y: u32) -> usize {
        y as usize * self.width as usize + x as usize
    }

    #[inline]
    fn diag_idx(&self, x: u32, y: u32) -> usize {
        (x + self.height - 1 - y) as usize
    }

    /// Value of `(x, y)` from the committed state.
    fn cell(&self, x: u32, y: u32) -> u32 {
        let row = &self.rows[y as usize];
        let col = &self.cols[x as usize];
        let from = self.row_mex[y as usize];
        let v = if self.diags.is_empty() {
            self.cell_enumerated(x, y, row, col, from)
        } else {
            first_absent(row, col, &self.diags[self.diag_idx(x, y)], from)
        };
        // options number at most x + y + min(x, y)
        debug_assert!(v as u64 <= x as u64 + y as u64 + x.min(y) as u64);
        v
    }

    /// Cell value when diagonal legality depends on the source (`T_k`).
    fn cell_enumerated(&self, x: u32, y: u32, row: &Presence, col: &Presence, from: u32) -> u32 {
        let from_pos = Position::new(x, y);
        let mut diag: Vec<u32> = (1..=x.min(y))
            .filter(|&s| self.rule.diagonal_legal(from_pos, s))
            .map(|s| self.values[self.idx(x - s, y - s)])
            .collect();
        diag.sort_unstable();
        let mut d = diag.iter().peekable();
        let mut cand = first_absent(row, col, &self.empty, from);
        loop {
            while d.next_if(|&&v| v < cand).is_some() {}
            if d.peek() != Some(&&cand) {
                return cand;
            }
            cand = first_absent(row, col, &self.empty, cand + 1);
        }
    }

    fn commit(&mut self, x: u32, y: u32, v: u32) {
        let i = self.idx(x, y);
        self.values[i] = v;
        let row = &mut self.rows[y as usize];
        row.insert(v);
        let mex = &mut self.row_mex[y as usize];
        while row.contains(*mex) {
            *mex += 1;
        }
        self.cols[x as usize].insert(v);
        if !self.diags.is_empty() && self.enterable[i] {
            let d = self.diag_idx(x, y);
            self.diags[d].insert(v);
        }
    }

    fn run_row_major(&mut self) {
        for y in 0..self.height {
            for x in 0..self.width {
                let v = self.cell(x, y);
                self.commit(x, y, v);
            }
        }
    }

    fn run_wavefront(&mut self, parallel: bool) {
        let mut buf = Vec::new();
        for d in 0..self.width + self.height - 1 {
            let y_lo = d.saturating_sub(self.width - 1);
            let y_hi = d.min(self.height - 1);
            let wide = parallel && y_hi - y_lo + 1 >= PAR_MIN_CELLS;
            let this = &*self;
            par::fill_range(&mut buf, y_lo..=y_hi, wide, |y| this.cell(d - y, y));
            for (y, &v) in (y_lo..=y_hi).zip(buf.iter()) {
                self.commit(d - y, y, v);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grundy::compute_grid_reference;

    fn all_rules() -> Vec<RuleSet> {
        vec![
            RuleSet::Nim,
            RuleSet::wythoff(),
            RuleSet::wk(1),
            RuleSet::wk(3),
            RuleSet::wkl(0, 2).unwrap(),
            RuleSet::wkl(1, 3).unwrap(),
            RuleSet::wkl(4, 4).unwrap(),
            RuleSet::tk(0),
            RuleSet::tk(2),
            RuleSet::tk_unbounded(),
        ]
    }

    #[test]
    fn strategies_match_reference() {
        for rule in all_rules() {
            let reference = compute_grid_reference(rule, 40, 33).unwrap();
            for strategy in [Strategy::Sequential, Strategy::Parallel] {
                let opts = GridOptions { strategy, ..Default::default() };
                let grid = compute_grid_with(rule, 40, 33, &opts).unwrap();
                assert_eq!(grid, reference, "{rule} {strategy:?}");
            }
        }
    }

    #[test]
    fn wide_wavefront_matches_row_major() {
        // long enough anti-diagonals to take the parallel branch
        for rule in [RuleSet::wythoff(), RuleSet::tk(1), RuleSet::wkl(2, 5).unwrap()] {
            let mut seq = State::new(rule, 300, 200);
            seq.run_row_major();
            for parallel in [false, true] {
                let mut wave = State::new(rule, 300, 200);
                wave.run_wavefront(parallel);
                assert_eq!(seq.values, wave.values, "{rule} {parallel}");
            }
        }
    }

    #[test]
    fn degenerate_shapes() {
        let g = compute_grid(RuleSet::wythoff(), 1, 1).unwrap();
        assert_eq!(g.values(), &[0]);
        let g = compute_grid(RuleSet::wythoff(), 5, 1).unwrap();
        assert_eq!(g.values(), &[0, 1, 2, 3, 4]);
        let g = compute_grid(RuleSet::wythoff(), 1, 5).unwrap();
        assert_eq!(g.values(), &[0, 1, 2, 3, 4]);
        assert!(compute_grid(RuleSet::Nim, 0, 4).is_err());
    }

    #[test]
    fn cell_cap() {
        let opts = GridOptions { cell_cap: 100, ..Default::default() };
        assert!(matches!(
            compute_grid_with(RuleSet::Nim, 11, 10, &opts),
            Err(Error::ResourceLimit { cells: 110, cap: 100 })
        ));
        assert!(compute_grid_with(RuleSet::Nim, 10, 10, &opts).is_ok());
        assert!(matches!(compute_grid(RuleSet::Nim, 5000, 5000), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn first_absent_crosses_words() {
        let mut a = Presence::default();
        for v in 0..130 {
            a.insert(v);
        }
        let mut b = Presence::default();
        b.insert(130);
        assert_eq!(first_absent(&a, &b, &Presence::default(), 5), 131);
        assert_eq!(first_absent(&Presence::default(), &b, &Presence::default(), 0), 0);
    }
}
