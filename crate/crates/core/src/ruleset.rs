//! Rule sets for two-pile Nim, Wythoff's game and its restricted-diagonal
//! variants `W_k`, `W_{k,l}` and `T_k`.
//!
//! Every game shares the Nim moves (take any positive amount from one pile).
//! They differ only in which diagonal moves `(x, y) -> (x - s, y - s)` are
//! legal:
//!
//! * `Nim`: none.
//! * `W_k`: the target satisfies `min >= k`. Wythoff's game is `W_0`.
//! * `W_{k,l}`: the target satisfies `min >= k` and `max >= l`.
//! * `T_k`: restricts `W_1`. With `a <= b` the smaller and larger coordinate,
//!   the target needs `a - s > 0` and the floor ratio may change by at most
//!   `k`: `|floor((b - s) / (a - s)) - floor(b / a)| <= k`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A cell of the game board. `x` is the column, `y` the row.
///
/// Ordering is row-major: by `y`, then by `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Position {
    pub x: u32,
    pub y: u32,
}

impl Position {
    pub const fn new(x: u32, y: u32) -> Self {
        Position { x, y }
    }

    /// The position reflected across the line `y = x`.
    pub const fn mirrored(self) -> Self {
        Position { x: self.y, y: self.x }
    }

    pub fn min_coord(self) -> u32 {
        self.x.min(self.y)
    }

    pub fn max_coord(self) -> u32 {
        self.x.max(self.y)
    }
}

impl Ord for Position {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Position {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl From<(u32, u32)> for Position {
    fn from((x, y): (u32, u32)) -> Self {
        Position { x, y }
    }
}

/// Bound on the floor-ratio change permitted by a `T_k` diagonal move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TkBound {
    Finite(u32),
    /// `T_inf`, whose rule set is that of `W_1`.
    Unbounded,
}

/// The discriminant of a [`RuleSet`], used by [`RuleSet::new`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleKind {
    Nim,
    Wk,
    Wkl,
    Tk,
}

/// One of the game families with its parameters. Construct through
/// [`RuleSet::new`], the helper constructors, or by parsing a rule string.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleSet {
    Nim,
    Wk { k: u32 },
    Wkl { k: u32, l: u32 },
    Tk { bound: TkBound },
}

impl RuleSet {
    /// Validating constructor taking the parameters in generic form.
    pub fn new(kind: RuleKind, k: Option<u32>, l: Option<u32>, unbounded: bool) -> Result<Self> {
        let need = |p: Option<u32>, name: &str| {
            p.ok_or_else(|| Error::InvalidRule(format!("{kind:?} requires parameter {name}")))
        };
        match kind {
            RuleKind::Nim => Ok(RuleSet::Nim),
            RuleKind::Wk => Ok(RuleSet::Wk { k: need(k, "k")? }),
            RuleKind::Wkl => RuleSet::wkl(need(k, "k")?, need(l, "l")?),
            RuleKind::Tk if unbounded => Ok(RuleSet::tk_unbounded()),
            RuleKind::Tk => Ok(RuleSet::tk(need(k, "k")?)),
        }
    }

    pub const fn wythoff() -> Self {
        RuleSet::Wk { k: 0 }
    }

    pub const fn wk(k: u32) -> Self {
        RuleSet::Wk { k }
    }

    pub fn wkl(k: u32, l: u32) -> Result<Self> {
        if k > l {
            return Err(Error::InvalidRule(format!("wkl:{k},{l} requires k <= l")));
        }
        Ok(RuleSet::Wkl { k, l })
    }

    pub const fn tk(k: u32) -> Self {
        RuleSet::Tk { bound: TkBound::Finite(k) }
    }

    pub const fn tk_unbounded() -> Self {
        RuleSet::Tk { bound: TkBound::Unbounded }
    }

    pub fn kind(&self) -> RuleKind {
        match self {
            RuleSet::Nim => RuleKind::Nim,
            RuleSet::Wk { .. } => RuleKind::Wk,
            RuleSet::Wkl { .. } => RuleKind::Wkl,
            RuleSet::Tk { .. } => RuleKind::Tk,
        }
    }

    /// True when legality of a diagonal move depends only on its target,
    /// so the set of enterable cells is a fixed region of the board.
    pub fn diagonal_depends_on_target_only(&self) -> bool {
        !matches!(self, RuleSet::Tk { bound: TkBound::Finite(_) })
    }

    /// Whether a diagonal move may land on `target`, for rule sets where this
    /// is a property of the target alone. `T_k` with finite `k` returns
    /// `None`.
    pub fn diagonal_enterable(&self, target: Position) -> Option<bool> {
        let (lo, hi) = (target.min_coord(), target.max_coord());
        match *self {
            RuleSet::Nim => Some(false),
            RuleSet::Wk { k } => Some(lo >= k),
            RuleSet::Wkl { k, l } => Some(lo >= k && hi >= l),
            RuleSet::Tk { bound: TkBound::Unbounded } => Some(lo >= 1),
            RuleSet::Tk { bound: TkBound::Finite(_) } => None,
        }
    }

    /// Whether the diagonal move of length `s` from `from` is legal.
    ///
    /// Returns `false` for `s == 0` or `s > min(from.x, from.y)`.
    pub fn diagonal_legal(&self, from: Position, s: u32) -> bool {
        if s == 0 || s > from.min_coord() {
            return false;
        }
        let target = Position::new(from.x - s, from.y - s);
        match *self {
            RuleSet::Tk { bound: TkBound::Finite(k) } => tk_floor_change_ok(from, s, k),
            _ => self.diagonal_enterable(target).unwrap_or(false),
        }
    }

    /// All positions reachable from `pos` in one move: row moves first,
    /// then column moves, then diagonal moves, each by increasing `s`.
    pub fn moves(&self, pos: Position) -> Vec<Position> {
        let diag = pos.min_coord();
        let mut out = Vec::with_capacity((pos.x + pos.y + diag) as usize);
        out.extend((1..=pos.x).map(|s| Position::new(pos.x - s, pos.y)));
        out.extend((1..=pos.y).map(|s| Position::new(pos.x, pos.y - s)));
        out.extend(
            (1..=diag)
                .filter(|&s| self.diagonal_legal(pos, s))
                .map(|s| Position::new(pos.x - s, pos.y - s)),
        );
        out
    }

    /// Whether `pos` lies in the forbidden region, the cells that no diagonal
    /// move can enter. Defined only for `W_k` and `W_{k,l}`.
    pub fn in_forbidden_region(&self, pos: Position) -> Result<bool> {
        match self {
            RuleSet::Wk { .. } | RuleSet::Wkl { .. } => {
                Ok(!self.diagonal_enterable(pos).unwrap_or(false))
            }
            _ => Err(Error::Unsupported(format!(
                "forbidden region is defined only for wk and wkl rules, not {self}"
            ))),
        }
    }
}

/// The `T_k` floor-ratio test with the smaller coordinate as denominator.
/// The caller guarantees `1 <= s <= min(from)`.
fn tk_floor_change_ok(from: Position, s: u32, k: u32) -> bool {
    let (a, b) = (from.min_coord(), from.max_coord());
    if a - s == 0 {
        return false;
    }
    let before = b / a;
    let after = (b - s) / (a - s);
    // after >= before always holds since b - a is fixed and a shrinks
    after.abs_diff(before) <= k
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleSet::Nim => write!(f, "nim"),
            RuleSet::Wk { k } => write!(f, "wk:{k}"),
            RuleSet::Wkl { k, l } => write!(f, "wkl:{k},{l}"),
            RuleSet::Tk { bound: TkBound::Finite(k) } => write!(f, "tk:{k}"),
            RuleSet::Tk { bound: TkBound::Unbounded } => write!(f, "tk:inf"),
        }
    }
}

impl FromStr for RuleSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRule(format!("cannot parse rule `{s}`"));
        let num = |t: &str| -> Result<u32> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse().map_err(|_| bad())
        };
        match s.split_once(':') {
            None => match s {
                "nim" => Ok(RuleSet::Nim),
                "wythoff" => Ok(RuleSet::wythoff()),
                _ => Err(bad()),
            },
            Some(("wk", k)) => Ok(RuleSet::wk(num(k)?)),
            Some(("wkl", rest)) => {
                let (k, l) = rest.split_once(',').ok_or_else(bad)?;
                RuleSet::wkl(num(k)?, num(l)?)
            }
            Some(("tk", "inf")) => Ok(RuleSet::tk_unbounded()),
            Some(("tk", k)) => Ok(RuleSet::tk(num(k)?)),
            Some(_) => Err(bad()),
        }
    }
}

impl Serialize for RuleSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RuleSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
