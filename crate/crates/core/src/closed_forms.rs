//! Closed-form position sets: P-positions of every family and the
//! 1-positions of `W_{k,l}` for odd `l`.
//!
//! A set generated with bound `N` is complete within `[0, N)^2`: it holds
//! every formula member with both coordinates below `N` and nothing else,
//! so it compares exactly against g-positions extracted from an `N x N`
//! grid.

use crate::beatty::{a_n, b_n, classify, Membership};
use crate::error::{Error, Result};
use crate::grundy::PositionSet;
use crate::ruleset::{Position, RuleSet};

/// Whether to emit both `(a, b)` and `(b, a)` or only the `a <= b`
/// representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MirrorPolicy {
    pub mirror: bool,
}

impl MirrorPolicy {
    pub const MIRRORED: MirrorPolicy = MirrorPolicy { mirror: true };
    pub const UPPER: MirrorPolicy = MirrorPolicy { mirror: false };
}

impl Default for MirrorPolicy {
    fn default() -> Self {
        MirrorPolicy::MIRRORED
    }
}

/// Accumulates `a <= b` representatives and applies the mirror policy.
struct Builder {
    set: PositionSet,
    policy: MirrorPolicy,
}

impl Builder {
    fn new(bound: u32, policy: MirrorPolicy) -> Self {
        Builder { set: PositionSet::new(bound, bound), policy }
    }

    fn push(&mut self, a: u64, b: u64) {
        debug_assert!(a <= b);
        let bound = self.set.width as u64;
        if b < bound {
            let p = Position::new(a as u32, b as u32);
            self.set.insert_bounded(p);
            if self.policy.mirror {
                self.set.insert_bounded(p.mirrored());
            }
        }
    }

    /// `(i, i)` for `0 <= i < count`.
    fn diagonal(&mut self, count: u64) {
        for i in 0..count {
            self.push(i, i);
        }
    }

    /// `(A_n + dx, B_n + dy)` for every `n >= first` accepted by `keep`.
    /// `B_n` grows faster than `A_n`, so stopping once `A_n + dx` leaves the
    /// box loses nothing.
    fn beatty_shift(&mut self, first: u64, dx: u64, dy: u64, keep: impl Fn(u64) -> bool) {
        let bound = self.set.width as u64;
        let mut n = first;
        loop {
            let a = a_n(n) + dx;
            if a >= bound {
                break;
            }
            if keep(n) {
                self.push(a, b_n(n) + dy);
            }
            n += 1;
        }
    }

    fn finish(self) -> PositionSet {
        self.set
    }
}

/// P-positions of `rule` complete within `[0, bound)^2`.
pub fn p_position_set(rule: RuleSet, bound: u32, policy: MirrorPolicy) -> Result<PositionSet> {
    if bound == 0 {
        return Err(Error::InvalidParameter("bound must be at least 1".into()));
    }
    let mut b = Builder::new(bound, policy);
    match rule {
        RuleSet::Nim => b.diagonal(bound as u64),
        RuleSet::Wk { k } => {
            b.diagonal(k as u64);
            b.beatty_shift(0, k as u64, k as u64, |_| true);
        }
        // independent of k
        RuleSet::Wkl { l, .. } => {
            b.diagonal(l as u64);
            b.beatty_shift(0, l as u64, l as u64, |_| true);
        }
        // independent of the bound on the floor-ratio change
        RuleSet::Tk { .. } => {
            b.push(0, 0);
            b.beatty_shift(0, 1, 1, |_| true);
        }
    }
    Ok(b.finish())
}

/// The 1-positions of `W_{k,l}` for odd `l = 2m + 1` and `k < l`:
///
/// `{(2i, 2i+1) : i <= m} ∪ {(l+1, l+1)}
///  ∪ {(A_n + l, B_n + l + 1) : n in {B_j}, j >= 1}
///  ∪ {(A_n + l + 1, B_n + l + 2) : n in {A_j}, j >= 1}`.
pub fn one_position_set_wkl_odd(k: u32, l: u32, bound: u32, policy: MirrorPolicy) -> Result<PositionSet> {
    if l.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("l must be odd, got {l}")));
    }
    if k >= l {
        return Err(Error::InvalidParameter(format!("k must be below l, got k={k} l={l}")));
    }
    if (bound as u64) < l as u64 + 3 {
        return Err(Error::InvalidParameter(format!("bound must be at least l + 3 = {}", l as u64 + 3)));
    }
    let (l, m) = (l as u64, (l / 2) as u64);
    let mut b = Builder::new(bound, policy);
    for i in 0..=m {
        b.push(2 * i, 2 * i + 1);
    }
    b.push(l + 1, l + 1);
    // no n = 0 term: both index sets start at j = 1
    b.beatty_shift(1, l, l + 1, |n| classify(n) == Some(Membership::B));
    b.beatty_shift(1, l + 1, l + 2, |n| classify(n) == Some(Membership::A));
    Ok(b.finish())
}
