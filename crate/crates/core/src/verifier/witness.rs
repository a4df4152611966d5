//! Counterexample witnesses and their independent re-verification.
//!
//! Re-verification recomputes the computed side of a disagreement through a
//! different route than the check that produced it: grid values come from
//! the naive reference engine, Beatty predicates from a direct square-root
//! comparison. Claims about a supplied input (a formula set, a covering
//! family) are carried in the witness as stated.

use serde::Serialize;

use crate::beatty::{a_n, classify, isqrt, Membership};
use crate::closed_forms::{one_position_set_wkl_odd, p_position_set, MirrorPolicy};
use crate::grundy::compute_grid_reference;
use crate::ruleset::{Position, RuleSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Two rule sets disagree on whether `position` is a g-position.
    GridMismatch { rule_a: RuleSet, rule_b: RuleSet, g: u32, position: Position, value_a: u32, value_b: u32 },
    /// A formula set and the grid's g-positions disagree at `position`.
    SetMismatch { rule: RuleSet, g: u32, position: Position, in_formula: bool, grid_value: u32 },
    /// A member of the odd-`l` 1-position set also lies in the P-position set.
    OneSetOverlap { k: u32, l: u32, position: Position },
    /// A move joins two members of the odd-`l` 1-position set.
    OneSetInternalMove { k: u32, l: u32, from: Position, to: Position },
    /// A position outside both sets with no move into the 1-position set.
    OneSetUncovered { k: u32, l: u32, position: Position, bound: u32 },
    /// Row or column `index` of the `2^j` Nim square misses value `g`.
    NimLineMissing { j: u32, column: bool, index: u32, g: u32 },
    /// An integer in `[2, n]` hit by the covering family other than once.
    CoveringHits { value: u64, n: u64, hits: u32 },
    /// `{phi * m} < 2 - phi` has the wrong truth value for `m = B_k`
    /// (`expect_below`) or `m = A_k`.
    FracLemma { k: u64, m: u64, expect_below: bool },
    /// `A_n = A_{n-1} + 1` disagrees with `n - 1` being a `B_k`.
    ATermGap { n: u64, step_one: bool, prev_is_b: bool },
    /// A W_1 cell whose value breaks a row pattern.
    RowPattern { position: Position, expected: u32, actual: u32 },
    /// The g-position of row `y` relative to the row's 0-position at `zero_x`.
    RowOccurrence { y: u32, g: u32, zero_x: u32, value_at_shift: u32, expected_occurs: bool },
    /// A g-position of W_1 further right than `limit`. `x` is `None` when
    /// the g-position lies beyond the box.
    PushingAway { n: u64, y: u32, g: u32, limit: u64, x: Option<u32> },
    /// A g-position of W_1 outside the region bounded by `line`.
    GLocation { g: u32, position: Position, line: GLine },
    /// The g-position of row `y` is not where it was expected.
    RowPosition { rule: RuleSet, y: u32, g: u32, width: u32, expected_x: u32, actual_x: Option<u32> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GLine {
    /// `y < phi x + g`, as `y - g <= A_x`.
    PhiPlusG,
    /// `y < (g + 1) x`.
    RatioGPlusOne,
}

fn ref_value(rule: RuleSet, p: Position) -> u32 {
    compute_grid_reference(rule, p.x + 1, p.y + 1)
        .expect("positive dimensions")
        .value(p.x, p.y)
}

fn ref_row(rule: RuleSet, y: u32, width: u32) -> Vec<u32> {
    compute_grid_reference(rule, width, y + 1).expect("positive dimensions").row(y).to_vec()
}

/// `{phi m} < 2 - phi`, decided as `5 (m+1)^2 < (2 A_m + 3 - m)^2`.
fn frac_below_by_sqrt(m: u64) -> bool {
    // phi (m + 1) < A_m + 2  <=>  (m + 1) sqrt 5 < 2 A_m + 3 - m
    let rhs = 2 * a_n(m) as i128 + 3 - m as i128;
    rhs > 0 && 5 * (m as i128 + 1).pow(2) < rhs * rhs
}

/// `floor(n phi)` straight from the square root, without going through `a_n`.
fn a_by_sqrt(n: u64) -> u64 {
    let n = n as u128;
    ((n + isqrt(5 * n * n)) / 2) as u64
}

impl Witness {
    /// Whether recomputing the disagreement at this witness reproduces it.
    pub fn reverify(&self) -> bool {
        match *self {
            Witness::GridMismatch { rule_a, rule_b, g, position, value_a, value_b } => {
                let (va, vb) = (ref_value(rule_a, position), ref_value(rule_b, position));
                va == value_a && vb == value_b && ((va == g) != (vb == g))
            }
            Witness::SetMismatch { rule, g, position, in_formula, grid_value } => {
                let v = ref_value(rule, position);
                v == grid_value && ((v == g) != in_formula)
            }
            Witness::OneSetOverlap { k, l, position } => {
                let bound = position.max_coord() + l + 4;
                let s1 = one_position_set_wkl_odd(k, l, bound, MirrorPolicy::MIRRORED);
                let s0 = RuleSet::wkl(k, l).and_then(|r| p_position_set(r, bound, MirrorPolicy::MIRRORED));
                matches!((s0, s1), (Ok(s0), Ok(s1)) if s0.contains(position) && s1.contains(position))
            }
            Witness::OneSetInternalMove { k, l, from, to } => {
                let bound = from.max_coord() + l + 4;
                let Ok(rule) = RuleSet::wkl(k, l) else { return false };
                let Ok(s1) = one_position_set_wkl_odd(k, l, bound, MirrorPolicy::MIRRORED) else { return false };
                s1.contains(from) && s1.contains(to) && rule.moves(from).contains(&to)
            }
            Witness::OneSetUncovered { k, l, position, bound } => {
                let Ok(rule) = RuleSet::wkl(k, l) else { return false };
                let Ok(s1) = one_position_set_wkl_odd(k, l, bound, MirrorPolicy::MIRRORED) else { return false };
                let Ok(s0) = p_position_set(rule, bound, MirrorPolicy::MIRRORED) else { return false };
                !s0.contains(position)
                    && !s1.contains(position)
                    && rule.moves(position).iter().all(|q| !s1.contains(*q))
            }
            Witness::NimLineMissing { j, index, g, .. } => {
                j < 32 && (0..1u32 << j).all(|x| x ^ index != g)
            }
            Witness::CoveringHits { value, n, hits } => (2..=n).contains(&value) && hits != 1,
            Witness::FracLemma { k, m, expect_below } => {
                let m_again = if expect_below { a_by_sqrt(k) + k } else { a_by_sqrt(k) };
                m_again == m && frac_below_by_sqrt(m) != expect_below
            }
            Witness::ATermGap { n, step_one, prev_is_b } => {
                n >= 1
                    && (a_by_sqrt(n) == a_by_sqrt(n - 1) + 1) == step_one
                    && (n == 1 || classify(n - 1) == Some(Membership::B)) == prev_is_b
                    && step_one != prev_is_b
            }
            Witness::RowPattern { position, expected, actual } => {
                let v = ref_value(RuleSet::wk(1), position);
                v == actual && v != expected
            }
            Witness::RowOccurrence { y, g, zero_x, value_at_shift, expected_occurs } => {
                let row = ref_row(RuleSet::wk(1), y, zero_x + g + 1);
                row[zero_x as usize] == 0
                    && row[(zero_x + g) as usize] == value_at_shift
                    && (value_at_shift == g) != expected_occurs
            }
            Witness::PushingAway { n, y, g, limit, x } => {
                if a_n(n) + 1 != y as u64 {
                    return false;
                }
                match x {
                    Some(x) => x as u64 > limit && ref_value(RuleSet::wk(1), Position::new(x, y)) == g,
                    None => {
                        let row = ref_row(RuleSet::wk(1), y, limit as u32 + 1);
                        !row.contains(&g)
                    }
                }
            }
            Witness::GLocation { g, position, line } => {
                let Position { x, y } = position;
                let outside = match line {
                    GLine::PhiPlusG => y > x && (y as i64 - g as i64) > a_by_sqrt(x as u64) as i64,
                    GLine::RatioGPlusOne => x >= 1 && y > x + g && (y as u64) >= (g as u64 + 1) * x as u64,
                };
                outside && ref_value(RuleSet::wk(1), position) == g
            }
            Witness::RowPosition { rule, y, g, width, expected_x, actual_x } => {
                let row = ref_row(rule, y, width);
                let found = row.iter().position(|&v| v == g).map(|x| x as u32);
                found == actual_x && found != Some(expected_x)
            }
        }
    }
}
