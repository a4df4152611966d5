//! Grid-based checks: closed-form position sets and the invariance theorems.

use crate::closed_forms::{one_position_set_wkl_odd, p_position_set, MirrorPolicy};
use crate::error::{Error, Result};
use crate::grundy::{compute_grid, grids_agree_up_to, GrundyGrid, PositionSet};
use crate::ruleset::{Position, RuleSet};
use crate::verifier::{Recorder, Report, Witness};

const MIN_BOX: u32 = 32;

/// Proof obligations for the odd-`l` 1-position set run on at most this box.
pub const OBLIGATION_BOX: u32 = 128;

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}

fn require_box(box_size: u32, min: u32) -> Result<()> {
    require(box_size >= min, || format!("box must be at least {min}, got {box_size}"))
}

/// First disagreement between `formula` and the g-positions of `grid`.
fn set_mismatch(grid: &GrundyGrid, g: u32, formula: &PositionSet) -> Option<Witness> {
    let found = grid.g_positions(g);
    formula.first_difference(&found).map(|(position, in_formula)| Witness::SetMismatch {
        rule: grid.rule(),
        g,
        position,
        in_formula,
        grid_value: grid.value(position.x, position.y),
    })
}

fn grid_witness(a: &GrundyGrid, b: &GrundyGrid, g_max: u32) -> Result<Option<Witness>> {
    let agreement = grids_agree_up_to(a, b, g_max)?;
    Ok(agreement.first_witness.map(|d| Witness::GridMismatch {
        rule_a: a.rule(),
        rule_b: b.rule(),
        g: d.g,
        position: d.position,
        value_a: d.value_a,
        value_b: d.value_b,
    }))
}

/// Compares the g-positions of two rules for `g <= guaranteed`, and records
/// each `g` in `guaranteed + 1 ..= extend` as an observation.
fn compare_rules(
    mut rec: Recorder,
    rule_a: RuleSet,
    rule_b: RuleSet,
    box_size: u32,
    guaranteed: u32,
    extend: Option<u32>,
) -> Result<Report> {
    let a = compute_grid(rule_a, box_size, box_size)?;
    let b = compute_grid(rule_b, box_size, box_size)?;
    let witness = grid_witness(&a, &b, guaranteed)?;
    if let Some(top) = extend.filter(|&t| t > guaranteed) {
        let agreement = grids_agree_up_to(&a, &b, top)?;
        for g in guaranteed + 1..=top {
            let w = if agreement.per_g_equal[g as usize] {
                None
            } else {
                // the smallest disagreement at exactly this g
                a.cells()
                    .zip(b.values())
                    .find(|&((_, va), &vb)| (va == g) != (vb == g))
                    .map(|((position, value_a), &value_b)| Witness::GridMismatch {
                        rule_a,
                        rule_b,
                        g,
                        position,
                        value_a,
                        value_b,
                    })
            };
            rec.observe(format!("g={g} beyond the guaranteed range"), w);
        }
    }
    Ok(rec.finish(witness))
}

/// P-position formula for `rule` against the 0-positions of its grid.
pub fn check_p_positions(rule: RuleSet, box_size: u32) -> Result<Report> {
    require_box(box_size, MIN_BOX)?;
    let formula = p_position_set(rule, box_size, MirrorPolicy::MIRRORED)?;
    check_p_positions_against(rule, box_size, &formula)
}

/// Like [`check_p_positions`] with a caller-supplied formula set.
pub fn check_p_positions_against(rule: RuleSet, box_size: u32, formula: &PositionSet) -> Result<Report> {
    let rec = Recorder::new("check_p_positions").param("rule", rule).param("box", box_size);
    let grid = compute_grid(rule, box_size, box_size)?;
    Ok(rec.finish(set_mismatch(&grid, 0, formula)))
}

/// `W_{k,l}` and `W_{k',l}` share their g-positions for `g <= l - k'`.
pub fn check_wkl_invariance(k: u32, kp: u32, l: u32, box_size: u32, g_max: Option<u32>) -> Result<Report> {
    require(k < kp && kp <= l, || format!("need k < k' <= l, got k={k} k'={kp} l={l}"))?;
    require_box(box_size, MIN_BOX)?;
    let rec = Recorder::new("check_wkl_invariance")
        .param("k", k)
        .param("kp", kp)
        .param("l", l)
        .param("box", box_size)
        .param("g_max", l - kp);
    compare_rules(rec, RuleSet::wkl(k, l)?, RuleSet::wkl(kp, l)?, box_size, l - kp, g_max)
}

/// With `2^m <= l`, `W_{k,l}` and `W_l` share their g-positions for
/// `g < 2^m`.
pub fn check_power_of_two_invariance(k: u32, l: u32, box_size: u32) -> Result<Report> {
    require(k <= l && l >= 1, || format!("need 0 <= k <= l and l >= 1, got k={k} l={l}"))?;
    require_box(box_size, MIN_BOX)?;
    let power = 1u32 << (31 - l.leading_zeros());
    let rec = Recorder::new("check_power_of_two_invariance")
        .param("k", k)
        .param("l", l)
        .param("box", box_size)
        .param("g_below", power);
    compare_rules(rec, RuleSet::wkl(k, l)?, RuleSet::wk(l), box_size, power - 1, None)
}

/// `T_k` and `W_1` share their g-positions for `g <= k`.
pub fn check_tk_invariance(k: u32, box_size: u32, g_max: Option<u32>) -> Result<Report> {
    require_box(box_size, MIN_BOX)?;
    let rec = Recorder::new("check_tk_invariance").param("k", k).param("box", box_size).param("g_max", k);
    compare_rules(rec, RuleSet::tk(k), RuleSet::wk(1), box_size, k, g_max)
}

/// Odd-`l` 1-position formula against the grid, followed by the three
/// proof obligations on a box of at most [`OBLIGATION_BOX`].
pub fn check_one_positions_lodd(k: u32, l: u32, box_size: u32) -> Result<Report> {
    require(l % 2 == 1 && k < l, || format!("need odd l and k < l, got k={k} l={l}"))?;
    require_box(box_size, MIN_BOX.max(l + 3))?;
    let obligation_box = box_size.min(OBLIGATION_BOX);
    let rec = Recorder::new("check_one_positions_lodd")
        .param("k", k)
        .param("l", l)
        .param("box", box_size)
        .param("obligation_box", obligation_box);
    let grid = compute_grid(RuleSet::wkl(k, l)?, box_size, box_size)?;
    let formula = one_position_set_wkl_odd(k, l, box_size, MirrorPolicy::MIRRORED)?;
    let witness = set_mismatch(&grid, 1, &formula).or_else(|| lodd_obligations(k, l, obligation_box));
    Ok(rec.finish(witness))
}

/// The three obligations making the odd-`l` set the 1-positions, on
/// `[0, bound)^2`: it misses the P-positions, no move joins two members, and
/// every other position outside the P-positions moves into it.
pub fn lodd_obligations(k: u32, l: u32, bound: u32) -> Option<Witness> {
    let rule = RuleSet::wkl(k, l).ok()?;
    let s1 = one_position_set_wkl_odd(k, l, bound, MirrorPolicy::MIRRORED).ok()?;
    let s0 = p_position_set(rule, bound, MirrorPolicy::MIRRORED).ok()?;
    if let Some(&position) = s1.positions.intersection(&s0.positions).next() {
        return Some(Witness::OneSetOverlap { k, l, position });
    }
    for from in s1.iter() {
        if let Some(to) = rule.moves(from).into_iter().find(|q| s1.contains(*q)) {
            return Some(Witness::OneSetInternalMove { k, l, from, to });
        }
    }
    for y in 0..bound {
        for x in 0..bound {
            let p = Position::new(x, y);
            if s0.contains(p) || s1.contains(p) {
                continue;
            }
            if !rule.moves(p).iter().any(|q| s1.contains(*q)) {
                return Some(Witness::OneSetUncovered { k, l, position: p, bound });
            }
        }
    }
    None
}

/// For even `l`, compares the 1-positions of `W_{k,l}` with those of `W_l`
/// for every `k <= l`. The literal comparison against `W_k` is attached as
/// observations.
pub fn explore_l_even_conjecture(l: u32, box_size: u32) -> Result<Report> {
    require(l.is_multiple_of(2) && l >= 2, || format!("need even l >= 2, got {l}"))?;
    require_box(box_size, MIN_BOX)?;
    let mut rec = Recorder::new("explore_l_even_conjecture")
        .param("l", l)
        .param("box", box_size)
        .param("compared_with", format!("wk:{l}"))
        .exploratory();
    rec.note("exploratory: bounded computation of an unproved observation");
    let wl = compute_grid(RuleSet::wk(l), box_size, box_size)?;
    let mut witness = None;
    for k in 0..=l {
        let wkl = compute_grid(RuleSet::wkl(k, l)?, box_size, box_size)?;
        if witness.is_none() {
            witness = one_position_mismatch(&wkl, &wl);
        }
        let wk = compute_grid(RuleSet::wk(k), box_size, box_size)?;
        rec.observe(format!("1-positions of wkl:{k},{l} vs wk:{k}"), one_position_mismatch(&wkl, &wk));
    }
    Ok(rec.finish(witness))
}

fn one_position_mismatch(a: &GrundyGrid, b: &GrundyGrid) -> Option<Witness> {
    a.cells().zip(b.values()).find(|&((_, va), &vb)| (va == 1) != (vb == 1)).map(
        |((position, value_a), &value_b)| Witness::GridMismatch {
            rule_a: a.rule(),
            rule_b: b.rule(),
            g: 1,
            position,
            value_a,
            value_b,
        },
    )
}

/// In row 1 the 2-position of `W_{0,2}` is `(4,1)` and that of `W_{1,2}` is
/// `(3,1)`.
pub fn check_tightness_remark() -> Result<Report> {
    check_tightness_remark_with(8, 4, 4, 3)
}

/// The tightness check on a `width x height` box with explicit expected
/// columns for `W_{0,2}` and `W_{1,2}`.
pub fn check_tightness_remark_with(width: u32, height: u32, expected_a: u32, expected_b: u32) -> Result<Report> {
    require(height >= 2 && width >= 1, || format!("box {width}x{height} lacks row 1"))?;
    let rec = Recorder::new("check_tightness_remark")
        .param("box", format!("{width}x{height}"))
        .param("expected_w02", expected_a)
        .param("expected_w12", expected_b);
    let mut witness = None;
    for (rule, expected_x) in [(RuleSet::wkl(0, 2)?, expected_a), (RuleSet::wkl(1, 2)?, expected_b)] {
        let grid = compute_grid(rule, width, height)?;
        let actual_x = grid.find_in_row(1, 2);
        if actual_x != Some(expected_x) && witness.is_none() {
            witness = Some(Witness::RowPosition { rule, y: 1, g: 2, width, expected_x, actual_x });
        }
    }
    Ok(rec.finish(witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::Status;

    #[test]
    fn p_positions_pass_and_negative_control() {
        assert!(check_p_positions(RuleSet::wythoff(), 128).unwrap().passed());
        assert!(check_p_positions(RuleSet::tk(2), 128).unwrap().passed());
        let shifted = p_position_set(RuleSet::wk(3), 64, MirrorPolicy::MIRRORED).unwrap();
        let r = check_p_positions_against(RuleSet::wk(2), 64, &shifted).unwrap();
        assert_eq!(r.status, Status::Fail);
        assert!(r.witness.as_ref().unwrap().reverify());
        assert!(check_p_positions(RuleSet::Nim, 16).is_err());
    }

    #[test]
    fn wkl_invariance_examples() {
        assert!(check_wkl_invariance(0, 1, 2, 64, None).unwrap().passed());
        assert!(check_wkl_invariance(1, 3, 3, 64, None).unwrap().passed());
        let r = check_wkl_invariance(0, 1, 2, 64, Some(2)).unwrap();
        assert!(r.passed());
        let obs = &r.informational[0];
        assert!(!obs.equal);
        let w = obs.witness.as_ref().unwrap();
        assert!(w.reverify());
        match w {
            Witness::GridMismatch { g: 2, position, value_a, value_b, .. } => {
                // W_{0,2} has its 2 at (4,1), W_{1,2} at (3,1)
                assert_eq!(*position, Position::new(3, 1));
                assert_eq!(*value_b, 2);
                assert_ne!(*value_a, 2);
            }
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(check_wkl_invariance(2, 2, 3, 64, None).is_err());
        assert!(check_wkl_invariance(1, 4, 3, 64, None).is_err());
    }

    #[test]
    fn power_of_two_examples() {
        let r = check_power_of_two_invariance(0, 4, 64).unwrap();
        assert!(r.passed());
        assert_eq!(r.params["g_below"], 4);
        assert!(check_power_of_two_invariance(3, 8, 64).unwrap().passed());
        // fails when l is not a power of two: columns 4 <= x < 5 are
        // enterable in W_{2,5} but not in W_5
        let r = check_power_of_two_invariance(2, 5, 64).unwrap();
        assert_eq!(r.params["g_below"], 4);
        let w = r.witness.unwrap();
        assert!(w.reverify());
        assert!(matches!(w, Witness::GridMismatch { g: 1, position: Position { x: 8, y: 7 }, value_b: 1, .. }));
        assert!(check_power_of_two_invariance(6, 6, 64).unwrap().passed());
        assert_eq!(check_power_of_two_invariance(1, 1, 64).unwrap().params["g_below"], 1);
        assert!(check_power_of_two_invariance(3, 2, 64).is_err());
    }

    #[test]
    fn tk_examples() {
        assert!(check_tk_invariance(0, 64, None).unwrap().passed());
        let r = check_tk_invariance(1, 64, Some(5)).unwrap();
        assert!(r.passed());
        assert_eq!(r.informational.len(), 4);
        for obs in &r.informational {
            if let Some(w) = &obs.witness {
                assert!(w.reverify());
            }
        }
    }

    #[test]
    fn one_positions_examples() {
        for (k, l) in [(0, 1), (1, 3), (2, 3)] {
            let r = check_one_positions_lodd(k, l, 96).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        assert!(check_one_positions_lodd(0, 2, 64).is_err());
        assert!(check_one_positions_lodd(3, 3, 64).is_err());
    }

    #[test]
    fn obligations_detect_a_broken_set() {
        // a wrong l turns the obligations against the real rule set
        assert!(lodd_obligations(0, 3, 64).is_none());
        let rule = RuleSet::wkl(0, 3).unwrap();
        let s1 = one_position_set_wkl_odd(0, 5, 64, MirrorPolicy::MIRRORED).unwrap();
        let bad = s1.iter().any(|p| rule.moves(p).iter().any(|q| s1.contains(*q)));
        assert!(bad || s1 != one_position_set_wkl_odd(0, 3, 64, MirrorPolicy::MIRRORED).unwrap());
    }

    #[test]
    fn explore_examples() {
        for l in [2, 4] {
            let r = explore_l_even_conjecture(l, 64).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(r.exploratory);
            assert_eq!(r.informational.len(), l as usize + 1);
            // the literal reading against W_k holds only at k = l
            let equal: Vec<bool> = r.informational.iter().map(|o| o.equal).collect();
            assert_eq!(equal.last(), Some(&true));
            assert!(equal[..l as usize].iter().all(|e| !e));
        }
        assert!(explore_l_even_conjecture(3, 64).is_err());
    }

    #[test]
    fn tightness() {
        assert!(check_tightness_remark().unwrap().passed());
        assert!(check_tightness_remark_with(64, 64, 4, 3).unwrap().passed());
        let r = check_tightness_remark_with(8, 4, 3, 4).unwrap();
        assert_eq!(r.status, Status::Fail);
        assert!(r.witness.unwrap().reverify());
    }
}
