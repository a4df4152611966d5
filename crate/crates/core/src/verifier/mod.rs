//! Bounded machine checks, one per theorem, lemma and remark about the
//! restricted-diagonal Wythoff games. Each check returns a [`Report`]; a
//! failing report carries a [`Witness`] that re-verifies independently.

mod checks;
mod lemmas;
mod witness;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;
use crate::par;
use crate::ruleset::RuleSet;

pub use checks::{
    check_one_positions_lodd, check_p_positions, check_p_positions_against, check_power_of_two_invariance,
    check_tightness_remark, check_tightness_remark_with, check_tk_invariance, check_wkl_invariance,
    explore_l_even_conjecture, lodd_obligations,
};
pub use lemmas::{
    check_agaps, check_covering, check_covering_sets, check_everyrow, check_frac_lemmas, check_g_location,
    check_pushing_away, check_w1_row_patterns, covering_sets,
};
pub use witness::{GLine, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

/// A comparison outside what the checked statement guarantees. Recorded for
/// information only, it never affects the report status.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Observation {
    pub label: String,
    pub equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check_id: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub informational: Vec<Observation>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub exploratory: bool,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Builds a report while a check runs.
pub(crate) struct Recorder {
    report: Report,
    start: Instant,
}

impl Recorder {
    pub(crate) fn new(check_id: &str) -> Self {
        Recorder {
            report: Report {
                check_id: check_id.to_string(),
                params: BTreeMap::new(),
                status: Status::Pass,
                witness: None,
                notes: Vec::new(),
                informational: Vec::new(),
                exploratory: false,
                elapsed_ms: 0,
            },
            start: Instant::now(),
        }
    }

    pub(crate) fn param(mut self, key: &str, value: impl Serialize) -> Self {
        let v = serde_json::to_value(value).expect("parameter serializes");
        self.report.params.insert(key.to_string(), v);
        self
    }

    pub(crate) fn exploratory(mut self) -> Self {
        self.report.exploratory = true;
        self
    }

    pub(crate) fn note(&mut self, note: impl Into<String>) {
        self.report.notes.push(note.into());
    }

    pub(crate) fn observe(&mut self, label: impl Into<String>, witness: Option<Witness>) {
        self.report.informational.push(Observation { label: label.into(), equal: witness.is_none(), witness });
    }

    fn close(mut self, status: Status, witness: Option<Witness>) -> Report {
        self.report.status = status;
        self.report.witness = witness;
        self.report.elapsed_ms = self.start.elapsed().as_millis() as u64;
        self.report
    }

    /// Pass without a witness, fail with one.
    pub(crate) fn finish(self, witness: Option<Witness>) -> Report {
        let status = if witness.is_some() { Status::Fail } else { Status::Pass };
        self.close(status, witness)
    }
}

/// A check with its parameters, as selected on the command line or by the
/// default suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    PPositions { rule: RuleSet, box_size: u32 },
    WklInvariance { k: u32, kp: u32, l: u32, box_size: u32, g_max: Option<u32> },
    PowerOfTwoInvariance { k: u32, l: u32, box_size: u32 },
    TkInvariance { k: u32, box_size: u32, g_max: Option<u32> },
    OnePositionsLodd { k: u32, l: u32, box_size: u32 },
    EveryRow { j: u32 },
    Covering { n: u64 },
    FracLemmas { n: u64 },
    Agaps { n: u64 },
    W1RowPatterns { x_max: u32 },
    PushingAway { box_size: u32, g_max: u32 },
    GLocation { box_size: u32, g_max: u32 },
    ExploreLEven { l: u32, box_size: u32 },
    TightnessRemark,
}

/// Every check id accepted by [`Check::id`] and the command line.
pub const CHECK_IDS: &[&str] = &[
    "check_p_positions",
    "check_wkl_invariance",
    "check_power_of_two_invariance",
    "check_tk_invariance",
    "check_one_positions_lodd",
    "check_everyrow",
    "check_covering",
    "check_frac_lemmas",
    "check_agaps",
    "check_w1_row_patterns",
    "check_pushing_away",
    "check_g_location",
    "explore_l_even_conjecture",
    "check_tightness_remark",
];

impl Check {
    pub fn id(&self) -> &'static str {
        match self {
            Check::PPositions { .. } => "check_p_positions",
            Check::WklInvariance { .. } => "check_wkl_invariance",
            Check::PowerOfTwoInvariance { .. } => "check_power_of_two_invariance",
            Check::TkInvariance { .. } => "check_tk_invariance",
            Check::OnePositionsLodd { .. } => "check_one_positions_lodd",
            Check::EveryRow { .. } => "check_everyrow",
            Check::Covering { .. } => "check_covering",
            Check::FracLemmas { .. } => "check_frac_lemmas",
            Check::Agaps { .. } => "check_agaps",
            Check::W1RowPatterns { .. } => "check_w1_row_patterns",
            Check::PushingAway { .. } => "check_pushing_away",
            Check::GLocation { .. } => "check_g_location",
            Check::ExploreLEven { .. } => "explore_l_even_conjecture",
            Check::TightnessRemark => "check_tightness_remark",
        }
    }

    pub fn run(&self) -> Result<Report> {
        match *self {
            Check::PPositions { rule, box_size } => check_p_positions(rule, box_size),
            Check::WklInvariance { k, kp, l, box_size, g_max } => check_wkl_invariance(k, kp, l, box_size, g_max),
            Check::PowerOfTwoInvariance { k, l, box_size } => check_power_of_two_invariance(k, l, box_size),
            Check::TkInvariance { k, box_size, g_max } => check_tk_invariance(k, box_size, g_max),
            Check::OnePositionsLodd { k, l, box_size } => check_one_positions_lodd(k, l, box_size),
            Check::EveryRow { j } => check_everyrow(j),
            Check::Covering { n } => check_covering(n),
            Check::FracLemmas { n } => check_frac_lemmas(n),
            Check::Agaps { n } => check_agaps(n),
            Check::W1RowPatterns { x_max } => check_w1_row_patterns(x_max),
            Check::PushingAway { box_size, g_max } => check_pushing_away(box_size, g_max),
            Check::GLocation { box_size, g_max } => check_g_location(box_size, g_max),
            Check::ExploreLEven { l, box_size } => explore_l_even_conjecture(l, box_size),
            Check::TightnessRemark => check_tightness_remark(),
        }
    }
}

/// The full parameter sweep behind `verify all`, with every grid-based check
/// on a `box_size` square.
pub fn default_suite(box_size: u32) -> Vec<Check> {
    let mut s = Vec::new();
    let mut p_rules = vec![RuleSet::wythoff()];
    p_rules.extend((1..=6).map(RuleSet::wk));
    for l in 0..=8 {
        p_rules.extend((0..=l).map(|k| RuleSet::Wkl { k, l }));
    }
    p_rules.extend((0..=4).map(RuleSet::tk));
    s.extend(p_rules.into_iter().map(|rule| Check::PPositions { rule, box_size }));
    for l in 1..=8 {
        for kp in 1..=l {
            for k in 0..kp {
                s.push(Check::WklInvariance { k, kp, l, box_size, g_max: None });
            }
        }
    }
    s.push(Check::TightnessRemark);
    for l in 4..=9 {
        s.extend((0..=l).map(|k| Check::PowerOfTwoInvariance { k, l, box_size }));
    }
    for l in [1, 3, 5, 7] {
        s.extend((0..l).map(|k| Check::OnePositionsLodd { k, l, box_size }));
    }
    s.extend((0..=5).map(|k| Check::TkInvariance { k, box_size, g_max: None }));
    s.extend((1..=8).map(|j| Check::EveryRow { j }));
    s.push(Check::Covering { n: 100_000 });
    s.push(Check::FracLemmas { n: 1_000_000 });
    s.push(Check::Agaps { n: 1_000_000 });
    s.push(Check::W1RowPatterns { x_max: 10_000 });
    s.push(Check::PushingAway { box_size, g_max: 8 });
    s.push(Check::GLocation { box_size, g_max: 8 });
    s.extend([2, 4].map(|l| Check::ExploreLEven { l, box_size }));
    s
}

/// Runs `checks`, in parallel when `parallel` is set and the build allows
/// it. Reports come back in input order.
pub fn run_suite(checks: &[Check], parallel: bool) -> Vec<Result<Report>> {
    par::map_ordered(checks, parallel, Check::run)
}
