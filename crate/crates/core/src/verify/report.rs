use serde::{Deserialize, Serialize};

use crate::crystal::{ExtInt, StringStat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    ExpectedFail,
    Inconclusive,
    Fail,
}

impl Verdict {
    /// Combines sub-verdicts: any `Fail` wins, then `Inconclusive`, then
    /// `ExpectedFail`.
    pub fn merge(self, other: Verdict) -> Verdict {
        self.max(other)
    }

    pub fn is_ok(self) -> bool {
        matches!(self, Verdict::Pass | Verdict::ExpectedFail)
    }

    /// Process exit code: 0 for pass or expected failure, 1 for any
    /// failure, 2 for inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass | Verdict::ExpectedFail => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::ExpectedFail => "EXPECTED_FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::Fail => "FAIL",
        })
    }
}

/// What went wrong. Node ids refer to the checked graph; index fields are
/// positions in its Cartan data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `wt(target) != wt(node) -/+ alpha_i` along an `f_i` (or `e_i`) link.
    WeightShift { node: usize, index: usize, target: usize, raising: bool },
    /// `phi_i - eps_i != <h_i, wt>`.
    PhiMinusEps { node: usize, index: usize },
    /// `phi_i = -inf` but an operator acts.
    InfiniteNotFrozen { node: usize, index: usize },
    /// `eps_i`/`phi_i` do not move by one along an `f_i` link.
    StringBookkeeping { node: usize, index: usize, target: usize },
    /// `f_i(node) = target` but `e_i(target) != node`.
    InverseF { node: usize, index: usize, target: usize, back: Option<usize> },
    /// `e_i(node) = target` but `f_i(target) != node`.
    InverseE { node: usize, index: usize, target: usize, back: Option<usize> },
    SemiNormal { node: usize, index: usize, stat: StringStat, expected: ExtInt, found: usize },
    /// A component of the restriction to `indices` has `found` highest
    /// weight nodes instead of one.
    HighestWeightCount { indices: Vec<usize>, root: usize, found: usize },
    ComponentSize { indices: Vec<usize>, root: usize, expected: u64, found: usize },
    WeightMultiplicities { indices: Vec<usize>, root: usize, detail: String },
    /// A local axiom for simply-laced crystals, e.g. `P5` or `P6'`.
    Stembridge { node: usize, i: usize, j: usize, axiom: String },
    /// The whole graph disagrees with an oracle (size, highest weight, ...).
    Global { detail: String },
    /// Anything else, described in words.
    Other { detail: String },
}

impl Violation {
    /// True for the `f_i b = b' <=> e_i b' = b` family.
    pub fn is_inverse_axiom(&self) -> bool {
        matches!(self, Violation::InverseF { .. } | Violation::InverseE { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(flatten)]
    pub violation: Violation,
    /// Rendered elements involved, in the order the variant lists them.
    pub labels: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub nodes: usize,
    pub checked: usize,
    pub skipped: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    pub stats: Stats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<CheckReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Cap on stored witnesses per report.
pub const MAX_WITNESSES: usize = 16;

impl CheckReport {
    pub fn new(check: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            verdict: Verdict::Pass,
            witnesses: Vec::new(),
            stats: Stats::default(),
            reason: None,
            notes: Vec::new(),
            children: Vec::new(),
            seed: None,
        }
    }

    pub fn fail(&mut self, w: Witness) {
        self.verdict = self.verdict.merge(Verdict::Fail);
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(w);
        }
    }

    pub fn inconclusive(&mut self, reason: impl Into<String>) {
        self.verdict = self.verdict.merge(Verdict::Inconclusive);
        if self.reason.is_none() {
            self.reason = Some(reason.into());
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Appends a sub-report and folds its verdict into this one.
    pub fn push_child(&mut self, child: CheckReport) {
        self.verdict = self.verdict.merge(child.verdict);
        if child.verdict == Verdict::Inconclusive && self.reason.is_none() {
            self.reason = Some(format!("{}: {}", child.check, child.reason.clone().unwrap_or_default()));
        }
        self.children.push(child);
    }

    pub fn child(&self, check: &str) -> Option<&CheckReport> {
        self.children.iter().find(|c| c.check == check)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per report in the tree, indented by depth.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        self.summary_into(0, &mut out);
        out
    }

    fn summary_into(&self, depth: usize, out: &mut String) {
        use std::fmt::Write as _;
        let pad = "  ".repeat(depth);
        write!(out, "{pad}{}: {}", self.check, self.verdict).unwrap();
        if let Some(r) = &self.reason {
            write!(out, " ({r})").unwrap();
        }
        out.push('\n');
        for w in self.witnesses.iter().take(3) {
            writeln!(out, "{pad}  witness: {}", w.detail).unwrap();
        }
        for c in &self.children {
            c.summary_into(depth + 1, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_order_and_exit_codes() {
        assert_eq!(Verdict::Pass.merge(Verdict::ExpectedFail), Verdict::ExpectedFail);
        assert_eq!(Verdict::ExpectedFail.merge(Verdict::Inconclusive), Verdict::Inconclusive);
        assert_eq!(Verdict::Inconclusive.merge(Verdict::Fail), Verdict::Fail);
        assert_eq!(Verdict::ExpectedFail.exit_code(), 0);
        assert_eq!(Verdict::Fail.exit_code(), 1);
        assert_eq!(Verdict::Inconclusive.exit_code(), 2);
    }

    #[test]
    fn json_shape() {
        let mut r = CheckReport::new("demo");
        r.fail(Witness {
            violation: Violation::PhiMinusEps { node: 3, index: 1 },
            labels: vec!["x".into()],
            detail: "phi - eps = 2, <h, wt> = 1".into(),
        });
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["verdict"], "FAIL");
        assert_eq!(v["witnesses"][0]["kind"], "phi_minus_eps");
        let back: CheckReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }
}
