//! Deformability verdicts for a tuple of maps `f₁, …, f_k : M → N`.
//!
//! The engine only certifies what the implemented theorems certify:
//!
//! 1. a nonzero coincidence class means every homotopic tuple has a
//!    coincidence (`NotDeformable`);
//! 2. a vanishing class with `N` simply connected, or orientable and of
//!    Jiang type, means the maps can be deformed apart (`DeformableFree`),
//!    provided `dim M = (k-1)n`, `(k-1)n ≥ 3` and both manifolds are closed
//!    and connected;
//! 3. a declared vanishing primary obstruction under the same dimension and
//!    closedness hypotheses also gives `DeformableFree`.
//!
//! Everything else is `Inconclusive`.

use std::fmt;

use crate::lefschetz::{ClassKind, ClassValue};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum JiangType {
    #[default]
    None,
    Jiang,
    Nilmanifold,
    CompactLieCoset,
    CNilpotentFiniteCenter,
}

impl JiangType {
    pub fn as_str(self) -> &'static str {
        match self {
            JiangType::None => "none",
            JiangType::Jiang => "jiang",
            JiangType::Nilmanifold => "nilmanifold",
            JiangType::CompactLieCoset => "compact-lie-coset",
            JiangType::CNilpotentFiniteCenter => "c-nilpotent-finite-center",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            JiangType::None,
            JiangType::Jiang,
            JiangType::Nilmanifold,
            JiangType::CompactLieCoset,
            JiangType::CNilpotentFiniteCenter,
        ]
        .into_iter()
        .find(|t| t.as_str() == s)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SourceFlags {
    pub closed: bool,
    pub connected: bool,
    pub oriented: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TargetFlags {
    pub closed: bool,
    pub connected: bool,
    pub orientable: bool,
    pub simply_connected: bool,
    pub jiang_type: JiangType,
    pub aspherical: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub k: usize,
    /// Dimension of the target N.
    pub n: usize,
    /// Dimension of the source M.
    pub dim_source: usize,
    pub source: SourceFlags,
    pub target: TargetFlags,
    pub class: ClassValue,
    pub obstruction_known_zero: Option<bool>,
    /// Free-text remarks carried into the verdict notes.
    pub remarks: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hypothesis {
    DimensionMatch,
    ObstructionRange,
    SourceClosedConnected,
    TargetClosedConnected,
    TargetSimplyConnected,
    TargetJiangType,
    TargetOrientable,
}

impl Hypothesis {
    pub fn name(self) -> &'static str {
        match self {
            Hypothesis::DimensionMatch => "dim M = (k-1)n",
            Hypothesis::ObstructionRange => "n(k-1) >= 3",
            Hypothesis::SourceClosedConnected => "M closed and connected",
            Hypothesis::TargetClosedConnected => "N closed and connected",
            Hypothesis::TargetSimplyConnected => "N simply connected",
            Hypothesis::TargetJiangType => "N of Jiang type",
            Hypothesis::TargetOrientable => "N orientable",
        }
    }

    /// Which statement relies on the hypothesis.
    pub fn citation(self) -> &'static str {
        match self {
            Hypothesis::DimensionMatch => "all converse theorems: M is a closed (k-1)n-manifold",
            Hypothesis::ObstructionRange => {
                "obstruction theory: the relevant homotopy group is a local system once (k-1)n >= 3"
            }
            Hypothesis::SourceClosedConnected | Hypothesis::TargetClosedConnected => {
                "all converse theorems"
            }
            Hypothesis::TargetSimplyConnected => "converse for simply connected targets",
            Hypothesis::TargetJiangType | Hypothesis::TargetOrientable => {
                "converse for orientable Jiang-type targets"
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisResult {
    pub hypothesis: Hypothesis,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for HypothesisResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "pass" } else { "fail" };
        write!(
            f,
            "{status}: {} ({}) [{}]",
            self.hypothesis.name(),
            self.detail,
            self.hypothesis.citation()
        )
    }
}

pub fn check_hypotheses(s: &Scenario) -> Vec<HypothesisResult> {
    let needed = (s.k.saturating_sub(1)) * s.n;
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    vec![
        HypothesisResult {
            hypothesis: Hypothesis::DimensionMatch,
            passed: s.dim_source == needed,
            detail: format!("dim M = {}, (k-1)n = {needed}", s.dim_source),
        },
        HypothesisResult {
            hypothesis: Hypothesis::ObstructionRange,
            passed: needed >= 3,
            detail: format!("n(k-1) = {needed}"),
        },
        HypothesisResult {
            hypothesis: Hypothesis::SourceClosedConnected,
            passed: s.source.closed && s.source.connected,
            detail: format!(
                "closed: {}, connected: {}",
                yes_no(s.source.closed),
                yes_no(s.source.connected)
            ),
        },
        HypothesisResult {
            hypothesis: Hypothesis::TargetClosedConnected,
            passed: s.target.closed && s.target.connected,
            detail: format!(
                "closed: {}, connected: {}",
                yes_no(s.target.closed),
                yes_no(s.target.connected)
            ),
        },
        HypothesisResult {
            hypothesis: Hypothesis::TargetSimplyConnected,
            passed: s.target.simply_connected,
            detail: format!("simply connected: {}", yes_no(s.target.simply_connected)),
        },
        HypothesisResult {
            hypothesis: Hypothesis::TargetJiangType,
            passed: s.target.jiang_type != JiangType::None,
            detail: format!("declared type: {}", s.target.jiang_type.as_str()),
        },
        HypothesisResult {
            hypothesis: Hypothesis::TargetOrientable,
            passed: s.target.orientable || s.target.simply_connected,
            detail: format!("orientable: {}", yes_no(s.target.orientable)),
        },
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decision {
    NotDeformable,
    DeformableFree,
    Inconclusive,
}

impl Decision {
    pub fn as_str(self) -> &'static str {
        match self {
            Decision::NotDeformable => "not-deformable",
            Decision::DeformableFree => "deformable-free",
            Decision::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Nonzero coincidence class ⇒ coincidences persist under homotopy.
    LefschetzCoincidence,
    /// Vanishing primary obstruction ⇔ deformable.
    ConverseObstruction,
    /// N simply connected: vanishing class ⇔ deformable.
    ConverseSimplyConnected,
    /// N orientable of Jiang type: vanishing class ⇔ deformable.
    ConverseJiang,
    NoApplicableTheorem,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::LefschetzCoincidence => "lefschetz-coincidence-theorem",
            Rule::ConverseObstruction => "converse-primary-obstruction",
            Rule::ConverseSimplyConnected => "converse-simply-connected-target",
            Rule::ConverseJiang => "converse-jiang-type-target",
            Rule::NoApplicableTheorem => "none",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Rule::LefschetzCoincidence => {
                "a nonzero coincidence class forces C(f1,...,fk) to be nonempty for every homotopic tuple"
            }
            Rule::ConverseObstruction => {
                "f1,...,fk are deformable to be coincidence free iff the primary obstruction o_{(k-1)n} vanishes"
            }
            Rule::ConverseSimplyConnected => {
                "for simply connected N, f1,...,fk are deformable to be coincidence free iff L(f1,...,fk) = 0"
            }
            Rule::ConverseJiang => {
                "for orientable N of Jiang type, f1,...,fk are deformable to be coincidence free iff L(f1,...,fk) = 0"
            }
            Rule::NoApplicableTheorem => "no implemented theorem applies",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub decision: Decision,
    pub rule: Rule,
    pub notes: Vec<String>,
}

pub fn decide(s: &Scenario) -> Verdict {
    let checks = check_hypotheses(s);
    let passed = |h: Hypothesis| checks.iter().any(|r| r.hypothesis == h && r.passed);
    let mut notes: Vec<String> = checks.iter().map(|r| r.to_string()).collect();

    if s.n == 2 && s.k >= 3 {
        notes.push(
            "surface target: (k-1)n >= 3 because k >= 3, so the obstruction coefficients form a local system"
                .into(),
        );
    }
    match &s.class.kind {
        ClassKind::Integer(v) => notes.push(format!("class: {v} ({})", s.class.provenance)),
        ClassKind::Zero { reason } => notes.push(format!("class: zero, {reason}")),
        ClassKind::Unknown { reason } => notes.push(format!("class: unknown, {reason}")),
    }

    let verdict = |decision, rule: Rule, mut notes: Vec<String>| {
        notes.push(format!("rule: {}", rule.statement()));
        notes.extend(s.remarks.iter().map(|r| format!("remark: {r}")));
        Verdict { decision, rule, notes }
    };

    if let Some(v) = s.class.nonzero_value() {
        notes.push(format!("class value {v} is nonzero"));
        return verdict(Decision::NotDeformable, Rule::LefschetzCoincidence, notes);
    }

    let common = [
        Hypothesis::DimensionMatch,
        Hypothesis::ObstructionRange,
        Hypothesis::SourceClosedConnected,
        Hypothesis::TargetClosedConnected,
    ]
    .into_iter()
    .all(passed);

    if common && s.class.is_vanishing() {
        if passed(Hypothesis::TargetSimplyConnected) {
            return verdict(Decision::DeformableFree, Rule::ConverseSimplyConnected, notes);
        }
        if passed(Hypothesis::TargetOrientable) && passed(Hypothesis::TargetJiangType) {
            return verdict(Decision::DeformableFree, Rule::ConverseJiang, notes);
        }
    }
    match s.obstruction_known_zero {
        Some(true) if common => {
            return verdict(Decision::DeformableFree, Rule::ConverseObstruction, notes);
        }
        Some(false) => notes.push(
            "primary obstruction declared nonzero; non-deformability is certified only from a computed nonzero class"
                .into(),
        ),
        _ => {}
    }

    let failed: Vec<&str> = checks
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.hypothesis.name())
        .collect();
    if !failed.is_empty() {
        notes.push(format!("unmet hypotheses: {}", failed.join("; ")));
    }
    if !s.class.is_vanishing() {
        notes.push("class is not known to vanish".into());
    }
    verdict(Decision::Inconclusive, Rule::NoApplicableTheorem, notes)
}
