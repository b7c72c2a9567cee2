//! The sum splitting paradox and its relatives, run under reasoning policies.
//!
//! A script is a list of claims, each with a justification. A [`Policy`]
//! decides step by step what to admit; the result is a [`ReasoningTrace`].
//! The naive policy lets `l_s` be congruent for `=` and so derives
//! `1 = l_s(1+2) = l_s(2+1) = 2`. The other policies are the solutions:
//! distinguish `=` from `=_AQ` (sumterm), overrule conclusions against the
//! foundational specification, warn on the dangerous step (pragmatic), or
//! refuse the operators outright (no-split, fixed-signature).

mod mistakes;
mod regress;
mod script;

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::aq::{eq_aq, eq_aq_bp, Aq};
use crate::fspec::{self, ProofOutcome};
use crate::semantics::eval_decimal;

pub use mistakes::{known_mistakes, KnownMistake};
pub use regress::{regress_report, Breakage, RegressLevel, RegressOptions, RegressReport};
pub use script::{
    Claim, EqLevel, Operator, Rule, Script, ScriptError, ScriptLine, Term, TermKind,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolicyMode {
    Naive,
    SumtermSolution,
    FoundationalSpec,
    Pragmatic,
    NoSplitFns,
    FixedSignature,
}

impl PolicyMode {
    pub const ALL: [PolicyMode; 6] = [
        PolicyMode::Naive,
        PolicyMode::SumtermSolution,
        PolicyMode::FoundationalSpec,
        PolicyMode::Pragmatic,
        PolicyMode::NoSplitFns,
        PolicyMode::FixedSignature,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PolicyMode::Naive => "naive",
            PolicyMode::SumtermSolution => "sumterm",
            PolicyMode::FoundationalSpec => "foundational",
            PolicyMode::Pragmatic => "pragmatic",
            PolicyMode::NoSplitFns => "no-split",
            PolicyMode::FixedSignature => "fixed-signature",
        }
    }
}

impl FromStr for PolicyMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PolicyMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown policy {s:?}"))
    }
}

impl fmt::Display for PolicyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Policy {
    pub mode: PolicyMode,
    /// For the sumterm solution: the equality taken as identity of AQs, so
    /// every operator is assumed congruent for it.
    pub level: EqLevel,
    /// Overrule closed arithmetic claims whose sides have distinct normal
    /// forms in the foundational specification.
    pub foundational_check: bool,
}

impl Policy {
    pub fn new(mode: PolicyMode) -> Policy {
        Policy {
            mode,
            level: EqLevel::Aq,
            foundational_check: mode == PolicyMode::FoundationalSpec,
        }
    }

    pub fn with_level(self, level: EqLevel) -> Policy {
        Policy { level, ..self }
    }

    pub fn with_foundational_check(self, on: bool) -> Policy {
        Policy {
            foundational_check: on,
            ..self
        }
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mode.name())?;
        if self.mode == PolicyMode::SumtermSolution {
            write!(f, " (level {})", self.level)?;
        }
        if self.foundational_check && self.mode != PolicyMode::FoundationalSpec {
            f.write_str(" (foundational check)")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Admitted,
    Warned(String),
    Rejected(String),
    /// Rejected by the foundational check.
    Overruled { lhs_normal: Aq, rhs_normal: Aq },
    /// Depends on the given step, which was not admitted.
    Skipped(usize),
}

impl Decision {
    pub fn is_admitted(&self) -> bool {
        matches!(self, Decision::Admitted | Decision::Warned(_))
    }

    fn kind(&self) -> &'static str {
        match self {
            Decision::Admitted => "admitted",
            Decision::Warned(_) => "warned",
            Decision::Rejected(_) => "rejected",
            Decision::Overruled { .. } => "overruled",
            Decision::Skipped(_) => "skipped",
        }
    }

    fn reason(&self) -> Option<String> {
        match self {
            Decision::Admitted => None,
            Decision::Warned(r) | Decision::Rejected(r) => Some(r.clone()),
            Decision::Overruled {
                lhs_normal,
                rhs_normal,
            } => Some(format!(
                "distinct normal forms {lhs_normal} and {rhs_normal} in the foundational specification"
            )),
            Decision::Skipped(k) => Some(format!("depends on step {k}")),
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.reason() {
            None => f.write_str(self.kind()),
            Some(r) => write!(f, "{}: {r}", self.kind()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    /// 1-based.
    pub index: usize,
    pub line: ScriptLine,
    pub decision: Decision,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    ContradictionDetected(String),
    StepRejected(usize, String),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Consistent => f.write_str("consistent"),
            Verdict::ContradictionDetected(c) => write!(f, "contradiction detected: {c}"),
            Verdict::StepRejected(k, why) => write!(f, "step {k} rejected: {why}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReasoningTrace {
    pub policy: Policy,
    pub steps: Vec<StepRecord>,
    /// Admitted arithmetic claims whose sides have different values.
    pub absurdities: Vec<String>,
    pub verdict: Verdict,
}

impl ReasoningTrace {
    /// No absurd claim was admitted.
    pub fn is_consistent(&self) -> bool {
        self.absurdities.is_empty()
    }

    pub fn admitted(&self) -> Vec<&Claim> {
        self.steps
            .iter()
            .filter(|s| s.decision.is_admitted())
            .map(|s| &s.line.claim)
            .collect()
    }

    pub fn admitted_indices(&self) -> Vec<usize> {
        self.steps
            .iter()
            .filter(|s| s.decision.is_admitted())
            .map(|s| s.index)
            .collect()
    }

    /// The last claim of the script, if admitted.
    pub fn conclusion(&self) -> Option<&Claim> {
        self.steps
            .last()
            .filter(|s| s.decision.is_admitted())
            .map(|s| &s.line.claim)
    }

    /// `a = b = ... = z` for a concluding chain step.
    pub fn chain_line(&self) -> Option<String> {
        let last = self.steps.last().filter(|s| s.decision.is_admitted())?;
        let Rule::Chain(ks) = &last.line.rule else {
            return None;
        };
        let mut cur = last.line.claim.lhs.text.clone();
        let mut out = cur.clone();
        for k in ks {
            let c = &self.steps[k - 1].line.claim;
            cur = if c.lhs.text == cur {
                c.rhs.text.clone()
            } else {
                c.lhs.text.clone()
            };
            out.push_str(&format!(" {} {cur}", c.level.symbol()));
        }
        Some(out)
    }

    pub fn render(&self) -> String {
        let mut out = format!("policy: {}\n", self.policy);
        for s in &self.steps {
            out.push_str(&format!("{} => {}\n", s.line, s.decision));
        }
        for a in &self.absurdities {
            out.push_str(&format!("absurd: {a}\n"));
        }
        out.push_str(&format!("verdict: {}\n", self.verdict));
        if let Some(c) = self.chain_line() {
            out.push_str(&format!("chain: {c}\n"));
        }
        match self.conclusion() {
            Some(c) => out.push_str(&format!("conclusion: {c}\n")),
            None => out.push_str("conclusion: none\n"),
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let steps: Vec<Value> = self
            .steps
            .iter()
            .map(|s| {
                json!({
                    "index": s.index,
                    "claim": s.line.claim.to_string(),
                    "rule": s.line.rule.to_string(),
                    "decision": s.decision.kind(),
                    "reason": s.decision.reason(),
                })
            })
            .collect();
        let verdict = match &self.verdict {
            Verdict::Consistent => json!({"kind": "consistent"}),
            Verdict::ContradictionDetected(c) => {
                json!({"kind": "contradiction_detected", "claim": c})
            }
            Verdict::StepRejected(k, why) => {
                json!({"kind": "step_rejected", "step": k, "reason": why})
            }
        };
        json!({
            "policy": self.policy.to_string(),
            "steps": steps,
            "absurdities": self.absurdities,
            "verdict": verdict,
            "chain": self.chain_line(),
            "conclusion": self.conclusion().map(|c| c.to_string()),
        })
    }
}

fn pure_pair(c: &Claim) -> Option<(&Aq, &Aq)> {
    Some((c.lhs.as_aq()?.aq(), c.rhs.as_aq()?.aq()))
}

fn require_pure<'c>(c: &'c Claim, rule: &str) -> Result<(&'c Aq, &'c Aq), String> {
    pure_pair(c).ok_or_else(|| format!("{rule} applies to plain arithmetic terms"))
}

fn require_level(c: &Claim, level: EqLevel, rule: &str) -> Result<(), String> {
    if c.level == level {
        Ok(())
    } else {
        Err(format!("{rule} justifies {} only", level.symbol()))
    }
}

fn check_split_def(c: &Claim) -> Result<(), String> {
    if c.level == EqLevel::AqBp {
        return Err("split-def is stated up to =_AQ".into());
    }
    let (op_side, other) = match (&c.lhs.kind, &c.rhs.kind) {
        (TermKind::Op(op, _), _) if op.is_split() => (&c.lhs, &c.rhs),
        (_, TermKind::Op(op, _)) if op.is_split() => (&c.rhs, &c.lhs),
        _ => return Err("split-def needs l_s or r_s on one side".into()),
    };
    let got = op_side.denotation()?;
    let other_aq = other.denotation()?;
    if eq_aq(&got, &other_aq) {
        Ok(())
    } else {
        Err(format!("{} is {got}, not {}", op_side.text, other.text))
    }
}

fn check_count(c: &Claim) -> Result<(), String> {
    let is_count = |t: &Term| matches!(&t.kind, TermKind::Op(op, _) if !op.is_split());
    let (op_side, other) = if is_count(&c.lhs) {
        (&c.lhs, &c.rhs)
    } else if is_count(&c.rhs) {
        (&c.rhs, &c.lhs)
    } else {
        return Err("count needs #_bp or #_sp on one side".into());
    };
    let n = op_side.denotation()?;
    match other.as_aq() {
        Some(b) if b.aq().as_const().is_some() && *b.aq() == n => Ok(()),
        _ => Err(format!("{} is {n}, not {}", op_side.text, other.text)),
    }
}

fn check_sym(c: &Claim, p: &Claim) -> Result<(), String> {
    if c.lhs.text != p.rhs.text || c.rhs.text != p.lhs.text {
        return Err(format!("{c} is not {p} reversed"));
    }
    if c.level > p.level {
        return Err(format!("{} does not follow from {}", c.level.symbol(), p.level.symbol()));
    }
    Ok(())
}

fn check_chain(c: &Claim, links: &[(usize, &Claim)]) -> Result<(), String> {
    let mut cur = c.lhs.text.as_str();
    let mut level = EqLevel::AqBp;
    for (k, l) in links {
        cur = if l.lhs.text == cur {
            &l.rhs.text
        } else if l.rhs.text == cur {
            &l.lhs.text
        } else {
            return Err(format!("step {k} does not continue the chain at {cur}"));
        };
        level = level.min(l.level);
    }
    if cur != c.rhs.text {
        return Err(format!("the chain ends at {cur}, not {}", c.rhs.text));
    }
    if c.level > level {
        return Err(format!("the chain only gives {}", level.symbol()));
    }
    Ok(())
}

/// Shape of a congruence step; returns the operator.
fn congruence_shape(c: &Claim, p: &Claim) -> Result<Operator, String> {
    match (&c.lhs.kind, &c.rhs.kind) {
        (TermKind::Op(f, a), TermKind::Op(g, b)) if f == g => {
            if a.text != p.lhs.text || b.text != p.rhs.text {
                return Err(format!("{c} does not apply one operator to both sides of {p}"));
            }
            if c.level > p.level {
                return Err(format!(
                    "{} does not follow from {}",
                    c.level.symbol(),
                    p.level.symbol()
                ));
            }
            Ok(*f)
        }
        _ => Err("cong needs the same operator on both sides".into()),
    }
}

fn congruence_decision(op: Operator, p: &Claim, policy: &Policy) -> Decision {
    match policy.mode {
        PolicyMode::Pragmatic if op.is_split() && p.level == EqLevel::Value => Decision::Warned(
            format!("substitution of equals for equals at top level in an argument of {op}"),
        ),
        PolicyMode::SumtermSolution if p.level < policy.level => {
            let sym = policy.level.symbol();
            let equal_anyway = match (p.lhs.as_aq(), p.rhs.as_aq()) {
                (Some(a), Some(b)) => match policy.level {
                    EqLevel::AqBp => eq_aq_bp(a, b),
                    _ => eq_aq(a.aq(), b.aq()),
                },
                _ => false,
            };
            if equal_anyway {
                Decision::Rejected(format!(
                    "premise {p} is stated with {}, congruence of {op} needs {sym}",
                    p.level.symbol()
                ))
            } else {
                Decision::Rejected(format!("{} not {sym} {}", p.lhs.text, p.rhs.text))
            }
        }
        _ => Decision::Admitted,
    }
}

/// Decides one step given the steps before it.
pub fn check_step(line: &ScriptLine, earlier: &[StepRecord], policy: &Policy) -> Decision {
    let c = &line.claim;
    if let Some(op) = c.operators().first() {
        match policy.mode {
            PolicyMode::NoSplitFns => {
                return Decision::Rejected(format!(
                    "{op} is not a function: its arguments do not form a set"
                ))
            }
            PolicyMode::FixedSignature => {
                return Decision::Rejected(format!(
                    "signature violation: {op} is outside digits, +, - and brackets"
                ))
            }
            _ => {}
        }
    }
    let mut premises = Vec::new();
    for k in line.rule.premises() {
        let Some(p) = k.checked_sub(1).and_then(|i| earlier.get(i)) else {
            return Decision::Rejected(format!("step {k} is not an earlier step"));
        };
        if !p.decision.is_admitted() {
            return Decision::Skipped(k);
        }
        premises.push((k, &p.line.claim));
    }
    let checked = match &line.rule {
        Rule::SplitDef => check_split_def(c),
        Rule::Arith => require_level(c, EqLevel::Value, "arith").and_then(|()| {
            let (a, b) = require_pure(c, "arith")?;
            let (va, vb) = (eval_decimal(a), eval_decimal(b));
            match (va, vb) {
                (Ok(x), Ok(y)) if x == y => Ok(()),
                (Ok(x), Ok(y)) => Err(format!("{} is {x} and {} is {y}", c.lhs.text, c.rhs.text)),
                (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
            }
        }),
        Rule::AqEq => require_level(c, EqLevel::Aq, "aq-eq").and_then(|()| {
            let (a, b) = require_pure(c, "aq-eq")?;
            if eq_aq(a, b) {
                Ok(())
            } else {
                Err(format!("{} not =_AQ {}", c.lhs.text, c.rhs.text))
            }
        }),
        Rule::BpEq => require_level(c, EqLevel::AqBp, "bp-eq").and_then(|()| {
            require_pure(c, "bp-eq")?;
            let (a, b) = (c.lhs.as_aq().unwrap(), c.rhs.as_aq().unwrap());
            if eq_aq_bp(a, b) {
                Ok(())
            } else {
                Err(format!("{} not =_AQ^bp {}", c.lhs.text, c.rhs.text))
            }
        }),
        Rule::Count => check_count(c),
        Rule::Sym(_) => check_sym(c, premises[0].1),
        Rule::Chain(_) => check_chain(c, &premises),
        Rule::Cong(_) => match congruence_shape(c, premises[0].1) {
            Err(e) => Err(e),
            Ok(op) => {
                let d = congruence_decision(op, premises[0].1, policy);
                if !d.is_admitted() {
                    return d;
                }
                return foundational(c, policy).unwrap_or(d);
            }
        },
    };
    match checked {
        Err(why) => Decision::Rejected(why),
        Ok(()) => foundational(c, policy).unwrap_or(Decision::Admitted),
    }
}

fn foundational(c: &Claim, policy: &Policy) -> Option<Decision> {
    if !policy.foundational_check {
        return None;
    }
    let (a, b) = pure_pair(c)?;
    match fspec::prove(a, b) {
        Ok(ProofOutcome::NotDerivable {
            lhs_normal,
            rhs_normal,
        }) => Some(Decision::Overruled {
            lhs_normal,
            rhs_normal,
        }),
        _ => None,
    }
}

fn is_absurd(c: &Claim) -> bool {
    match pure_pair(c) {
        Some((a, b)) => matches!((eval_decimal(a), eval_decimal(b)), (Ok(x), Ok(y)) if x != y),
        None => false,
    }
}

pub fn run_script(script: &Script, policy: &Policy) -> ReasoningTrace {
    let mut steps: Vec<StepRecord> = Vec::with_capacity(script.lines.len());
    let mut absurdities = Vec::new();
    for (i, line) in script.lines.iter().enumerate() {
        let decision = check_step(line, &steps, policy);
        if decision.is_admitted() && is_absurd(&line.claim) {
            absurdities.push(line.claim.to_string());
        }
        steps.push(StepRecord {
            index: i + 1,
            line: line.clone(),
            decision,
        });
    }
    let overruled = steps
        .iter()
        .find(|s| matches!(s.decision, Decision::Overruled { .. }));
    let rejected = steps.iter().find_map(|s| match &s.decision {
        Decision::Rejected(why) => Some((s.index, why.clone())),
        _ => None,
    });
    let verdict = match (overruled, rejected) {
        (Some(s), _) => Verdict::ContradictionDetected(s.line.claim.to_string()),
        (None, Some((k, why))) => Verdict::StepRejected(k, why),
        (None, None) => Verdict::Consistent,
    };
    ReasoningTrace {
        policy: *policy,
        steps,
        absurdities,
        verdict,
    }
}

pub const CANONICAL_SCRIPT: &str = "\
1 = l_s(1+2) BY split-def
1+2 = 2+1 BY arith
l_s(1+2) = l_s(2+1) BY cong 2
l_s(2+1) = 2 BY split-def
1 = 2 BY chain 1 3 4
";

pub const SPACE_SCRIPT: &str = "\
1 + 2 =_AQ^bp 1+2 BY bp-eq
#_sp(1 + 2) = #_sp(1+2) BY cong 1
#_sp(1 + 2) = 2 BY count
#_sp(1+2) = 0 BY count
2 = 0 BY chain 3 2 4
";

/// The bracket pair counting script with its premise stated at `level`.
pub fn bracket_script(level: EqLevel) -> String {
    let (sym, rule) = match level {
        EqLevel::AqBp => ("=_AQ^bp", "bp-eq"),
        _ => ("=_AQ", "aq-eq"),
    };
    format!(
        "0 {sym} (0) BY {rule}\n\
         #_bp(0) = #_bp((0)) BY cong 1\n\
         #_bp(0) = 0 BY count\n\
         #_bp((0)) = 1 BY count\n\
         0 = 1 BY chain 3 2 4\n"
    )
}

fn builtin(text: &str) -> Script {
    Script::parse(text).expect("built-in script parses")
}

/// The proof of the paradox, `1 = l_s(1+2) = l_s(2+1) = 2`, under a policy.
pub fn run_paradox(policy: &Policy) -> ReasoningTrace {
    run_script(&builtin(CANONICAL_SCRIPT), policy)
}

/// `#_bp(0) = 0` and `#_bp((0)) = 1` under the sumterm solution taking
/// `level` as identity of AQs.
pub fn run_bracket_paradox(level: EqLevel) -> ReasoningTrace {
    let policy = Policy::new(PolicyMode::SumtermSolution).with_level(level);
    run_script(&builtin(&bracket_script(level)), &policy)
}

/// `#_sp(1 + 2) = 2` and `#_sp(1+2) = 0` at the bracket-aware level.
pub fn run_space_paradox() -> ReasoningTrace {
    let policy = Policy::new(PolicyMode::SumtermSolution).with_level(EqLevel::AqBp);
    run_script(&builtin(SPACE_SCRIPT), &policy)
}

/// Restates `=` premises of congruence steps as `=_AQ` where their sides
/// are in fact the same AQ, so that a script written loosely can be replayed
/// under the sumterm solution.
pub fn upgrade_for_sumterm(script: &Script) -> Script {
    let mut out = script.clone();
    for line in &script.lines {
        let Rule::Cong(k) = line.rule else { continue };
        let Some(p) = k.checked_sub(1).and_then(|i| out.lines.get_mut(i)) else {
            continue;
        };
        if p.claim.level != EqLevel::Value {
            continue;
        }
        if let Some((a, b)) = pure_pair(&p.claim) {
            if eq_aq(a, b) {
                p.claim.level = EqLevel::Aq;
                p.rule = Rule::AqEq;
            }
        }
    }
    out
}

/// Bundled scripts: name and text.
pub fn corpus() -> Vec<(&'static str, String)> {
    vec![
        ("canonical", CANONICAL_SCRIPT.to_string()),
        ("bracket-aq", bracket_script(EqLevel::Aq)),
        ("bracket-aq-bp", bracket_script(EqLevel::AqBp)),
        ("spaces", SPACE_SCRIPT.to_string()),
        ("arithmetic", include_str!("../../scripts/arithmetic.txt").to_string()),
        ("sumterm-sound", include_str!("../../scripts/sumterm_sound.txt").to_string()),
        ("loose-premise", include_str!("../../scripts/loose_premise.txt").to_string()),
        ("right-split", include_str!("../../scripts/right_split.txt").to_string()),
    ]
}
