//! The foundational specification of `Z(dec,+,-)` as a proof engine.
//!
//! The equations:
//!
//! ```text
//! (1) (x+y)+z = x+(y+z)          (6) d' = d+1          d in 1..8
//! (2) x+y = y+x                  (7) 9+1 = 10
//! (3) x+0 = x                    (8) σd+1 = σd'        d in 0..8
//! (4) x+(-x) = 0                 (9) σ+1 = τ  ->  σ9+1 = τ0
//! (5) -(-x) = x
//! ```
//!
//! with `σ, τ` ranging over digit sequences not starting with `0` and `d'`
//! the digit successor (`0' = 1, ..., 8' = 9`). Poly-infix sums are read with
//! the value-level law `t1+...+tn+t(n+1) = t1+...+t(n-1)+(tn+t(n+1))`.
//!
//! [`normalize`] rewrites a closed AQ to an element of `Z_d`, recording every
//! step; [`prove`] turns two such traces into a [`Derivation`]; [`check`]
//! re-verifies a derivation without sharing code with the generator.

mod check;
mod json;
mod normalize;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::aq::{Aq, Numeral};

pub use check::{check, check_trace, CheckReport};
pub use json::{derivation_from_lines, derivation_to_lines, trace_from_lines, trace_to_lines};
pub use normalize::{
    normalize, normalize_with, prove, prove_with, redexes, successor_chain_add, ProofOutcome,
    Strategy,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FspecError {
    #[error("open term: variable {0} has no value")]
    OpenTerm(String),
    #[error("sort error: {0}")]
    Sort(String),
    #[error("scale error: {what} exceeds the configured bound {bound}")]
    Scale { what: String, bound: u64 },
    #[error("domain error: digit {0} has no successor digit")]
    Domain(u8),
    #[error("format error: {0}")]
    Format(String),
}

/// Successor of a decimal digit, `0' = 1` up to `8' = 9`.
pub fn digit_successor(d: u8) -> Result<u8, FspecError> {
    if d <= 8 {
        Ok(d + 1)
    } else {
        Err(FspecError::Domain(d))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// (1)
    Assoc,
    /// (2)
    Comm,
    /// (3)
    AddZero,
    /// (4)
    AddOpp,
    /// (5)
    DoubleNeg,
    /// (6) `d' = d+1`, d in 1..8.
    DigitSucc(u8),
    /// (7)
    NineOne,
    /// (8) `σd+1 = σd'`, d in 0..8.
    AppendSucc(u8),
    /// (9), conditional on a derivation of `σ+1 = τ`.
    CarryCond,
    /// Regrouping of the last two summands of a poly-infix sum.
    PolyInfix,
}

impl Axiom {
    pub fn name(&self) -> &'static str {
        match self {
            Axiom::Assoc => "Assoc",
            Axiom::Comm => "Comm",
            Axiom::AddZero => "AddZero",
            Axiom::AddOpp => "AddOpp",
            Axiom::DoubleNeg => "DoubleNeg",
            Axiom::DigitSucc(_) => "DigitSucc",
            Axiom::NineOne => "NineOne",
            Axiom::AppendSucc(_) => "AppendSucc",
            Axiom::CarryCond => "CarryCond",
            Axiom::PolyInfix => "PolyInfix",
        }
    }

    pub fn digit(&self) -> Option<u8> {
        match *self {
            Axiom::DigitSucc(d) | Axiom::AppendSucc(d) => Some(d),
            _ => None,
        }
    }

    pub fn from_name(name: &str, digit: Option<u8>) -> Option<Axiom> {
        Some(match (name, digit) {
            ("Assoc", None) => Axiom::Assoc,
            ("Comm", None) => Axiom::Comm,
            ("AddZero", None) => Axiom::AddZero,
            ("AddOpp", None) => Axiom::AddOpp,
            ("DoubleNeg", None) => Axiom::DoubleNeg,
            ("DigitSucc", Some(d)) => Axiom::DigitSucc(d),
            ("NineOne", None) => Axiom::NineOne,
            ("AppendSucc", Some(d)) => Axiom::AppendSucc(d),
            ("CarryCond", None) => Axiom::CarryCond,
            ("PolyInfix", None) => Axiom::PolyInfix,
            _ => return None,
        })
    }

    /// Axioms allowed in the premise of a carry step.
    pub fn in_successor_fragment(&self) -> bool {
        matches!(
            self,
            Axiom::DigitSucc(_) | Axiom::NineOne | Axiom::AppendSucc(_) | Axiom::CarryCond
        )
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.digit() {
            Some(d) => write!(f, "{}({d})", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

/// Pattern variable bindings. Term variables are `x`, `y`, `z` (and `t1`,
/// `t2`, ... for [`Axiom::PolyInfix`]); digit-sequence variables are `sigma`
/// and `tau`, bound to constants.
pub type Bindings = BTreeMap<String, Aq>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomInstance {
    pub axiom: Axiom,
    pub bindings: Bindings,
    /// Derivation of `σ+1 = τ`, only for [`Axiom::CarryCond`].
    pub premise: Option<Box<Derivation>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProofStep {
    Axiom(AxiomInstance),
    Reflexivity,
    Symmetry(Box<ProofStep>),
    Transitivity(Box<ProofStep>, Box<ProofStep>),
    /// The inner step applied to the subterm at a path of child indices.
    Congruence(Vec<usize>, Box<ProofStep>),
    /// `σ + τ = ρ` for two positive constants, computed by columns. Emitted
    /// only for additions beyond the unary limit.
    ColumnSum { left: Numeral, right: Numeral },
}

impl ProofStep {
    pub fn sym(self) -> ProofStep {
        match self {
            ProofStep::Symmetry(inner) => *inner,
            other => ProofStep::Symmetry(Box::new(other)),
        }
    }

    pub fn at(self, position: &[usize]) -> ProofStep {
        if position.is_empty() {
            self
        } else {
            ProofStep::Congruence(position.to_vec(), Box::new(self))
        }
    }

    /// Visits every axiom instance, including those in premises.
    pub fn for_each_axiom(&self, f: &mut dyn FnMut(&AxiomInstance)) {
        match self {
            ProofStep::Axiom(inst) => {
                f(inst);
                if let Some(p) = &inst.premise {
                    for s in &p.steps {
                        s.proof.for_each_axiom(f);
                    }
                }
            }
            ProofStep::Reflexivity | ProofStep::ColumnSum { .. } => {}
            ProofStep::Symmetry(s) | ProofStep::Congruence(_, s) => s.for_each_axiom(f),
            ProofStep::Transitivity(a, b) => {
                a.for_each_axiom(f);
                b.for_each_axiom(f);
            }
        }
    }

    pub fn uses_column_sum(&self) -> bool {
        match self {
            ProofStep::ColumnSum { .. } => true,
            ProofStep::Axiom(_) | ProofStep::Reflexivity => false,
            ProofStep::Symmetry(s) | ProofStep::Congruence(_, s) => s.uses_column_sum(),
            ProofStep::Transitivity(a, b) => a.uses_column_sum() || b.uses_column_sum(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationStep {
    pub proof: ProofStep,
    /// The whole term after this step.
    pub result: Aq,
}

/// An equational proof of `lhs = rhs`: a chain of terms starting at `lhs`,
/// each step justified by a proof step, ending at `rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub lhs: Aq,
    pub rhs: Aq,
    pub steps: Vec<DerivationStep>,
}

impl Derivation {
    pub fn uses_column_sum(&self) -> bool {
        self.steps.iter().any(|s| s.proof.uses_column_sum())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub position: Vec<usize>,
    /// An axiom instance, possibly under symmetry, or a column sum.
    pub proof: ProofStep,
    /// Subterm at `position` before the step.
    pub redex: Aq,
    /// Subterm at `position` after the step.
    pub result: Aq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteTrace {
    pub start: Aq,
    pub steps: Vec<TraceStep>,
    pub normal_form: Aq,
}

impl RewriteTrace {
    /// Whole terms along the trace, `start` first. `None` if a step's redex
    /// is not found at its position.
    pub fn terms(&self) -> Option<Vec<Aq>> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut cur = self.start.clone();
        out.push(cur.clone());
        for s in &self.steps {
            let slot = cur.at_mut(&s.position)?;
            if *slot != s.redex {
                return None;
            }
            *slot = s.result.clone();
            out.push(cur.clone());
        }
        Some(out)
    }

    pub fn uses_column_sum(&self) -> bool {
        self.steps.iter().any(|s| s.proof.uses_column_sum())
    }
}

/// Elements of `Z_d` embedded as AQs: `0`, `σ`, `-σ`.
pub fn is_normal_form(a: &Aq) -> bool {
    match a {
        Aq::Const(_) => true,
        Aq::Neg(inner) => matches!(inner.as_ref(), Aq::Const(n) if !n.is_zero()),
        _ => false,
    }
}
