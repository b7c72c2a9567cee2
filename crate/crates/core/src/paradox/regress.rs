//! The regress of AQ related paradoxes: each finer equality has an operator
//! that is not congruent for it.

use std::fmt;

use super::script::{EqLevel, Operator, Term};
use crate::aq::{eq_aq, eq_aq_bp, Aq};
use crate::semantics::eval_decimal;

#[derive(Debug, Clone, Default)]
pub struct RegressOptions {
    /// Operators left out of the tower.
    pub disabled: Vec<Operator>,
}

impl RegressOptions {
    pub fn without_counting() -> RegressOptions {
        RegressOptions {
            disabled: vec![Operator::CountBrackets, Operator::CountSpaces],
        }
    }

    pub fn without_operators() -> RegressOptions {
        RegressOptions {
            disabled: Operator::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Breakage {
    pub operator: Operator,
    pub left: Aq,
    pub right: Aq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegressLevel {
    pub name: &'static str,
    pub equality: &'static str,
    pub witness: (String, String),
    /// Whether the witness sides are equal at this level.
    pub holds: bool,
    pub breaker: Option<Breakage>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegressReport {
    pub levels: Vec<RegressLevel>,
    pub resolution: String,
}

impl RegressReport {
    pub fn is_consistent(&self) -> bool {
        self.levels.iter().all(|l| l.breaker.is_none())
    }
}

impl fmt::Display for RegressReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.levels {
            let (a, b) = &l.witness;
            let rel = if l.equality == "identity" { "==" } else { l.equality };
            write!(f, "level {} ({}): {a} {rel} {b}; ", l.name, l.equality)?;
            match &l.breaker {
                Some(br) => writeln!(
                    f,
                    "broken by {op}: {op}({a}) = {}, {op}({b}) = {}",
                    br.left,
                    br.right,
                    op = br.operator
                )?,
                None => writeln!(f, "no operator breaks congruence")?,
            }
        }
        writeln!(f, "resolution: {}", self.resolution)
    }
}

const RESOLUTION: &str = "conventionalism on arithmetic signatures: keep sumterms for l_s and r_s, \
                          reject #_bp and #_sp as outside the signature (fixed-signature policy)";

pub fn regress_report(options: &RegressOptions) -> RegressReport {
    let rows: [(&str, &str, &str, &str); 4] = [
        ("value", "=", "1+2", "2+1"),
        ("aq", "=_AQ", "0", "(0)"),
        ("aq_bp", "=_AQ^bp", "1 + 2", "1+2"),
        ("sign", "identity", "1+2", "1+2"),
    ];
    let levels = rows
        .iter()
        .map(|&(name, equality, a, b)| {
            let ta = Term::parse(a).expect("witness parses");
            let tb = Term::parse(b).expect("witness parses");
            let (ba, bb) = (ta.as_aq().unwrap(), tb.as_aq().unwrap());
            let holds = match EqLevel::from_symbol(equality) {
                Some(EqLevel::Value) => eval_decimal(ba.aq()).ok() == eval_decimal(bb.aq()).ok(),
                Some(EqLevel::Aq) => eq_aq(ba.aq(), bb.aq()),
                Some(EqLevel::AqBp) => eq_aq_bp(ba, bb),
                None => a == b,
            };
            let breaker = Operator::ALL
                .into_iter()
                .filter(|op| !options.disabled.contains(op))
                .find_map(|op| {
                    let (l, r) = (op.apply(&ta).ok()?, op.apply(&tb).ok()?);
                    (l != r).then_some(Breakage {
                        operator: op,
                        left: l,
                        right: r,
                    })
                });
            RegressLevel {
                name,
                equality,
                witness: (a.to_string(), b.to_string()),
                holds,
                breaker,
            }
        })
        .collect();
    RegressReport {
        levels,
        resolution: RESOLUTION.to_string(),
    }
}
