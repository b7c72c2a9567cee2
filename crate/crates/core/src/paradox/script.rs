//! Claim scripts: one claim per line, `<lhs> <eqsym> <rhs> BY <rule>`.
//!
//! ```text
//! 1 = l_s(1+2) BY split-def
//! 1+2 = 2+1 BY arith
//! l_s(1+2) = l_s(2+1) BY cong 2
//! ```
//!
//! `eqsym` is `=`, `=_AQ` or `=_AQ^bp` and must be surrounded by whitespace.
//! Sides are AQ signs or operator applications `l_s(..)`, `r_s(..)`,
//! `#_bp(..)`, `#_sp(..)`. Rules: `split-def`, `arith`, `aq-eq`, `bp-eq`,
//! `count`, `cong K`, `sym K`, `chain K1 K2 ...` with step numbers counted
//! from 1. Blank lines and lines starting with `//` are ignored, as is
//! anything after ` => ` so that rendered traces read back as scripts.

use std::fmt;
use std::str::FromStr;

use crate::aq::{self, split_left, split_right, Aq, BracketedAq};
use crate::sign::{count_bracket_pairs, count_spaces, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Operator {
    SplitLeft,
    SplitRight,
    CountBrackets,
    CountSpaces,
}

impl Operator {
    pub const ALL: [Operator; 4] = [
        Operator::SplitLeft,
        Operator::SplitRight,
        Operator::CountBrackets,
        Operator::CountSpaces,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Operator::SplitLeft => "l_s",
            Operator::SplitRight => "r_s",
            Operator::CountBrackets => "#_bp",
            Operator::CountSpaces => "#_sp",
        }
    }

    pub fn is_split(&self) -> bool {
        matches!(self, Operator::SplitLeft | Operator::SplitRight)
    }

    /// The coarsest equality this operator is congruent for. `None`: only
    /// identity of signs.
    pub fn respects(&self) -> Option<EqLevel> {
        match self {
            Operator::SplitLeft | Operator::SplitRight => Some(EqLevel::Aq),
            Operator::CountBrackets => Some(EqLevel::AqBp),
            Operator::CountSpaces => None,
        }
    }

    pub fn apply(&self, arg: &Term) -> Result<Aq, String> {
        Ok(match self {
            Operator::SplitLeft => split_left(&arg.denotation()?),
            Operator::SplitRight => split_right(&arg.denotation()?),
            Operator::CountBrackets => {
                let n = count_bracket_pairs(&Sign::new(arg.text.as_str()))
                    .map_err(|e| e.to_string())?;
                Aq::num(n as u64)
            }
            Operator::CountSpaces => Aq::num(count_spaces(&Sign::new(arg.text.as_str())) as u64),
        })
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Equality levels, coarsest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EqLevel {
    Value,
    Aq,
    AqBp,
}

impl EqLevel {
    pub fn symbol(&self) -> &'static str {
        match self {
            EqLevel::Value => "=",
            EqLevel::Aq => "=_AQ",
            EqLevel::AqBp => "=_AQ^bp",
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            EqLevel::Value => "value",
            EqLevel::Aq => "aq",
            EqLevel::AqBp => "aq_bp",
        }
    }

    pub fn from_symbol(s: &str) -> Option<EqLevel> {
        match s {
            "=" => Some(EqLevel::Value),
            "=_AQ" => Some(EqLevel::Aq),
            "=_AQ^bp" => Some(EqLevel::AqBp),
            _ => None,
        }
    }
}

impl FromStr for EqLevel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "value" => Ok(EqLevel::Value),
            "aq" => Ok(EqLevel::Aq),
            "aq_bp" | "aq-bp" => Ok(EqLevel::AqBp),
            _ => Err(format!("unknown equality level {s:?} (expected value, aq or aq-bp)")),
        }
    }
}

impl fmt::Display for EqLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermKind {
    Aq(BracketedAq),
    Op(Operator, Box<Term>),
}

/// One side of a claim, with the sign it was written as.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub text: String,
    pub kind: TermKind,
}

/// Byte index of the bracket closing the one at index 0.
fn closing_bracket(s: &str) -> Option<usize> {
    let mut depth = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth = depth.checked_sub(1)?;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

impl Term {
    pub fn parse(text: &str) -> Result<Term, String> {
        let t = text.trim();
        for op in Operator::ALL {
            if let Some(rest) = t.strip_prefix(op.name()) {
                if rest.starts_with('(') && closing_bracket(rest) == Some(rest.len() - 1) {
                    let inner = Term::parse(&rest[1..rest.len() - 1])?;
                    return Ok(Term {
                        text: t.to_string(),
                        kind: TermKind::Op(op, Box::new(inner)),
                    });
                }
                return Err(format!("{op} must be applied as {op}(...): {t:?}"));
            }
        }
        let b = aq::parse(&Sign::new(t)).map_err(|e| format!("{t:?}: {e}"))?;
        if let Some(v) = b.aq().first_var() {
            return Err(format!("{t:?}: claims are closed, found variable {v}"));
        }
        Ok(Term {
            text: t.to_string(),
            kind: TermKind::Aq(b),
        })
    }

    pub fn as_aq(&self) -> Option<&BracketedAq> {
        match &self.kind {
            TermKind::Aq(b) => Some(b),
            TermKind::Op(..) => None,
        }
    }

    /// The AQ the term stands for, operators evaluated.
    pub fn denotation(&self) -> Result<Aq, String> {
        match &self.kind {
            TermKind::Aq(b) => Ok(b.aq().clone()),
            TermKind::Op(op, arg) => op.apply(arg),
        }
    }

    pub fn operators(&self) -> Vec<Operator> {
        match &self.kind {
            TermKind::Aq(_) => vec![],
            TermKind::Op(op, arg) => {
                let mut v = vec![*op];
                v.extend(arg.operators());
                v
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub lhs: Term,
    pub level: EqLevel,
    pub rhs: Term,
}

impl Claim {
    /// Both sides are plain AQs, so the claim is in the language of the
    /// foundational specification.
    pub fn is_pure(&self) -> bool {
        self.lhs.as_aq().is_some() && self.rhs.as_aq().is_some()
    }

    pub fn operators(&self) -> Vec<Operator> {
        let mut v = self.lhs.operators();
        v.extend(self.rhs.operators());
        v
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs.text, self.level.symbol(), self.rhs.text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    /// `X = l_s(X+Y)` or `Y = r_s(X+Y)`, either way round.
    SplitDef,
    /// Both sides have the same value.
    Arith,
    AqEq,
    BpEq,
    /// `#_bp(X) = n` or `#_sp(X) = n`.
    Count,
    /// From step `k`: `A ~ B`, infer `f(A) ~ f(B)`.
    Cong(usize),
    Sym(usize),
    /// Links used in order, each either way round.
    Chain(Vec<usize>),
}

impl Rule {
    pub fn premises(&self) -> Vec<usize> {
        match self {
            Rule::Cong(k) | Rule::Sym(k) => vec![*k],
            Rule::Chain(ks) => ks.clone(),
            _ => vec![],
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::SplitDef => f.write_str("split-def"),
            Rule::Arith => f.write_str("arith"),
            Rule::AqEq => f.write_str("aq-eq"),
            Rule::BpEq => f.write_str("bp-eq"),
            Rule::Count => f.write_str("count"),
            Rule::Cong(k) => write!(f, "cong {k}"),
            Rule::Sym(k) => write!(f, "sym {k}"),
            Rule::Chain(ks) => {
                f.write_str("chain")?;
                for k in ks {
                    write!(f, " {k}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut words = s.split_whitespace();
        let name = words.next().ok_or("missing rule")?;
        let nums: Vec<usize> = words
            .map(|w| w.parse().map_err(|_| format!("{w:?} is not a step number")))
            .collect::<Result<_, _>>()?;
        let one = |nums: &[usize]| match nums {
            [k] => Ok(*k),
            _ => Err(format!("{name} takes exactly one step number")),
        };
        let none = |r: Rule| {
            if nums.is_empty() {
                Ok(r)
            } else {
                Err(format!("{name} takes no step numbers"))
            }
        };
        match name {
            "split-def" => none(Rule::SplitDef),
            "arith" => none(Rule::Arith),
            "aq-eq" => none(Rule::AqEq),
            "bp-eq" => none(Rule::BpEq),
            "count" => none(Rule::Count),
            "cong" => Ok(Rule::Cong(one(&nums)?)),
            "sym" => Ok(Rule::Sym(one(&nums)?)),
            "chain" if !nums.is_empty() => Ok(Rule::Chain(nums)),
            "chain" => Err("chain needs at least one step number".into()),
            _ => Err(format!("unknown rule {name:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptLine {
    pub claim: Claim,
    pub rule: Rule,
}

impl fmt::Display for ScriptLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} BY {}", self.claim, self.rule)
    }
}

impl FromStr for ScriptLine {
    type Err = String;

    fn from_str(line: &str) -> Result<Self, Self::Err> {
        let line = line.split(" => ").next().unwrap_or_default();
        let (claim, rule) = line
            .rsplit_once(" BY ")
            .ok_or("expected `<lhs> <eqsym> <rhs> BY <rule>`")?;
        let eq = claim.find('=').ok_or("missing equality sign")?;
        let sym_end = claim[eq..]
            .find(char::is_whitespace)
            .map_or(claim.len(), |i| eq + i);
        let sym = &claim[eq..sym_end];
        let level = EqLevel::from_symbol(sym)
            .ok_or_else(|| format!("unknown equality sign {sym:?}"))?;
        let before = &claim[..eq];
        if !before.ends_with(char::is_whitespace) || sym_end == claim.len() {
            return Err(format!("{sym} must be surrounded by spaces"));
        }
        Ok(ScriptLine {
            claim: Claim {
                lhs: Term::parse(before)?,
                level,
                rhs: Term::parse(&claim[sym_end..])?,
            },
            rule: rule.parse()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ScriptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "script line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ScriptError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Script {
    pub lines: Vec<ScriptLine>,
}

impl Script {
    pub fn parse(text: &str) -> Result<Script, ScriptError> {
        let mut lines = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let t = raw.trim();
            if t.is_empty() || t.starts_with("//") {
                continue;
            }
            let line = t.parse().map_err(|message| ScriptError {
                line: i + 1,
                message,
            })?;
            lines.push(line);
        }
        Ok(Script { lines })
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}
