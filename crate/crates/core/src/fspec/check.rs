//! Proof checking. Shares only the data types with the generator: schemas
//! are instantiated here from scratch and the digit successor is a table.

use std::fmt;

use super::{Axiom, AxiomInstance, Derivation, ProofStep, RewriteTrace};
use crate::aq::{Aq, Numeral};

const NEXT_DIGIT: [u8; 9] = *b"123456789";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub steps_checked: usize,
    /// 1-based step number and reason of the first failure.
    pub failure: Option<(usize, String)>,
}

impl CheckReport {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "valid: {} steps checked", self.steps_checked),
            Some((k, why)) => write!(f, "invalid at step {k}: {why}"),
        }
    }
}

fn c(digits: &str) -> Result<Aq, String> {
    Numeral::new(digits)
        .map(Aq::Const)
        .ok_or_else(|| format!("{digits:?} is not a numeral"))
}

fn s(a: Aq, b: Aq) -> Aq {
    Aq::Sum(vec![a, b])
}

fn n(a: Aq) -> Aq {
    Aq::Neg(Box::new(a))
}

fn get<'a>(inst: &'a AxiomInstance, name: &str) -> Result<&'a Aq, String> {
    inst.bindings
        .get(name)
        .ok_or_else(|| format!("{} needs a binding for {name}", inst.axiom))
}

/// A digit-sequence variable: a constant other than `0`.
fn get_seq<'a>(inst: &'a AxiomInstance, name: &str) -> Result<&'a str, String> {
    match get(inst, name)? {
        Aq::Const(k) if k.digits() != "0" => Ok(k.digits()),
        other => Err(format!("{name} must be a digit sequence, got {other}")),
    }
}

fn expect_only(inst: &AxiomInstance, names: &[&str]) -> Result<(), String> {
    match inst.bindings.keys().find(|k| !names.contains(&k.as_str())) {
        Some(k) => Err(format!("{} has no variable {k}", inst.axiom)),
        None => Ok(()),
    }
}

fn next_digit(d: u8) -> Result<u8, String> {
    NEXT_DIGIT
        .get(d as usize)
        .copied()
        .map(|b| b - b'0')
        .ok_or_else(|| format!("digit {d} has no successor digit"))
}

/// Both sides of an axiom instance.
fn equation(inst: &AxiomInstance) -> Result<(Aq, Aq), String> {
    if inst.premise.is_some() && inst.axiom != Axiom::CarryCond {
        return Err(format!("{} takes no premise", inst.axiom));
    }
    let one = || c("1");
    Ok(match inst.axiom {
        Axiom::Assoc => {
            expect_only(inst, &["x", "y", "z"])?;
            let (x, y, z) = (get(inst, "x")?, get(inst, "y")?, get(inst, "z")?);
            (
                s(s(x.clone(), y.clone()), z.clone()),
                s(x.clone(), s(y.clone(), z.clone())),
            )
        }
        Axiom::Comm => {
            expect_only(inst, &["x", "y"])?;
            let (x, y) = (get(inst, "x")?, get(inst, "y")?);
            (s(x.clone(), y.clone()), s(y.clone(), x.clone()))
        }
        Axiom::AddZero => {
            expect_only(inst, &["x"])?;
            let x = get(inst, "x")?;
            (s(x.clone(), c("0")?), x.clone())
        }
        Axiom::AddOpp => {
            expect_only(inst, &["x"])?;
            let x = get(inst, "x")?;
            (s(x.clone(), n(x.clone())), c("0")?)
        }
        Axiom::DoubleNeg => {
            expect_only(inst, &["x"])?;
            let x = get(inst, "x")?;
            (n(n(x.clone())), x.clone())
        }
        Axiom::DigitSucc(d) => {
            expect_only(inst, &[])?;
            if !(1..=8).contains(&d) {
                return Err(format!("DigitSucc is stated for digits 1..8, not {d}"));
            }
            let next = next_digit(d)?;
            (c(&next.to_string())?, s(c(&d.to_string())?, one()?))
        }
        Axiom::NineOne => {
            expect_only(inst, &[])?;
            (s(c("9")?, one()?), c("10")?)
        }
        Axiom::AppendSucc(d) => {
            expect_only(inst, &["sigma"])?;
            let sigma = get_seq(inst, "sigma")?;
            let next = next_digit(d)?;
            (
                s(c(&format!("{sigma}{d}"))?, one()?),
                c(&format!("{sigma}{next}"))?,
            )
        }
        Axiom::CarryCond => {
            expect_only(inst, &["sigma", "tau"])?;
            let sigma = get_seq(inst, "sigma")?;
            let tau = get_seq(inst, "tau")?;
            let premise = inst
                .premise
                .as_ref()
                .ok_or("CarryCond needs a derivation of sigma+1 = tau")?;
            if premise.lhs != s(c(sigma)?, one()?) || premise.rhs != c(tau)? {
                return Err(format!(
                    "premise proves {} = {}, expected {sigma}+1 = {tau}",
                    premise.lhs, premise.rhs
                ));
            }
            for step in &premise.steps {
                let mut bad = None;
                if step.proof.uses_column_sum() {
                    bad = Some("a column sum".to_string());
                }
                step.proof.for_each_axiom(&mut |i| {
                    if !i.axiom.in_successor_fragment() && bad.is_none() {
                        bad = Some(i.axiom.to_string());
                    }
                });
                if let Some(b) = bad {
                    return Err(format!("premise may only use the successor rules, found {b}"));
                }
            }
            let r = check(premise);
            if let Some((k, why)) = r.failure {
                return Err(format!("premise step {k}: {why}"));
            }
            (s(c(&format!("{sigma}9"))?, one()?), c(&format!("{tau}0"))?)
        }
        Axiom::PolyInfix => {
            let k = inst.bindings.len();
            if k < 3 {
                return Err("PolyInfix needs at least three summands".into());
            }
            let mut ts = Vec::with_capacity(k);
            for i in 1..=k {
                ts.push(get(inst, &format!("t{i}"))?.clone());
            }
            let lhs = Aq::Sum(ts.clone());
            let last = ts.pop().expect("k >= 3");
            let prev = ts.pop().expect("k >= 3");
            ts.push(s(prev, last));
            (lhs, Aq::Sum(ts))
        }
    })
}

/// Schoolbook addition, independent of the semantics module.
fn column_add(a: &str, b: &str) -> String {
    let (a, b): (Vec<u32>, Vec<u32>) = (
        a.bytes().rev().map(|x| (x - b'0') as u32).collect(),
        b.bytes().rev().map(|x| (x - b'0') as u32).collect(),
    );
    let mut out = Vec::new();
    let mut carry = 0;
    for i in 0..a.len().max(b.len()) {
        let t = a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0) + carry;
        out.push(char::from_digit(t % 10, 10).unwrap());
        carry = t / 10;
    }
    if carry > 0 {
        out.push('1');
    }
    out.iter().rev().collect()
}

fn column_equation(left: &Numeral, right: &Numeral) -> Result<(Aq, Aq), String> {
    if left.digits() == "0" || right.digits() == "0" {
        return Err("a column sum adds two positive constants".into());
    }
    Ok((
        s(Aq::Const(left.clone()), Aq::Const(right.clone())),
        c(&column_add(left.digits(), right.digits()))?,
    ))
}

/// Rewrites `t` with `proof` read left to right.
fn apply(proof: &ProofStep, t: &Aq, forward: bool) -> Result<Aq, String> {
    let oriented = |(l, r): (Aq, Aq)| if forward { (l, r) } else { (r, l) };
    match proof {
        ProofStep::Axiom(inst) => {
            let (from, to) = oriented(equation(inst)?);
            if *t == from {
                Ok(to)
            } else {
                Err(format!("{t} is not an instance of {} ({from})", inst.axiom))
            }
        }
        ProofStep::ColumnSum { left, right } => {
            let (from, to) = oriented(column_equation(left, right)?);
            if *t == from {
                Ok(to)
            } else {
                Err(format!("{t} does not match the column sum {from}"))
            }
        }
        ProofStep::Reflexivity => Ok(t.clone()),
        ProofStep::Symmetry(p) => apply(p, t, !forward),
        ProofStep::Transitivity(a, b) => {
            if forward {
                apply(b, &apply(a, t, true)?, true)
            } else {
                apply(a, &apply(b, t, false)?, false)
            }
        }
        ProofStep::Congruence(path, p) => {
            let mut out = t.clone();
            let slot = out
                .at_mut(path)
                .ok_or_else(|| format!("{t} has no subterm at {path:?}"))?;
            *slot = apply(p, slot, forward)?;
            Ok(out)
        }
    }
}

/// Checks every step of a derivation against the axioms and the claimed
/// intermediate terms.
pub fn check(d: &Derivation) -> CheckReport {
    let mut cur = d.lhs.clone();
    for (i, step) in d.steps.iter().enumerate() {
        let fail = |why: String| CheckReport {
            steps_checked: i,
            failure: Some((i + 1, why)),
        };
        match apply(&step.proof, &cur, true) {
            Err(why) => return fail(why),
            Ok(next) if next != step.result => {
                return fail(format!("step gives {next}, not the claimed {}", step.result))
            }
            Ok(next) => cur = next,
        }
    }
    let n = d.steps.len();
    if cur != d.rhs {
        return CheckReport {
            steps_checked: n,
            failure: Some((n, format!("chain ends at {cur}, not at {}", d.rhs))),
        };
    }
    CheckReport {
        steps_checked: n,
        failure: None,
    }
}

fn is_decimal_integer(a: &Aq) -> bool {
    match a {
        Aq::Const(_) => true,
        Aq::Neg(inner) => matches!(inner.as_ref(), Aq::Const(k) if k.digits() != "0"),
        _ => false,
    }
}

/// Replays a rewrite trace: each redex must sit at its position and rewrite
/// to its result; the last term must be the claimed normal form.
pub fn check_trace(t: &RewriteTrace) -> CheckReport {
    let mut cur = t.start.clone();
    for (i, step) in t.steps.iter().enumerate() {
        let fail = |why: String| CheckReport {
            steps_checked: i,
            failure: Some((i + 1, why)),
        };
        let Some(slot) = cur.at_mut(&step.position) else {
            return fail(format!("no subterm at {:?}", step.position));
        };
        if *slot != step.redex {
            return fail(format!(
                "subterm at {:?} is {slot}, not the claimed {}",
                step.position, step.redex
            ));
        }
        match apply(&step.proof, &step.redex, true) {
            Err(why) => return fail(why),
            Ok(next) if next != step.result => {
                return fail(format!("step gives {next}, not the claimed {}", step.result))
            }
            Ok(next) => *slot = next,
        }
    }
    let n = t.steps.len();
    let failure = if cur != t.normal_form {
        Some((n, format!("trace ends at {cur}, not at {}", t.normal_form)))
    } else if !is_decimal_integer(&cur) {
        Some((n, format!("{cur} is not a decimal integer")))
    } else {
        None
    };
    CheckReport {
        steps_checked: n,
        failure,
    }
}
