//! Bottom-up normalization of closed AQs with a recorded trace.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    Axiom, AxiomInstance, Derivation, DerivationStep, FspecError, ProofStep,
    RewriteTrace, TraceStep,
};
use crate::aq::{Aq, Numeral};
use crate::config::Config;
use crate::semantics::{add_digits, cmp_digits, embed, sub_digits, DecimalValue};

/// Choices left open by the rules: which child of a sum is normalized first
/// and, for small additions, which operand is counted down.
#[derive(Debug, Clone)]
pub struct Strategy {
    rng: Option<ChaCha8Rng>,
}

impl Strategy {
    pub fn canonical() -> Strategy {
        Strategy { rng: None }
    }

    pub fn randomized(seed: u64) -> Strategy {
        Strategy {
            rng: Some(ChaCha8Rng::seed_from_u64(seed)),
        }
    }

    fn coin(&mut self) -> bool {
        self.rng.as_mut().is_some_and(|r| r.gen_bool(0.5))
    }

    fn is_random(&self) -> bool {
        self.rng.is_some()
    }
}

impl Default for Strategy {
    fn default() -> Self {
        Strategy::canonical()
    }
}

fn one() -> Numeral {
    Numeral::from_u64(1)
}

fn nat(n: &Numeral) -> Aq {
    Aq::Const(n.clone())
}

fn plus(a: Aq, b: Aq) -> Aq {
    Aq::add(a, b)
}

fn child(pos: &[usize], i: usize) -> Vec<usize> {
    let mut p = pos.to_vec();
    p.push(i);
    p
}

fn child2(pos: &[usize], i: usize, j: usize) -> Vec<usize> {
    let mut p = child(pos, i);
    p.push(j);
    p
}

fn instance(axiom: Axiom, bindings: &[(&str, Aq)]) -> AxiomInstance {
    AxiomInstance {
        axiom,
        bindings: bindings
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect(),
        premise: None,
    }
}

fn ax(axiom: Axiom, bindings: &[(&str, Aq)]) -> ProofStep {
    ProofStep::Axiom(instance(axiom, bindings))
}

/// Proof of `k+1 = k'` for `k >= 1`, oriented left to right.
fn succ_proof(k: &Numeral) -> ProofStep {
    let digits = k.digits();
    let last = digits.as_bytes()[digits.len() - 1] - b'0';
    if digits.len() == 1 {
        return match last {
            0 => unreachable!("0+1 is not an instance of the successor rules"),
            9 => ax(Axiom::NineOne, &[]),
            d => ax(Axiom::DigitSucc(d), &[]).sym(),
        };
    }
    let sigma = Numeral::new(&digits[..digits.len() - 1]).expect("leading digit kept");
    if last <= 8 {
        return ax(Axiom::AppendSucc(last), &[("sigma", nat(&sigma))]);
    }
    let tau = add_digits(&sigma, &one());
    let premise = Derivation {
        lhs: plus(nat(&sigma), nat(&one())),
        rhs: nat(&tau),
        steps: vec![DerivationStep {
            proof: succ_proof(&sigma),
            result: nat(&tau),
        }],
    };
    let mut inst = instance(
        Axiom::CarryCond,
        &[("sigma", nat(&sigma)), ("tau", nat(&tau))],
    );
    inst.premise = Some(Box::new(premise));
    ProofStep::Axiom(inst)
}

struct Gen<'c> {
    config: &'c Config,
    strategy: Strategy,
    steps: Vec<TraceStep>,
}

impl Gen<'_> {
    fn emit(&mut self, pos: &[usize], proof: ProofStep, redex: Aq, result: Aq) {
        self.steps.push(TraceStep {
            position: pos.to_vec(),
            proof,
            redex,
            result,
        });
    }

    /// Runs `f` and appends its steps backwards, each under symmetry.
    fn reversed(&mut self, f: impl FnOnce(&mut Self)) {
        let saved = std::mem::take(&mut self.steps);
        f(self);
        let lemma = std::mem::replace(&mut self.steps, saved);
        for s in lemma.into_iter().rev() {
            self.steps.push(TraceStep {
                position: s.position,
                proof: s.proof.sym(),
                redex: s.result,
                result: s.redex,
            });
        }
    }

    fn norm(&mut self, t: Aq, pos: &[usize]) -> DecimalValue {
        match t {
            Aq::Const(n) => DecimalValue::from_numeral(&n),
            Aq::Var(v) => unreachable!("open term reached the normalizer: {v}"),
            Aq::Neg(c) => {
                let v = self.norm(*c, &child(pos, 0));
                self.negate(pos, v)
            }
            Aq::Sum(mut cs) => {
                if cs.len() > 2 {
                    // summands first, so the flattening steps move constants
                    let mut order: Vec<usize> = (0..cs.len()).collect();
                    if self.strategy.coin() {
                        order.reverse();
                    }
                    for i in order {
                        let c = std::mem::replace(&mut cs[i], Aq::zero());
                        let v = self.norm(c, &child(pos, i));
                        cs[i] = embed(&v);
                    }
                }
                while cs.len() > 2 {
                    let before = Aq::Sum(cs.clone());
                    let names: Vec<String> = (1..=cs.len()).map(|i| format!("t{i}")).collect();
                    let bindings: Vec<(&str, Aq)> = names
                        .iter()
                        .map(String::as_str)
                        .zip(cs.iter().cloned())
                        .collect();
                    let b = cs.pop().expect("arity checked");
                    let a = cs.pop().expect("arity checked");
                    cs.push(plus(a, b));
                    self.emit(pos, ax(Axiom::PolyInfix, &bindings), before, Aq::Sum(cs.clone()));
                }
                let b = cs.pop().expect("binary sum");
                let a = cs.pop().expect("binary sum");
                let (va, vb) = if self.strategy.coin() {
                    let vb = self.norm(b, &child(pos, 1));
                    (self.norm(a, &child(pos, 0)), vb)
                } else {
                    let va = self.norm(a, &child(pos, 0));
                    (va, self.norm(b, &child(pos, 1)))
                };
                self.combine(pos, va, vb)
            }
        }
    }

    fn negate(&mut self, pos: &[usize], v: DecimalValue) -> DecimalValue {
        match v {
            DecimalValue::Zero => {
                let z = Aq::zero();
                let nz = Aq::neg(z.clone());
                self.emit(
                    pos,
                    ax(Axiom::AddZero, &[("x", nz.clone())]).sym(),
                    nz.clone(),
                    plus(nz.clone(), z.clone()),
                );
                self.emit(
                    pos,
                    ax(Axiom::Comm, &[("x", nz.clone()), ("y", z.clone())]),
                    plus(nz.clone(), z.clone()),
                    plus(z.clone(), nz.clone()),
                );
                self.emit(pos, ax(Axiom::AddOpp, &[("x", z.clone())]), plus(z.clone(), nz), z);
                DecimalValue::Zero
            }
            DecimalValue::Pos(s) => DecimalValue::Neg(s),
            DecimalValue::Neg(s) => {
                self.emit(
                    pos,
                    ax(Axiom::DoubleNeg, &[("x", nat(&s))]),
                    Aq::neg(Aq::neg(nat(&s))),
                    nat(&s),
                );
                DecimalValue::Pos(s)
            }
        }
    }

    fn combine(&mut self, pos: &[usize], a: DecimalValue, b: DecimalValue) -> DecimalValue {
        use DecimalValue::*;
        match (a, b) {
            (a, Zero) => {
                let ea = embed(&a);
                self.emit(
                    pos,
                    ax(Axiom::AddZero, &[("x", ea.clone())]),
                    plus(ea.clone(), Aq::zero()),
                    ea,
                );
                a
            }
            (Zero, b) => {
                let eb = embed(&b);
                self.emit(
                    pos,
                    ax(Axiom::Comm, &[("x", Aq::zero()), ("y", eb.clone())]),
                    plus(Aq::zero(), eb.clone()),
                    plus(eb.clone(), Aq::zero()),
                );
                self.emit(
                    pos,
                    ax(Axiom::AddZero, &[("x", eb.clone())]),
                    plus(eb.clone(), Aq::zero()),
                    eb,
                );
                b
            }
            (Pos(m), Pos(n)) => Pos(self.add_nat(pos, m, n)),
            (Pos(m), Neg(n)) => self.sub(pos, m, n),
            (Neg(m), Pos(n)) => {
                let (em, en) = (Aq::neg(nat(&m)), nat(&n));
                self.emit(
                    pos,
                    ax(Axiom::Comm, &[("x", em.clone()), ("y", en.clone())]),
                    plus(em.clone(), en.clone()),
                    plus(en, em),
                );
                self.sub(pos, n, m)
            }
            (Neg(m), Neg(n)) => Neg(self.add_neg(pos, m, n)),
        }
    }

    fn is_small(&self, n: &Numeral) -> bool {
        cmp_digits(n, &Numeral::from_u64(self.config.unary_add_limit)) != Ordering::Greater
    }

    /// `m + n` for positive constants.
    fn add_nat(&mut self, pos: &[usize], m: Numeral, n: Numeral) -> Numeral {
        let both_small = self.is_small(&m) && self.is_small(&n);
        let swap = if both_small && self.strategy.is_random() {
            self.strategy.coin()
        } else {
            cmp_digits(&n, &m) == Ordering::Greater
        };
        let (m, n) = if swap {
            self.emit(
                pos,
                ax(Axiom::Comm, &[("x", nat(&m)), ("y", nat(&n))]),
                plus(nat(&m), nat(&n)),
                plus(nat(&n), nat(&m)),
            );
            (n, m)
        } else {
            (m, n)
        };
        if !self.is_small(&n) {
            let s = add_digits(&m, &n);
            self.emit(
                pos,
                ProofStep::ColumnSum {
                    left: m.clone(),
                    right: n.clone(),
                },
                plus(nat(&m), nat(&n)),
                nat(&s),
            );
            return s;
        }
        self.count_down(pos, m, n)
    }

    /// `m + n` by moving one unit at a time from `n` to `m`.
    fn count_down(&mut self, pos: &[usize], mut m: Numeral, mut n: Numeral) -> Numeral {
        let one = one();
        let (left, right) = (child(pos, 0), child(pos, 1));
        while n != one {
            let p = sub_digits(&n, &one);
            self.emit(
                &right,
                succ_proof(&p).sym(),
                nat(&n),
                plus(nat(&p), nat(&one)),
            );
            self.emit(
                &right,
                ax(Axiom::Comm, &[("x", nat(&p)), ("y", nat(&one))]),
                plus(nat(&p), nat(&one)),
                plus(nat(&one), nat(&p)),
            );
            self.emit(
                pos,
                ax(
                    Axiom::Assoc,
                    &[("x", nat(&m)), ("y", nat(&one)), ("z", nat(&p))],
                )
                .sym(),
                plus(nat(&m), plus(nat(&one), nat(&p))),
                plus(plus(nat(&m), nat(&one)), nat(&p)),
            );
            m = self.succ(&left, &m);
            n = p;
        }
        self.succ(pos, &m)
    }

    fn succ(&mut self, pos: &[usize], k: &Numeral) -> Numeral {
        let next = add_digits(k, &one());
        self.emit(pos, succ_proof(k), plus(nat(k), nat(&one())), nat(&next));
        next
    }

    /// `m + (-n)` for positive constants.
    fn sub(&mut self, pos: &[usize], m: Numeral, n: Numeral) -> DecimalValue {
        let (em, en, neg_n) = (nat(&m), nat(&n), Aq::neg(nat(&n)));
        match cmp_digits(&m, &n) {
            Ordering::Equal => {
                self.emit(pos, ax(Axiom::AddOpp, &[("x", em.clone())]), plus(em, neg_n), Aq::zero());
                DecimalValue::Zero
            }
            Ordering::Greater => {
                let d = sub_digits(&m, &n);
                let ed = nat(&d);
                let left = child(pos, 0);
                let (d2, n2) = (d.clone(), n.clone());
                self.reversed(|g| {
                    g.add_nat(&left, d2, n2);
                });
                self.emit(
                    pos,
                    ax(
                        Axiom::Assoc,
                        &[("x", ed.clone()), ("y", en.clone()), ("z", neg_n.clone())],
                    ),
                    plus(plus(ed.clone(), en.clone()), neg_n.clone()),
                    plus(ed.clone(), plus(en.clone(), neg_n.clone())),
                );
                self.emit(
                    &child(pos, 1),
                    ax(Axiom::AddOpp, &[("x", en.clone())]),
                    plus(en, neg_n),
                    Aq::zero(),
                );
                self.emit(
                    pos,
                    ax(Axiom::AddZero, &[("x", ed.clone())]),
                    plus(ed.clone(), Aq::zero()),
                    ed,
                );
                DecimalValue::Pos(d)
            }
            Ordering::Less => {
                let d = sub_digits(&n, &m);
                let (ed, neg_d, z) = (nat(&d), Aq::neg(nat(&d)), Aq::zero());
                let left = child(pos, 0);
                let inner = child2(pos, 0, 0);
                self.emit(
                    &left,
                    ax(Axiom::AddZero, &[("x", em.clone())]).sym(),
                    em.clone(),
                    plus(em.clone(), z.clone()),
                );
                self.emit(
                    &left,
                    ax(Axiom::Comm, &[("x", em.clone()), ("y", z.clone())]),
                    plus(em.clone(), z.clone()),
                    plus(z.clone(), em.clone()),
                );
                self.emit(
                    &inner,
                    ax(Axiom::AddOpp, &[("x", ed.clone())]).sym(),
                    z.clone(),
                    plus(ed.clone(), neg_d.clone()),
                );
                self.emit(
                    &inner,
                    ax(Axiom::Comm, &[("x", ed.clone()), ("y", neg_d.clone())]),
                    plus(ed.clone(), neg_d.clone()),
                    plus(neg_d.clone(), ed.clone()),
                );
                self.emit(
                    &left,
                    ax(
                        Axiom::Assoc,
                        &[("x", neg_d.clone()), ("y", ed.clone()), ("z", em.clone())],
                    ),
                    plus(plus(neg_d.clone(), ed.clone()), em.clone()),
                    plus(neg_d.clone(), plus(ed.clone(), em.clone())),
                );
                let d_plus_m = plus(ed.clone(), em.clone());
                self.emit(
                    pos,
                    ax(
                        Axiom::Assoc,
                        &[
                            ("x", neg_d.clone()),
                            ("y", d_plus_m.clone()),
                            ("z", neg_n.clone()),
                        ],
                    ),
                    plus(plus(neg_d.clone(), d_plus_m.clone()), neg_n.clone()),
                    plus(neg_d.clone(), plus(d_plus_m, neg_n.clone())),
                );
                self.add_nat(&child2(pos, 1, 0), d.clone(), m);
                self.emit(
                    &child(pos, 1),
                    ax(Axiom::AddOpp, &[("x", en.clone())]),
                    plus(en, neg_n),
                    z.clone(),
                );
                self.emit(
                    pos,
                    ax(Axiom::AddZero, &[("x", neg_d.clone())]),
                    plus(neg_d.clone(), z),
                    neg_d,
                );
                DecimalValue::Neg(d)
            }
        }
    }

    /// `(-m) + (-n)` for positive constants; returns the magnitude.
    fn add_neg(&mut self, pos: &[usize], m: Numeral, n: Numeral) -> Numeral {
        let s = add_digits(&m, &n);
        let (em, en, es) = (nat(&m), nat(&n), nat(&s));
        let (neg_m, neg_n, neg_s, z) = (
            Aq::neg(em.clone()),
            Aq::neg(en.clone()),
            Aq::neg(es.clone()),
            Aq::zero(),
        );
        let both = plus(neg_m.clone(), neg_n.clone());
        let p0 = child(pos, 0);
        let p01 = child2(pos, 0, 1);
        let mut p010 = p01.clone();
        p010.push(0);

        self.emit(
            pos,
            ax(Axiom::AddZero, &[("x", both.clone())]).sym(),
            both.clone(),
            plus(both.clone(), z.clone()),
        );
        self.emit(
            &child(pos, 1),
            ax(Axiom::AddOpp, &[("x", es.clone())]).sym(),
            z.clone(),
            plus(es.clone(), neg_s.clone()),
        );
        self.emit(
            pos,
            ax(
                Axiom::Assoc,
                &[("x", both.clone()), ("y", es.clone()), ("z", neg_s.clone())],
            )
            .sym(),
            plus(both.clone(), plus(es.clone(), neg_s.clone())),
            plus(plus(both.clone(), es.clone()), neg_s.clone()),
        );
        let (n2, m2) = (n.clone(), m.clone());
        self.reversed(|g| {
            g.add_nat(&p01, n2, m2);
        });
        let n_plus_m = plus(en.clone(), em.clone());
        self.emit(
            &p0,
            ax(
                Axiom::Assoc,
                &[("x", neg_m.clone()), ("y", neg_n.clone()), ("z", n_plus_m.clone())],
            ),
            plus(both, n_plus_m.clone()),
            plus(neg_m.clone(), plus(neg_n.clone(), n_plus_m.clone())),
        );
        self.emit(
            &p01,
            ax(
                Axiom::Assoc,
                &[("x", neg_n.clone()), ("y", en.clone()), ("z", em.clone())],
            )
            .sym(),
            plus(neg_n.clone(), n_plus_m),
            plus(plus(neg_n.clone(), en.clone()), em.clone()),
        );
        self.emit(
            &p010,
            ax(Axiom::Comm, &[("x", neg_n.clone()), ("y", en.clone())]),
            plus(neg_n.clone(), en.clone()),
            plus(en.clone(), neg_n.clone()),
        );
        self.emit(
            &p010,
            ax(Axiom::AddOpp, &[("x", en.clone())]),
            plus(en, neg_n),
            z.clone(),
        );
        self.emit(
            &p01,
            ax(Axiom::Comm, &[("x", z.clone()), ("y", em.clone())]),
            plus(z.clone(), em.clone()),
            plus(em.clone(), z.clone()),
        );
        self.emit(
            &p01,
            ax(Axiom::AddZero, &[("x", em.clone())]),
            plus(em.clone(), z.clone()),
            em.clone(),
        );
        self.emit(
            &p0,
            ax(Axiom::Comm, &[("x", neg_m.clone()), ("y", em.clone())]),
            plus(neg_m.clone(), em.clone()),
            plus(em.clone(), neg_m.clone()),
        );
        self.emit(
            &p0,
            ax(Axiom::AddOpp, &[("x", em.clone())]),
            plus(em, neg_m),
            z.clone(),
        );
        self.emit(
            pos,
            ax(Axiom::Comm, &[("x", z.clone()), ("y", neg_s.clone())]),
            plus(z.clone(), neg_s.clone()),
            plus(neg_s.clone(), z.clone()),
        );
        self.emit(
            pos,
            ax(Axiom::AddZero, &[("x", neg_s.clone())]),
            plus(neg_s.clone(), z),
            neg_s,
        );
        s
    }
}

fn require_closed(a: &Aq) -> Result<(), FspecError> {
    match a.first_var() {
        Some(v) => Err(FspecError::OpenTerm(v.to_string())),
        None => Ok(()),
    }
}

/// Rewrites a closed AQ to its normal form in `Z_d` with the canonical
/// strategy and default configuration.
pub fn normalize(a: &Aq) -> Result<RewriteTrace, FspecError> {
    normalize_with(a, &Config::default(), Strategy::canonical())
}

pub fn normalize_with(
    a: &Aq,
    config: &Config,
    strategy: Strategy,
) -> Result<RewriteTrace, FspecError> {
    require_closed(a)?;
    let mut g = Gen {
        config,
        strategy,
        steps: Vec::new(),
    };
    let v = g.norm(a.clone(), &[]);
    Ok(RewriteTrace {
        start: a.clone(),
        steps: g.steps,
        normal_form: embed(&v),
    })
}

/// `m + n` by successor steps only, each unit of `n` moved across with
/// associativity and commutativity. A second route to the same sums as
/// [`normalize`], for cross-checking.
pub fn successor_chain_add(
    m: &DecimalValue,
    n: &DecimalValue,
    config: &Config,
) -> Result<RewriteTrace, FspecError> {
    if m.is_negative() || n.is_negative() {
        return Err(FspecError::Sort(format!(
            "successor-chain addition takes naturals, got {m} and {n}"
        )));
    }
    let (m, n) = (m.magnitude(), n.magnitude());
    if cmp_digits(&n, &Numeral::from_u64(config.successor_bound)) == Ordering::Greater {
        return Err(FspecError::Scale {
            what: format!("successor-chain operand {n}"),
            bound: config.successor_bound,
        });
    }
    let start = plus(nat(&m), nat(&n));
    let mut g = Gen {
        config,
        strategy: Strategy::canonical(),
        steps: Vec::new(),
    };
    let one = one();
    let z = Aq::zero();
    let result = if n.is_zero() {
        g.emit(&[], ax(Axiom::AddZero, &[("x", nat(&m))]), start.clone(), nat(&m));
        m
    } else if m.is_zero() {
        g.emit(
            &[],
            ax(Axiom::Comm, &[("x", z.clone()), ("y", nat(&n))]),
            start.clone(),
            plus(nat(&n), z.clone()),
        );
        g.emit(&[], ax(Axiom::AddZero, &[("x", nat(&n))]), plus(nat(&n), z), nat(&n));
        n
    } else {
        let (mut m, mut n) = (m, n);
        while n != one {
            let p = sub_digits(&n, &one);
            let (em, ep, e1) = (nat(&m), nat(&p), nat(&one));
            g.emit(&[1], succ_proof(&p).sym(), nat(&n), plus(ep.clone(), e1.clone()));
            g.emit(
                &[],
                ax(Axiom::Assoc, &[("x", em.clone()), ("y", ep.clone()), ("z", e1.clone())]).sym(),
                plus(em.clone(), plus(ep.clone(), e1.clone())),
                plus(plus(em.clone(), ep.clone()), e1.clone()),
            );
            g.emit(
                &[],
                ax(Axiom::Comm, &[("x", plus(em.clone(), ep.clone())), ("y", e1.clone())]),
                plus(plus(em.clone(), ep.clone()), e1.clone()),
                plus(e1.clone(), plus(em.clone(), ep.clone())),
            );
            g.emit(
                &[],
                ax(Axiom::Assoc, &[("x", e1.clone()), ("y", em.clone()), ("z", ep.clone())]).sym(),
                plus(e1.clone(), plus(em.clone(), ep.clone())),
                plus(plus(e1.clone(), em.clone()), ep.clone()),
            );
            g.emit(
                &[0],
                ax(Axiom::Comm, &[("x", e1.clone()), ("y", em.clone())]),
                plus(e1.clone(), em.clone()),
                plus(em, e1),
            );
            m = g.succ(&[0], &m);
            n = p;
        }
        g.succ(&[], &m)
    };
    Ok(RewriteTrace {
        start,
        steps: g.steps,
        normal_form: nat(&result),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProofOutcome {
    Derived(Derivation),
    /// The two sides have different normal forms.
    NotDerivable { lhs_normal: Aq, rhs_normal: Aq },
}

pub fn prove(lhs: &Aq, rhs: &Aq) -> Result<ProofOutcome, FspecError> {
    prove_with(lhs, rhs, &Config::default(), Strategy::canonical())
}

/// Normalizes both sides and joins the traces: forwards from `lhs`, then
/// backwards to `rhs`.
pub fn prove_with(
    lhs: &Aq,
    rhs: &Aq,
    config: &Config,
    mut strategy: Strategy,
) -> Result<ProofOutcome, FspecError> {
    let tl = normalize_with(lhs, config, strategy.clone())?;
    if strategy.is_random() {
        strategy.coin();
    }
    let tr = normalize_with(rhs, config, strategy)?;
    if tl.normal_form != tr.normal_form {
        return Ok(ProofOutcome::NotDerivable {
            lhs_normal: tl.normal_form,
            rhs_normal: tr.normal_form,
        });
    }
    let lterms = tl.terms().expect("generated trace replays");
    let rterms = tr.terms().expect("generated trace replays");
    let mut steps = Vec::with_capacity(tl.steps.len() + tr.steps.len());
    for (s, after) in tl.steps.into_iter().zip(lterms.into_iter().skip(1)) {
        steps.push(DerivationStep {
            proof: s.proof.at(&s.position),
            result: after,
        });
    }
    for (s, before) in tr.steps.into_iter().zip(rterms).rev() {
        steps.push(DerivationStep {
            proof: s.proof.at(&s.position).sym(),
            result: before,
        });
    }
    Ok(ProofOutcome::Derived(Derivation {
        lhs: lhs.clone(),
        rhs: rhs.clone(),
        steps,
    }))
}

/// Positions matching the left-hand side of an oriented rule: `PolyInfix`,
/// `(x+y)+z`, `x+0`, `x+(-x)`, `-(-x)` and `k+1` for a positive constant `k`.
pub fn redexes(a: &Aq) -> Vec<(Axiom, Vec<usize>)> {
    let mut out = Vec::new();
    collect_redexes(a, &mut Vec::new(), &mut out);
    out
}

fn successor_axiom(k: &Numeral) -> Axiom {
    let digits = k.digits().as_bytes();
    let last = digits[digits.len() - 1] - b'0';
    match (digits.len(), last) {
        (1, 9) => Axiom::NineOne,
        (1, d) => Axiom::DigitSucc(d),
        (_, 9) => Axiom::CarryCond,
        (_, d) => Axiom::AppendSucc(d),
    }
}

fn collect_redexes(a: &Aq, pos: &mut Vec<usize>, out: &mut Vec<(Axiom, Vec<usize>)>) {
    match a {
        Aq::Neg(inner) if matches!(inner.as_ref(), Aq::Neg(_)) => {
            out.push((Axiom::DoubleNeg, pos.clone()));
        }
        Aq::Sum(cs) if cs.len() > 2 => out.push((Axiom::PolyInfix, pos.clone())),
        Aq::Sum(cs) => {
            let (x, y) = (&cs[0], &cs[1]);
            if matches!(x, Aq::Sum(inner) if inner.len() == 2) {
                out.push((Axiom::Assoc, pos.clone()));
            }
            if y.as_const().is_some_and(Numeral::is_zero) {
                out.push((Axiom::AddZero, pos.clone()));
            }
            if *y == Aq::neg(x.clone()) {
                out.push((Axiom::AddOpp, pos.clone()));
            }
            if let (Some(k), Some(o)) = (x.as_const(), y.as_const()) {
                if !k.is_zero() && o.digits() == "1" {
                    out.push((successor_axiom(k), pos.clone()));
                }
            }
        }
        _ => {}
    }
    for (i, c) in a.children().iter().enumerate() {
        pos.push(i);
        collect_redexes(c, pos, out);
        pos.pop();
    }
}
