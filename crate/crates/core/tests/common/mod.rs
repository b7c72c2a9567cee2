#![allow(dead_code)]

pub mod scripts;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

use aqarith::Aq;

/// Big-integer value of a closed AQ, computed straight from the tree.
pub fn oracle(a: &Aq) -> BigInt {
    match a {
        Aq::Const(n) => n.digits().parse().unwrap(),
        Aq::Var(v) => panic!("open term {v}"),
        Aq::Neg(c) => -oracle(c),
        Aq::Sum(cs) => cs.iter().map(oracle).sum(),
    }
}

fn tree(leaf: BoxedStrategy<Aq>) -> impl Strategy<Value = Aq> {
    // depth 6, up to 8 summands per sum
    leaf.prop_recursive(6, 48, 8, |inner| {
        prop_oneof![
            1 => inner.clone().prop_map(Aq::neg),
            3 => prop::collection::vec(inner, 2..=8).prop_map(Aq::sum),
        ]
    })
}

pub fn closed_aq(max: u64) -> impl Strategy<Value = Aq> {
    tree((0..=max).prop_map(Aq::num).boxed())
}

/// Small constants, often zero, so that rules like x+0 fire.
pub fn small_closed_aq() -> impl Strategy<Value = Aq> {
    tree(prop_oneof![1 => Just(Aq::zero()), 4 => (0..=120u64).prop_map(Aq::num)].boxed())
}

pub fn open_aq() -> impl Strategy<Value = Aq> {
    tree(
        prop_oneof![
            2 => (0..=30u64).prop_map(Aq::num),
            1 => prop::sample::select(vec!["x", "y", "z"]).prop_map(Aq::var),
        ]
        .boxed(),
    )
}

fn leaf_text(a: &Aq) -> String {
    match a {
        Aq::Const(n) => n.digits().to_string(),
        Aq::Var(v) => v.clone(),
        _ => unreachable!(),
    }
}

/// Writes `a` with every compound child bracketed and, at random, extra
/// redundant pairs and spaces. Parsing the result gives back `a`.
pub fn noisy(a: &Aq, rng: &mut impl Rng) -> String {
    let core = match a {
        Aq::Const(_) | Aq::Var(_) => leaf_text(a),
        Aq::Neg(c) => format!("-({})", noisy(c, rng)),
        Aq::Sum(cs) => {
            let parts: Vec<String> = cs
                .iter()
                .map(|c| match c {
                    Aq::Sum(_) | Aq::Neg(_) => format!("({})", noisy(c, rng)),
                    _ => noisy(c, rng),
                })
                .collect();
            let sep = if rng.gen_bool(0.3) { " + " } else { "+" };
            parts.join(sep)
        }
    };
    let mut s = core;
    let extra = [0, 0, 1, 2][rng.gen_range(0..4)];
    for _ in 0..extra {
        s = format!("({s})");
    }
    s
}

/// A random closed AQ drawn with `rand`, for the large fixed-count runs.
/// Leaves get likelier with depth; `depth` levels of nesting at most.
pub fn random_closed_aq(rng: &mut impl Rng, max: u64, depth: u32) -> Aq {
    grow(rng, max, 0, depth)
}

fn grow(rng: &mut impl Rng, max: u64, level: u32, depth: u32) -> Aq {
    let p_leaf = (0.25 + 0.12 * level as f64).min(1.0);
    if level >= depth || rng.gen_bool(p_leaf) {
        return Aq::num(rng.gen_range(0..=max));
    }
    if rng.gen_bool(0.2) {
        return Aq::neg(grow(rng, max, level + 1, depth));
    }
    let n = rng.gen_range(2..=8);
    Aq::sum((0..n).map(|_| grow(rng, max, level + 1, depth)).collect())
}
