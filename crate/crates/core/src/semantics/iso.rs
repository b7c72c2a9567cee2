//! Desk-scale isomorphism harness between two backends of the same sort.
//!
//! The map is built by walking both backends in lockstep from `0`, adding
//! `1` (and, for integers, `-1`) until the bound. Everything else is checked
//! against that map: constants, injectivity, addition and opposite.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{Backend, SemanticsError, Sort, Value};
use crate::aq::Numeral;
use crate::config::Config;

/// Values of magnitude at most `bound` in one backend, indexed by integer.
struct Walk {
    backend: Backend,
    min: i64,
    values: Vec<Value>,
    index: HashMap<Value, i64>,
}

impl Walk {
    fn get(&self, i: i64) -> Option<&Value> {
        usize::try_from(i - self.min).ok().and_then(|k| self.values.get(k))
    }
}

/// The lockstep successor map between two backends.
pub struct IsoMap {
    from: Walk,
    to: Walk,
}

impl IsoMap {
    pub fn map(&self, v: &Value) -> Option<&Value> {
        self.from.index.get(v).and_then(|&i| self.to.get(i))
    }

    /// The integer a value of the source backend stands for.
    pub fn position(&self, v: &Value) -> Option<i64> {
        self.from.index.get(v).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoReport {
    pub backends: (String, String),
    pub bound: u64,
    /// One line per checked identity.
    pub lines: Vec<String>,
    pub counterexamples: Vec<String>,
}

impl IsoReport {
    pub fn is_isomorphic(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn verdict(&self) -> String {
        match self.counterexamples.first() {
            None => format!(
                "verdict: {} and {} isomorphic up to {} ({} checks)",
                self.backends.0,
                self.backends.1,
                self.bound,
                self.lines.len()
            ),
            Some(c) => format!(
                "verdict: counterexample ({} total): {c}",
                self.counterexamples.len()
            ),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(&self.verdict());
        out.push('\n');
        out
    }
}

fn walk(
    backend: Backend,
    bound: u64,
    config: &Config,
    counterexamples: &mut Vec<String>,
) -> Result<Walk, SemanticsError> {
    let b = bound as i64;
    let one = backend.one(config);
    let mut up = vec![backend.zero()];
    for _ in 0..bound {
        let next = backend.add(up.last().unwrap(), &one, config)?;
        up.push(next);
    }
    let (min, values) = if backend.sort() == Sort::Int {
        let minus_one = backend.neg(&one)?;
        let mut down = vec![];
        let mut cur = backend.zero();
        for _ in 0..bound {
            cur = backend.add(&cur, &minus_one, config)?;
            down.push(cur.clone());
        }
        down.reverse();
        down.extend(up);
        (-b, down)
    } else {
        (0, up)
    };
    let mut index = HashMap::with_capacity(values.len());
    for (k, v) in values.iter().enumerate() {
        let i = k as i64 + min;
        if let Some(j) = index.insert(v.clone(), i) {
            counterexamples.push(format!("{backend}: {j} and {i} both reach {v}"));
        }
    }
    Ok(Walk {
        backend,
        min,
        values,
        index,
    })
}

fn build(
    b1: Backend,
    b2: Backend,
    bound: u64,
    config: &Config,
    counterexamples: &mut Vec<String>,
) -> Result<IsoMap, SemanticsError> {
    if b1.sort() != b2.sort() {
        return Err(SemanticsError::Sort(format!(
            "{b1} and {b2} have different sorts"
        )));
    }
    if bound < 2 {
        return Err(SemanticsError::Bound(bound));
    }
    for b in [b1, b2] {
        if b.kind() == super::BackendKind::Ordinal && bound > config.ordinal_bound {
            return Err(SemanticsError::Scale {
                what: format!("isomorphism bound {bound} for ordinals"),
                bound: config.ordinal_bound,
            });
        }
    }
    Ok(IsoMap {
        from: walk(b1, bound, config, counterexamples)?,
        to: walk(b2, bound, config, counterexamples)?,
    })
}

/// Builds the lockstep map between `b1` and `b2` up to `bound` without the
/// exhaustive checks.
pub fn iso_map(b1: Backend, b2: Backend, bound: u64, config: &Config) -> Result<IsoMap, SemanticsError> {
    build(b1, b2, bound, config, &mut Vec::new())
}

pub fn check_isomorphism(
    b1: Backend,
    b2: Backend,
    bound: u64,
    config: &Config,
) -> Result<IsoReport, SemanticsError> {
    let mut counterexamples = Vec::new();
    let map = build(b1, b2, bound, config, &mut counterexamples)?;
    let mut lines = Vec::new();
    let b = bound as i64;
    let range = map.from.min..=b;

    // constants and the two distinguished elements
    for k in 0..=bound {
        let n = Numeral::from_u64(k);
        let ok = [&map.from, &map.to].iter().try_fold(true, |ok, w| {
            let c = w.backend.constant(&n, config)?;
            Ok::<_, SemanticsError>(ok && Some(&c) == w.get(k as i64))
        })?;
        record(&mut lines, &mut counterexamples, format!("const {k}"), ok);
    }

    for i in range.clone() {
        for j in range.clone() {
            let s = i + j;
            if !range.contains(&s) {
                continue;
            }
            let mut ok = true;
            let mut images = [None, None];
            for (slot, w) in images.iter_mut().zip([&map.from, &map.to]) {
                let r = w.backend.add(w.get(i).unwrap(), w.get(j).unwrap(), config)?;
                ok &= w.index.get(&r) == Some(&s);
                *slot = Some(r);
            }
            let [r1, r2] = images;
            ok &= map.map(&r1.unwrap()) == r2.as_ref();
            record(&mut lines, &mut counterexamples, format!("{i} + {j} = {s}"), ok);
        }
    }

    if b1.sort() == Sort::Int {
        for i in range.clone() {
            let mut ok = true;
            let mut images = [None, None];
            for (slot, w) in images.iter_mut().zip([&map.from, &map.to]) {
                let r = w.backend.neg(w.get(i).unwrap())?;
                ok &= w.index.get(&r) == Some(&-i);
                *slot = Some(r);
            }
            let [r1, r2] = images;
            ok &= map.map(&r1.unwrap()) == r2.as_ref();
            record(&mut lines, &mut counterexamples, format!("-({i}) = {}", -i), ok);
        }
    }

    Ok(IsoReport {
        backends: (b1.to_string(), b2.to_string()),
        bound,
        lines,
        counterexamples,
    })
}

fn record(lines: &mut Vec<String>, counterexamples: &mut Vec<String>, what: String, ok: bool) {
    let mut line = what;
    let _ = write!(line, ": {}", if ok { "ok" } else { "FAIL" });
    if !ok {
        counterexamples.push(line.clone());
    }
    lines.push(line);
}
