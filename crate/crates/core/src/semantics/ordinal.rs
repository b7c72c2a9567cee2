//! Hereditarily finite sets and finite von Neumann ordinals.
//!
//! Sets are hash-consed in a process-wide arena: structurally equal sets get
//! the same id, so equality is an id comparison and substructures are shared.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HfSet(u32);

#[derive(Default)]
struct Arena {
    sets: Vec<Arc<[HfSet]>>,
    index: HashMap<Arc<[HfSet]>, HfSet>,
}

fn arena() -> &'static Mutex<Arena> {
    static ARENA: OnceLock<Mutex<Arena>> = OnceLock::new();
    ARENA.get_or_init(Default::default)
}

impl HfSet {
    pub fn empty() -> HfSet {
        HfSet::from_elements(Vec::new())
    }

    pub fn from_elements(mut elements: Vec<HfSet>) -> HfSet {
        elements.sort_unstable();
        elements.dedup();
        let key: Arc<[HfSet]> = elements.into();
        let mut arena = arena().lock().expect("set arena poisoned");
        if let Some(&id) = arena.index.get(&key) {
            return id;
        }
        let id = HfSet(u32::try_from(arena.sets.len()).expect("set arena overflow"));
        arena.sets.push(key.clone());
        arena.index.insert(key, id);
        id
    }

    pub fn elements(&self) -> Arc<[HfSet]> {
        arena().lock().expect("set arena poisoned").sets[self.0 as usize].clone()
    }

    pub fn len(&self) -> usize {
        self.elements().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, x: &HfSet) -> bool {
        self.elements().binary_search(x).is_ok()
    }

    pub fn is_subset(&self, other: &HfSet) -> bool {
        self.elements().iter().all(|x| other.contains(x))
    }

    /// Every element is also a subset.
    pub fn is_transitive(&self) -> bool {
        self.elements().iter().all(|x| x.is_subset(self))
    }

    /// `x ∪ {x}`.
    pub fn successor(&self) -> HfSet {
        let mut elements = self.elements().to_vec();
        elements.push(*self);
        HfSet::from_elements(elements)
    }

    /// Braces notation; grows exponentially with the ordinal, so only for
    /// small sets.
    pub fn to_braces(&self) -> String {
        let inner: Vec<String> = self.elements().iter().map(HfSet::to_braces).collect();
        format!("{{{}}}", inner.join(","))
    }
}

impl fmt::Debug for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HfSet#{}", self.0)
    }
}

/// A finite ordinal `n = {0, ..., n-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrdinalValue(HfSet);

impl OrdinalValue {
    pub fn zero() -> OrdinalValue {
        OrdinalValue(HfSet::empty())
    }

    pub fn from_index(n: u64) -> OrdinalValue {
        (0..n).fold(OrdinalValue::zero(), |acc, _| acc.successor())
    }

    /// Accepts a set only if it is a transitive set of transitive sets.
    pub fn from_set(set: HfSet) -> Option<OrdinalValue> {
        let ok = set.is_transitive() && set.elements().iter().all(HfSet::is_transitive);
        ok.then_some(OrdinalValue(set))
    }

    pub fn set(&self) -> HfSet {
        self.0
    }

    pub fn index(&self) -> u64 {
        self.0.len() as u64
    }

    pub fn successor(&self) -> OrdinalValue {
        OrdinalValue(self.0.successor())
    }

    /// The largest element, i.e. `n - 1`; `None` for `0`.
    pub fn predecessor(&self) -> Option<OrdinalValue> {
        let elements = self.0.elements();
        elements
            .iter()
            .max_by_key(|e| e.len())
            .map(|&e| OrdinalValue(e))
    }

    /// `a + 0 = a`, `a + S(b) = S(a + b)`.
    pub fn add(&self, other: &OrdinalValue) -> OrdinalValue {
        let mut steps = 0;
        let mut cur = *other;
        while let Some(p) = cur.predecessor() {
            steps += 1;
            cur = p;
        }
        (0..steps).fold(*self, |acc, _| acc.successor())
    }
}

impl fmt::Display for OrdinalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ord({})", self.index())
    }
}
