//! Semantic backends for naturals and integers and the evaluation `⟦·⟧` of
//! closed AQs into them.
//!
//! The decimal backend is a projection: its values are themselves AQs (via
//! [`embed`]) and evaluating an embedded value gives it back unchanged. The
//! other backends (Peano numerals, pair classes, signed magnitudes, von
//! Neumann ordinals) are there to be compared against it, see [`iso`].

mod decimal;
pub mod iso;
mod ordinal;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::num::NonZeroU64;
use std::str::FromStr;

use thiserror::Error;

use crate::aq::{Aq, Numeral};
use crate::config::Config;

pub use decimal::{embed, from_normal_form, DecimalValue};
pub(crate) use decimal::{add_digits, cmp_digits, sub_digits};
pub use iso::{check_isomorphism, iso_map, IsoMap, IsoReport};
pub use ordinal::{HfSet, OrdinalValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("open term: variable {0} has no value")]
    OpenTerm(String),
    #[error("sort error: {0}")]
    Sort(String),
    #[error("scale error: {what} exceeds the configured bound {bound}")]
    Scale { what: String, bound: u64 },
    #[error("invalid bound {0}: must be at least 2")]
    Bound(u64),
}

/// A Peano numeral `S(...S(0)...)`, stored as its number of successors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeanoValue(pub u64);

impl PeanoValue {
    pub fn render(&self, cap: u64) -> String {
        if self.0 > cap {
            return format!("S^{}(0)", self.0);
        }
        let n = self.0 as usize;
        format!("{}0{}", "S(".repeat(n), ")".repeat(n))
    }
}

/// The class of the pair `(a, b)`, standing for `a - b`. Equality and hashing
/// are those of the class: `(a,b) ≡ (c,d)` iff `a + d = b + c`.
#[derive(Debug, Clone, Copy)]
pub struct EqcInt {
    pub a: u64,
    pub b: u64,
}

impl EqcInt {
    pub fn new(a: u64, b: u64) -> EqcInt {
        EqcInt { a, b }
    }

    /// The representative with `min(a, b) = 0`.
    pub fn canonical(&self) -> EqcInt {
        let m = self.a.min(self.b);
        EqcInt::new(self.a - m, self.b - m)
    }
}

impl PartialEq for EqcInt {
    fn eq(&self, other: &Self) -> bool {
        self.a as u128 + other.b as u128 == self.b as u128 + other.a as u128
    }
}

impl Eq for EqcInt {}

impl Hash for EqcInt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let c = self.canonical();
        (c.a, c.b).hash(state);
    }
}

/// `{0} ∪ {0,1} × N⁺`; sign bit 1 marks the negative half.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignedInt {
    Zero,
    Signed { negative: bool, magnitude: NonZeroU64 },
}

impl SignedInt {
    fn of(negative: bool, magnitude: u64) -> SignedInt {
        match NonZeroU64::new(magnitude) {
            None => SignedInt::Zero,
            Some(magnitude) => SignedInt::Signed {
                negative,
                magnitude,
            },
        }
    }

    pub fn neg(&self) -> SignedInt {
        match *self {
            SignedInt::Zero => SignedInt::Zero,
            SignedInt::Signed {
                negative,
                magnitude,
            } => SignedInt::Signed {
                negative: !negative,
                magnitude,
            },
        }
    }

    pub fn add(&self, other: &SignedInt) -> Option<SignedInt> {
        use SignedInt::*;
        Some(match (*self, *other) {
            (Zero, x) | (x, Zero) => x,
            (
                Signed {
                    negative: s1,
                    magnitude: m1,
                },
                Signed {
                    negative: s2,
                    magnitude: m2,
                },
            ) => {
                let (m1, m2) = (m1.get(), m2.get());
                if s1 == s2 {
                    SignedInt::of(s1, m1.checked_add(m2)?)
                } else if m1 >= m2 {
                    SignedInt::of(s1, m1 - m2)
                } else {
                    SignedInt::of(s2, m2 - m1)
                }
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BackendKind {
    Decimal,
    Peano,
    Eqc,
    Signed,
    Ordinal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sort {
    Nat,
    Int,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Backend {
    kind: BackendKind,
    sort: Sort,
}

impl Backend {
    pub fn new(kind: BackendKind, sort: Sort) -> Result<Backend, SemanticsError> {
        if sort == Sort::Int && matches!(kind, BackendKind::Peano | BackendKind::Ordinal) {
            return Err(SemanticsError::Sort(format!(
                "the {} backend only has sort nat",
                kind.name()
            )));
        }
        Ok(Backend { kind, sort })
    }

    pub fn decimal() -> Backend {
        Backend::new(BackendKind::Decimal, Sort::Int).unwrap()
    }

    pub fn kind(&self) -> BackendKind {
        self.kind
    }

    pub fn sort(&self) -> Sort {
        self.sort
    }

    pub fn zero(&self) -> Value {
        match self.kind {
            BackendKind::Decimal => Value::Decimal(DecimalValue::Zero),
            BackendKind::Peano => Value::Peano(PeanoValue(0)),
            BackendKind::Eqc => Value::Eqc(EqcInt::new(0, 0)),
            BackendKind::Signed => Value::Signed(SignedInt::Zero),
            BackendKind::Ordinal => Value::Ordinal(OrdinalValue::zero()),
        }
    }

    pub fn constant(&self, n: &Numeral, config: &Config) -> Result<Value, SemanticsError> {
        if self.kind == BackendKind::Decimal {
            return Ok(Value::Decimal(DecimalValue::from_numeral(n)));
        }
        let small = n.to_u64().ok_or_else(|| SemanticsError::Scale {
            what: format!("constant {n}"),
            bound: u64::MAX,
        })?;
        Ok(match self.kind {
            BackendKind::Decimal => unreachable!(),
            BackendKind::Peano => Value::Peano(PeanoValue(small)),
            BackendKind::Eqc => Value::Eqc(EqcInt::new(small, 0)),
            BackendKind::Signed => Value::Signed(SignedInt::of(false, small)),
            BackendKind::Ordinal => {
                check_ordinal_scale(small, config)?;
                Value::Ordinal(OrdinalValue::from_index(small))
            }
        })
    }

    pub fn add(&self, x: &Value, y: &Value, config: &Config) -> Result<Value, SemanticsError> {
        let overflow = || SemanticsError::Scale {
            what: format!("{x} + {y}"),
            bound: u64::MAX,
        };
        Ok(match (x, y) {
            (Value::Decimal(a), Value::Decimal(b)) => Value::Decimal(a.add(b)),
            (Value::Peano(a), Value::Peano(b)) => {
                Value::Peano(PeanoValue(a.0.checked_add(b.0).ok_or_else(overflow)?))
            }
            (Value::Eqc(p), Value::Eqc(q)) => Value::Eqc(
                EqcInt::new(
                    p.a.checked_add(q.a).ok_or_else(overflow)?,
                    p.b.checked_add(q.b).ok_or_else(overflow)?,
                )
                .canonical(),
            ),
            (Value::Signed(a), Value::Signed(b)) => {
                Value::Signed(a.add(b).ok_or_else(overflow)?)
            }
            (Value::Ordinal(a), Value::Ordinal(b)) => {
                check_ordinal_scale(a.index() + b.index(), config)?;
                Value::Ordinal(a.add(b))
            }
            _ => return Err(self.mismatch(x, y)),
        })
    }

    pub fn neg(&self, x: &Value) -> Result<Value, SemanticsError> {
        if self.sort == Sort::Nat {
            return Err(SemanticsError::Sort(format!(
                "opposite of {x} under a nat-sorted backend"
            )));
        }
        Ok(match x {
            Value::Decimal(a) => Value::Decimal(a.neg()),
            Value::Eqc(p) => Value::Eqc(EqcInt::new(p.b, p.a)),
            Value::Signed(s) => Value::Signed(s.neg()),
            _ => return Err(self.mismatch(x, x)),
        })
    }

    pub fn one(&self, config: &Config) -> Value {
        self.constant(&Numeral::from_u64(1), config)
            .expect("1 is within every bound")
    }

    fn mismatch(&self, x: &Value, y: &Value) -> SemanticsError {
        SemanticsError::Sort(format!(
            "values {x} and {y} do not belong to the {} backend",
            self.kind.name()
        ))
    }
}

fn check_ordinal_scale(n: u64, config: &Config) -> Result<(), SemanticsError> {
    if n > config.ordinal_bound {
        Err(SemanticsError::Scale {
            what: format!("ordinal {n}"),
            bound: config.ordinal_bound,
        })
    } else {
        Ok(())
    }
}

impl BackendKind {
    pub fn name(&self) -> &'static str {
        match self {
            BackendKind::Decimal => "decimal",
            BackendKind::Peano => "peano",
            BackendKind::Eqc => "eqc",
            BackendKind::Signed => "signed",
            BackendKind::Ordinal => "ordinal",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sort = match self.sort {
            Sort::Nat => "nat",
            Sort::Int => "int",
        };
        write!(f, "{}-{}", self.kind.name(), sort)
    }
}

impl FromStr for Backend {
    type Err = SemanticsError;

    /// `decimal`, `peano`, ... with an optional `-nat` / `-int` suffix. Without
    /// a suffix the widest sort the backend supports is chosen.
    fn from_str(s: &str) -> Result<Backend, SemanticsError> {
        let (name, sort) = match s.rsplit_once('-') {
            Some((n, "nat")) => (n, Some(Sort::Nat)),
            Some((n, "int")) => (n, Some(Sort::Int)),
            _ => (s, None),
        };
        let kind = match name {
            "decimal" => BackendKind::Decimal,
            "peano" => BackendKind::Peano,
            "eqc" => BackendKind::Eqc,
            "signed" => BackendKind::Signed,
            "ordinal" => BackendKind::Ordinal,
            other => return Err(SemanticsError::Sort(format!("unknown backend {other}"))),
        };
        let sort = sort.unwrap_or(match kind {
            BackendKind::Peano | BackendKind::Ordinal => Sort::Nat,
            _ => Sort::Int,
        });
        Backend::new(kind, sort)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Decimal(DecimalValue),
    Peano(PeanoValue),
    Eqc(EqcInt),
    Signed(SignedInt),
    Ordinal(OrdinalValue),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Decimal(d) => write!(f, "{d}"),
            Value::Peano(p) => f.write_str(&p.render(Config::default().peano_render_cap)),
            Value::Eqc(e) => {
                let c = e.canonical();
                write!(f, "[({},{})]", c.a, c.b)
            }
            Value::Signed(SignedInt::Zero) => f.write_str("0"),
            Value::Signed(SignedInt::Signed {
                negative,
                magnitude,
            }) => write!(f, "({},{})", u8::from(*negative), magnitude),
            Value::Ordinal(o) => write!(f, "{o}"),
        }
    }
}

impl Value {
    /// Display with an explicit Peano render cap.
    pub fn render(&self, config: &Config) -> String {
        match self {
            Value::Peano(p) => p.render(config.peano_render_cap),
            other => other.to_string(),
        }
    }
}

/// `⟦a⟧` in the given backend: constants map per backend, sums fold binary
/// addition from the left.
pub fn evaluate(a: &Aq, backend: Backend, config: &Config) -> Result<Value, SemanticsError> {
    match a {
        Aq::Const(n) => backend.constant(n, config),
        Aq::Var(v) => Err(SemanticsError::OpenTerm(v.clone())),
        Aq::Neg(c) => {
            if backend.sort == Sort::Nat {
                return Err(SemanticsError::Sort(format!(
                    "opposite in {a} under the nat-sorted {backend} backend"
                )));
            }
            backend.neg(&evaluate(c, backend, config)?)
        }
        Aq::Sum(cs) => {
            let mut acc = evaluate(&cs[0], backend, config)?;
            for c in &cs[1..] {
                acc = backend.add(&acc, &evaluate(c, backend, config)?, config)?;
            }
            Ok(acc)
        }
    }
}

pub fn eval_decimal(a: &Aq) -> Result<DecimalValue, SemanticsError> {
    match evaluate(a, Backend::decimal(), &Config::default())? {
        Value::Decimal(d) => Ok(d),
        _ => unreachable!("decimal backend yields decimal values"),
    }
}

/// `⟦⟦a⟧⟧ = ⟦a⟧` in the decimal backend.
pub fn projection_check(a: &Aq) -> Result<bool, SemanticsError> {
    let once = eval_decimal(a)?;
    let twice = eval_decimal(&embed(&once))?;
    Ok(once == twice)
}
