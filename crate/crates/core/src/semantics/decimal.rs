//! Decimal integers `Z_d`: zero, or a signed digit sequence that does not
//! start with `0`. Arithmetic works column by column on the digits.

use std::cmp::Ordering;
use std::fmt;

use crate::aq::{Aq, Numeral};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DecimalValue {
    Zero,
    Pos(Numeral),
    Neg(Numeral),
}

impl DecimalValue {
    pub fn from_numeral(n: &Numeral) -> DecimalValue {
        if n.is_zero() {
            DecimalValue::Zero
        } else {
            DecimalValue::Pos(n.clone())
        }
    }

    pub fn from_i128(v: i128) -> DecimalValue {
        let mag = Numeral::new(&v.unsigned_abs().to_string()).expect("formatted integer");
        match v.cmp(&0) {
            Ordering::Equal => DecimalValue::Zero,
            Ordering::Greater => DecimalValue::Pos(mag),
            Ordering::Less => DecimalValue::Neg(mag),
        }
    }

    /// `None` when the value does not fit.
    pub fn to_i128(&self) -> Option<i128> {
        match self {
            DecimalValue::Zero => Some(0),
            DecimalValue::Pos(m) => m.digits().parse().ok(),
            DecimalValue::Neg(m) => m.digits().parse::<i128>().ok().map(|v| -v),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, DecimalValue::Neg(_))
    }

    /// Digits of the absolute value.
    pub fn magnitude(&self) -> Numeral {
        match self {
            DecimalValue::Zero => Numeral::zero(),
            DecimalValue::Pos(m) | DecimalValue::Neg(m) => m.clone(),
        }
    }

    pub fn neg(&self) -> DecimalValue {
        match self {
            DecimalValue::Zero => DecimalValue::Zero,
            DecimalValue::Pos(m) => DecimalValue::Neg(m.clone()),
            DecimalValue::Neg(m) => DecimalValue::Pos(m.clone()),
        }
    }

    pub fn add(&self, other: &DecimalValue) -> DecimalValue {
        use DecimalValue::*;
        match (self, other) {
            (Zero, x) | (x, Zero) => x.clone(),
            (Pos(a), Pos(b)) => Pos(add_digits(a, b)),
            (Neg(a), Neg(b)) => Neg(add_digits(a, b)),
            (Pos(a), Neg(b)) | (Neg(b), Pos(a)) => match cmp_digits(a, b) {
                Ordering::Equal => Zero,
                Ordering::Greater => Pos(sub_digits(a, b)),
                Ordering::Less => Neg(sub_digits(b, a)),
            },
        }
    }

    pub fn sub(&self, other: &DecimalValue) -> DecimalValue {
        self.add(&other.neg())
    }

    pub fn successor(&self) -> DecimalValue {
        self.add(&DecimalValue::Pos(Numeral::from_u64(1)))
    }
}

impl fmt::Display for DecimalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecimalValue::Zero => f.write_str("0"),
            DecimalValue::Pos(m) => write!(f, "{m}"),
            DecimalValue::Neg(m) => write!(f, "-{m}"),
        }
    }
}

impl PartialOrd for DecimalValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DecimalValue {
    fn cmp(&self, other: &Self) -> Ordering {
        use DecimalValue::*;
        let rank = |v: &DecimalValue| match v {
            Neg(_) => 0,
            Zero => 1,
            Pos(_) => 2,
        };
        match (self, other) {
            (Pos(a), Pos(b)) => cmp_digits(a, b),
            (Neg(a), Neg(b)) => cmp_digits(b, a),
            _ => rank(self).cmp(&rank(other)),
        }
    }
}

/// `Zero ↦ 0`, `σ ↦ σ`, `-σ ↦ -(σ)`.
pub fn embed(v: &DecimalValue) -> Aq {
    match v {
        DecimalValue::Zero => Aq::zero(),
        DecimalValue::Pos(m) => Aq::Const(m.clone()),
        DecimalValue::Neg(m) => Aq::neg(Aq::Const(m.clone())),
    }
}

/// Reads an element of `Z_d` back from its embedding.
pub fn from_normal_form(a: &Aq) -> Option<DecimalValue> {
    match a {
        Aq::Const(n) => Some(DecimalValue::from_numeral(n)),
        Aq::Neg(inner) => match inner.as_ref() {
            Aq::Const(n) if !n.is_zero() => Some(DecimalValue::Neg(n.clone())),
            _ => None,
        },
        _ => None,
    }
}

pub(crate) fn cmp_digits(a: &Numeral, b: &Numeral) -> Ordering {
    let (a, b) = (a.digits(), b.digits());
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

pub(crate) fn add_digits(a: &Numeral, b: &Numeral) -> Numeral {
    let (a, b) = (a.digits().as_bytes(), b.digits().as_bytes());
    let mut out = Vec::with_capacity(a.len().max(b.len()) + 1);
    let mut carry = 0u8;
    let (mut i, mut j) = (a.len(), b.len());
    while i > 0 || j > 0 || carry > 0 {
        let mut column = carry;
        if i > 0 {
            i -= 1;
            column += a[i] - b'0';
        }
        if j > 0 {
            j -= 1;
            column += b[j] - b'0';
        }
        out.push(b'0' + column % 10);
        carry = column / 10;
    }
    finish(out)
}

/// `a - b` for `a >= b`.
pub(crate) fn sub_digits(a: &Numeral, b: &Numeral) -> Numeral {
    let (a, b) = (a.digits().as_bytes(), b.digits().as_bytes());
    debug_assert!(a.len() >= b.len());
    let mut out = Vec::with_capacity(a.len());
    let mut borrow = 0i8;
    let mut j = b.len();
    for i in (0..a.len()).rev() {
        let mut column = (a[i] - b'0') as i8 - borrow;
        if j > 0 {
            j -= 1;
            column -= (b[j] - b'0') as i8;
        }
        borrow = if column < 0 { 1 } else { 0 };
        out.push(b'0' + (column + 10 * borrow) as u8);
    }
    debug_assert_eq!(borrow, 0, "subtrahend larger than minuend");
    finish(out)
}

fn finish(mut reversed: Vec<u8>) -> Numeral {
    while reversed.len() > 1 && reversed.last() == Some(&b'0') {
        reversed.pop();
    }
    reversed.reverse();
    Numeral::new(std::str::from_utf8(&reversed).expect("ascii digits")).expect("normal form")
}
