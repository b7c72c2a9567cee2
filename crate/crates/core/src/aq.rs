//! Arithmetical quantities (AQs): abstract terms that forget spacing and
//! redundant brackets, but keep summand order and the grouping of sums.
//!
//! A flat chain `t1+...+tn` is a single poly-infix [`Aq::Sum`] of arity `n`;
//! a bracketed sum inside another sum is a nested `Sum` node. Brackets that
//! do not change the tree are kept aside in a [`Redundancy`] annotation so
//! that the finer `=_AQ^bp` equality can still see them.

use std::fmt;

use serde_json::{json, Value as Json};
use thiserror::Error;

use crate::semantics::{self, DecimalValue};
use crate::sign::{self, RenderStyle, Sign, SignError, Token, TokenKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AqError {
    #[error(transparent)]
    Lex(#[from] SignError),
    #[error("parse error at offset {offset}: expected {expected}")]
    Parse { offset: usize, expected: String },
    #[error("not a poly-infix sum")]
    NotAPolyInfixSum,
    #[error("summand index {index} out of range 1..={length}")]
    IndexOutOfRange { index: usize, length: usize },
    #[error("open term: variable {0} has no value")]
    OpenTerm(String),
    #[error("malformed AQ dump: {0}")]
    Dump(String),
}

/// A decimal constant in normal form: nonempty digits, no leading zero
/// unless the constant is `0` itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Numeral(String);

impl Numeral {
    pub fn new(digits: &str) -> Option<Numeral> {
        let ok = !digits.is_empty()
            && digits.bytes().all(|b| b.is_ascii_digit())
            && (digits == "0" || !digits.starts_with('0'));
        ok.then(|| Numeral(digits.to_string()))
    }

    pub fn from_u64(n: u64) -> Numeral {
        Numeral(n.to_string())
    }

    pub fn zero() -> Numeral {
        Numeral("0".into())
    }

    pub fn digits(&self) -> &str {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0 == "0"
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.parse().ok()
    }
}

impl fmt::Display for Numeral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Aq {
    Const(Numeral),
    Var(String),
    Neg(Box<Aq>),
    /// Poly-infix sum, arity at least 2. Arity 2 is a sumterm.
    Sum(Vec<Aq>),
}

impl Aq {
    pub fn num(n: u64) -> Aq {
        Aq::Const(Numeral::from_u64(n))
    }

    pub fn constant(digits: &str) -> Option<Aq> {
        Numeral::new(digits).map(Aq::Const)
    }

    pub fn zero() -> Aq {
        Aq::Const(Numeral::zero())
    }

    pub fn var(name: &str) -> Aq {
        Aq::Var(name.to_string())
    }

    pub fn neg(a: Aq) -> Aq {
        Aq::Neg(Box::new(a))
    }

    pub fn add(a: Aq, b: Aq) -> Aq {
        Aq::Sum(vec![a, b])
    }

    /// # Panics
    /// If fewer than two summands are given.
    pub fn sum(children: Vec<Aq>) -> Aq {
        assert!(children.len() >= 2, "a sum needs at least two summands");
        Aq::Sum(children)
    }

    pub fn as_const(&self) -> Option<&Numeral> {
        match self {
            Aq::Const(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.first_var().is_none()
    }

    pub fn first_var(&self) -> Option<&str> {
        match self {
            Aq::Const(_) => None,
            Aq::Var(v) => Some(v),
            Aq::Neg(c) => c.first_var(),
            Aq::Sum(cs) => cs.iter().find_map(|c| c.first_var()),
        }
    }

    pub fn require_closed(&self) -> Result<(), AqError> {
        match self.first_var() {
            Some(v) => Err(AqError::OpenTerm(v.to_string())),
            None => Ok(()),
        }
    }

    pub fn children(&self) -> &[Aq] {
        match self {
            Aq::Neg(c) => std::slice::from_ref(c),
            Aq::Sum(cs) => cs,
            _ => &[],
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(Aq::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(Aq::depth).max().unwrap_or(0)
    }

    /// Subterm at a path of child indices (a `Neg` has the single child 0).
    pub fn at(&self, path: &[usize]) -> Option<&Aq> {
        let mut cur = self;
        for &i in path {
            cur = cur.children().get(i)?;
        }
        Some(cur)
    }

    pub fn at_mut(&mut self, path: &[usize]) -> Option<&mut Aq> {
        let mut cur = self;
        for &i in path {
            cur = match cur {
                Aq::Neg(c) if i == 0 => c.as_mut(),
                Aq::Sum(cs) => cs.get_mut(i)?,
                _ => return None,
            };
        }
        Some(cur)
    }

    /// Nested-list dump: `["const","12"]`, `["var","x"]`, `["neg",a]`,
    /// `["sum",a,b,...]`.
    pub fn to_json(&self) -> Json {
        match self {
            Aq::Const(n) => json!(["const", n.digits()]),
            Aq::Var(v) => json!(["var", v]),
            Aq::Neg(c) => json!(["neg", c.to_json()]),
            Aq::Sum(cs) => {
                let mut items = vec![json!("sum")];
                items.extend(cs.iter().map(Aq::to_json));
                Json::Array(items)
            }
        }
    }

    pub fn from_json(value: &Json) -> Result<Aq, AqError> {
        let bad = |m: &str| AqError::Dump(m.to_string());
        let items = value.as_array().ok_or_else(|| bad("expected a list"))?;
        let tag = items
            .first()
            .and_then(Json::as_str)
            .ok_or_else(|| bad("missing tag"))?;
        let str_arg = || {
            (items.len() == 2)
                .then(|| items[1].as_str())
                .flatten()
                .ok_or_else(|| bad("expected one string argument"))
        };
        match tag {
            "const" => Aq::constant(str_arg()?).ok_or_else(|| bad("constant not in normal form")),
            "var" => {
                let v = str_arg()?;
                if is_identifier(v) {
                    Ok(Aq::var(v))
                } else {
                    Err(bad("invalid variable name"))
                }
            }
            "neg" if items.len() == 2 => Ok(Aq::neg(Aq::from_json(&items[1])?)),
            "sum" if items.len() >= 3 => Ok(Aq::Sum(
                items[1..].iter().map(Aq::from_json).collect::<Result<_, _>>()?,
            )),
            _ => Err(bad("unknown tag or wrong arity")),
        }
    }
}

impl fmt::Display for Aq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(sign::render(self, RenderStyle::Minimal).text())
    }
}

fn is_identifier(v: &str) -> bool {
    let mut cs = v.chars();
    cs.next().is_some_and(|c| c.is_ascii_alphabetic())
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && v != "let"
        && v != "in"
}

/// Redundant bracket pairs per node, mirroring the shape of the AQ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Redundancy {
    pub here: usize,
    pub children: Vec<Redundancy>,
}

impl Redundancy {
    pub fn zero_for(aq: &Aq) -> Redundancy {
        Redundancy {
            here: 0,
            children: aq.children().iter().map(Redundancy::zero_for).collect(),
        }
    }

    pub fn total(&self) -> usize {
        self.here + self.children.iter().map(Redundancy::total).sum::<usize>()
    }

    fn fits(&self, aq: &Aq) -> bool {
        let cs = aq.children();
        cs.len() == self.children.len() && cs.iter().zip(&self.children).all(|(a, r)| r.fits(a))
    }
}

/// An AQ together with the redundant brackets its source sign carried.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BracketedAq {
    aq: Aq,
    redundancy: Redundancy,
}

impl BracketedAq {
    pub fn new(aq: Aq, redundancy: Redundancy) -> Option<BracketedAq> {
        redundancy.fits(&aq).then_some(BracketedAq { aq, redundancy })
    }

    pub fn plain(aq: Aq) -> BracketedAq {
        let redundancy = Redundancy::zero_for(&aq);
        BracketedAq { aq, redundancy }
    }

    /// `(t)`: the whole expression inside one more pair.
    pub fn bracketed(aq: Aq) -> BracketedAq {
        let mut b = BracketedAq::plain(aq);
        b.redundancy.here += 1;
        b
    }

    pub fn aq(&self) -> &Aq {
        &self.aq
    }

    pub fn into_aq(self) -> Aq {
        self.aq
    }

    pub fn redundancy(&self) -> &Redundancy {
        &self.redundancy
    }
}

/// Parses a sign into an AQ, recording redundant brackets.
pub fn parse(sign: &Sign) -> Result<BracketedAq, AqError> {
    let tokens = sign.tokens()?;
    let end = sign.text().chars().count();
    let mut p = Parser::new(tokens, end);
    let syn = p.expr()?;
    p.finish()?;
    Ok(syn.into_bracketed())
}

pub fn parse_aq(text: &str) -> Result<Aq, AqError> {
    parse(&Sign::new(text)).map(BracketedAq::into_aq)
}

pub fn eq_aq(a: &Aq, b: &Aq) -> bool {
    a == b
}

pub fn eq_aq_bp(a: &BracketedAq, b: &BracketedAq) -> bool {
    a == b
}

pub fn is_sumterm(a: &Aq) -> bool {
    matches!(a, Aq::Sum(cs) if cs.len() == 2)
}

pub fn split_left(a: &Aq) -> Aq {
    match a {
        Aq::Sum(cs) if cs.len() == 2 => cs[0].clone(),
        _ => Aq::zero(),
    }
}

pub fn split_right(a: &Aq) -> Aq {
    match a {
        Aq::Sum(cs) if cs.len() == 2 => cs[1].clone(),
        _ => Aq::zero(),
    }
}

pub fn length(a: &Aq) -> Result<usize, AqError> {
    match a {
        Aq::Sum(cs) => Ok(cs.len()),
        _ => Err(AqError::NotAPolyInfixSum),
    }
}

/// The `k`-th summand, counting from 1.
pub fn summand(a: &Aq, k: usize) -> Result<Aq, AqError> {
    match a {
        Aq::Sum(cs) if (1..=cs.len()).contains(&k) => Ok(cs[k - 1].clone()),
        Aq::Sum(cs) => Err(AqError::IndexOutOfRange {
            index: k,
            length: cs.len(),
        }),
        _ => Err(AqError::NotAPolyInfixSum),
    }
}

/// `[t/x]A`: every `x` becomes `t` as one nested node.
pub fn substitute(target: &Aq, var: &str, replacement: &Aq) -> Aq {
    match target {
        Aq::Var(v) if v == var => replacement.clone(),
        Aq::Const(_) | Aq::Var(_) => target.clone(),
        Aq::Neg(c) => Aq::neg(substitute(c, var, replacement)),
        Aq::Sum(cs) => Aq::Sum(cs.iter().map(|c| substitute(c, var, replacement)).collect()),
    }
}

/// `let x = t in A`. An unbracketed sum binding is spliced into an enclosing
/// sum; a bracketed binding (or a non-sum) is inserted as one node.
pub fn let_in(var: &str, binding: &BracketedAq, body: &Aq) -> Aq {
    let splice = binding.redundancy.here == 0 && matches!(binding.aq, Aq::Sum(_));
    let_rec(var, &binding.aq, splice, body)
}

fn let_rec(var: &str, binding: &Aq, splice: bool, body: &Aq) -> Aq {
    match body {
        Aq::Var(v) if v == var => binding.clone(),
        Aq::Const(_) | Aq::Var(_) => body.clone(),
        Aq::Neg(c) => Aq::neg(let_rec(var, binding, splice, c)),
        Aq::Sum(cs) => {
            let mut out = Vec::with_capacity(cs.len());
            for c in cs {
                match (c, binding) {
                    (Aq::Var(v), Aq::Sum(inner)) if splice && v == var => {
                        out.extend(inner.iter().cloned())
                    }
                    _ => out.push(let_rec(var, binding, splice, c)),
                }
            }
            Aq::Sum(out)
        }
    }
}

/// An ordered triple `(a,b;c)` whose third component plays the role of sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sumtuple {
    pub left: Aq,
    pub right: Aq,
    pub sum: Aq,
}

pub fn sumtuple_valid(t: &Sumtuple) -> Result<bool, AqError> {
    for part in [&t.left, &t.right, &t.sum] {
        part.require_closed()?;
    }
    let value = |a: &Aq| semantics::eval_decimal(a).expect("closed AQ evaluates in decimal");
    let lhs: DecimalValue = value(&t.left).add(&value(&t.right));
    Ok(lhs == value(&t.sum))
}

/// Accepts `(a,b;c)`, `plus(a,b;c)` and `+(a,b;c)`.
pub fn parse_sumtuple(sign: &Sign) -> Result<Sumtuple, AqError> {
    let tokens = sign.tokens()?;
    let end = sign.text().chars().count();
    let mut p = Parser::new(tokens, end);
    match p.peek_kind() {
        Some(TokenKind::Var) if p.peek_lexeme() == Some("plus") => p.bump(),
        Some(TokenKind::Plus) => p.bump(),
        _ => {}
    }
    p.expect(TokenKind::Open, "'('")?;
    let left = p.expr()?.into_bracketed().into_aq();
    p.expect(TokenKind::Comma, "','")?;
    let right = p.expr()?.into_bracketed().into_aq();
    p.expect(TokenKind::Semicolon, "';'")?;
    let sum = p.expr()?.into_bracketed().into_aq();
    p.expect(TokenKind::Close, "')'")?;
    p.finish()?;
    Ok(Sumtuple { left, right, sum })
}

// ---------------------------------------------------------------------------
// Parser. Works on a syntax tree that still counts the bracket pairs written
// directly around each node; conversion to `BracketedAq` subtracts the pairs
// the minimal rendering would need anyway.

#[derive(Debug, Clone)]
struct Syn {
    parens: usize,
    node: SynNode,
}

#[derive(Debug, Clone)]
enum SynNode {
    Const(Numeral),
    Var(String),
    Neg(Box<Syn>),
    Sum(Vec<Syn>),
}

#[derive(Clone, Copy)]
enum Ctx {
    Root,
    SumChild,
    NegChild,
}

impl Syn {
    fn bare(node: SynNode) -> Syn {
        Syn { parens: 0, node }
    }

    fn into_bracketed(self) -> BracketedAq {
        let (aq, redundancy) = self.convert(Ctx::Root);
        BracketedAq { aq, redundancy }
    }

    fn convert(self, ctx: Ctx) -> (Aq, Redundancy) {
        let structural = match (ctx, &self.node) {
            (Ctx::SumChild, SynNode::Sum(_)) => 1,
            (Ctx::NegChild, SynNode::Sum(_) | SynNode::Neg(_)) => 1,
            _ => 0,
        };
        let here = self.parens.saturating_sub(structural);
        let (aq, children) = match self.node {
            SynNode::Const(n) => (Aq::Const(n), vec![]),
            SynNode::Var(v) => (Aq::Var(v), vec![]),
            SynNode::Neg(c) => {
                let (a, r) = c.convert(Ctx::NegChild);
                (Aq::neg(a), vec![r])
            }
            SynNode::Sum(cs) => {
                let (aqs, rs) = cs.into_iter().map(|c| c.convert(Ctx::SumChild)).unzip();
                (Aq::Sum(aqs), rs)
            }
        };
        (aq, Redundancy { here, children })
    }

    fn substitute(self, var: &str, replacement: &Syn) -> Syn {
        let node = match self.node {
            SynNode::Var(ref v) if v == var => {
                let mut r = replacement.clone();
                r.parens += self.parens;
                return r;
            }
            SynNode::Neg(c) => SynNode::Neg(Box::new(c.substitute(var, replacement))),
            SynNode::Sum(cs) => {
                SynNode::Sum(cs.into_iter().map(|c| c.substitute(var, replacement)).collect())
            }
            other => other,
        };
        Syn { parens: self.parens, node }
    }

    fn let_in(self, var: &str, binding: &Syn) -> Syn {
        let splice = binding.parens == 0 && matches!(binding.node, SynNode::Sum(_));
        let node = match self.node {
            SynNode::Var(ref v) if v == var => {
                let mut r = binding.clone();
                r.parens += self.parens;
                return r;
            }
            SynNode::Neg(c) => SynNode::Neg(Box::new(c.let_in(var, binding))),
            SynNode::Sum(cs) => {
                let mut out = Vec::with_capacity(cs.len());
                for c in cs {
                    let is_occurrence =
                        c.parens == 0 && matches!(&c.node, SynNode::Var(v) if v == var);
                    match &binding.node {
                        SynNode::Sum(inner) if splice && is_occurrence => {
                            out.extend(inner.iter().cloned())
                        }
                        _ => out.push(c.let_in(var, binding)),
                    }
                }
                SynNode::Sum(out)
            }
            other => other,
        };
        Syn { parens: self.parens, node }
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(tokens: Vec<Token>, end: usize) -> Parser {
        let tokens = tokens
            .into_iter()
            .filter(|t| t.kind != TokenKind::Space)
            .collect();
        Parser { tokens, pos: 0, end }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<TokenKind> {
        self.peek().map(|t| t.kind)
    }

    fn peek_lexeme(&self) -> Option<&str> {
        self.peek().map(|t| t.lexeme.as_str())
    }

    fn peek_kind_at(&self, ahead: usize) -> Option<TokenKind> {
        self.tokens.get(self.pos + ahead).map(|t| t.kind)
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn offset(&self) -> usize {
        self.peek().map_or(self.end, |t| t.offset)
    }

    fn error<T>(&self, expected: &str) -> Result<T, AqError> {
        Err(AqError::Parse {
            offset: self.offset(),
            expected: expected.to_string(),
        })
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> Result<(), AqError> {
        if self.peek_kind() == Some(kind) {
            self.bump();
            Ok(())
        } else {
            self.error(what)
        }
    }

    fn finish(&self) -> Result<(), AqError> {
        if self.pos == self.tokens.len() {
            Ok(())
        } else {
            self.error("'+', '-' or end of input")
        }
    }

    fn variable(&mut self) -> Result<String, AqError> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Var => {
                let v = t.lexeme.clone();
                self.bump();
                Ok(v)
            }
            _ => self.error("a variable"),
        }
    }

    fn expr(&mut self) -> Result<Syn, AqError> {
        if self.peek_kind() == Some(TokenKind::LetKw) {
            self.bump();
            let var = self.variable()?;
            self.expect(TokenKind::Equals, "'='")?;
            let binding = self.expr()?;
            self.expect(TokenKind::InKw, "'in'")?;
            let body = self.expr()?;
            return Ok(body.let_in(&var, &binding));
        }
        self.sum()
    }

    fn sum(&mut self) -> Result<Syn, AqError> {
        let mut items = vec![self.unary()?];
        loop {
            match self.peek_kind() {
                Some(TokenKind::Plus) => {
                    self.bump();
                    items.push(self.unary()?);
                }
                Some(TokenKind::Minus) => {
                    self.bump();
                    let operand = self.neg_operand()?;
                    items.push(Syn::bare(SynNode::Neg(Box::new(operand))));
                }
                _ => break,
            }
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Syn::bare(SynNode::Sum(items))
        })
    }

    fn unary(&mut self) -> Result<Syn, AqError> {
        match self.peek_kind() {
            Some(TokenKind::Minus) => {
                self.bump();
                let operand = self.neg_operand()?;
                Ok(Syn::bare(SynNode::Neg(Box::new(operand))))
            }
            Some(TokenKind::SubstOpen) => self.substitution(),
            _ => self.primary(),
        }
    }

    fn neg_operand(&mut self) -> Result<Syn, AqError> {
        if self.peek_kind() == Some(TokenKind::SubstOpen) {
            self.substitution()
        } else {
            self.primary()
        }
    }

    /// `[t/x] U` where `U` is the immediately following unary operand.
    fn substitution(&mut self) -> Result<Syn, AqError> {
        self.expect(TokenKind::SubstOpen, "'['")?;
        let replacement = self.expr()?;
        self.expect(TokenKind::SubstSlash, "'/'")?;
        let var = self.variable()?;
        self.expect(TokenKind::SubstClose, "']'")?;
        let target = self.unary()?;
        Ok(target.substitute(&var, &replacement))
    }

    fn primary(&mut self) -> Result<Syn, AqError> {
        let Some(tok) = self.peek().cloned() else {
            return self.error("a constant, variable or '('");
        };
        match tok.kind {
            TokenKind::DigitRun => match Numeral::new(&tok.lexeme) {
                Some(n) => {
                    self.bump();
                    Ok(Syn::bare(SynNode::Const(n)))
                }
                None => self.error("a constant without leading zeros"),
            },
            TokenKind::Var
                if tok.lexeme == "plus" && self.peek_kind_at(1) == Some(TokenKind::Open) =>
            {
                self.bump();
                self.call_args()
            }
            TokenKind::Var => {
                self.bump();
                Ok(Syn::bare(SynNode::Var(tok.lexeme)))
            }
            TokenKind::Plus if self.peek_kind_at(1) == Some(TokenKind::Open) => {
                self.bump();
                self.call_args()
            }
            TokenKind::Open => {
                self.bump();
                let mut inner = self.expr()?;
                self.expect(TokenKind::Close, "')'")?;
                inner.parens += 1;
                Ok(inner)
            }
            _ => self.error("a constant, variable or '('"),
        }
    }

    /// Prefix notation `plus(a,b,...)` / `+(a,b,...)`.
    fn call_args(&mut self) -> Result<Syn, AqError> {
        self.expect(TokenKind::Open, "'('")?;
        let mut args = vec![self.expr()?];
        while self.peek_kind() == Some(TokenKind::Comma) {
            self.bump();
            args.push(self.expr()?);
        }
        if args.len() < 2 {
            return self.error("','");
        }
        self.expect(TokenKind::Close, "')'")?;
        Ok(Syn::bare(SynNode::Sum(args)))
    }
}
