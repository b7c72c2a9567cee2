//! Concrete signs: the tangible text of arithmetic, where brackets and spaces
//! are real characters. Tokenization, the two counting operators that only
//! make sense on signs, and rendering of AQs back into signs live here.

use std::fmt;

use thiserror::Error;

use crate::aq::Aq;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    DigitRun,
    Plus,
    Minus,
    Open,
    Close,
    Var,
    Space,
    LetKw,
    InKw,
    /// `=` inside `let x = t in u`.
    Equals,
    SubstOpen,
    SubstSlash,
    SubstClose,
    Comma,
    Semicolon,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    /// Character index (not byte index) of the first character.
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignError {
    #[error("lex error at offset {offset}: unexpected character {found:?}")]
    Lex { offset: usize, found: char },
    #[error("unbalanced brackets at offset {offset}")]
    UnbalancedBrackets { offset: usize },
}

/// A piece of arithmetical text exactly as written.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sign {
    text: String,
}

impl Sign {
    pub fn new(text: impl Into<String>) -> Self {
        Sign { text: text.into() }
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn tokens(&self) -> Result<Vec<Token>, SignError> {
        tokenize(&self.text)
    }

    /// Concatenation with `sep` between the two texts.
    pub fn concat(&self, sep: &str, other: &Sign) -> Sign {
        Sign::new(format!("{}{}{}", self.text, sep, other.text))
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl From<&str> for Sign {
    fn from(s: &str) -> Self {
        Sign::new(s)
    }
}

pub(crate) fn is_space(c: char) -> bool {
    matches!(c, ' ' | '\t' | '\n' | '\r')
}

fn is_minus(c: char) -> bool {
    // ASCII hyphen-minus and the typographic minus sign
    c == '-' || c == '\u{2212}'
}

/// Splits `text` into tokens. Every character ends up in exactly one lexeme.
pub fn tokenize(text: &str) -> Result<Vec<Token>, SignError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let kind = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            TokenKind::DigitRun
        } else if is_space(c) {
            while i < chars.len() && is_space(chars[i]) {
                i += 1;
            }
            TokenKind::Space
        } else if c.is_ascii_alphabetic() {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            match word.as_str() {
                "let" => TokenKind::LetKw,
                "in" => TokenKind::InKw,
                _ => TokenKind::Var,
            }
        } else {
            i += 1;
            match c {
                '+' => TokenKind::Plus,
                '(' => TokenKind::Open,
                ')' => TokenKind::Close,
                '=' => TokenKind::Equals,
                '[' => TokenKind::SubstOpen,
                '/' => TokenKind::SubstSlash,
                ']' => TokenKind::SubstClose,
                ',' => TokenKind::Comma,
                ';' => TokenKind::Semicolon,
                c if is_minus(c) => TokenKind::Minus,
                found => return Err(SignError::Lex { offset: start, found }),
            }
        };
        tokens.push(Token {
            kind,
            lexeme: chars[start..i].iter().collect(),
            offset: start,
        });
    }
    Ok(tokens)
}

pub fn detokenize(tokens: &[Token]) -> String {
    tokens.iter().map(|t| t.lexeme.as_str()).collect()
}

/// Number of matched `(`/`)` pairs, counted literally in the text.
pub fn count_bracket_pairs(sign: &Sign) -> Result<usize, SignError> {
    let mut depth = 0usize;
    let mut pairs = 0usize;
    for (offset, c) in sign.text.chars().enumerate() {
        match c {
            '(' => depth += 1,
            ')' => {
                if depth == 0 {
                    return Err(SignError::UnbalancedBrackets { offset });
                }
                depth -= 1;
                pairs += 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(SignError::UnbalancedBrackets {
            offset: sign.text.chars().count(),
        });
    }
    Ok(pairs)
}

/// Number of whitespace characters.
pub fn count_spaces(sign: &Sign) -> usize {
    sign.text.chars().filter(|&c| is_space(c)).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RenderStyle {
    /// Only the brackets the tree shape needs; `a+(-b)` is written `a-b`.
    Minimal,
    /// Every compound child is bracketed.
    FullyBracketed,
    /// Minimal brackets, operators surrounded by single spaces.
    Spaced,
}

pub fn render(aq: &Aq, style: RenderStyle) -> Sign {
    let mut out = String::new();
    write_aq(aq, style, &mut out);
    Sign::new(out)
}

fn write_aq(aq: &Aq, style: RenderStyle, out: &mut String) {
    match aq {
        Aq::Const(n) => out.push_str(n.digits()),
        Aq::Var(name) => out.push_str(name),
        Aq::Neg(child) => {
            out.push('-');
            write_neg_operand(child, style, out);
        }
        Aq::Sum(children) => {
            let (plus, minus) = match style {
                RenderStyle::Spaced => (" + ", " - "),
                _ => ("+", "-"),
            };
            for (i, child) in children.iter().enumerate() {
                if i == 0 {
                    write_summand(child, style, out);
                    continue;
                }
                match (style, child) {
                    (RenderStyle::FullyBracketed, _) => {
                        out.push_str(plus);
                        write_summand(child, style, out);
                    }
                    (_, Aq::Neg(inner)) => {
                        out.push_str(minus);
                        write_neg_operand(inner, style, out);
                    }
                    _ => {
                        out.push_str(plus);
                        write_summand(child, style, out);
                    }
                }
            }
        }
    }
}

fn write_bracketed(aq: &Aq, style: RenderStyle, out: &mut String) {
    out.push('(');
    write_aq(aq, style, out);
    out.push(')');
}

fn write_summand(aq: &Aq, style: RenderStyle, out: &mut String) {
    match (style, aq) {
        (_, Aq::Sum(_)) => write_bracketed(aq, style, out),
        (RenderStyle::FullyBracketed, Aq::Neg(_)) => write_bracketed(aq, style, out),
        _ => write_aq(aq, style, out),
    }
}

fn write_neg_operand(aq: &Aq, style: RenderStyle, out: &mut String) {
    match aq {
        Aq::Sum(_) | Aq::Neg(_) => write_bracketed(aq, style, out),
        _ => write_aq(aq, style, out),
    }
}
