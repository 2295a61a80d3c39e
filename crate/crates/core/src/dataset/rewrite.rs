use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::digits::{add, mul, sub, to_reversed_literal, DigitString};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainOp {
    Add,
    Sub,
    Mul,
}

impl ChainOp {
    fn symbol(self) -> char {
        match self {
            ChainOp::Add => '+',
            ChainOp::Sub => '-',
            ChainOp::Mul => '×',
        }
    }

    fn apply(self, x: &DigitString, y: &DigitString) -> DigitString {
        match self {
            ChainOp::Add => add(x, y),
            ChainOp::Sub => sub(x, y),
            ChainOp::Mul => mul(x, y),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("empty expression")]
    Empty,
    #[error("unsupported operator {0:?} at byte {1}")]
    UnsupportedOperator(char, usize),
    #[error("unexpected {0:?} at byte {1}")]
    Unexpected(char, usize),
    #[error("expression ends after an operator")]
    TrailingOperator,
}

/// A flat arithmetic expression such as `12+7×3-5`, evaluated strictly left
/// to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationChain {
    pub first: DigitString,
    pub rest: Vec<(ChainOp, DigitString)>,
}

impl EquationChain {
    /// Running values after each operation.
    pub fn partial_values(&self) -> Vec<DigitString> {
        let mut acc = self.first.clone();
        self.rest
            .iter()
            .map(|(op, x)| {
                acc = op.apply(&acc, x);
                acc.clone()
            })
            .collect()
    }

    pub fn value(&self) -> DigitString {
        self.partial_values().pop().unwrap_or_else(|| self.first.clone())
    }
}

impl fmt::Display for EquationChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.first)?;
        for (op, x) in &self.rest {
            write!(f, "{}{x}", op.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for EquationChain {
    type Err = ChainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut operands: Vec<(Option<ChainOp>, String)> = Vec::new();
        let mut current = String::new();
        let mut pending: Option<ChainOp> = None;
        let mut negative_first = false;
        for (i, c) in s.char_indices() {
            match c {
                c if c.is_whitespace() => {}
                '0'..='9' => current.push(c),
                '-' | '−' if operands.is_empty() && current.is_empty() && !negative_first => {
                    negative_first = true;
                }
                '+' | '-' | '−' | '×' | '*' | 'x' => {
                    if current.is_empty() {
                        return Err(ChainError::Unexpected(c, i));
                    }
                    operands.push((pending, std::mem::take(&mut current)));
                    pending = Some(match c {
                        '+' => ChainOp::Add,
                        '×' | '*' | 'x' => ChainOp::Mul,
                        _ => ChainOp::Sub,
                    });
                }
                '÷' | '/' => return Err(ChainError::UnsupportedOperator(c, i)),
                _ => return Err(ChainError::Unexpected(c, i)),
            }
        }
        if current.is_empty() {
            return Err(if operands.is_empty() {
                ChainError::Empty
            } else {
                ChainError::TrailingOperator
            });
        }
        operands.push((pending, current));
        let number = |text: &str| -> DigitString { text.parse().expect("ascii digits") };
        let mut iter = operands.into_iter();
        let (_, head) = iter.next().expect("at least one operand");
        let mut first = number(&head);
        if negative_first {
            first = first.neg();
        }
        let rest = iter
            .map(|(op, text)| (op.expect("operator before every later operand"), number(&text)))
            .collect();
        Ok(Self { first, rest })
    }
}

/// How intermediate values are flagged as reversed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum ReverseMarker {
    /// `@@digits@@`
    #[default]
    At,
    /// `r|digits`
    RBar,
    /// Any symmetric delimiter.
    Custom(String),
}

impl ReverseMarker {
    fn wrap(&self, value: &DigitString) -> String {
        let lit = to_reversed_literal(value, None).expect("minimal literal");
        let sign = if lit.is_negative() { "-" } else { "" };
        let body = lit.digit_text();
        match self {
            ReverseMarker::At => format!("{sign}@@{body}@@"),
            ReverseMarker::RBar => format!("{sign}r|{body}"),
            ReverseMarker::Custom(m) => format!("{sign}{m}{body}{m}"),
        }
    }
}

/// Rewrites `1+2+4` as `1+2+4=@@3@@+4=@@7@@=7`: after each operation the
/// running value is restated in reversed digit order, and the final value is
/// written forward.
pub fn rewrite_equation_chain(chain: &EquationChain) -> String {
    rewrite_equation_chain_with(chain, &ReverseMarker::default())
}

pub fn rewrite_equation_chain_with(chain: &EquationChain, marker: &ReverseMarker) -> String {
    let mut out = chain.to_string();
    if chain.rest.is_empty() {
        return out;
    }
    let values = chain.partial_values();
    for (k, value) in values.iter().enumerate() {
        out.push('=');
        out.push_str(&marker.wrap(value));
        for (op, x) in &chain.rest[k + 1..] {
            out.push(op.symbol());
            out.push_str(&x.to_string());
        }
    }
    out.push('=');
    out.push_str(&chain.value().to_string());
    out
}
