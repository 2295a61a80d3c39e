//! Reversed-order reasoning traces for `+`, `-`, `×` and `÷`.
//!
//! A [`Trace`] records every intermediate value an arithmetic chain of thought
//! writes down for one equation. Traces are produced by the `gen_*` functions,
//! rendered with [`serialize`], read back with [`parse`] and checked with
//! [`verify`]. The text grammar is documented in `docs/trace-grammar.md`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digits::{DigitString, ReversedLiteral};

mod gen;
mod parse;
mod serialize;
mod verify;

pub use gen::{gen_add_trace, gen_div_trace, gen_mul_trace, gen_sub_trace, gen_trace};
pub use parse::{parse, ParseError, ParseErrorKind};
pub use serialize::serialize;
pub(crate) use serialize::bare_equation;
pub use verify::{verify, Failure, VerifyResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

impl Op {
    pub const ALL: [Op; 4] = [Op::Add, Op::Sub, Op::Mul, Op::Div];

    /// Canonical output symbol.
    pub fn symbol(self) -> char {
        match self {
            Op::Add => '+',
            Op::Sub => '-',
            Op::Mul => '×',
            Op::Div => '÷',
        }
    }

    /// Accepts the canonical symbols plus `*` and `/`.
    pub fn from_symbol(c: char) -> Option<Op> {
        match c {
            '+' => Some(Op::Add),
            '-' | '−' => Some(Op::Sub),
            '×' | '*' => Some(Op::Mul),
            '÷' | '/' => Some(Op::Div),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Op::Add => "add",
            Op::Sub => "sub",
            Op::Mul => "mul",
            Op::Div => "div",
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// `a op b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub op: Op,
    pub a: DigitString,
    pub b: DigitString,
}

impl Equation {
    pub fn new(op: Op, a: DigitString, b: DigitString) -> Self {
        Self { op, a, b }
    }
}

/// Canonical form without whitespace or `=`: `123+46`, `948÷12`.
impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.a, self.op, self.b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("malformed equation {input:?}: {reason}")]
pub struct EquationError {
    pub input: String,
    pub reason: &'static str,
}

/// Parses `a op b`, ignoring whitespace and an optional trailing `=`.
impl FromStr for Equation {
    type Err = EquationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason| EquationError {
            input: s.to_string(),
            reason,
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact.strip_suffix('=').unwrap_or(&compact);
        // the first operand may carry a sign, so the operator is searched after it
        let skip = body.chars().next().map_or(0, |c| usize::from(c == '-' || c == '−'));
        let (op_at, op) = body
            .char_indices()
            .skip(skip)
            .find_map(|(i, c)| Op::from_symbol(c).map(|op| (i, op)))
            .ok_or_else(|| err("missing operator"))?;
        let lhs = body[..op_at].replace('−', "-");
        let rhs = body[op_at + op_symbol_len(&body[op_at..])..].replace('−', "-");
        let a = lhs.parse().map_err(|_| err("bad left operand"))?;
        let b = rhs.parse().map_err(|_| err("bad right operand"))?;
        Ok(Equation { op, a, b })
    }
}

fn op_symbol_len(s: &str) -> usize {
    s.chars().next().map_or(0, char::len_utf8)
}

/// One `a × (digit · 10^place)` term of a decomposed product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubProduct {
    pub factor: DigitString,
    pub digit: u8,
    pub place: usize,
}

/// One addition inside a combination round; `right` is `None` for the unpaired
/// last term of an odd-length round, which passes through unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combine {
    pub left: ReversedLiteral,
    pub right: Option<ReversedLiteral>,
    pub sum: ReversedLiteral,
}

/// One quotient-digit estimate of a long division.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivIteration {
    pub quotient_digit: u8,
    /// Power of ten the digit sits at.
    pub place: usize,
    /// `divisor × digit × 10^place`, reversed and zero-padded.
    pub product: ReversedLiteral,
    /// Running remainder after subtracting `product`.
    pub remainder: ReversedLiteral,
    /// The estimate was wrong and is retried (`W`).
    pub rolled_back: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Decompose(Vec<SubProduct>),
    PartialProducts(Vec<ReversedLiteral>),
    PairwiseCombine(Vec<Combine>),
    DivIteration(DivIteration),
    /// Answer written in reversed order.
    Final(ReversedLiteral),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub equation: Equation,
    pub steps: Vec<Step>,
    /// Sum, difference, product or quotient.
    pub result: DigitString,
    /// Set for divisions only.
    pub remainder: Option<DigitString>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    #[default]
    Verbose,
    Compact,
}

impl FromStr for Form {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "verbose" => Ok(Form::Verbose),
            "compact" => Ok(Form::Compact),
            other => Err(format!("unknown form {other:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RollbackDelta {
    /// Estimate one more than the true digit.
    Plus,
    /// Estimate one less than the true digit.
    Minus,
}

/// Which quotient digits of a division are deliberately misestimated.
///
/// Entry `i` applies to the `i`-th quotient digit, most significant first.
/// A delta that would leave `0..=9` is applied in the other direction, so `9`
/// with [`RollbackDelta::Plus`] becomes `8`. Entries past the last quotient
/// digit are ignored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RollbackPlan {
    deltas: Vec<Option<RollbackDelta>>,
}

impl RollbackPlan {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn single(iteration: usize, delta: RollbackDelta) -> Self {
        let mut deltas = vec![None; iteration + 1];
        deltas[iteration] = Some(delta);
        Self { deltas }
    }

    pub fn from_deltas(deltas: Vec<Option<RollbackDelta>>) -> Self {
        Self { deltas }
    }

    pub fn delta_at(&self, iteration: usize) -> Option<RollbackDelta> {
        self.deltas.get(iteration).copied().flatten()
    }

    /// The wrong digit injected in place of `digit`.
    pub fn misestimate(digit: u8, delta: RollbackDelta) -> u8 {
        match (delta, digit) {
            (RollbackDelta::Plus, 9) => 8,
            (RollbackDelta::Plus, d) => d + 1,
            (RollbackDelta::Minus, 0) => 1,
            (RollbackDelta::Minus, d) => d - 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisor {divisor} exceeds dividend {dividend}")]
    DivisorExceedsDividend {
        dividend: DigitString,
        divisor: DigitString,
    },
    #[error("{op} traces take non-negative operands")]
    NegativeOperand { op: Op },
}
