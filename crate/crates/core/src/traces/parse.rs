//! Whitespace-tolerant reader for verbose and compact traces.
//!
//! The form is detected from the text: compact divisions open each block with
//! `qR-(`, verbose ones with `QR(`; verbose products add parenthesised
//! grouping lines. Redundant restatements in the verbose form (running
//! quotient, running remainder, grouping operands) must agree with the
//! structure they restate.

use std::fmt;

use thiserror::Error;

use crate::digits::{DigitString, DigitsError, ReversedLiteral, Sign};

use super::{Combine, DivIteration, Equation, Op, Step, SubProduct, Trace};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} at byte offset {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd { expected: &'static str },
    UnexpectedToken { expected: &'static str, found: String },
    BadLiteral(DigitsError),
    /// `W` on the last division block, with nothing to retry it.
    DanglingRollback,
    /// A restated value disagrees with the value it restates.
    Inconsistent(&'static str),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            Self::UnexpectedEnd { expected } => write!(f, "unexpected end of input, expected {expected}"),
            Self::UnexpectedToken { expected, found } => write!(f, "expected {expected}, found {found}"),
            Self::BadLiteral(e) => write!(f, "bad literal: {e}"),
            Self::DanglingRollback => f.write_str("rollback marker without a retry"),
            Self::Inconsistent(what) => write!(f, "inconsistent trace: {what}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(String),
    RBar,
    Plus,
    Minus,
    Times,
    Divide,
    Eq,
    LParen,
    RParen,
    Rem,
    Hash,
    W,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number {n:?}"),
            Tok::RBar => "'r|'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Times => "'×'".into(),
            Tok::Divide => "'÷'".into(),
            Tok::Eq => "'='".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Rem => "'R'".into(),
            Tok::Hash => "'#'".into(),
            Tok::W => "'W'".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut toks = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((at, c)) = chars.next() {
        let tok = match c {
            c if c.is_whitespace() => continue,
            '0'..='9' => {
                let mut n = String::from(c);
                while let Some(&(_, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    n.push(d);
                    chars.next();
                }
                Tok::Num(n)
            }
            'r' if matches!(chars.peek(), Some((_, '|'))) => {
                chars.next();
                Tok::RBar
            }
            'R' => {
                if text[at + 1..].starts_with("em") {
                    chars.next();
                    chars.next();
                }
                Tok::Rem
            }
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '×' | '*' => Tok::Times,
            '÷' | '/' => Tok::Divide,
            '=' => Tok::Eq,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '#' => Tok::Hash,
            'W' => Tok::W,
            other => {
                return Err(ParseError {
                    offset: at,
                    kind: ParseErrorKind::UnexpectedChar(other),
                })
            }
        };
        toks.push((tok, at));
    }
    Ok(toks)
}

/// A value in a trace: forward decimal or reversed literal.
enum Value {
    Forward(DigitString),
    Reversed(ReversedLiteral),
}

impl Value {
    fn value(&self) -> DigitString {
        match self {
            Value::Forward(v) => v.clone(),
            Value::Reversed(lit) => lit.value(),
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_at(&self, ahead: usize) -> Option<&Tok> {
        self.toks.get(self.pos + ahead).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(_, at)| at)
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            offset: self.offset(),
            kind,
        }
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        match self.peek() {
            Some(t) => self.error(ParseErrorKind::UnexpectedToken {
                expected,
                found: t.describe(),
            }),
            None => self.error(ParseErrorKind::UnexpectedEnd { expected }),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> PResult<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn number(&mut self, expected: &'static str) -> PResult<(String, usize)> {
        match self.toks.get(self.pos) {
            Some((Tok::Num(n), at)) => {
                let out = (n.clone(), *at);
                self.pos += 1;
                Ok(out)
            }
            _ => Err(self.unexpected(expected)),
        }
    }

    fn forward(&mut self, expected: &'static str) -> PResult<DigitString> {
        let (n, _) = self.number(expected)?;
        Ok(n.parse().expect("lexer yields digits"))
    }

    fn signed_forward(&mut self, expected: &'static str) -> PResult<DigitString> {
        let negative = self.eat(&Tok::Minus);
        let v = self.forward(expected)?;
        Ok(if negative { v.neg() } else { v })
    }

    fn finish(&self) -> PResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.unexpected("end of input")),
        }
    }

    fn value(&mut self, expected: &'static str) -> PResult<Value> {
        let start = self.offset();
        let negative = self.eat(&Tok::Minus);
        if self.eat(&Tok::RBar) {
            let (digits, at) = self.number("reversed digits")?;
            return ReversedLiteral::from_digit_text(&digits, negative)
                .map(Value::Reversed)
                .map_err(|e| ParseError {
                    offset: at,
                    kind: ParseErrorKind::BadLiteral(e),
                });
        }
        match self.peek() {
            Some(Tok::Num(_)) => {
                let v = self.forward(expected)?;
                Ok(Value::Forward(if negative { v.neg() } else { v }))
            }
            _ if negative => Err(self.unexpected("'r|' or digits after '-'")),
            _ => Err(ParseError {
                offset: start,
                ..self.unexpected(expected)
            }),
        }
    }

    /// A reversed literal; a bare `0` is accepted as the zero literal.
    fn literal(&mut self, expected: &'static str) -> PResult<ReversedLiteral> {
        let at = self.offset();
        match self.value(expected)? {
            Value::Reversed(lit) => Ok(lit),
            Value::Forward(v) if v.is_zero() => {
                Ok(ReversedLiteral::from_digit_text("0", false).expect("zero literal"))
            }
            Value::Forward(v) => Err(ParseError {
                offset: at,
                kind: ParseErrorKind::UnexpectedToken {
                    expected,
                    found: format!("forward number {v}"),
                },
            }),
        }
    }

    fn literal_list(&mut self) -> PResult<Vec<ReversedLiteral>> {
        let mut out = vec![self.literal("reversed literal")?];
        while self.eat(&Tok::Plus) {
            out.push(self.literal("reversed literal")?);
        }
        Ok(out)
    }

    /// `digit` followed by `place` zeros.
    fn place_value(&mut self) -> PResult<(u8, usize)> {
        let at = self.offset();
        let (n, _) = self.number("place value")?;
        let bytes = n.as_bytes();
        if bytes[1..].iter().any(|&b| b != b'0') {
            return Err(ParseError {
                offset: at,
                kind: ParseErrorKind::Inconsistent("place value must be one digit followed by zeros"),
            });
        }
        Ok((bytes[0] - b'0', bytes.len() - 1))
    }

    fn inconsistent(&self, at: usize, what: &'static str) -> ParseError {
        ParseError {
            offset: at,
            kind: ParseErrorKind::Inconsistent(what),
        }
    }

    fn header(&mut self) -> PResult<Equation> {
        let a = self.signed_forward("left operand")?;
        let op = match self.peek() {
            Some(Tok::Plus) => Op::Add,
            Some(Tok::Minus) => Op::Sub,
            Some(Tok::Times) => Op::Mul,
            Some(Tok::Divide) => Op::Div,
            _ => return Err(self.unexpected("operator")),
        };
        self.pos += 1;
        let b = self.signed_forward("right operand")?;
        self.expect(Tok::Eq, "'='")?;
        Ok(Equation::new(op, a, b))
    }

    fn direct(&mut self, equation: Equation) -> PResult<Trace> {
        let lit = self.literal("reversed result")?;
        self.finish()?;
        let mut steps = Vec::with_capacity(2);
        if equation.op == Op::Mul && equation.b.len() == 1 {
            steps.push(Step::PartialProducts(vec![lit.clone()]));
        }
        let result = lit.value();
        steps.push(Step::Final(lit));
        Ok(Trace {
            equation,
            steps,
            result,
            remainder: None,
        })
    }

    fn multiplication(&mut self, equation: Equation) -> PResult<Trace> {
        if matches!(self.peek(), Some(Tok::RBar))
            || (self.peek() == Some(&Tok::Minus) && self.peek_at(1) == Some(&Tok::RBar))
        {
            return self.direct(equation);
        }
        let mut terms = Vec::new();
        loop {
            let factor = self.forward("multiplicand")?;
            self.expect(Tok::Times, "'×'")?;
            let (digit, place) = self.place_value()?;
            terms.push(SubProduct { factor, digit, place });
            if !self.eat(&Tok::Plus) {
                break;
            }
        }
        self.expect(Tok::Eq, "'='")?;
        let partials = self.literal_list()?;
        let mut steps = vec![Step::Decompose(terms), Step::PartialProducts(partials.clone())];

        let mut current = partials;
        loop {
            self.expect(Tok::Eq, "'='")?;
            if self.peek() == Some(&Tok::LParen) {
                let at = self.offset();
                let grouped = self.grouping()?;
                if grouped != expected_grouping(&current) {
                    return Err(self.inconsistent(at, "grouping does not pair the previous terms"));
                }
                self.expect(Tok::Eq, "'='")?;
            }
            if matches!(self.peek(), Some(Tok::Num(_))) {
                let result = self.forward("product")?;
                self.finish()?;
                return Ok(Trace {
                    equation,
                    steps,
                    result,
                    remainder: None,
                });
            }
            let at = self.offset();
            let sums = self.literal_list()?;
            if sums.len() != current.len().div_ceil(2) {
                return Err(self.inconsistent(at, "round must halve the number of terms"));
            }
            let round: Vec<Combine> = current
                .chunks(2)
                .zip(&sums)
                .map(|(pair, sum)| Combine {
                    left: pair[0].clone(),
                    right: pair.get(1).cloned(),
                    sum: sum.clone(),
                })
                .collect();
            steps.push(Step::PairwiseCombine(round));
            current = sums;
        }
    }

    fn grouping(&mut self) -> PResult<Vec<(ReversedLiteral, Option<ReversedLiteral>)>> {
        let mut out = Vec::new();
        loop {
            if self.eat(&Tok::LParen) {
                let left = self.literal("reversed literal")?;
                self.expect(Tok::Plus, "'+'")?;
                let right = self.literal("reversed literal")?;
                self.expect(Tok::RParen, "')'")?;
                out.push((left, Some(right)));
            } else {
                out.push((self.literal("reversed literal")?, None));
            }
            if !self.eat(&Tok::Plus) {
                return Ok(out);
            }
        }
    }

    fn division(&mut self, equation: Equation) -> PResult<Trace> {
        let compact = self.peek_at(1) == Some(&Tok::Rem) && self.peek_at(2) == Some(&Tok::Minus);
        let verbose = self.peek_at(1) == Some(&Tok::Rem) && self.peek_at(2) == Some(&Tok::LParen);
        let steps = if compact {
            self.compact_blocks(&equation)?
        } else if verbose {
            self.verbose_blocks(&equation)?
        } else {
            Vec::new()
        };
        let result = self.forward("quotient")?;
        let remainder = if self.eat(&Tok::Rem) {
            self.forward("remainder")?
        } else {
            DigitString::zero()
        };
        self.finish()?;
        Ok(Trace {
            equation,
            steps,
            result,
            remainder: Some(remainder),
        })
    }

    fn product_term(&mut self, divisor: &DigitString) -> PResult<(u8, usize)> {
        let at = self.offset();
        let b = self.forward("divisor")?;
        if &b != divisor {
            return Err(self.inconsistent(at, "product term does not use the divisor"));
        }
        self.expect(Tok::Times, "'×'")?;
        self.place_value()
    }

    fn compact_blocks(&mut self, equation: &Equation) -> PResult<Vec<Step>> {
        let mut steps = Vec::new();
        loop {
            let (digit, at) = self.number("quotient digit")?;
            self.expect(Tok::Rem, "'R'")?;
            self.expect(Tok::Minus, "'-'")?;
            self.expect(Tok::LParen, "'('")?;
            let (quotient_digit, place) = self.product_term(&equation.b)?;
            if digit.len() != 1 || digit.as_bytes()[0] - b'0' != quotient_digit {
                return Err(self.inconsistent(at, "quotient digit differs from its product term"));
            }
            self.expect(Tok::RParen, "')'")?;
            self.expect(Tok::LParen, "'('")?;
            let product = self.literal("product literal")?;
            self.expect(Tok::RParen, "')'")?;
            self.expect(Tok::LParen, "'('")?;
            let remainder = self.literal("remainder literal")?;
            self.expect(Tok::RParen, "')'")?;
            let rolled_back = self.eat(&Tok::W);
            steps.push(Step::DivIteration(DivIteration {
                quotient_digit,
                place,
                product,
                remainder,
                rolled_back,
            }));
            if !self.eat(&Tok::Hash) {
                break;
            }
        }
        if let Some(Step::DivIteration(last)) = steps.last() {
            if last.rolled_back && self.peek() == Some(&Tok::Eq) {
                return Err(self.error(ParseErrorKind::DanglingRollback));
            }
        }
        self.expect(Tok::Eq, "'='")?;
        Ok(steps)
    }

    /// `Q` `R(`; checks the running quotient restated in front of a segment.
    fn quotient_prefix(&mut self, expected: &str) -> PResult<String> {
        let (q, at) = self.number("running quotient")?;
        if q.len() != expected.len() + 1 || !q.starts_with(expected) {
            return Err(self.inconsistent(at, "running quotient does not extend the accepted digits"));
        }
        self.expect(Tok::Rem, "'R'")?;
        self.expect(Tok::LParen, "'('")?;
        Ok(q)
    }

    fn verbose_blocks(&mut self, equation: &Equation) -> PResult<Vec<Step>> {
        let mut steps = Vec::new();
        let mut accepted = String::new();
        let mut running = equation.a.clone();
        loop {
            // Q R ( running - b × q0.. )
            let q_at = self.offset();
            let q = self.quotient_prefix(&accepted)?;
            let at = self.offset();
            if self.value("running remainder")?.value() != running {
                return Err(self.inconsistent(at, "restated remainder differs from the running remainder"));
            }
            self.expect(Tok::Minus, "'-'")?;
            let (quotient_digit, place) = self.product_term(&equation.b)?;
            if q.as_bytes()[q.len() - 1] - b'0' != quotient_digit {
                return Err(self.inconsistent(q_at, "quotient digit differs from its product term"));
            }
            self.expect(Tok::RParen, "')'")?;
            self.expect(Tok::Eq, "'='")?;

            // Q R ( running - product )
            let again = self.offset();
            if self.quotient_prefix(&accepted)? != q {
                return Err(self.inconsistent(again, "running quotient changed within a block"));
            }
            let at = self.offset();
            if self.value("running remainder")?.value() != running {
                return Err(self.inconsistent(at, "restated remainder differs from the running remainder"));
            }
            self.expect(Tok::Minus, "'-'")?;
            let product = self.literal("product literal")?;
            self.expect(Tok::RParen, "')'")?;
            self.expect(Tok::Eq, "'='")?;

            // Q R ( remainder ) [W]
            let again = self.offset();
            if self.quotient_prefix(&accepted)? != q {
                return Err(self.inconsistent(again, "running quotient changed within a block"));
            }
            let remainder = self.literal("remainder literal")?;
            self.expect(Tok::RParen, "')'")?;
            let rolled_back = self.eat(&Tok::W);
            if !rolled_back {
                accepted = q;
                running = remainder.value();
            }
            steps.push(Step::DivIteration(DivIteration {
                quotient_digit,
                place,
                product,
                remainder,
                rolled_back,
            }));
            if rolled_back && self.peek() == Some(&Tok::Eq) && !self.block_follows(1) {
                return Err(self.error(ParseErrorKind::DanglingRollback));
            }
            self.expect(Tok::Eq, "'='")?;
            if !self.block_follows(0) {
                return Ok(steps);
            }
        }
    }

    fn block_follows(&self, skip: usize) -> bool {
        matches!(self.peek_at(skip), Some(Tok::Num(_)))
            && self.peek_at(skip + 1) == Some(&Tok::Rem)
            && self.peek_at(skip + 2) == Some(&Tok::LParen)
    }
}

fn expected_grouping(current: &[ReversedLiteral]) -> Vec<(ReversedLiteral, Option<ReversedLiteral>)> {
    current
        .chunks(2)
        .map(|pair| (pair[0].clone(), pair.get(1).cloned()))
        .collect()
}

/// Reads a trace in either form.
pub fn parse(text: &str) -> Result<Trace, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let equation = p.header()?;
    match equation.op {
        Op::Add | Op::Sub => p.direct(equation),
        Op::Mul | Op::Div if equation.a.sign() == Sign::Negative || equation.b.sign() == Sign::Negative => {
            Err(ParseError {
                offset: 0,
                kind: ParseErrorKind::Inconsistent("products and quotients take non-negative operands"),
            })
        }
        Op::Mul => p.multiplication(equation),
        Op::Div => p.division(equation),
    }
}
