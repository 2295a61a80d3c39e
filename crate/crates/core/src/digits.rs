//! Signed base-10 digit strings with explicit carry and borrow tracking.
//!
//! Values are stored little-endian (index 0 holds the units digit), which makes
//! the reversed-order rendering used throughout the traces a straight scan.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DigitsError {
    #[error("empty digit string")]
    Empty,
    #[error("invalid digit {0:?} at offset {1}")]
    InvalidDigit(char, usize),
    #[error("digit value {0} out of range 0..=9")]
    DigitOutOfRange(u8),
    #[error("pad length {pad} is shorter than the {needed} significant digits")]
    PadTooShort { pad: usize, needed: usize },
    #[error("negative zero is not a valid literal")]
    NegativeZero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

/// Arbitrary-precision signed integer in canonical little-endian form.
///
/// Invariants: every digit is in `0..=9`, the most significant digit is nonzero
/// unless the value is zero, and zero is always positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitString {
    sign: Sign,
    mags: Vec<u8>,
}

impl DigitString {
    pub fn zero() -> Self {
        Self {
            sign: Sign::Positive,
            mags: vec![0],
        }
    }

    pub fn from_u64(mut value: u64) -> Self {
        let mut mags = Vec::new();
        loop {
            mags.push((value % 10) as u8);
            value /= 10;
            if value == 0 {
                break;
            }
        }
        Self {
            sign: Sign::Positive,
            mags,
        }
    }

    pub fn from_i64(value: i64) -> Self {
        let mut out = Self::from_u64(value.unsigned_abs());
        if value < 0 {
            out.sign = Sign::Negative;
        }
        out
    }

    /// Builds a value from little-endian digits, stripping high zeros.
    pub fn from_le_digits(sign: Sign, mags: Vec<u8>) -> Result<Self, DigitsError> {
        if mags.is_empty() {
            return Err(DigitsError::Empty);
        }
        if let Some(&bad) = mags.iter().find(|&&d| d > 9) {
            return Err(DigitsError::DigitOutOfRange(bad));
        }
        Ok(Self::from_raw(sign, mags))
    }

    fn from_raw(sign: Sign, mut mags: Vec<u8>) -> Self {
        while mags.len() > 1 && mags.last() == Some(&0) {
            mags.pop();
        }
        if mags.is_empty() {
            mags.push(0);
        }
        let mut out = Self { sign, mags };
        if out.is_zero() {
            out.sign = Sign::Positive;
        }
        out
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn is_negative(&self) -> bool {
        self.sign == Sign::Negative
    }

    pub fn is_zero(&self) -> bool {
        self.mags.len() == 1 && self.mags[0] == 0
    }

    /// Little-endian magnitude digits.
    pub fn digits(&self) -> &[u8] {
        &self.mags
    }

    /// Number of significant digits (zero has one).
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.mags.len()
    }

    pub fn abs(&self) -> Self {
        Self {
            sign: Sign::Positive,
            mags: self.mags.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let sign = match self.sign {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        };
        Self {
            sign,
            mags: self.mags.clone(),
        }
    }

    /// Multiplies by `10^places`.
    pub fn shifted(&self, places: usize) -> Self {
        if self.is_zero() || places == 0 {
            return self.clone();
        }
        let mut mags = vec![0; places];
        mags.extend_from_slice(&self.mags);
        Self {
            sign: self.sign,
            mags,
        }
    }

    pub fn cmp_magnitude(&self, other: &Self) -> Ordering {
        cmp_mags(&self.mags, &other.mags)
    }

    /// Converts to `u64` when the value is non-negative and fits.
    pub fn to_u64(&self) -> Option<u64> {
        if self.is_negative() {
            return None;
        }
        self.mags.iter().rev().try_fold(0u64, |acc, &d| {
            acc.checked_mul(10)?.checked_add(u64::from(d))
        })
    }
}

impl Default for DigitString {
    fn default() -> Self {
        Self::zero()
    }
}

fn cmp_mags(a: &[u8], b: &[u8]) -> Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

impl Ord for DigitString {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.sign, other.sign) {
            (Sign::Positive, Sign::Negative) => Ordering::Greater,
            (Sign::Negative, Sign::Positive) => Ordering::Less,
            (Sign::Positive, Sign::Positive) => self.cmp_magnitude(other),
            (Sign::Negative, Sign::Negative) => other.cmp_magnitude(self),
        }
    }
}

impl PartialOrd for DigitString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_negative() {
            f.write_str("-")?;
        }
        let s: String = self.mags.iter().rev().map(|&d| char::from(b'0' + d)).collect();
        f.write_str(&s)
    }
}

/// Parses forward (most-significant-first) decimal text with an optional `-`.
impl FromStr for DigitString {
    type Err = DigitsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (sign, body, offset) = match s.strip_prefix('-') {
            Some(rest) => (Sign::Negative, rest, 1),
            None => (Sign::Positive, s, 0),
        };
        if body.is_empty() {
            return Err(DigitsError::Empty);
        }
        let mut mags = Vec::with_capacity(body.len());
        for (i, ch) in body.char_indices() {
            match ch.to_digit(10) {
                Some(d) => mags.push(d as u8),
                None => return Err(DigitsError::InvalidDigit(ch, i + offset)),
            }
        }
        mags.reverse();
        Ok(Self::from_raw(sign, mags))
    }
}

/// Per-position carry (or borrow) values, little-endian.
///
/// For addition and subtraction every entry is 0 or 1 and entry `i` is the carry
/// (borrow) out of position `i`. For single-digit multiplication entries are the
/// carried tens digit, in `0..=8`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CarryTrace(Vec<u8>);

/// Borrow indicators share the carry representation.
pub type BorrowTrace = CarryTrace;

impl CarryTrace {
    pub fn new(carries: Vec<u8>) -> Self {
        Self(carries)
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Carry into position `pos`, i.e. the carry out of `pos - 1`.
    pub fn carry_into(&self, pos: usize) -> u8 {
        if pos == 0 {
            0
        } else {
            self.0.get(pos - 1).copied().unwrap_or(0)
        }
    }

    /// Length of the longest run of consecutive nonzero entries.
    pub fn longest_run(&self) -> usize {
        let mut best = 0;
        let mut run = 0;
        for &c in &self.0 {
            if c != 0 {
                run += 1;
                best = best.max(run);
            } else {
                run = 0;
            }
        }
        best
    }
}

fn add_mags(a: &[u8], b: &[u8]) -> (Vec<u8>, Vec<u8>) {
    let width = a.len().max(b.len());
    let mut out = Vec::with_capacity(width + 1);
    let mut carries = Vec::with_capacity(width);
    let mut carry = 0;
    for i in 0..width {
        let col = a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0) + carry;
        out.push(col % 10);
        carry = col / 10;
        carries.push(carry);
    }
    if carry != 0 {
        out.push(carry);
    }
    (out, carries)
}

/// `big - small`; requires `|big| >= |small|`. Borrow trace spans both widths.
fn sub_mags(big: &[u8], small: &[u8]) -> (Vec<u8>, Vec<u8>) {
    let width = big.len().max(small.len());
    let mut out = Vec::with_capacity(width);
    let mut borrows = Vec::with_capacity(width);
    let mut borrow = 0i8;
    for i in 0..width {
        let mut col = big.get(i).copied().unwrap_or(0) as i8
            - small.get(i).copied().unwrap_or(0) as i8
            - borrow;
        if col < 0 {
            col += 10;
            borrow = 1;
        } else {
            borrow = 0;
        }
        out.push(col as u8);
        borrows.push(borrow as u8);
    }
    debug_assert_eq!(borrow, 0);
    (out, borrows)
}

/// Signed addition. Same-sign operands are added column by column and the
/// carries recorded; mixed signs become a magnitude subtraction and the
/// returned trace holds its borrows.
pub fn add_with_carries(a: &DigitString, b: &DigitString) -> (DigitString, CarryTrace) {
    if a.sign == b.sign {
        let (mags, carries) = add_mags(&a.mags, &b.mags);
        (DigitString::from_raw(a.sign, mags), CarryTrace(carries))
    } else {
        signed_magnitude_difference(a, b)
    }
}

/// Signed subtraction `a - b`. When the signs agree the smaller magnitude is
/// taken from the larger and the borrows recorded; otherwise the magnitudes
/// are added and the trace holds carries.
pub fn sub_with_borrows(a: &DigitString, b: &DigitString) -> (DigitString, BorrowTrace) {
    add_with_carries(a, &b.neg())
}

// a + b where the signs differ.
fn signed_magnitude_difference(a: &DigitString, b: &DigitString) -> (DigitString, CarryTrace) {
    match a.cmp_magnitude(b) {
        Ordering::Less => {
            let (mags, borrows) = sub_mags(&b.mags, &a.mags);
            (DigitString::from_raw(b.sign, mags), CarryTrace(borrows))
        }
        _ => {
            let (mags, borrows) = sub_mags(&a.mags, &b.mags);
            (DigitString::from_raw(a.sign, mags), CarryTrace(borrows))
        }
    }
}

/// Multiplies by a single digit, recording the carried tens at every column.
///
/// # Panics
///
/// Panics if `d > 9`.
pub fn mul_1d(a: &DigitString, d: u8) -> (DigitString, CarryTrace) {
    assert!(d <= 9, "multiplier digit {d} out of range");
    let mut out = Vec::with_capacity(a.mags.len() + 1);
    let mut carries = Vec::with_capacity(a.mags.len());
    let mut carry = 0;
    for &digit in &a.mags {
        let col = digit * d + carry;
        out.push(col % 10);
        carry = col / 10;
        carries.push(carry);
    }
    if carry != 0 {
        out.push(carry);
    }
    (DigitString::from_raw(a.sign, out), CarryTrace(carries))
}

/// Schoolbook product, accumulated from single-digit rows.
pub fn mul(a: &DigitString, b: &DigitString) -> DigitString {
    let mut acc = DigitString::zero();
    for (place, &d) in b.mags.iter().enumerate() {
        if d == 0 {
            continue;
        }
        let (row, _) = mul_1d(&a.abs(), d);
        acc = add_with_carries(&acc, &row.shifted(place)).0;
    }
    if a.sign != b.sign {
        acc.neg()
    } else {
        acc
    }
}

pub fn add(a: &DigitString, b: &DigitString) -> DigitString {
    add_with_carries(a, b).0
}

pub fn sub(a: &DigitString, b: &DigitString) -> DigitString {
    sub_with_borrows(a, b).0
}

/// Digits written least-significant-first, zero-padded to a fixed width.
///
/// The plain text form puts a negative sign after the digits (`"21-"`); inside
/// traces the sign precedes the reversal marker (`"-r|21"`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReversedLiteral {
    digits: Vec<u8>,
    negative: bool,
}

impl ReversedLiteral {
    /// Little-endian digits including padding.
    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn pad_len(&self) -> usize {
        self.digits.len()
    }

    /// Text form, least significant digit first with a trailing sign marker.
    pub fn text(&self) -> String {
        let mut s = self.digit_text();
        if self.negative {
            s.push('-');
        }
        s
    }

    /// Trace token form: `r|00084`, `-r|21`.
    pub fn token(&self) -> String {
        let sign = if self.negative { "-" } else { "" };
        format!("{sign}r|{}", self.digit_text())
    }

    pub(crate) fn digit_text(&self) -> String {
        self.digits.iter().map(|&d| char::from(b'0' + d)).collect()
    }

    /// Parses the text form (`"21-"`, `"00084"`).
    pub fn from_text(s: &str) -> Result<Self, DigitsError> {
        let (body, negative) = match s.strip_suffix('-') {
            Some(rest) => (rest, true),
            None => (s, false),
        };
        Self::from_digit_text(body, negative)
    }

    /// Builds a literal from reversed digit characters and a sign flag.
    pub fn from_digit_text(body: &str, negative: bool) -> Result<Self, DigitsError> {
        if body.is_empty() {
            return Err(DigitsError::Empty);
        }
        let mut digits = Vec::with_capacity(body.len());
        for (i, ch) in body.char_indices() {
            match ch.to_digit(10) {
                Some(d) => digits.push(d as u8),
                None => return Err(DigitsError::InvalidDigit(ch, i)),
            }
        }
        if negative && digits.iter().all(|&d| d == 0) {
            return Err(DigitsError::NegativeZero);
        }
        Ok(Self { digits, negative })
    }

    pub fn value(&self) -> DigitString {
        let sign = if self.negative {
            Sign::Negative
        } else {
            Sign::Positive
        };
        DigitString::from_raw(sign, self.digits.clone())
    }
}

/// Renders `x` least-significant-first, zero-padded to `pad_len` when given.
pub fn to_reversed_literal(
    x: &DigitString,
    pad_len: Option<usize>,
) -> Result<ReversedLiteral, DigitsError> {
    let mut digits = x.mags.clone();
    if let Some(pad) = pad_len {
        if pad < digits.len() {
            return Err(DigitsError::PadTooShort {
                pad,
                needed: digits.len(),
            });
        }
        digits.resize(pad, 0);
    }
    Ok(ReversedLiteral {
        digits,
        negative: x.is_negative(),
    })
}

/// Decodes the text form of a reversed literal (e.g. `"40845"` is 54804).
pub fn from_reversed_literal(s: &str) -> Result<DigitString, DigitsError> {
    Ok(ReversedLiteral::from_text(s)?.value())
}
