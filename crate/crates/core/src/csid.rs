//! Count of Sequential Intermediate Digits (CSID).
//!
//! A sequential intermediate digit is one the next output digit depends on but
//! which has not been written yet, such as an unresolved carry. The CSID of an
//! equation is the largest such count over all of its output steps.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digits::{add_with_carries, sub_with_borrows, CarryTrace, DigitString};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormatPolicy {
    /// Result digits written most-significant-first.
    Plain,
    /// Result digits written least-significant-first after `r|`.
    RevOrder,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepSid {
    /// Digit position of the emitted symbol (0 = units). The sign of a negative
    /// result occupies the position above the most significant digit.
    pub position: usize,
    pub sid_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsidReport {
    /// Steps in emission order for the policy.
    pub per_step: Vec<StepSid>,
    pub max_csid: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CsidError {
    #[error("carry-chain classification needs same-sign operands")]
    MixedSigns,
    #[error("digit counts must satisfy n >= m >= 1 (got n={n}, m={m})")]
    BadDigitCounts { n: u32, m: u32 },
}

/// Scores `a + b` (signed; pass a negated `b` for subtraction).
pub fn csid_add_sub(a: &DigitString, b: &DigitString, policy: FormatPolicy) -> CsidReport {
    let (sum, carries) = add_with_carries(a, b);
    report(&sum, &carries, policy)
}

/// Scores `a - b`.
pub fn csid_sub(a: &DigitString, b: &DigitString, policy: FormatPolicy) -> CsidReport {
    let (diff, borrows) = sub_with_borrows(a, b);
    report(&diff, &borrows, policy)
}

fn report(result: &DigitString, carries: &CarryTrace, policy: FormatPolicy) -> CsidReport {
    // Positions whose emission (or suppression, for high zeros) depends on carries.
    let width = result.len().max(carries.len());
    let chain_below = |pos: usize| {
        carries.as_slice()[..pos.min(carries.len())]
            .iter()
            .rev()
            .take_while(|&&c| c != 0)
            .count()
    };
    let sid_at = |pos: usize| match policy {
        FormatPolicy::Plain => chain_below(pos),
        FormatPolicy::RevOrder => usize::from(carries.carry_into(pos) != 0),
    };

    let mut per_step = Vec::with_capacity(width + 1);
    if result.is_negative() {
        per_step.push(StepSid {
            position: width,
            sid_count: 0,
        });
    }
    let positions: Box<dyn Iterator<Item = usize>> = match policy {
        FormatPolicy::Plain => Box::new((0..width).rev()),
        FormatPolicy::RevOrder => Box::new(0..width),
    };
    per_step.extend(positions.map(|position| StepSid {
        position,
        sid_count: sid_at(position),
    }));
    let max_csid = per_step.iter().map(|s| s.sid_count).max().unwrap_or(0);
    CsidReport { per_step, max_csid }
}

/// Longest run of consecutive carries in `a + b`.
pub fn classify_carry_chain(a: &DigitString, b: &DigitString) -> Result<usize, CsidError> {
    if a.sign() != b.sign() && !a.is_zero() && !b.is_zero() {
        return Err(CsidError::MixedSigns);
    }
    Ok(add_with_carries(a, b).1.longest_run())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WorstCaseOp {
    Add,
    Sub,
    /// nD by nD product generated directly.
    MulDirect,
    /// Product generated through a step-by-step decomposition.
    MulDecomposed,
    /// nD by mD quotient generated directly.
    DivDirect,
    DivDecomposed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WorstCase {
    Exact(u64),
    /// Only a linear growth bound is known.
    Linear,
}

/// Worst-case SID count for an operation over `n`-digit (and `m`-digit) operands,
/// excluding quotient estimation.
pub fn csid_worstcase(op: WorstCaseOp, n: u32, m: u32) -> Result<WorstCase, CsidError> {
    if m == 0 || m > n {
        return Err(CsidError::BadDigitCounts { n, m });
    }
    let (n, m) = (u64::from(n), u64::from(m));
    Ok(match op {
        WorstCaseOp::Add | WorstCaseOp::Sub => WorstCase::Exact(n),
        // n^2 for the sub-products, n(n+1) to hold them, 4n^2 to sum them.
        WorstCaseOp::MulDirect => WorstCase::Exact(6 * n * n + n),
        // n - m iterations, each 2m (product) + 2n (subtraction).
        WorstCaseOp::DivDirect => WorstCase::Exact((2 * m + 2 * n) * (n - m)),
        WorstCaseOp::MulDecomposed | WorstCaseOp::DivDecomposed => WorstCase::Linear,
    })
}
