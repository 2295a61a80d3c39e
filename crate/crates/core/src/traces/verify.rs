use std::fmt;

use crate::digits::{self, mul_1d, DigitString, ReversedLiteral, Sign};

use super::gen::leading_place;
use super::{Combine, DivIteration, Op, Step, SubProduct, Trace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyResult {
    Valid,
    Invalid(Failure),
}

impl VerifyResult {
    pub fn is_valid(&self) -> bool {
        matches!(self, VerifyResult::Valid)
    }
}

/// First failing check. `step` indexes `Trace::steps`; a value equal to the
/// step count refers to the trace's stated answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub step: usize,
    pub check: &'static str,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "step {}: {} (expected {}, found {})",
            self.step, self.check, self.expected, self.found
        )
    }
}

type Checked = Result<(), Failure>;

fn fail(step: usize, check: &'static str, expected: impl ToString, found: impl ToString) -> Failure {
    Failure {
        step,
        check,
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

fn expect_value(step: usize, check: &'static str, expected: &DigitString, found: &DigitString) -> Checked {
    if expected == found {
        Ok(())
    } else {
        Err(fail(step, check, expected, found))
    }
}

fn describe(step: &Step) -> &'static str {
    match step {
        Step::Decompose(_) => "decomposition",
        Step::PartialProducts(_) => "partial products",
        Step::PairwiseCombine(_) => "combination round",
        Step::DivIteration(_) => "division iteration",
        Step::Final(_) => "final literal",
    }
}

/// Re-derives every step with exact arithmetic and reports the first mismatch.
pub fn verify(t: &Trace) -> VerifyResult {
    let checked = match t.equation.op {
        Op::Add | Op::Sub => verify_direct(t),
        Op::Mul => verify_mul(t),
        Op::Div => verify_div(t),
    };
    match checked {
        Ok(()) => VerifyResult::Valid,
        Err(f) => VerifyResult::Invalid(f),
    }
}

fn exact_answer(t: &Trace) -> DigitString {
    let (a, b) = (&t.equation.a, &t.equation.b);
    match t.equation.op {
        Op::Add => digits::add(a, b),
        Op::Sub => digits::sub(a, b),
        Op::Mul => digits::mul(a, b),
        Op::Div => unreachable!("quotients are checked digit by digit"),
    }
}

fn verify_direct(t: &Trace) -> Checked {
    let expected = exact_answer(t);
    match t.steps.as_slice() {
        [Step::Final(lit)] => {
            expect_value(0, "reversed answer", &expected, &lit.value())?;
            expect_value(1, "stated answer", &expected, &t.result)?;
            if t.remainder.is_some() {
                return Err(fail(1, "remainder on a non-division", "none", "a remainder"));
            }
            Ok(())
        }
        [] => Err(fail(0, "trace shape", "a final literal", "no steps")),
        [first, ..] => Err(fail(0, "trace shape", "a single final literal", describe(first))),
    }
}

fn verify_mul(t: &Trace) -> Checked {
    let (a, b) = (&t.equation.a, &t.equation.b);
    if a.is_negative() || b.is_negative() {
        return Err(fail(0, "operand sign", "non-negative operands", t.equation.clone()));
    }
    let expected = exact_answer(t);
    match t.steps.as_slice() {
        [Step::Final(lit)] => {
            expect_value(0, "reversed answer", &expected, &lit.value())?;
        }
        [Step::PartialProducts(partials), Step::Final(lit)] => {
            match partials.as_slice() {
                [p] => expect_value(0, "single partial product", &expected, &p.value())?,
                _ => return Err(fail(0, "partial count", 1, partials.len())),
            }
            if &partials[0] != lit {
                return Err(fail(1, "final literal repeats the partial", partials[0].token(), lit.token()));
            }
        }
        [Step::Decompose(terms), Step::PartialProducts(partials), rounds @ ..] => {
            check_decomposition(a, b, terms)?;
            check_partials(terms, partials)?;
            let last = check_rounds(partials, rounds)?;
            expect_value(t.steps.len(), "product equals the combined terms", &last, &t.result)?;
        }
        [] => return Err(fail(0, "trace shape", "multiplication steps", "no steps")),
        [first, ..] => return Err(fail(0, "trace shape", "decomposition", describe(first))),
    }
    expect_value(t.steps.len(), "stated answer", &expected, &t.result)
}

fn render_terms(terms: &[SubProduct]) -> String {
    terms
        .iter()
        .map(|t| format!("{}×{}{}", t.factor, t.digit, "0".repeat(t.place)))
        .collect::<Vec<_>>()
        .join("+")
}

fn check_decomposition(a: &DigitString, b: &DigitString, terms: &[SubProduct]) -> Checked {
    let expected: Vec<SubProduct> = b
        .digits()
        .iter()
        .enumerate()
        .rev()
        .map(|(place, &digit)| SubProduct {
            factor: a.clone(),
            digit,
            place,
        })
        .collect();
    if terms == expected.as_slice() {
        Ok(())
    } else {
        Err(fail(0, "decomposition by decimal place", render_terms(&expected), render_terms(terms)))
    }
}

fn check_partials(terms: &[SubProduct], partials: &[ReversedLiteral]) -> Checked {
    if terms.len() != partials.len() {
        return Err(fail(1, "one partial per term", terms.len(), partials.len()));
    }
    for (term, lit) in terms.iter().zip(partials) {
        let expected = mul_1d(&term.factor, term.digit).0.shifted(term.place);
        expect_value(1, "partial product", &expected, &lit.value())?;
    }
    Ok(())
}

/// Checks each round pairs the previous terms and adds them; returns the
/// single remaining term.
fn check_rounds(partials: &[ReversedLiteral], rounds: &[Step]) -> Result<DigitString, Failure> {
    let mut current: Vec<ReversedLiteral> = partials.to_vec();
    for (i, step) in rounds.iter().enumerate() {
        let index = i + 2;
        let Step::PairwiseCombine(round) = step else {
            return Err(fail(index, "trace shape", "combination round", describe(step)));
        };
        if round.len() != current.len().div_ceil(2) {
            return Err(fail(index, "round halves the terms", current.len().div_ceil(2), round.len()));
        }
        for (pair, Combine { left, right, sum }) in current.chunks(2).zip(round) {
            let operands = (pair[0].clone(), pair.get(1).cloned());
            if (left.clone(), right.clone()) != operands {
                return Err(fail(index, "round adds adjacent terms", operands.0.token(), left.token()));
            }
            let expected = match right {
                Some(r) => digits::add(&left.value(), &r.value()),
                None => left.value(),
            };
            expect_value(index, "pairwise sum", &expected, &sum.value())?;
        }
        current = round.iter().map(|c| c.sum.clone()).collect();
    }
    match current.as_slice() {
        [last] => Ok(last.value()),
        _ => Err(fail(1 + rounds.len(), "rounds reduce to one term", 1, current.len())),
    }
}

fn verify_div(t: &Trace) -> Checked {
    let (a, b) = (&t.equation.a, &t.equation.b);
    let n = t.steps.len();
    if a.is_negative() || b.is_negative() {
        return Err(fail(0, "operand sign", "non-negative operands", t.equation.clone()));
    }
    if b.is_zero() {
        return Err(fail(0, "non-zero divisor", "divisor > 0", b));
    }

    // pending places, lowest first so the next one is at the end
    let mut places: Vec<usize> = leading_place(a, b).map_or(Vec::new(), |top| (0..=top).collect());
    let mut running = a.clone();
    let mut quotient: Vec<u8> = Vec::new();
    let mut idx = 0;
    while idx < n {
        let Step::DivIteration(it) = &t.steps[idx] else {
            return Err(fail(idx, "trace shape", "division iteration", describe(&t.steps[idx])));
        };
        let Some(&place) = places.last() else {
            return Err(fail(idx, "iteration count", "no further quotient digits", format!("digit at 10^{}", it.place)));
        };
        let new_running = check_iteration(idx, b, &running, place, it)?;
        let unit = b.shifted(place);
        let in_range = !new_running.is_negative() && new_running < unit;
        if it.rolled_back {
            if in_range {
                return Err(fail(idx, "rollback needs an invalid remainder", format!("remainder outside [0, {unit})"), new_running));
            }
            match t.steps.get(idx + 1) {
                Some(Step::DivIteration(next)) if next.place == it.place && next.quotient_digit != it.quotient_digit => {}
                Some(Step::DivIteration(next)) => {
                    return Err(fail(
                        idx + 1,
                        "retry after rollback",
                        format!("a different digit at 10^{}", it.place),
                        format!("digit {} at 10^{}", next.quotient_digit, next.place),
                    ))
                }
                _ => return Err(fail(idx, "retry after rollback", "a following iteration", "none")),
            }
        } else {
            if !in_range {
                return Err(fail(idx, "remainder in range", format!("0 <= remainder < {unit}"), new_running));
            }
            running = new_running;
            quotient.push(it.quotient_digit);
            places.pop();
        }
        idx += 1;
    }
    if let Some(&place) = places.last() {
        return Err(fail(n, "iteration count", format!("a digit at 10^{place}"), "end of iterations"));
    }

    quotient.reverse();
    if quotient.is_empty() {
        quotient.push(0);
    }
    let q = DigitString::from_le_digits(Sign::Positive, quotient).expect("digits in range");
    expect_value(n, "stated quotient", &q, &t.result)?;
    let stated_rem = t.remainder.clone().unwrap_or_default();
    expect_value(n, "stated remainder", &running, &stated_rem)?;
    let rebuilt = digits::add(&digits::mul(&q, b), &running);
    expect_value(n, "dividend = quotient × divisor + remainder", a, &rebuilt)
}

fn check_iteration(
    idx: usize,
    b: &DigitString,
    running: &DigitString,
    place: usize,
    it: &DivIteration,
) -> Result<DigitString, Failure> {
    if it.place != place {
        return Err(fail(idx, "quotient place", format!("10^{place}"), format!("10^{}", it.place)));
    }
    if it.quotient_digit > 9 {
        return Err(fail(idx, "quotient digit", "0..=9", it.quotient_digit));
    }
    let product = mul_1d(b, it.quotient_digit).0.shifted(place);
    expect_value(idx, "divisor × quotient digit", &product, &it.product.value())?;
    let next = digits::sub(running, &product);
    expect_value(idx, "running remainder", &next, &it.remainder.value())?;
    Ok(next)
}
