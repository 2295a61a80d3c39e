use crate::digits::{self, mul_1d, to_reversed_literal, DigitString, ReversedLiteral};

use super::{
    Combine, DivIteration, Equation, Op, RollbackPlan, Step, SubProduct, Trace, TraceError,
};

fn literal(x: &DigitString, pad: usize) -> ReversedLiteral {
    to_reversed_literal(x, Some(pad.max(x.len()))).expect("pad covers the value")
}

fn minimal(x: &DigitString) -> ReversedLiteral {
    to_reversed_literal(x, None).expect("unpadded literal")
}

fn final_only(op: Op, a: &DigitString, b: &DigitString, value: DigitString) -> Trace {
    Trace {
        equation: Equation::new(op, a.clone(), b.clone()),
        steps: vec![Step::Final(minimal(&value))],
        result: value,
        remainder: None,
    }
}

pub fn gen_add_trace(a: &DigitString, b: &DigitString) -> Trace {
    final_only(Op::Add, a, b, digits::add(a, b))
}

pub fn gen_sub_trace(a: &DigitString, b: &DigitString) -> Trace {
    final_only(Op::Sub, a, b, digits::sub(a, b))
}

/// `a × digit × 10^place` as a literal padded to its full width, so the zeros
/// from the place value are written out.
pub(crate) fn partial_product(a: &DigitString, digit: u8, place: usize) -> ReversedLiteral {
    let row = mul_1d(a, digit).0;
    let width = row.len() + place;
    literal(&row.shifted(place), width)
}

pub(crate) fn combine_sum(left: &ReversedLiteral, right: &ReversedLiteral) -> ReversedLiteral {
    let sum = digits::add(&left.value(), &right.value());
    let pad = left.pad_len().max(right.pad_len());
    literal(&sum, pad)
}

/// Adds adjacent pairs left to right; an odd last term passes through.
pub(crate) fn combine_round(terms: &[ReversedLiteral]) -> Vec<Combine> {
    terms
        .chunks(2)
        .map(|pair| match pair {
            [left, right] => Combine {
                left: left.clone(),
                right: Some(right.clone()),
                sum: combine_sum(left, right),
            },
            [single] => Combine {
                left: single.clone(),
                right: None,
                sum: single.clone(),
            },
            _ => unreachable!(),
        })
        .collect()
}

/// Decomposes `b` by decimal place, writes each partial product reversed, then
/// adds neighbours pairwise until one term is left.
///
/// A single-digit `b` needs no decomposition: the trace is the one reversed
/// partial product, which is also the answer.
pub fn gen_mul_trace(a: &DigitString, b: &DigitString) -> Result<Trace, TraceError> {
    if a.is_negative() || b.is_negative() {
        return Err(TraceError::NegativeOperand { op: Op::Mul });
    }
    let equation = Equation::new(Op::Mul, a.clone(), b.clone());
    let result = digits::mul(a, b);

    if b.len() == 1 {
        let partial = partial_product(a, b.digits()[0], 0);
        return Ok(Trace {
            equation,
            steps: vec![Step::PartialProducts(vec![partial.clone()]), Step::Final(partial)],
            result,
            remainder: None,
        });
    }

    let terms: Vec<SubProduct> = b
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
    let partials: Vec<ReversedLiteral> = terms
        .iter()
        .map(|t| partial_product(a, t.digit, t.place))
        .collect();

    let mut steps = vec![
        Step::Decompose(terms),
        Step::PartialProducts(partials.clone()),
    ];
    let mut current = partials;
    while current.len() > 1 {
        let round = combine_round(&current);
        current = round.iter().map(|c| c.sum.clone()).collect();
        steps.push(Step::PairwiseCombine(round));
    }
    debug_assert_eq!(current[0].value(), result);

    Ok(Trace {
        equation,
        steps,
        result,
        remainder: None,
    })
}

/// Place of the leading quotient digit: the largest `k` with `b·10^k <= a`.
pub(crate) fn leading_place(a: &DigitString, b: &DigitString) -> Option<usize> {
    if b.is_zero() || a.cmp_magnitude(b).is_lt() {
        return None;
    }
    let k = a.len() - b.len();
    if b.shifted(k).cmp_magnitude(a).is_gt() {
        Some(k - 1)
    } else {
        Some(k)
    }
}

fn iteration(
    divisor: &DigitString,
    running: &DigitString,
    digit: u8,
    place: usize,
    rolled_back: bool,
) -> (DivIteration, DigitString) {
    let row = mul_1d(divisor, digit).0;
    let product = literal(&row.shifted(place), row.len() + place);
    let remainder = digits::sub(running, &product.value());
    let it = DivIteration {
        quotient_digit: digit,
        place,
        product,
        remainder: minimal(&remainder),
        rolled_back,
    };
    (it, remainder)
}

/// Long division, one iteration per quotient digit from the most significant.
///
/// Each digit is the exact largest `q` with `q·b·10^k` not exceeding the running
/// remainder. Where `plan` injects a misestimate the wrong digit is written
/// first, its out-of-range remainder flagged for rollback, and the true digit
/// follows at the same place.
pub fn gen_div_trace(
    a: &DigitString,
    b: &DigitString,
    plan: &RollbackPlan,
) -> Result<Trace, TraceError> {
    if a.is_negative() || b.is_negative() {
        return Err(TraceError::NegativeOperand { op: Op::Div });
    }
    if b.is_zero() {
        return Err(TraceError::DivisionByZero);
    }
    let top = leading_place(a, b).ok_or_else(|| TraceError::DivisorExceedsDividend {
        dividend: a.clone(),
        divisor: b.clone(),
    })?;

    let mut steps = Vec::with_capacity(top + 2);
    let mut running = a.clone();
    let mut quotient = Vec::with_capacity(top + 1);
    for (index, place) in (0..=top).rev().enumerate() {
        let digit = estimate(b, &running, place);
        if let Some(delta) = plan.delta_at(index) {
            let wrong = RollbackPlan::misestimate(digit, delta);
            steps.push(Step::DivIteration(iteration(b, &running, wrong, place, true).0));
        }
        let (it, next) = iteration(b, &running, digit, place, false);
        steps.push(Step::DivIteration(it));
        running = next;
        quotient.push(digit);
    }
    quotient.reverse();
    let result = DigitString::from_le_digits(digits::Sign::Positive, quotient)
        .expect("quotient digits are in range");

    Ok(Trace {
        equation: Equation::new(Op::Div, a.clone(), b.clone()),
        steps,
        result,
        remainder: Some(running),
    })
}

fn estimate(divisor: &DigitString, running: &DigitString, place: usize) -> u8 {
    let mut digit = 0;
    for q in 1..=9u8 {
        if mul_1d(divisor, q).0.shifted(place) > *running {
            break;
        }
        digit = q;
    }
    digit
}

/// Dispatches on the equation's operator; `plan` only affects divisions.
pub fn gen_trace(equation: &Equation, plan: &RollbackPlan) -> Result<Trace, TraceError> {
    let Equation { op, a, b } = equation;
    match op {
        Op::Add => Ok(gen_add_trace(a, b)),
        Op::Sub => Ok(gen_sub_trace(a, b)),
        Op::Mul => gen_mul_trace(a, b),
        Op::Div => gen_div_trace(a, b, plan),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::traces::RollbackDelta;

    fn ds(s: &str) -> DigitString {
        s.parse().unwrap()
    }

    fn lit(s: &str) -> ReversedLiteral {
        ReversedLiteral::from_text(s).unwrap()
    }

    #[test]
    fn add_and_sub() {
        let t = gen_add_trace(&ds("123"), &ds("46"));
        assert_eq!(t.steps, vec![Step::Final(lit("961"))]);
        assert_eq!(t.result, ds("169"));
        assert_eq!(gen_sub_trace(&ds("948"), &ds("960")).steps, vec![Step::Final(lit("21-"))]);
        assert_eq!(gen_sub_trace(&ds("5"), &ds("5")).steps, vec![Step::Final(lit("0"))]);
    }

    #[test]
    fn multiplication_rounds() {
        let t = gen_mul_trace(&ds("12"), &ds("4567")).unwrap();
        assert_eq!(t.steps.len(), 4);
        let Step::PartialProducts(partials) = &t.steps[1] else { panic!() };
        let texts: Vec<_> = partials.iter().map(|p| p.text()).collect();
        assert_eq!(texts, ["00084", "0006", "027", "48"]);
        let Step::PairwiseCombine(round) = &t.steps[2] else { panic!() };
        let sums: Vec<_> = round.iter().map(|c| c.sum.text()).collect();
        assert_eq!(sums, ["00045", "408"]);
        let Step::PairwiseCombine(round) = &t.steps[3] else { panic!() };
        assert_eq!(round[0].sum.text(), "40845");
        assert_eq!(t.result, ds("54804"));
    }

    #[test]
    fn odd_rounds_pass_the_last_term_through() {
        let t = gen_mul_trace(&ds("7"), &ds("305")).unwrap();
        let Step::PartialProducts(partials) = &t.steps[1] else { panic!() };
        // the zero digit keeps an all-zero partial
        assert_eq!(partials[1].text(), "00");
        let Step::PairwiseCombine(round) = &t.steps[2] else { panic!() };
        assert_eq!(round.len(), 2);
        assert_eq!(round[1].right, None);
        assert_eq!(round[1].sum, round[1].left);
        assert_eq!(t.result, ds("2135"));
    }

    #[test]
    fn single_digit_multiplier() {
        let t = gen_mul_trace(&ds("12"), &ds("7")).unwrap();
        assert_eq!(t.steps, vec![Step::PartialProducts(vec![lit("48")]), Step::Final(lit("48"))]);
        let t = gen_mul_trace(&ds("98"), &ds("1")).unwrap();
        assert_eq!(t.result, ds("98"));
        assert!(gen_mul_trace(&ds("-2"), &ds("3")).is_err());
    }

    #[test]
    fn long_division() {
        let t = gen_div_trace(&ds("948"), &ds("12"), &RollbackPlan::none()).unwrap();
        let its: Vec<_> = t
            .steps
            .iter()
            .map(|s| match s {
                Step::DivIteration(it) => (it.quotient_digit, it.place, it.product.text(), it.remainder.text()),
                _ => panic!(),
            })
            .collect();
        assert_eq!(its, [(7, 1, "048".into(), "801".into()), (9, 0, "801".into(), "0".into())]);
        assert_eq!(t.result, ds("79"));
        assert_eq!(t.remainder, Some(ds("0")));
    }

    #[test]
    fn division_rollback() {
        let plan = RollbackPlan::single(0, RollbackDelta::Plus);
        let t = gen_div_trace(&ds("948"), &ds("12"), &plan).unwrap();
        let Step::DivIteration(wrong) = &t.steps[0] else { panic!() };
        assert_eq!((wrong.quotient_digit, wrong.place), (8, 1));
        assert_eq!(wrong.product.text(), "069");
        assert_eq!(wrong.remainder.token(), "-r|21");
        assert!(wrong.rolled_back);
        let Step::DivIteration(fixed) = &t.steps[1] else { panic!() };
        assert_eq!((fixed.quotient_digit, fixed.rolled_back), (7, false));
        assert_eq!(t.steps.len(), 3);
        assert_eq!(t.result, ds("79"));
    }

    #[test]
    fn division_edges() {
        let t = gen_div_trace(&ds("37"), &ds("37"), &RollbackPlan::none()).unwrap();
        assert_eq!((t.result, t.remainder), (ds("1"), Some(ds("0"))));
        let t = gen_div_trace(&ds("950"), &ds("12"), &RollbackPlan::none()).unwrap();
        assert_eq!((t.result, t.remainder), (ds("79"), Some(ds("2"))));
        let t = gen_div_trace(&ds("909"), &ds("9"), &RollbackPlan::none()).unwrap();
        assert_eq!(t.result, ds("101"));
        assert_eq!(
            gen_div_trace(&ds("1"), &ds("0"), &RollbackPlan::none()),
            Err(TraceError::DivisionByZero)
        );
        assert!(matches!(
            gen_div_trace(&ds("11"), &ds("12"), &RollbackPlan::none()),
            Err(TraceError::DivisorExceedsDividend { .. })
        ));
    }

    #[test]
    fn leading_places() {
        assert_eq!(leading_place(&ds("948"), &ds("12")), Some(1));
        assert_eq!(leading_place(&ds("148"), &ds("12")), Some(1));
        assert_eq!(leading_place(&ds("118"), &ds("12")), Some(0));
        assert_eq!(leading_place(&ds("5"), &ds("12")), None);
    }
}
