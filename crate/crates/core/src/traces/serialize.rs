use std::fmt::Write;

use crate::digits::ReversedLiteral;

use super::{Combine, DivIteration, Form, Op, Step, SubProduct, Trace};

/// Renders a trace in the canonical surface syntax (no interior whitespace).
///
/// Both forms agree for additions, subtractions and single-digit multipliers.
/// For multi-digit products the verbose form also writes each combination
/// round with its pairs in parentheses. For divisions the verbose form restates
/// the running quotient and remainder at every step, while the compact form
/// writes one `qR-(b×q0..)(product)(remainder)` block per estimate, joined
/// by `#`.
pub fn serialize(t: &Trace, form: Form) -> String {
    let mut out = format!("{}=", t.equation);
    match t.equation.op {
        Op::Add | Op::Sub => write_direct(&mut out, t),
        Op::Mul => write_mul(&mut out, t, form),
        Op::Div => write_div(&mut out, t, form),
    }
    out
}

fn write_direct(out: &mut String, t: &Trace) {
    match t.steps.iter().rev().find_map(final_literal) {
        Some(lit) => out.push_str(&lit.token()),
        None => out.push_str(&t.result.to_string()),
    }
}

fn final_literal(step: &Step) -> Option<&ReversedLiteral> {
    match step {
        Step::Final(lit) => Some(lit),
        _ => None,
    }
}

fn join_tokens<'a>(out: &mut String, lits: impl IntoIterator<Item = &'a ReversedLiteral>) {
    for (i, lit) in lits.into_iter().enumerate() {
        if i > 0 {
            out.push('+');
        }
        out.push_str(&lit.token());
    }
}

fn place_value(digit: u8, place: usize) -> String {
    let mut s = digit.to_string();
    s.extend(std::iter::repeat_n('0', place));
    s
}

fn write_mul(out: &mut String, t: &Trace, form: Form) {
    if t.steps.iter().any(|s| matches!(s, Step::Final(_))) {
        return write_direct(out, t);
    }
    let mut first = true;
    let mut sep = |out: &mut String| {
        if !first {
            out.push('=');
        }
        first = false;
    };
    for step in &t.steps {
        match step {
            Step::Decompose(terms) => {
                sep(out);
                for (i, SubProduct { factor, digit, place }) in terms.iter().enumerate() {
                    if i > 0 {
                        out.push('+');
                    }
                    let _ = write!(out, "{factor}×{}", place_value(*digit, *place));
                }
            }
            Step::PartialProducts(lits) => {
                sep(out);
                join_tokens(out, lits);
            }
            Step::PairwiseCombine(round) => {
                if form == Form::Verbose && round.len() > 1 {
                    sep(out);
                    write_grouping(out, round);
                }
                sep(out);
                join_tokens(out, round.iter().map(|c| &c.sum));
            }
            Step::DivIteration(_) | Step::Final(_) => {}
        }
    }
    sep(out);
    out.push_str(&t.result.to_string());
}

fn write_grouping(out: &mut String, round: &[Combine]) {
    for (i, c) in round.iter().enumerate() {
        if i > 0 {
            out.push('+');
        }
        match &c.right {
            Some(right) => {
                let _ = write!(out, "({}+{})", c.left.token(), right.token());
            }
            None => out.push_str(&c.left.token()),
        }
    }
}

/// Remainders of zero are written bare, as `0`.
fn remainder_token(lit: &ReversedLiteral) -> String {
    if lit.value().is_zero() && lit.pad_len() == 1 {
        "0".to_string()
    } else {
        lit.token()
    }
}

fn iterations(t: &Trace) -> impl Iterator<Item = &DivIteration> {
    t.steps.iter().filter_map(|s| match s {
        Step::DivIteration(it) => Some(it),
        _ => None,
    })
}

fn write_div(out: &mut String, t: &Trace, form: Form) {
    let divisor = &t.equation.b;
    match form {
        Form::Compact => {
            for (i, it) in iterations(t).enumerate() {
                if i > 0 {
                    out.push('#');
                }
                let _ = write!(
                    out,
                    "{}R-({divisor}×{})({})({})",
                    it.quotient_digit,
                    place_value(it.quotient_digit, it.place),
                    it.product.token(),
                    remainder_token(&it.remainder),
                );
                if it.rolled_back {
                    out.push('W');
                }
            }
        }
        Form::Verbose => {
            let mut quotient = String::new();
            let mut running = t.equation.a.to_string();
            for (i, it) in iterations(t).enumerate() {
                if i > 0 {
                    out.push('=');
                }
                let q = format!("{quotient}{}", it.quotient_digit);
                let _ = write!(
                    out,
                    "{q}R({running}-{divisor}×{})={q}R({running}-{})={q}R({})",
                    place_value(it.quotient_digit, it.place),
                    it.product.token(),
                    remainder_token(&it.remainder),
                );
                if it.rolled_back {
                    out.push('W');
                } else {
                    quotient = q;
                    running = remainder_token(&it.remainder);
                }
            }
        }
    }
    if iterations(t).next().is_some() {
        out.push('=');
    }
    out.push_str(&t.result.to_string());
    if let Some(r) = t.remainder.as_ref().filter(|r| !r.is_zero()) {
        let _ = write!(out, "R{r}");
    }
}

/// Forward rendering of the bare equation with its answer: `123+46=169`,
/// `950÷12=79R2`.
pub(crate) fn bare_equation(t: &Trace) -> String {
    let mut s = format!("{}={}", t.equation, t.result);
    if let Some(r) = t.remainder.as_ref().filter(|r| !r.is_zero()) {
        let _ = write!(s, "R{r}");
    }
    s
}
