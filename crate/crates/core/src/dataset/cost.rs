use serde::Serialize;

use crate::traces::{bare_equation, gen_trace, serialize, Form, Op, Trace};

use super::{Bucket, DatasetError, DatasetSpec, Exclusions, Synthesizer};

/// Length of a rendered trace, in tokens.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TokenCost {
    pub total_tokens: usize,
    /// Tokens beyond the bare `a op b=answer` line.
    pub extra_tokens: usize,
}

/// One token per character, except that each `r|` marker counts once.
pub fn count_tokens(text: &str) -> usize {
    text.chars().count() - text.matches("r|").count()
}

pub fn token_cost(t: &Trace, form: Form) -> TokenCost {
    let total_tokens = count_tokens(&serialize(t, form));
    let bare = count_tokens(&bare_equation(t));
    TokenCost {
        total_tokens,
        extra_tokens: total_tokens.saturating_sub(bare),
    }
}

/// Mean costs of one operand shape in both forms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CostRow {
    pub op: Op,
    pub a_digits: u32,
    pub b_digits: u32,
    pub samples: u64,
    pub verbose_total: f64,
    pub verbose_extra: f64,
    pub compact_total: f64,
    pub compact_extra: f64,
}

/// Average token costs over `samples` random equations per shape, without
/// rollbacks.
pub fn cost_table(
    op: Op,
    shapes: &[(u32, u32)],
    samples: u64,
    seed: u64,
) -> Result<Vec<CostRow>, DatasetError> {
    let mut rows = Vec::with_capacity(shapes.len());
    for &(a_digits, b_digits) in shapes {
        let spec = DatasetSpec {
            buckets: vec![Bucket { op, a_digits, b_digits, count: samples }],
            rollback_probability: 0.0,
            plus_delta_probability: 0.5,
            form: Form::Verbose,
            seed,
        };
        let synth = Synthesizer::new(spec, Exclusions::default())?;
        let mut sums = [0usize; 4];
        for i in 0..samples {
            let (eq, plan) = synth.equation(i)?;
            let t = gen_trace(&eq, &plan)?;
            let v = token_cost(&t, Form::Verbose);
            let c = token_cost(&t, Form::Compact);
            for (s, x) in sums.iter_mut().zip([v.total_tokens, v.extra_tokens, c.total_tokens, c.extra_tokens]) {
                *s += x;
            }
        }
        let mean = |x: usize| if samples == 0 { 0.0 } else { x as f64 / samples as f64 };
        rows.push(CostRow {
            op,
            a_digits,
            b_digits,
            samples,
            verbose_total: mean(sums[0]),
            verbose_extra: mean(sums[1]),
            compact_total: mean(sums[2]),
            compact_extra: mean(sums[3]),
        });
    }
    Ok(rows)
}
