//! Deterministic synthesis of reversed-order training records.
//!
//! A [`DatasetSpec`] lists buckets of `(operation, digits of a, digits of b,
//! count)`. Record `i` of the flattened bucket list draws from its own ChaCha
//! stream keyed by `(seed, i)`, so any index range can be produced
//! independently and parallel output is byte-identical to serial output.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::io::Write;
use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::csid::classify_carry_chain;
use crate::digits::{sub_with_borrows, DigitString, Sign};
use crate::traces::{gen_trace, serialize, Equation, Form, Op, RollbackDelta, RollbackPlan};

mod cost;
mod rewrite;

pub use cost::{cost_table, count_tokens, token_cost, CostRow, TokenCost};
pub use rewrite::{
    rewrite_equation_chain, rewrite_equation_chain_with, ChainError, ChainOp, EquationChain,
    ReverseMarker,
};

/// Equations in the full-size standard preset.
pub const STANDARD_TOTAL: u64 = 1_700_000;
/// Largest operand width for additions and subtractions, and for dividends.
pub const MAX_DIGITS: u32 = 16;
/// Largest width of either multiplication operand, apart from 16D×1D.
pub const MAX_MUL_DIGITS: u32 = 8;
/// Share of the preset given to each operation. Division is the largest.
pub const OP_SHARES: [(Op, f64); 4] = [(Op::Add, 0.2), (Op::Sub, 0.2), (Op::Mul, 0.2), (Op::Div, 0.4)];

const MAX_ATTEMPTS: usize = 10_000;
const CHUNK: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bucket {
    pub op: Op,
    pub a_digits: u32,
    pub b_digits: u32,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetSpec {
    pub buckets: Vec<Bucket>,
    /// Chance that a division record carries one misestimated quotient digit.
    #[serde(default = "half")]
    pub rollback_probability: f64,
    /// Chance that a misestimate is `+1` rather than `-1`.
    #[serde(default = "half")]
    pub plus_delta_probability: f64,
    #[serde(default)]
    pub form: Form,
    pub seed: u64,
}

fn half() -> f64 {
    0.5
}

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("probability {name} = {value} is outside [0, 1]")]
    BadProbability { name: &'static str, value: f64 },
    #[error("bucket {index} has a zero digit count")]
    ZeroDigits { index: usize },
    #[error("bucket {index}: divisor wider than dividend")]
    DivisorTooWide { index: usize },
    #[error("bucket {index} has no candidate equations left ({candidates} candidates, {excluded} excluded)")]
    ImpossibleBucket { index: usize, candidates: u128, excluded: u128 },
    #[error("record {index}: no admissible equation after {MAX_ATTEMPTS} draws")]
    Exhausted { index: u64 },
    #[error("exclusion list line {line}: {reason}")]
    BadExclusion { line: usize, reason: String },
    #[error("record index {0} out of range")]
    IndexOutOfRange(u64),
    #[error(transparent)]
    Trace(#[from] crate::traces::TraceError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl DatasetSpec {
    /// The full-size preset: 1.7M equations inside the published operand caps.
    pub fn standard(seed: u64) -> Self {
        Self::standard_scaled(seed, STANDARD_TOTAL)
    }

    /// The preset's bucket layout with `total` records spread by
    /// [`OP_SHARES`] and evenly within each operation.
    pub fn standard_scaled(seed: u64, total: u64) -> Self {
        let mut buckets = Vec::new();
        let mut assigned = 0u64;
        for (i, (op, share)) in OP_SHARES.iter().enumerate() {
            let op_total = if i + 1 == OP_SHARES.len() {
                total - assigned
            } else {
                (total as f64 * share).round() as u64
            };
            assigned += op_total;
            let shapes = standard_shapes(*op);
            let per = op_total / shapes.len() as u64;
            let extra = op_total % shapes.len() as u64;
            for (j, (a_digits, b_digits)) in shapes.into_iter().enumerate() {
                buckets.push(Bucket {
                    op: *op,
                    a_digits,
                    b_digits,
                    count: per + u64::from((j as u64) < extra),
                });
            }
        }
        Self {
            buckets,
            rollback_probability: 0.5,
            plus_delta_probability: 0.5,
            form: Form::Compact,
            seed,
        }
    }

    pub fn total(&self) -> u64 {
        self.buckets.iter().map(|b| b.count).sum()
    }

    /// Whether every non-empty bucket respects the published operand caps.
    pub fn within_caps(&self) -> bool {
        self.buckets.iter().filter(|b| b.count > 0).all(|b| match b.op {
            Op::Add | Op::Sub => b.a_digits <= MAX_DIGITS && b.b_digits <= MAX_DIGITS,
            Op::Mul => {
                (b.a_digits <= MAX_MUL_DIGITS && b.b_digits <= MAX_MUL_DIGITS)
                    || (b.a_digits <= MAX_DIGITS && b.b_digits == 1)
            }
            Op::Div => b.a_digits <= MAX_DIGITS,
        })
    }

    pub fn validate(&self) -> Result<(), DatasetError> {
        for (name, value) in [
            ("rollback_probability", self.rollback_probability),
            ("plus_delta_probability", self.plus_delta_probability),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(DatasetError::BadProbability { name, value });
            }
        }
        for (index, b) in self.buckets.iter().enumerate() {
            if b.count == 0 {
                continue;
            }
            if b.a_digits == 0 || b.b_digits == 0 {
                return Err(DatasetError::ZeroDigits { index });
            }
            if b.op == Op::Div && b.b_digits > b.a_digits {
                return Err(DatasetError::DivisorTooWide { index });
            }
        }
        Ok(())
    }
}

fn standard_shapes(op: Op) -> Vec<(u32, u32)> {
    match op {
        Op::Add | Op::Sub => (1..=MAX_DIGITS)
            .flat_map(|a| (1..=MAX_DIGITS).map(move |b| (a, b)))
            .collect(),
        Op::Mul => (1..=MAX_MUL_DIGITS)
            .flat_map(|a| (1..=MAX_MUL_DIGITS).map(move |b| (a, b)))
            .chain(std::iter::once((MAX_DIGITS, 1)))
            .collect(),
        Op::Div => (1..=MAX_DIGITS)
            .flat_map(|a| (1..=a).map(move |b| (a, b)))
            .collect(),
    }
}

/// Number of operands with exactly `digits` digits and a nonzero lead.
fn width_count(digits: u32) -> u128 {
    10u128
        .checked_pow(digits - 1)
        .map_or(u128::MAX, |p| p.saturating_mul(9))
}

fn candidate_count(b: &Bucket) -> u128 {
    let (na, nb) = (width_count(b.a_digits), width_count(b.b_digits));
    if b.op == Op::Div && b.a_digits == b.b_digits {
        // pairs with divisor <= dividend
        na.saturating_mul(na.saturating_add(1)) / 2
    } else {
        na.saturating_mul(nb)
    }
}

/// Equations that must never be emitted, keyed by canonical form.
#[derive(Clone, Debug, Default)]
pub struct Exclusions {
    set: HashSet<String>,
    equations: Vec<Equation>,
}

impl Exclusions {
    /// Reads newline-delimited equations; blank lines are skipped and anything
    /// from `=` on is ignored, so full gold lines are accepted too.
    pub fn from_lines(text: &str) -> Result<Self, DatasetError> {
        let mut out = Self::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let head = line.split('=').next().unwrap_or(line);
            let eq: Equation = head.parse().map_err(|e: crate::traces::EquationError| {
                DatasetError::BadExclusion {
                    line: i + 1,
                    reason: e.to_string(),
                }
            })?;
            out.insert(eq);
        }
        Ok(out)
    }

    pub fn insert(&mut self, eq: Equation) {
        if self.set.insert(eq.to_string()) {
            self.equations.push(eq);
        }
    }

    pub fn contains(&self, eq: &Equation) -> bool {
        self.set.contains(&eq.to_string())
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    fn in_bucket(&self, b: &Bucket) -> u128 {
        self.equations
            .iter()
            .filter(|eq| {
                eq.op == b.op
                    && !eq.a.is_negative()
                    && !eq.b.is_negative()
                    && eq.a.len() == b.a_digits as usize
                    && eq.b.len() == b.b_digits as usize
                    && !eq.a.is_zero()
                    && !eq.b.is_zero()
                    && (b.op != Op::Div || eq.b <= eq.a)
            })
            .count() as u128
    }
}

/// Per-record metadata, written next to prompt and completion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordMeta {
    pub op: Op,
    pub a_digits: u32,
    pub b_digits: u32,
    pub rollback: bool,
    /// Longest carry (addition) or borrow (subtraction) chain.
    pub carry_chain: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    /// Equation up to and including `=`.
    pub prompt: String,
    /// Everything the trace writes after the prompt.
    pub completion: String,
    #[serde(flatten)]
    pub meta: RecordMeta,
}

impl SampleRecord {
    pub fn text(&self) -> String {
        format!("{}{}", self.prompt, self.completion)
    }
}

/// Sidecar written next to a dataset file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub spec: DatasetSpec,
    pub records: u64,
    pub excluded_equations: usize,
    pub format: String,
}

pub struct Synthesizer {
    spec: DatasetSpec,
    exclusions: Exclusions,
    /// Cumulative record count at the end of each bucket.
    ends: Vec<u64>,
}

impl Synthesizer {
    pub fn new(spec: DatasetSpec, exclusions: Exclusions) -> Result<Self, DatasetError> {
        spec.validate()?;
        for (index, b) in spec.buckets.iter().enumerate() {
            if b.count == 0 {
                continue;
            }
            let candidates = candidate_count(b);
            let excluded = exclusions.in_bucket(b);
            if candidates <= excluded {
                return Err(DatasetError::ImpossibleBucket {
                    index,
                    candidates,
                    excluded,
                });
            }
        }
        let ends = spec
            .buckets
            .iter()
            .scan(0u64, |acc, b| {
                *acc += b.count;
                Some(*acc)
            })
            .collect();
        Ok(Self {
            spec,
            exclusions,
            ends,
        })
    }

    pub fn spec(&self) -> &DatasetSpec {
        &self.spec
    }

    pub fn len(&self) -> u64 {
        self.ends.last().copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn manifest(&self) -> Manifest {
        Manifest {
            spec: self.spec.clone(),
            records: self.len(),
            excluded_equations: self.exclusions.len(),
            format: "jsonl".to_string(),
        }
    }

    /// The equation and rollback plan behind record `index`, drawn from the
    /// record's own random stream.
    pub fn equation(&self, index: u64) -> Result<(Equation, RollbackPlan), DatasetError> {
        let bucket = self.bucket_of(index)?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.spec.seed);
        rng.set_stream(index);

        let eq = self.draw_equation(bucket, &mut rng, index)?;
        let plan = if eq.op == Op::Div && rng.gen_bool(self.spec.rollback_probability) {
            let digits = quotient_digit_count(&eq.a, &eq.b);
            let iteration = rng.gen_range(0..digits);
            let delta = if rng.gen_bool(self.spec.plus_delta_probability) {
                RollbackDelta::Plus
            } else {
                RollbackDelta::Minus
            };
            RollbackPlan::single(iteration, delta)
        } else {
            RollbackPlan::none()
        };
        Ok((eq, plan))
    }

    fn bucket_of(&self, index: u64) -> Result<&Bucket, DatasetError> {
        let i = self.ends.partition_point(|&end| end <= index);
        self.spec.buckets.get(i).ok_or(DatasetError::IndexOutOfRange(index))
    }

    pub fn record(&self, index: u64) -> Result<SampleRecord, DatasetError> {
        let bucket = self.bucket_of(index)?;
        let (eq, plan) = self.equation(index)?;
        let rollback = plan != RollbackPlan::none();
        let trace = gen_trace(&eq, &plan)?;
        let text = serialize(&trace, self.spec.form);
        let prompt = format!("{eq}=");
        let completion = text[prompt.len()..].to_string();
        let carry_chain = match eq.op {
            Op::Add => classify_carry_chain(&eq.a, &eq.b).ok().map(|c| c as u32),
            Op::Sub => Some(sub_with_borrows(&eq.a, &eq.b).1.longest_run() as u32),
            Op::Mul | Op::Div => None,
        };
        Ok(SampleRecord {
            prompt,
            completion,
            meta: RecordMeta {
                op: eq.op,
                a_digits: bucket.a_digits,
                b_digits: bucket.b_digits,
                rollback,
                carry_chain,
            },
        })
    }

    fn draw_equation(
        &self,
        bucket: &Bucket,
        rng: &mut ChaCha8Rng,
        index: u64,
    ) -> Result<Equation, DatasetError> {
        for _ in 0..MAX_ATTEMPTS {
            let a = draw_operand(rng, bucket.a_digits);
            let b = draw_operand(rng, bucket.b_digits);
            if bucket.op == Op::Div && b > a {
                continue;
            }
            let eq = Equation::new(bucket.op, a, b);
            if !self.exclusions.contains(&eq) {
                return Ok(eq);
            }
        }
        Err(DatasetError::Exhausted { index })
    }

    pub fn iter(&self) -> impl Iterator<Item = Result<SampleRecord, DatasetError>> + '_ {
        (0..self.len()).map(move |i| self.record(i))
    }

    /// Records of `range` built on the rayon pool, in index order.
    pub fn records_parallel(&self, range: Range<u64>) -> Result<Vec<SampleRecord>, DatasetError> {
        range.into_par_iter().map(|i| self.record(i)).collect()
    }

    /// Writes one JSON object per line; returns the number of records.
    pub fn write_jsonl<W: Write>(&self, mut out: W, parallel: bool) -> Result<u64, DatasetError> {
        let total = self.len();
        let mut start = 0;
        while start < total {
            let end = (start + CHUNK).min(total);
            let chunk = if parallel {
                self.records_parallel(start..end)?
            } else {
                (start..end).map(|i| self.record(i)).collect::<Result<_, _>>()?
            };
            for rec in &chunk {
                serde_json::to_writer(&mut out, rec)?;
                out.write_all(b"\n")?;
            }
            start = end;
        }
        out.flush()?;
        Ok(total)
    }
}

fn quotient_digit_count(a: &DigitString, b: &DigitString) -> usize {
    let k = a.len() - b.len();
    if b.shifted(k) > *a {
        k
    } else {
        k + 1
    }
}

fn draw_operand(rng: &mut ChaCha8Rng, digits: u32) -> DigitString {
    let mut le: Vec<u8> = (1..digits).map(|_| rng.gen_range(0..=9)).collect();
    le.push(rng.gen_range(1..=9));
    DigitString::from_le_digits(Sign::Positive, le).expect("digits in range")
}

/// Streams the records of `spec`, skipping every equation in `exclusions`.
pub fn synth(
    spec: DatasetSpec,
    exclusions: Exclusions,
) -> Result<impl Iterator<Item = Result<SampleRecord, DatasetError>>, DatasetError> {
    let synth = Synthesizer::new(spec, exclusions)?;
    Ok((0..synth.len()).map(move |i| synth.record(i)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HistogramKey {
    pub op: Op,
    pub a_digits: u32,
    pub b_digits: u32,
    pub rollback: bool,
}

/// Record counts grouped by operation, digit bucket and rollback flag.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Histogram {
    pub counts: BTreeMap<HistogramKey, u64>,
}

impl Histogram {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Totals per operation; every operation is present, possibly with 0.
    pub fn by_op(&self) -> BTreeMap<Op, u64> {
        let mut out: BTreeMap<Op, u64> = Op::ALL.iter().map(|&op| (op, 0)).collect();
        for (k, v) in &self.counts {
            *out.entry(k.op).or_default() += v;
        }
        out
    }

    /// The operation with the most records, if any.
    pub fn plurality(&self) -> Option<Op> {
        let by_op = self.by_op();
        let max = *by_op.values().max()?;
        if max == 0 {
            return None;
        }
        let mut leaders = by_op.iter().filter(|(_, &v)| v == max);
        let (&op, _) = leaders.next()?;
        leaders.next().is_none().then_some(op)
    }
}

impl fmt::Display for Histogram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "op\ta_digits\tb_digits\trollback\tcount")?;
        for (k, v) in &self.counts {
            writeln!(f, "{}\t{}\t{}\t{}\t{v}", k.op.name(), k.a_digits, k.b_digits, k.rollback)?;
        }
        write!(f, "total\t\t\t\t{}", self.total())
    }
}

pub fn distribution_report<'a>(records: impl IntoIterator<Item = &'a SampleRecord>) -> Histogram {
    let mut hist = Histogram::default();
    for r in records {
        let key = HistogramKey {
            op: r.meta.op,
            a_digits: r.meta.a_digits,
            b_digits: r.meta.b_digits,
            rollback: r.meta.rollback,
        };
        *hist.counts.entry(key).or_default() += 1;
    }
    hist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::traces::{parse, verify};

    fn spec(buckets: Vec<Bucket>, seed: u64) -> DatasetSpec {
        DatasetSpec {
            buckets,
            rollback_probability: 0.5,
            plus_delta_probability: 0.5,
            form: Form::Compact,
            seed,
        }
    }

    fn bucket(op: Op, a_digits: u32, b_digits: u32, count: u64) -> Bucket {
        Bucket { op, a_digits, b_digits, count }
    }

    #[test]
    fn standard_preset_shape() {
        let p = DatasetSpec::standard(7);
        assert_eq!(p.total(), STANDARD_TOTAL);
        assert!(p.within_caps());
        assert_eq!(p.rollback_probability, 0.5);
        let div: u64 = p.buckets.iter().filter(|b| b.op == Op::Div).map(|b| b.count).sum();
        for op in [Op::Add, Op::Sub, Op::Mul] {
            let n: u64 = p.buckets.iter().filter(|b| b.op == op).map(|b| b.count).sum();
            assert!(div > n);
        }
        assert!(p.buckets.iter().any(|b| b.op == Op::Mul && b.a_digits == 16 && b.b_digits == 1));
        let scaled = DatasetSpec::standard_scaled(7, 1001);
        assert_eq!(scaled.total(), 1001);
    }

    #[test]
    fn caps_detect_oversized_buckets() {
        let s = spec(vec![bucket(Op::Mul, 9, 2, 1)], 0);
        assert!(!s.within_caps());
        let s = spec(vec![bucket(Op::Add, 17, 2, 1)], 0);
        assert!(!s.within_caps());
    }

    #[test]
    fn empty_spec_is_empty_stream() {
        let s = spec(vec![bucket(Op::Add, 3, 3, 0)], 1);
        assert_eq!(synth(s, Exclusions::default()).unwrap().count(), 0);
    }

    #[test]
    fn spec_errors() {
        let mut s = spec(vec![bucket(Op::Div, 2, 3, 5)], 1);
        assert!(matches!(Synthesizer::new(s.clone(), Exclusions::default()), Err(DatasetError::DivisorTooWide { .. })));
        s.buckets = vec![bucket(Op::Add, 0, 3, 5)];
        assert!(matches!(Synthesizer::new(s.clone(), Exclusions::default()), Err(DatasetError::ZeroDigits { .. })));
        s.buckets = vec![bucket(Op::Add, 1, 1, 5)];
        s.rollback_probability = 1.5;
        assert!(matches!(Synthesizer::new(s, Exclusions::default()), Err(DatasetError::BadProbability { .. })));
    }

    #[test]
    fn exhausted_bucket_is_a_spec_error() {
        let mut ex = Exclusions::default();
        for a in 1..=9u64 {
            for b in 1..=a {
                ex.insert(Equation::new(Op::Div, DigitString::from_u64(a), DigitString::from_u64(b)));
            }
        }
        let s = spec(vec![bucket(Op::Div, 1, 1, 1)], 3);
        match Synthesizer::new(s, ex) {
            Err(DatasetError::ImpossibleBucket { candidates, excluded, .. }) => {
                assert_eq!((candidates, excluded), (45, 45));
            }
            other => panic!("{:?}", other.err()),
        }
    }

    #[test]
    fn exclusions_are_honoured() {
        let ex = Exclusions::from_lines("1+1\n 2 + 2 = 4\n\n3+3=r|6\n").unwrap();
        assert_eq!(ex.len(), 3);
        let synth = Synthesizer::new(spec(vec![bucket(Op::Add, 1, 1, 300)], 11), ex.clone()).unwrap();
        for r in synth.iter() {
            let r = r.unwrap();
            assert!(!["1+1=", "2+2=", "3+3="].contains(&r.prompt.as_str()));
        }
        assert!(Exclusions::from_lines("1+1\nnope\n").is_err());
    }

    #[test]
    fn records_are_valid_and_labelled() {
        let s = spec(
            vec![
                bucket(Op::Add, 5, 3, 20),
                bucket(Op::Sub, 2, 6, 20),
                bucket(Op::Mul, 4, 3, 20),
                bucket(Op::Mul, 16, 1, 5),
                bucket(Op::Div, 9, 4, 40),
                bucket(Op::Div, 1, 1, 10),
            ],
            99,
        );
        let synth = Synthesizer::new(s, Exclusions::default()).unwrap();
        assert_eq!(synth.len(), 115);
        for r in synth.iter() {
            let r = r.unwrap();
            let t = parse(&r.text()).unwrap();
            assert!(verify(&t).is_valid(), "{}", r.text());
            assert_eq!(t.equation.a.len() as u32, r.meta.a_digits);
            assert_eq!(t.equation.b.len() as u32, r.meta.b_digits);
            let rolled = r.completion.contains('W');
            assert_eq!(rolled, r.meta.rollback);
            assert_eq!(r.meta.carry_chain.is_some(), matches!(r.meta.op, Op::Add | Op::Sub));
        }
    }

    #[test]
    fn parallel_matches_serial() {
        let s = spec(vec![bucket(Op::Div, 8, 3, 300), bucket(Op::Add, 16, 16, 300)], 5);
        let synth = Synthesizer::new(s, Exclusions::default()).unwrap();
        let mut serial = Vec::new();
        let mut parallel = Vec::new();
        synth.write_jsonl(&mut serial, false).unwrap();
        synth.write_jsonl(&mut parallel, true).unwrap();
        assert_eq!(serial, parallel);
        let line = String::from_utf8(serial).unwrap().lines().next().unwrap().to_string();
        let v: serde_json::Value = serde_json::from_str(&line).unwrap();
        for key in ["prompt", "completion", "op", "a_digits", "b_digits", "rollback", "carry_chain"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn histogram_counts() {
        assert_eq!(distribution_report(std::iter::empty()).total(), 0);
        assert!(distribution_report(std::iter::empty()).by_op().values().all(|&v| v == 0));
        let rec = |op, rollback| SampleRecord {
            prompt: String::new(),
            completion: String::new(),
            meta: RecordMeta { op, a_digits: 2, b_digits: 1, rollback, carry_chain: None },
        };
        let records = vec![rec(Op::Div, true), rec(Op::Div, false), rec(Op::Div, true), rec(Op::Mul, false)];
        let h = distribution_report(&records);
        assert_eq!(h.total(), 4);
        let key = HistogramKey { op: Op::Div, a_digits: 2, b_digits: 1, rollback: true };
        assert_eq!(h.counts[&key], 2);
        assert_eq!(h.plurality(), Some(Op::Div));
    }

    #[test]
    fn candidate_counts() {
        assert_eq!(candidate_count(&bucket(Op::Add, 1, 1, 1)), 81);
        assert_eq!(candidate_count(&bucket(Op::Div, 1, 1, 1)), 45);
        assert_eq!(candidate_count(&bucket(Op::Mul, 16, 16, 1)), 81 * 10u128.pow(30));
        assert_eq!(quotient_digit_count(&"948".parse().unwrap(), &"12".parse().unwrap()), 2);
        assert_eq!(quotient_digit_count(&"148".parse().unwrap(), &"12".parse().unwrap()), 2);
        assert_eq!(quotient_digit_count(&"118".parse().unwrap(), &"12".parse().unwrap()), 1);
    }
}
