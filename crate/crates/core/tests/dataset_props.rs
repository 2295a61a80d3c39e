use num_bigint::BigInt;
use proptest::prelude::*;

use revorder::dataset::{
    distribution_report, rewrite_equation_chain, rewrite_equation_chain_with, Bucket, DatasetSpec,
    EquationChain, Exclusions, ReverseMarker, Synthesizer,
};
use revorder::traces::{parse, verify, Form, Op};

fn spec(buckets: Vec<Bucket>, seed: u64, rollback_probability: f64) -> DatasetSpec {
    DatasetSpec {
        buckets,
        rollback_probability,
        plus_delta_probability: 0.5,
        form: Form::Compact,
        seed,
    }
}

fn bucket(op: Op, a_digits: u32, b_digits: u32, count: u64) -> Bucket {
    Bucket { op, a_digits, b_digits, count }
}

fn jsonl(s: &DatasetSpec, parallel: bool) -> Vec<u8> {
    let synth = Synthesizer::new(s.clone(), Exclusions::default()).unwrap();
    let mut out = Vec::new();
    synth.write_jsonl(&mut out, parallel).unwrap();
    out
}

#[test]
fn output_depends_only_on_spec() {
    let s = DatasetSpec::standard_scaled(42, 6000);
    let first = jsonl(&s, false);
    assert_eq!(first, jsonl(&s, false));
    assert_eq!(first, jsonl(&s, true));
    assert_eq!(String::from_utf8(first.clone()).unwrap().lines().count(), 6000);
    let other = DatasetSpec::standard_scaled(43, 6000);
    assert_ne!(first, jsonl(&other, true));
}

#[test]
fn records_are_independent_of_range() {
    let s = spec(vec![bucket(Op::Div, 10, 4, 500), bucket(Op::Mul, 8, 8, 500)], 7, 0.5);
    let synth = Synthesizer::new(s, Exclusions::default()).unwrap();
    let all = synth.records_parallel(0..1000).unwrap();
    let tail = synth.records_parallel(700..1000).unwrap();
    assert_eq!(&all[700..], &tail[..]);
    assert_eq!(synth.record(123).unwrap(), all[123]);
}

#[test]
fn rollback_fraction_and_validity() {
    let s = spec(
        (2..=16).map(|a| bucket(Op::Div, a, a.div_ceil(2), 667)).collect(),
        2024,
        0.5,
    );
    let synth = Synthesizer::new(s, Exclusions::default()).unwrap();
    let records = synth.records_parallel(0..synth.len()).unwrap();
    let rolled = records.iter().filter(|r| r.meta.rollback).count();
    let frac = rolled as f64 / records.len() as f64;
    assert!((frac - 0.5).abs() <= 0.02, "rollback fraction {frac}");
    let mut plus = 0;
    for r in &records {
        let t = parse(&r.text()).unwrap();
        assert!(verify(&t).is_valid(), "{}", r.text());
        let a: BigInt = t.equation.a.to_string().parse().unwrap();
        let b: BigInt = t.equation.b.to_string().parse().unwrap();
        assert_eq!(t.result.to_string(), (&a / &b).to_string());
        if r.meta.rollback {
            let wrong = r.completion.split('#').find(|blk| blk.ends_with('W')).unwrap();
            // a remainder that went negative means the estimate was too high
            plus += usize::from(wrong.contains("(-r|"));
        }
    }
    let plus_frac = plus as f64 / rolled as f64;
    assert!((plus_frac - 0.5).abs() < 0.05, "overestimate fraction {plus_frac}");
}

#[test]
fn zero_probability_means_no_rollback() {
    let s = spec(vec![bucket(Op::Div, 8, 2, 300)], 1, 0.0);
    let synth = Synthesizer::new(s, Exclusions::default()).unwrap();
    assert!(synth.iter().all(|r| !r.unwrap().meta.rollback));
}

#[test]
fn histogram_groups_by_meta() {
    let s = spec(
        vec![bucket(Op::Add, 3, 2, 40), bucket(Op::Div, 6, 3, 60), bucket(Op::Mul, 2, 2, 0)],
        5,
        0.5,
    );
    let synth = Synthesizer::new(s, Exclusions::default()).unwrap();
    let records: Vec<_> = synth.iter().collect::<Result<_, _>>().unwrap();
    let h = distribution_report(&records);
    assert_eq!(h.total(), 100);
    let by_op = h.by_op();
    assert_eq!((by_op[&Op::Add], by_op[&Op::Div], by_op[&Op::Mul]), (40, 60, 0));
    assert_eq!(h.plurality(), Some(Op::Div));
    for (k, &n) in &h.counts {
        let direct = records
            .iter()
            .filter(|r| (r.meta.op, r.meta.a_digits, r.meta.b_digits, r.meta.rollback) == (k.op, k.a_digits, k.b_digits, k.rollback))
            .count() as u64;
        assert_eq!(n, direct);
    }
}

#[test]
fn standard_preset_is_division_plurality() {
    let s = DatasetSpec::standard_scaled(9, 2000);
    assert!(s.within_caps());
    let synth = Synthesizer::new(s, Exclusions::default()).unwrap();
    let records: Vec<_> = synth.records_parallel(0..synth.len()).unwrap();
    assert_eq!(distribution_report(&records).plurality(), Some(Op::Div));
}

/// Evaluates one `=`-separated segment of a rewritten chain left to right,
/// decoding `@@..@@` literals.
fn eval_segment(seg: &str) -> BigInt {
    let mut tokens = Vec::new();
    let mut rest = seg;
    while !rest.is_empty() {
        let neg = rest.starts_with('-') && tokens.is_empty();
        if neg {
            rest = &rest[1..];
        }
        let (value, tail) = if let Some(r) = rest.strip_prefix("@@") {
            let end = r.find("@@").unwrap();
            let fwd: String = r[..end].chars().rev().collect();
            (fwd.parse::<BigInt>().unwrap(), &r[end + 2..])
        } else {
            let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
            (rest[..end].parse::<BigInt>().unwrap(), &rest[end..])
        };
        tokens.push(if neg { -value } else { value });
        rest = tail;
        if let Some(op) = rest.chars().next() {
            tokens.push(BigInt::from(op as u32));
            rest = &rest[op.len_utf8()..];
        }
    }
    let mut acc = tokens[0].clone();
    for pair in tokens[1..].chunks(2) {
        let op = char::from_u32(u32::try_from(&pair[0]).unwrap()).unwrap();
        acc = match op {
            '+' => acc + &pair[1],
            '-' => acc - &pair[1],
            '×' => acc * &pair[1],
            _ => unreachable!("{op}"),
        };
    }
    acc
}

proptest! {
    #[test]
    fn rewritten_chains_stay_equal(
        first in -999_999i64..999_999,
        rest in proptest::collection::vec((0usize..3, 0u64..99_999), 0..6),
    ) {
        let mut text = first.to_string();
        let mut oracle = BigInt::from(first);
        for (op, x) in &rest {
            text.push(['+', '-', '×'][*op]);
            text.push_str(&x.to_string());
            oracle = match op {
                0 => oracle + x,
                1 => oracle - x,
                _ => oracle * x,
            };
        }
        let chain: EquationChain = text.parse().unwrap();
        let out = rewrite_equation_chain(&chain);
        let segments: Vec<&str> = out.split('=').collect();
        prop_assert_eq!(segments.len(), if rest.is_empty() { 1 } else { rest.len() + 2 });
        for seg in &segments {
            prop_assert_eq!(eval_segment(seg), oracle.clone(), "{}", out);
        }
        prop_assert_eq!(segments.last().unwrap().to_string(), oracle.to_string());
        let rbar = rewrite_equation_chain_with(&chain, &ReverseMarker::RBar);
        prop_assert_eq!(rbar.matches("r|").count(), rest.len());
    }

    #[test]
    fn exclusions_are_never_emitted(seed in any::<u64>()) {
        let excluded: String = (1..=9).flat_map(|a| (1..=9).map(move |b| format!("{a}+{b}\n"))).take(70).collect();
        let ex = Exclusions::from_lines(&excluded).unwrap();
        let s = spec(vec![bucket(Op::Add, 1, 1, 50)], seed, 0.5);
        let synth = Synthesizer::new(s, ex.clone()).unwrap();
        for r in synth.iter() {
            let r = r.unwrap();
            let eq = r.prompt.trim_end_matches('=').parse().unwrap();
            prop_assert!(!ex.contains(&eq), "{}", r.prompt);
        }
    }
}
