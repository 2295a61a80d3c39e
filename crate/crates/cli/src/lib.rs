//! Command implementations behind the `revorder` binary.
//!
//! Every command returns its output as text so it can be driven in-process;
//! the binary only parses arguments, writes the text and maps errors to exit
//! codes.

use std::fmt::{self, Write as _};
use std::fs;
use std::io::{self, BufWriter, Read};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use revorder::csid::{csid_add_sub, csid_sub, csid_worstcase, FormatPolicy, WorstCase, WorstCaseOp};
use revorder::dataset::{
    cost_table, distribution_report, DatasetSpec, Exclusions, SampleRecord, Synthesizer,
};
use revorder::digits::{DigitString, ReversedLiteral};
use revorder::traces::{
    gen_trace, parse, serialize, verify, Equation, Form, Op, RollbackDelta, RollbackPlan, Step,
    VerifyResult,
};

pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INVALID: u8 = 3;
pub const EXIT_IO: u8 = 4;

const EXIT_CODES: &str = "Exit codes: 0 success, 2 usage or malformed input, \
                          3 verification failure, 4 I/O error.";

#[derive(Debug, Parser)]
#[command(name = "revorder", version, about = "Reversed-order arithmetic traces", after_help = EXIT_CODES)]
pub struct Cli {
    /// Trace surface form.
    #[arg(long, global = true, value_enum)]
    pub form: Option<FormArg>,
    /// Random seed (required by `synth`).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output path; standard output when omitted (the dataset file for `synth`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Verbose,
    Compact,
}

impl From<FormArg> for Form {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Verbose => Form::Verbose,
            FormArg::Compact => Form::Compact,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the trace of one equation, e.g. `948/12`.
    Gen(GenArgs),
    /// Check a file of traces, one per line (`-` reads standard input).
    Verify { input: PathBuf },
    /// CSID of an equation, or a worst-case count with `--worst-case`.
    Csid(CsidArgs),
    /// Write a JSONL dataset and its manifest.
    Synth(SynthArgs),
    /// Token-cost tables, or a histogram of an existing dataset.
    Stats(StatsArgs),
    /// Exact-match precision of predictions against gold lines.
    Score(ScoreArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub equation: String,
    /// Misestimate one quotient digit and roll it back (division only).
    #[arg(long)]
    pub rollback: bool,
    /// Quotient digit to misestimate, most significant first.
    #[arg(long, default_value_t = 0, requires = "rollback")]
    pub rollback_at: usize,
    #[arg(long, value_enum, default_value_t = DeltaArg::Plus, requires = "rollback")]
    pub rollback_delta: DeltaArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DeltaArg {
    Plus,
    Minus,
}

#[derive(Debug, Args)]
pub struct CsidArgs {
    #[arg(required_unless_present = "worst_case", conflicts_with = "worst_case")]
    pub equation: Option<String>,
    #[arg(long, value_enum, requires = "n")]
    pub worst_case: Option<WorstArg>,
    #[arg(short, long)]
    pub n: Option<u32>,
    /// Divisor digits; defaults to `n`.
    #[arg(short, long)]
    pub m: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WorstArg {
    Add,
    Sub,
    MulDirect,
    MulDecomposed,
    DivDirect,
    DivDecomposed,
}

impl From<WorstArg> for WorstCaseOp {
    fn from(w: WorstArg) -> Self {
        match w {
            WorstArg::Add => WorstCaseOp::Add,
            WorstArg::Sub => WorstCaseOp::Sub,
            WorstArg::MulDirect => WorstCaseOp::MulDirect,
            WorstArg::MulDecomposed => WorstCaseOp::MulDecomposed,
            WorstArg::DivDirect => WorstCaseOp::DivDirect,
            WorstArg::DivDecomposed => WorstCaseOp::DivDecomposed,
        }
    }
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// JSON dataset spec; its seed is replaced by `--seed`.
    #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
    pub spec: Option<PathBuf>,
    /// Built-in bucket layout.
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// Record count for the preset.
    #[arg(long, requires = "preset")]
    pub total: Option<u64>,
    /// Equations never to emit, one per line.
    #[arg(long)]
    pub exclude: Option<PathBuf>,
    /// Build records on one thread.
    #[arg(long)]
    pub serial: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Standard,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long, value_enum, conflicts_with = "dataset", required_unless_present = "dataset")]
    pub op: Option<OpArg>,
    /// Operand widths: `2..8`, `2..=8`, `3,5,7` or `6`.
    #[arg(long, default_value = "2..=8")]
    pub sizes: String,
    /// Fixed second-operand width; by default equal to the first, or half of it
    /// (rounded up) for division.
    #[arg(long)]
    pub b_digits: Option<u32>,
    #[arg(long, default_value_t = 200)]
    pub samples: u64,
    /// Histogram of an existing JSONL dataset instead of a cost table.
    #[arg(long)]
    pub dataset: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OpArg {
    Add,
    Sub,
    Mul,
    Div,
}

impl From<OpArg> for Op {
    fn from(o: OpArg) -> Self {
        match o {
            OpArg::Add => Op::Add,
            OpArg::Sub => Op::Sub,
            OpArg::Mul => Op::Mul,
            OpArg::Div => Op::Div,
        }
    }
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    pub predictions: PathBuf,
    pub gold: PathBuf,
    /// Compare final answers only, decoding reversed literals first.
    #[arg(long)]
    pub decode: bool,
    /// Mismatches listed in the report.
    #[arg(long, default_value_t = 5)]
    pub max_examples: usize,
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed equation, trace, spec or flag combination.
    Input(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "error: {m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

fn input(e: impl fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn io_err(path: &Path, e: impl fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| io_err(path, e))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| io_err(path, e))
}

/// Text to print and the exit code to finish with.
#[derive(Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, code: 0 }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let form = cli.form.map(Form::from);
    match &cli.command {
        Command::Gen(args) => {
            let plan = args.rollback.then(|| {
                let delta = match args.rollback_delta {
                    DeltaArg::Plus => RollbackDelta::Plus,
                    DeltaArg::Minus => RollbackDelta::Minus,
                };
                RollbackPlan::single(args.rollback_at, delta)
            });
            cmd_gen(&args.equation, form.unwrap_or_default(), plan).map(Outcome::ok)
        }
        Command::Verify { input } => {
            let report = cmd_verify(&read_text(input)?);
            let code = if report.all_valid() { 0 } else { EXIT_INVALID };
            Ok(Outcome { text: report.to_string(), code })
        }
        Command::Csid(args) => match (&args.equation, args.worst_case) {
            (Some(eq), _) => cmd_csid(eq).map(Outcome::ok),
            (None, Some(op)) => {
                let n = args.n.ok_or_else(|| input("--worst-case needs --n"))?;
                cmd_csid_worstcase(op.into(), n, args.m.unwrap_or(n)).map(Outcome::ok)
            }
            (None, None) => Err(input("give an equation or --worst-case")),
        },
        Command::Synth(args) => {
            let seed = cli.seed.ok_or_else(|| input("synth needs an explicit --seed"))?;
            let out = cli.out.as_deref().ok_or_else(|| input("synth needs --out"))?;
            let spec = match (&args.spec, args.preset) {
                (Some(path), _) => {
                    let mut spec: DatasetSpec = serde_json::from_str(&read_text(path)?)
                        .map_err(|e| input(format!("{}: {e}", path.display())))?;
                    spec.seed = seed;
                    spec
                }
                (None, Some(Preset::Standard)) => match args.total {
                    Some(total) => DatasetSpec::standard_scaled(seed, total),
                    None => DatasetSpec::standard(seed),
                },
                (None, None) => return Err(input("give --spec or --preset")),
            };
            let spec = match form {
                Some(form) => DatasetSpec { form, ..spec },
                None => spec,
            };
            let exclusions = match &args.exclude {
                Some(path) => Exclusions::from_lines(&read_text(path)?).map_err(input)?,
                None => Exclusions::default(),
            };
            let n = cmd_synth(spec, exclusions, out, !args.serial)?;
            Ok(Outcome::ok(format!(
                "wrote {n} records to {} (manifest {})\n",
                out.display(),
                manifest_path(out).display()
            )))
        }
        Command::Stats(args) => match (&args.dataset, args.op) {
            (Some(path), _) => cmd_stats_dataset(&read_text(path)?).map(Outcome::ok),
            (None, Some(op)) => {
                let sizes = parse_sizes(&args.sizes)?;
                cmd_stats(op.into(), &sizes, args.b_digits, args.samples, cli.seed.unwrap_or(0))
                    .map(Outcome::ok)
            }
            (None, None) => Err(input("give --op or --dataset")),
        },
        Command::Score(args) => {
            let report = cmd_score(
                &read_text(&args.predictions)?,
                &read_text(&args.gold)?,
                args.decode,
                args.max_examples,
            )?;
            Ok(Outcome::ok(report.to_string()))
        }
    }
}

pub fn parse_equation(text: &str) -> Result<Equation, CliError> {
    text.parse::<Equation>().map_err(input)
}

pub fn cmd_gen(equation: &str, form: Form, rollback: Option<RollbackPlan>) -> Result<String, CliError> {
    let eq = parse_equation(equation)?;
    if rollback.is_some() && eq.op != Op::Div {
        return Err(input("--rollback applies to divisions only"));
    }
    let trace = gen_trace(&eq, &rollback.unwrap_or_default()).map_err(input)?;
    Ok(serialize(&trace, form) + "\n")
}

#[derive(Debug, PartialEq, Eq)]
pub enum LineStatus {
    Valid,
    /// First failing check; `iteration` is set for divisions.
    Invalid { step: usize, iteration: bool, detail: String },
    Unparsable(String),
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub lines: Vec<LineStatus>,
}

impl VerifyReport {
    pub fn valid(&self) -> usize {
        self.lines.iter().filter(|l| **l == LineStatus::Valid).count()
    }

    pub fn all_valid(&self) -> bool {
        self.valid() == self.lines.len()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, line) in self.lines.iter().enumerate() {
            match line {
                LineStatus::Valid => writeln!(f, "{}: Valid", i + 1)?,
                LineStatus::Invalid { step, iteration, detail } => {
                    let unit = if *iteration { "iteration" } else { "step" };
                    writeln!(f, "{}: Invalid at {unit} {step}: {detail}", i + 1)?
                }
                LineStatus::Unparsable(e) => writeln!(f, "{}: Invalid (parse error: {e})", i + 1)?,
            }
        }
        writeln!(f, "valid: {}/{}", self.valid(), self.lines.len())
    }
}

pub fn cmd_verify(text: &str) -> VerifyReport {
    let lines = text
        .lines()
        .map(|line| match parse(line) {
            Err(e) => LineStatus::Unparsable(e.to_string()),
            Ok(t) => match verify(&t) {
                VerifyResult::Valid => LineStatus::Valid,
                VerifyResult::Invalid(f) => LineStatus::Invalid {
                    step: f.step,
                    iteration: matches!(t.steps.get(f.step), Some(Step::DivIteration(_))),
                    detail: format!("{} (expected {}, found {})", f.check, f.expected, f.found),
                },
            },
        })
        .collect();
    VerifyReport { lines }
}

pub fn cmd_csid(equation: &str) -> Result<String, CliError> {
    let eq = parse_equation(equation)?;
    let score = |policy| match eq.op {
        Op::Add => csid_add_sub(&eq.a, &eq.b, policy).max_csid,
        _ => csid_sub(&eq.a, &eq.b, policy).max_csid,
    };
    match eq.op {
        Op::Add | Op::Sub => Ok(format!(
            "plain={} revorder={}\n",
            score(FormatPolicy::Plain),
            score(FormatPolicy::RevOrder)
        )),
        Op::Mul | Op::Div => {
            let (n, m) = if eq.op == Op::Mul {
                let n = eq.a.len().max(eq.b.len()) as u32;
                (n, n)
            } else {
                (eq.a.len() as u32, eq.b.len() as u32)
            };
            let (direct, decomposed) = if eq.op == Op::Mul {
                (WorstCaseOp::MulDirect, WorstCaseOp::MulDecomposed)
            } else {
                (WorstCaseOp::DivDirect, WorstCaseOp::DivDecomposed)
            };
            let show = |op| csid_worstcase(op, n, m).map(render_worst).map_err(input);
            Ok(format!("worst_direct={} worst_decomposed={}\n", show(direct)?, show(decomposed)?))
        }
    }
}

fn render_worst(w: WorstCase) -> String {
    match w {
        WorstCase::Exact(v) => v.to_string(),
        WorstCase::Linear => "O(n)".to_string(),
    }
}

pub fn cmd_csid_worstcase(op: WorstCaseOp, n: u32, m: u32) -> Result<String, CliError> {
    let w = csid_worstcase(op, n, m).map_err(input)?;
    Ok(render_worst(w) + "\n")
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    out.with_file_name(name)
}

/// Writes the dataset to `out` and its manifest next to it.
pub fn cmd_synth(spec: DatasetSpec, exclusions: Exclusions, out: &Path, parallel: bool) -> Result<u64, CliError> {
    let synth = Synthesizer::new(spec, exclusions).map_err(input)?;
    let file = fs::File::create(out).map_err(|e| io_err(out, e))?;
    let n = synth.write_jsonl(BufWriter::new(file), parallel).map_err(|e| match e {
        revorder::dataset::DatasetError::Io(e) => io_err(out, e),
        other => input(other),
    })?;
    let manifest = serde_json::to_string_pretty(&synth.manifest()).map_err(input)?;
    let path = manifest_path(out);
    fs::write(&path, manifest + "\n").map_err(|e| io_err(&path, e))?;
    Ok(n)
}

/// `2..8` and `2..=8` are both inclusive.
pub fn parse_sizes(s: &str) -> Result<Vec<u32>, CliError> {
    let bad = || input(format!("bad size list {s:?}"));
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
    let sizes: Vec<u32> = if let Some((lo, hi)) = s.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        (num(lo)?..=num(hi)?).collect()
    } else {
        s.split(',').map(num).collect::<Result<_, _>>()?
    };
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(bad());
    }
    Ok(sizes)
}

pub fn cmd_stats(op: Op, sizes: &[u32], b_digits: Option<u32>, samples: u64, seed: u64) -> Result<String, CliError> {
    let shapes: Vec<(u32, u32)> = sizes
        .iter()
        .map(|&n| {
            let m = b_digits.unwrap_or(if op == Op::Div { n.div_ceil(2) } else { n });
            (n, m)
        })
        .collect();
    let rows = cost_table(op, &shapes, samples, seed).map_err(input)?;
    let mut out = String::from("op\ta_digits\tb_digits\tsamples\tverbose_total\tverbose_extra\tcompact_total\tcompact_extra\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{:.2}\t{:.2}\t{:.2}\t{:.2}",
            r.op.name(),
            r.a_digits,
            r.b_digits,
            r.samples,
            r.verbose_total,
            r.verbose_extra,
            r.compact_total,
            r.compact_extra
        );
    }
    Ok(out)
}

pub fn cmd_stats_dataset(jsonl: &str) -> Result<String, CliError> {
    let records = jsonl
        .lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, l)| serde_json::from_str::<SampleRecord>(l).map_err(|e| input(format!("record {}: {e}", i + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(distribution_report(&records).to_string() + "\n")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScoreReport {
    pub total: usize,
    pub exact_matches: usize,
    /// `exact_matches / total`, or 0 for empty input.
    pub precision: f64,
    /// `(line number, expected, found)` for the first mismatches.
    pub first_error_examples: Vec<(usize, String, String)>,
}

impl fmt::Display for ScoreReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "exact: {}/{}", self.exact_matches, self.total)?;
        writeln!(f, "precision: {:.6}", self.precision)?;
        for (line, expected, found) in &self.first_error_examples {
            writeln!(f, "line {line}: expected {expected:?}, found {found:?}")?;
        }
        Ok(())
    }
}

/// Final answer of a line: the text after the last `=`, with a reversed
/// literal (`r|961`, `-r|21`, `@@961@@`) turned forward.
pub fn decode_answer(line: &str) -> String {
    let answer = line.rsplit('=').next().unwrap_or(line).trim();
    let (negative, body) = match answer.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, answer),
    };
    let digits = body
        .strip_prefix("r|")
        .or_else(|| body.strip_prefix("@@").and_then(|b| b.strip_suffix("@@")));
    match digits.and_then(|d| ReversedLiteral::from_digit_text(d, negative).ok()) {
        Some(lit) => lit.value().to_string(),
        None => answer.to_string(),
    }
}

pub fn cmd_score(predictions: &str, gold: &str, decode: bool, max_examples: usize) -> Result<ScoreReport, CliError> {
    let pred: Vec<&str> = predictions.lines().collect();
    let gold: Vec<&str> = gold.lines().collect();
    if pred.len() != gold.len() {
        return Err(input(format!(
            "line counts differ: {} predictions, {} gold",
            pred.len(),
            gold.len()
        )));
    }
    let norm = |s: &str| {
        let s = s.trim_end();
        if decode {
            decode_answer(s)
        } else {
            s.to_string()
        }
    };
    let mut report = ScoreReport {
        total: pred.len(),
        exact_matches: 0,
        precision: 0.0,
        first_error_examples: Vec::new(),
    };
    for (i, (p, g)) in pred.iter().zip(&gold).enumerate() {
        let (p, g) = (norm(p), norm(g));
        if p == g {
            report.exact_matches += 1;
        } else if report.first_error_examples.len() < max_examples {
            report.first_error_examples.push((i + 1, g, p));
        }
    }
    if report.total > 0 {
        report.precision = report.exact_matches as f64 / report.total as f64;
    }
    Ok(report)
}

/// Forward value of a decoded answer, for callers comparing numerically.
pub fn answer_value(line: &str) -> Option<DigitString> {
    decode_answer(line).parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gen_examples() {
        assert_eq!(cmd_gen("123+46", Form::Verbose, None).unwrap(), "123+46=r|961\n");
        assert_eq!(
            cmd_gen("948/12", Form::Compact, None).unwrap(),
            "948÷12=7R-(12×70)(r|048)(r|801)#9R-(12×9)(r|801)(0)=79\n"
        );
        let err = cmd_gen("1/0", Form::Verbose, None).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_INPUT);
        assert!(err.to_string().contains("division by zero"));
        assert!(cmd_gen("12+", Form::Verbose, None).is_err());
        assert!(cmd_gen("1+2", Form::Verbose, Some(RollbackPlan::none())).is_err());
    }

    #[test]
    fn csid_examples() {
        assert_eq!(cmd_csid("123+179").unwrap(), "plain=2 revorder=1\n");
        assert_eq!(cmd_csid("1000-1").unwrap(), "plain=3 revorder=1\n");
        assert_eq!(cmd_csid("12*34").unwrap(), "worst_direct=26 worst_decomposed=O(n)\n");
        assert_eq!(cmd_csid("948/12").unwrap(), "worst_direct=10 worst_decomposed=O(n)\n");
        assert_eq!(cmd_csid_worstcase(WorstCaseOp::MulDirect, 3, 3).unwrap(), "57\n");
        assert!(cmd_csid_worstcase(WorstCaseOp::DivDirect, 2, 3).is_err());
    }

    #[test]
    fn verify_report() {
        let empty = cmd_verify("");
        assert_eq!(empty.to_string(), "valid: 0/0\n");
        assert!(empty.all_valid());
        let r = cmd_verify(
            "123+46=r|961\n\
             948÷12=7R-(12×70)(r|048)(r|801)#8R-(12×8)(r|69)(r|21)=78R12\n\
             123+46=r|96x\n",
        );
        assert_eq!(r.valid(), 1);
        assert!(matches!(r.lines[1], LineStatus::Invalid { step: 1, iteration: true, .. }));
        assert!(matches!(r.lines[2], LineStatus::Unparsable(_)));
        let text = r.to_string();
        assert!(text.contains("2: Invalid at iteration 1"), "{text}");
        assert!(text.ends_with("valid: 1/3\n"));
    }

    #[test]
    fn decode() {
        assert_eq!(decode_answer("123+46=r|961"), "169");
        assert_eq!(decode_answer("r|961"), "169");
        assert_eq!(decode_answer("-r|21"), "-12");
        assert_eq!(decode_answer("1+2+4=@@3@@+4=@@7@@"), "7");
        assert_eq!(decode_answer("948÷12=...=79"), "79");
        assert_eq!(decode_answer("r|9x"), "r|9x");
        assert_eq!(answer_value("5-7=-r|2"), Some(DigitString::from_i64(-2)));
    }

    #[test]
    fn score_metric() {
        let gold: String = (0..1000).map(|i| format!("{i}\n")).collect();
        let mut pred = gold.clone();
        pred = pred.replacen("17\n", "71\n", 1);
        let r = cmd_score(&pred, &gold, false, 5).unwrap();
        assert_eq!((r.total, r.exact_matches), (1000, 999));
        assert!((r.precision - 0.999).abs() < 1e-12);
        assert_eq!(r.first_error_examples, vec![(18, "17".into(), "71".into())]);
        let same = cmd_score("a  \nb\n", "a\nb", false, 5).unwrap();
        assert_eq!(same.precision, 1.0);
        assert_eq!(cmd_score(" a", "a", false, 5).unwrap().exact_matches, 0);
        assert!(cmd_score("1\n2\n", "1\n", false, 5).is_err());
        let decoded = cmd_score("123+46=r|961\n948÷12=79\n", "169\n79\n", true, 5).unwrap();
        assert_eq!(decoded.precision, 1.0);
        assert_eq!(cmd_score("r|961\n", "169\n", false, 5).unwrap().precision, 0.0);
    }

    #[test]
    fn sizes() {
        assert_eq!(parse_sizes("2..8").unwrap(), (2..=8).collect::<Vec<_>>());
        assert_eq!(parse_sizes("2..=4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_sizes("3,5").unwrap(), vec![3, 5]);
        assert!(parse_sizes("0..3").is_err());
        assert!(parse_sizes("x").is_err());
    }

    #[test]
    fn manifest_next_to_dataset() {
        assert_eq!(manifest_path(Path::new("/tmp/d.jsonl")), PathBuf::from("/tmp/d.jsonl.manifest.json"));
    }
}
