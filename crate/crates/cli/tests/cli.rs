use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use revorder::dataset::Manifest;
use revorder::traces::{gen_trace, serialize, Equation, Form, RollbackPlan};

fn revorder(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revorder"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn gen_prints_canonical_traces() {
    let o = revorder(&["gen", "123+46"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "123+46=r|961\n");
    let o = revorder(&["--form", "compact", "gen", "948 / 12"]);
    assert_eq!(stdout(&o), "948÷12=7R-(12×70)(r|048)(r|801)#9R-(12×9)(r|801)(0)=79\n");
    let o = revorder(&["gen", "948÷12", "--rollback", "--rollback-at", "1", "--rollback-delta", "minus"]);
    assert!(stdout(&o).contains("=78R(r|801-12×8)=78R(r|801-r|69)=78R(r|21)W=79R("));
}

#[test]
fn gen_rejects_bad_input() {
    let o = revorder(&["gen", "1/0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("division by zero"));
    assert!(stdout(&o).is_empty());
    assert_eq!(revorder(&["gen", "12+"]).status.code(), Some(2));
    assert_eq!(revorder(&["gen", "5+5", "--rollback"]).status.code(), Some(2));
}

#[test]
fn verify_reports_each_line() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.txt");
    let lines: String = ["123+46", "12×4567", "948÷12", "99999999÷7", "5-91", "31×7"]
        .iter()
        .flat_map(|e| {
            let eq: Equation = e.parse().unwrap();
            let t = gen_trace(&eq, &RollbackPlan::none()).unwrap();
            [serialize(&t, Form::Verbose), serialize(&t, Form::Compact)]
        })
        .map(|s| s + "\n")
        .collect();
    fs::write(&good, lines).unwrap();
    let o = revorder(&["verify", p(&good)]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("valid: 12/12\n"));

    let empty = dir.path().join("empty.txt");
    fs::write(&empty, "").unwrap();
    let o = revorder(&["verify", p(&empty)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "valid: 0/0\n");

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "123+46=r|961\n948÷12=7R-(12×70)(r|048)(r|801)#8R-(12×8)(r|69)(r|21)=78R12\n").unwrap();
    let o = revorder(&["verify", p(&bad)]);
    assert_eq!(o.status.code(), Some(3));
    let text = stdout(&o);
    assert!(text.contains("1: Valid"));
    assert!(text.contains("2: Invalid at iteration 1"), "{text}");
    assert!(text.ends_with("valid: 1/2\n"));

    let o = revorder(&["verify", p(&dir.path().join("missing.txt"))]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn csid_subcommand() {
    assert_eq!(stdout(&revorder(&["csid", "123+179"])), "plain=2 revorder=1\n");
    assert_eq!(stdout(&revorder(&["csid", "--worst-case", "mul-direct", "-n", "4"])), "100\n");
    assert_eq!(stdout(&revorder(&["csid", "--worst-case", "div-direct", "-n", "5", "-m", "2"])), "42\n");
    assert_eq!(stdout(&revorder(&["csid", "--worst-case", "mul-decomposed", "-n", "4"])), "O(n)\n");
    assert_eq!(revorder(&["csid"]).status.code(), Some(2));
}

#[test]
fn synth_writes_dataset_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    fs::write(
        &spec,
        r#"{"buckets":[{"op":"add","a_digits":3,"b_digits":3,"count":0},{"op":"div","a_digits":4,"b_digits":2,"count":0}],"seed":0}"#,
    )
    .unwrap();
    let out = dir.path().join("zero.jsonl");
    let o = revorder(&["synth", "--spec", p(&spec), "--seed", "9", "--out", p(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(fs::read(&out).unwrap(), b"");
    let manifest: Manifest = serde_json::from_str(&fs::read_to_string(dir.path().join("zero.jsonl.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest.records, 0);
    assert_eq!(manifest.spec.seed, 9);

    let o = revorder(&["synth", "--spec", p(&spec), "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(2), "seed is mandatory");

    let excl = dir.path().join("exclude.txt");
    fs::write(&excl, (1..=9).map(|b| format!("9+{b}\n")).collect::<String>()).unwrap();
    fs::write(&spec, r#"{"buckets":[{"op":"add","a_digits":1,"b_digits":1,"count":200}],"seed":0,"form":"compact"}"#).unwrap();
    let o = revorder(&["synth", "--spec", p(&spec), "--seed", "3", "--exclude", p(&excl), "--out", p(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let data = fs::read_to_string(&out).unwrap();
    assert_eq!(data.lines().count(), 200);
    assert!(!data.contains("\"prompt\":\"9+"));
}

#[test]
fn stats_tables() {
    let o = revorder(&["stats", "--op", "mul", "--sizes", "2..8", "--samples", "40"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let extras: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split('\t').nth(6).unwrap().parse().unwrap())
        .collect();
    assert_eq!(extras.len(), 7);
    assert!(extras.windows(2).all(|w| w[0] < w[1]), "{text}");

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.jsonl");
    assert!(revorder(&["synth", "--preset", "standard", "--total", "300", "--seed", "1", "--out", p(&out)]).status.success());
    let o = revorder(&["stats", "--dataset", p(&out)]);
    assert!(o.status.success());
    assert!(stdout(&o).trim_end().ends_with("300"));
    assert_eq!(revorder(&["stats", "--op", "mul", "--sizes", "x"]).status.code(), Some(2));
}

#[test]
fn score_reports_precision() {
    let dir = tempfile::tempdir().unwrap();
    let gold = dir.path().join("gold.txt");
    let pred = dir.path().join("pred.txt");
    let lines: Vec<String> = (0..1000).map(|i| format!("{i}+1=r|{}", (i + 1).to_string().chars().rev().collect::<String>())).collect();
    fs::write(&gold, lines.join("\n")).unwrap();
    fs::write(&pred, lines.join("\n")).unwrap();
    let o = revorder(&["score", p(&pred), p(&gold)]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("precision: 1.000000"));

    let mut changed = lines.clone();
    changed[500] = "500+1=r|205".into();
    fs::write(&pred, changed.join("\n")).unwrap();
    let o = revorder(&["score", p(&pred), p(&gold)]);
    assert!(stdout(&o).contains("exact: 999/1000\nprecision: 0.999000"), "{}", stdout(&o));
    assert!(stdout(&o).contains("line 501"));

    let forward: Vec<String> = (0..1000).map(|i| (i + 1).to_string()).collect();
    fs::write(&gold, forward.join("\n")).unwrap();
    fs::write(&pred, lines.join("\n")).unwrap();
    assert!(stdout(&revorder(&["score", p(&pred), p(&gold)])).contains("precision: 0.000000"));
    assert!(stdout(&revorder(&["score", "--decode", p(&pred), p(&gold)])).contains("precision: 1.000000"));

    fs::write(&gold, "1\n2\n").unwrap();
    assert_eq!(revorder(&["score", p(&pred), p(&gold)]).status.code(), Some(2));
}

#[test]
fn out_flag_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("trace.txt");
    assert!(revorder(&["gen", "7+8", "--out", p(&out)]).status.success());
    assert_eq!(fs::read_to_string(&out).unwrap(), "7+8=r|51\n");
    let o = revorder(&["gen"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Usage"));
    assert_eq!(revorder(&["--form", "tiny", "gen", "1+1"]).status.code(), Some(2));
    assert!(stdout(&revorder(&["--help"])).contains("3 verification failure"));
}
