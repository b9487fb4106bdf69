use std::path::Path;
use std::process::Command;

use setfam::boolfn::{Point, TruthTable};
use setfam_cli::{run_args, Output};

fn run(args: &[&str]) -> Output {
    run_args(std::iter::once("setfam").chain(args.iter().copied())).unwrap()
}

fn text(o: &Output) -> String {
    String::from_utf8(o.data.clone()).unwrap()
}

fn rows(o: &Output) -> (csv::StringRecord, Vec<csv::StringRecord>) {
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(&o.data[..]);
    let h = r.headers().unwrap().clone();
    (h.clone(), r.records().map(Result::unwrap).collect())
}

fn column<'a>(h: &csv::StringRecord, rows: &'a [csv::StringRecord], name: &str) -> Vec<&'a str> {
    let i = h.iter().position(|c| c == name).unwrap();
    rows.iter().map(|r| r.get(i).unwrap()).collect()
}

#[test]
fn gen_reports_structural_checks() {
    let o = run(&["--seed", "7", "gen", "--kind", "uc-yes", "--n", "16", "--eps", "0.0625"]);
    assert!(o.notes.contains(&"union-closed: true".to_string()), "{:?}", o.notes);
    let doc: serde_json::Value = serde_json::from_slice(&o.data).unwrap();
    assert_eq!(doc["spec"]["kind"], "uc-yes");
    assert_eq!(doc["checks"]["union_closed"], true);

    let o = run(&["--seed", "1", "gen", "--kind", "talagrand", "--n", "25", "--eps", "1"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.data).unwrap();
    assert_eq!(doc["instance"]["terms"].as_array().unwrap().len(), 3);
    assert_eq!(doc["instance"]["term_size"], 5);

    let err = run_args(["setfam", "gen", "--kind", "int-yes", "--n", "4", "--eps", "0.99"]).unwrap_err();
    assert!(err.to_string().contains("degenerate"), "{err}");
}

#[test]
fn dictator_is_always_accepted() {
    let o = run(&["test", "--alg", "uc", "--fn", "dictator-1", "--n", "12", "--eps", "0.25", "--trials", "50"]);
    let (h, rs) = rows(&o);
    assert_eq!(rs.len(), 50);
    assert!(column(&h, &rs, "verdict").iter().all(|&v| v == "accept"));
    assert_eq!(o.code, 0);
}

#[test]
fn const1_is_rejected_by_the_intersecting_tester() {
    let o = run(&["test", "--alg", "int", "--fn", "const1", "--n", "12", "--eps", "0.1", "--trials", "200"]);
    let (h, rs) = rows(&o);
    let rejects = column(&h, &rs, "verdict").iter().filter(|&&v| v == "reject").count();
    assert!(rejects as f64 >= 0.9 * 200.0, "{rejects}");
}

#[test]
fn triple_tester_on_a_table_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.bftt1");
    // 1-inputs 0011 and 1100 with their union 1111 missing.
    let t = TruthTable::from_ones(4, ["1100", "0011"].map(|s| Point::parse(s).unwrap().bits())).unwrap();
    t.write_bftt1(std::fs::File::create(&path).unwrap()).unwrap();
    let p = path.to_str().unwrap();
    let o = run(&["test", "--alg", "uc-triple", "--fn", p, "--eps", "0.5", "--trials", "40", "--max-iterations", "50000"]);
    let (h, rs) = rows(&o);
    assert!(column(&h, &rs, "verdict").iter().all(|&v| v == "reject"));
    let success: Vec<f64> = column(&h, &rs, "round_success").iter().map(|s| s.parse().unwrap()).collect();
    assert!(success.iter().all(|&s| s > 0.0 && s <= 1.0));

    // Sampling testers refuse an out-of-reach plan instead of running forever.
    let o = run(&["test", "--alg", "uc-triple", "--fn", "const1", "--n", "12", "--eps", "0.1"]);
    let (h, rs) = rows(&o);
    assert_eq!(column(&h, &rs, "verdict"), ["ERROR"]);
    assert!(column(&h, &rs, "error")[0].contains("resource cap"));
    assert_eq!(o.code, 0);
}

#[test]
fn distance_examples() {
    let value = |args: &[&str]| -> String {
        let v: serde_json::Value = serde_json::from_slice(&run(args).data).unwrap();
        v["value"].as_str().unwrap().to_string()
    };
    assert_eq!(value(&["dist", "--prop", "int", "--fn", "const1", "--n", "2"]), "2/4");
    assert_eq!(value(&["dist", "--prop", "uc", "--fn", "ones:{01,10}", "--n", "2"]), "1/4");
    assert_eq!(value(&["dist", "--prop", "int", "--fn", "dictator-1", "--n", "6"]), "0/64");
    let o = run(&["dist", "--prop", "int", "--method", "bounds", "--fn", "const1", "--n", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.data).unwrap();
    assert_eq!((v["value"].as_str(), v["upper"].as_str()), (Some("4/8"), Some("8/8")));
    assert!(run_args(["setfam", "dist", "--prop", "uc", "--fn", "const1", "--n", "5"]).is_err());
}

#[test]
fn sweeps() {
    let o = run(&["sweep", "unique-sat", "--n", "25,36,49", "--trials", "20000"]);
    let (h, rs) = rows(&o);
    let pooled: Vec<f64> = rs
        .iter()
        .zip(column(&h, &rs, "weight"))
        .filter(|(_, w)| *w == "pooled")
        .map(|(r, _)| r[h.iter().position(|c| c == "wilson99_lo").unwrap()].parse().unwrap())
        .collect();
    assert_eq!(pooled.len(), 3);
    assert!(pooled.iter().all(|&lo| lo > 0.03), "{pooled:?}");

    let o = run(&["sweep", "--seeds", "2", "bad-event", "--n", "16,25", "--pairs", "antipodal", "--trials", "5000"]);
    let (h, rs) = rows(&o);
    assert_eq!(rs.len(), 4);
    assert!(column(&h, &rs, "within_3sd").iter().all(|&w| w == "true"));

    let o = run(&["sweep", "--seeds", "3", "queries", "--n", "8,10,12,14", "--eps", "0.25"]);
    let (h, rs) = rows(&o);
    let mut means: Vec<f64> = column(&h, &rs, "mean_queries_per_iteration").iter().map(|s| s.parse().unwrap()).collect();
    means.dedup();
    assert_eq!(means.len(), 4);
    assert!(means.windows(2).all(|w| w[0] < w[1]), "{means:?}");

    let o = run(&["sweep", "rejection", "--alg", "int", "--fn", "const1", "--n", "8", "--eps", "0.1,0.3", "--trials", "20"]);
    let (h, rs) = rows(&o);
    assert_eq!(column(&h, &rs, "rejects"), ["20", "20"]);
}

#[test]
fn certificates_in_a_test_csv_reverify() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("runs.csv");
    let o = run(&["--seed", "3", "test", "--alg", "all", "--fn", "const1", "--n", "8", "--eps", "0.25", "--trials", "5", "--max-iterations", "2000"]);
    std::fs::write(&csv_path, &o.data).unwrap();
    let p = csv_path.to_str().unwrap();
    let v = run(&["verify", "--fn", "const1", "--n", "8", "--csv", p]);
    assert_eq!(String::from_utf8(v.data).unwrap().trim(), r#"{"certificates":10,"valid":10}"#);
    assert_eq!(v.code, 0);

    let good = r#"{"type":"i-pair","n":2,"x":1,"y":2}"#;
    assert_eq!(run(&["verify", "--fn", "ones:{10,01}", "--cert", good]).code, 0);
    let bad = run(&["verify", "--fn", "ones:{10}", "--n", "2", "--cert", good]);
    assert_eq!((bad.code, bad.notes.len()), (1, 1));
}

#[test]
fn generated_files_feed_other_commands() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("inst.json");
    let table = dir.path().join("inst.bftt1");
    let o = run(&["--seed", "5", "gen", "--kind", "uc-no", "--n", "16", "--eps", "0.0625", "--bftt1", table.to_str().unwrap()]);
    std::fs::write(&json, &o.data).unwrap();
    let a = TruthTable::read_bftt1(std::io::BufReader::new(std::fs::File::open(&table).unwrap())).unwrap();
    let rebuilt = setfam_cli::source::Source::parse(json.to_str().unwrap(), None).unwrap().to_table().unwrap();
    assert_eq!(a, rebuilt);

    let args = ["--seed", "2", "test", "--alg", "uc", "--fn", json.to_str().unwrap(), "--eps", "0.25", "--trials", "4", "--max-iterations", "20"];
    let runs = run(&args);
    let csv_path = dir.path().join("runs.csv");
    std::fs::write(&csv_path, &runs.data).unwrap();
    let v = run(&["verify", "--fn", table.to_str().unwrap(), "--csv", csv_path.to_str().unwrap()]);
    assert_eq!(v.code, 0);
}

#[test]
fn golden_outputs() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let cases: [(&str, &[&str]); 3] = [
        ("test_majority.csv", &["--seed", "11", "test", "--alg", "all", "--fn", "majority", "--n", "7", "--eps", "0.3", "--trials", "3", "--max-iterations", "50"]),
        ("gen_int_no.json", &["--seed", "4", "gen", "--kind", "int-no", "--n", "16", "--eps", "0.5"]),
        ("sweep_bad_event.csv", &["--seed", "8", "sweep", "bad-event", "--n", "16", "--kind", "uc", "--pairs", "random", "--trials", "1000"]),
    ];
    for (name, args) in cases {
        let out = text(&run(args));
        let path = golden.join(name);
        if std::env::var_os("SETFAM_BLESS").is_some() {
            std::fs::write(&path, &out).unwrap();
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}; run with SETFAM_BLESS=1", path.display()));
        assert_eq!(out, want, "{name} drifted");
    }
}

#[test]
fn binary_matches_in_process_run() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rows.csv");
    let args = ["--seed", "6", "test", "--alg", "uc,int", "--fn", "majority", "--n", "8", "--eps", "0.3", "--trials", "6"];
    let status = Command::new(env!("CARGO_BIN_EXE_setfam"))
        .args(args)
        .arg("--out")
        .arg(&out)
        .env("SETFAM_THREADS", "3")
        .status()
        .unwrap();
    assert!(status.success());
    assert_eq!(std::fs::read(&out).unwrap(), run(&args).data);

    let bad = Command::new(env!("CARGO_BIN_EXE_setfam")).args(["test", "--alg", "uc", "--fn", "nope", "--eps", "0.3"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("error"));
}
