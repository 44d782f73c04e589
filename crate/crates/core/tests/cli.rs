use std::fs;
use std::process::Command;

use lorentzkit::cli::corpus::CorpusReport;
use lorentzkit::cli::report::RunReport;
use lorentzkit::rational::rat;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lorentzkit"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn certify_exit_codes() {
    assert_eq!(run(&["certify", "--model", "squares", "--expect", "lorentzian"]).0, 0);
    // (t1 + t2)^2 is degenerate, so strictness is a verdict-level failure
    assert_eq!(run(&["certify", "--model", "squares", "--expect", "strict"]).0, 1);
    assert_eq!(run(&["certify", "--model", "sq-rect", "--expect", "strict"]).0, 0);
    let (code, _, err) = run(&["certify", "--model", "no-such-model"]);
    assert_eq!(code, 2);
    assert!(err.contains("no such file"));
    assert_eq!(run(&["certify"]).0, 2);
}

#[test]
fn deficits_report_exact_values() {
    let (code, out, _) = run(&[
        "deficits", "--model", "sq-rect", "--alpha", "e1", "--beta", "e2", "--format", "structured",
    ]);
    assert_eq!(code, 0);
    let report: RunReport = serde_json::from_str(&out).unwrap();
    let d = report.deficits.unwrap();
    assert_eq!(d.k.lo, rat(1, 4));
    assert_eq!(d.k.hi, rat(1, 4));
    assert_eq!(d.a_squared, rat(9, 25));
    let (_, text, _) = run(&["deficits", "--model", "sq-rect", "--alpha", "e1", "--beta", "e2"]);
    assert!(text.contains("a_squared: 0.360000 (exact 9/25)"));
    assert!(text.contains("k: [0.250000, 0.250000] (exact)"));
}

#[test]
fn hall_rado_reports_the_violating_set() {
    let (code, out, _) = run(&[
        "hall-rado", "--model", "xyplusxz", "--collection", "e2,e3", "--format", "structured",
    ]);
    assert_eq!(code, 0);
    let hr = serde_json::from_str::<RunReport>(&out).unwrap().hall_rado.unwrap();
    assert!(!hr.product_nonzero);
    assert!(!hr.nd_criterion);
    assert_eq!(hr.violating_set.unwrap().into_iter().collect::<Vec<_>>(), vec![1, 2]);
}

#[test]
fn every_command_round_trips() {
    let cases: &[&[&str]] = &[
        &["certify", "--model", "u34"],
        &["nd", "--model", "xyplusxz", "--alpha", "e2", "--collection", "e2,e3"],
        &["kernel-face", "--model", "xyplusxz", "--collection", "e1"],
        &["sequence", "--model", "cube-box"],
        &["deficits", "--model", "u34"],
        &["radii", "--model", "sq-tri"],
        &["stability", "--model", "e3-four"],
        &["fmp", "--model", "sq-rect"],
    ];
    for args in cases {
        let mut full: Vec<&str> = args.to_vec();
        full.extend(["--format", "structured"]);
        let (code, first, err) = run(&full);
        assert_eq!(code, 0, "{args:?}: {err}");
        let parsed: RunReport = serde_json::from_str(&first).unwrap();
        assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", first, "{args:?}");
        let (_, second, _) = run(&full);
        assert_eq!(first, second, "{args:?} is not deterministic");
    }
}

#[test]
fn model_files_are_validated() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"format":1,"kind":"tensor","nvars":1,"degree":1,"terms":[{"exponent":[1],"coeff":"1/0"}]}"#).unwrap();
    let (code, _, err) = run(&["certify", "--model", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("schema error at line"), "{err}");
    let uneven = dir.path().join("uneven.json");
    fs::write(&uneven, r#"{"format":1,"kind":"tensor","nvars":2,"degree":2,"terms":[{"exponent":[1,0],"coeff":"1"}]}"#).unwrap();
    let (code, _, err) = run(&["certify", "--model", uneven.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("terms[0].exponent"), "{err}");
    let out = dir.path().join("report.txt");
    let (code, stdout, _) = run(&["sequence", "--model", "u34", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    assert!(fs::read_to_string(out).unwrap().contains("log_concave: true"));
}

#[test]
fn corpus_directory_with_csv() {
    let dir = tempfile::tempdir().unwrap();
    let models = dir.path().join("models");
    fs::create_dir(&models).unwrap();
    for name in ["sq-rect", "u34", "e2-three"] {
        let src = format!("{}/corpus/{name}.json", env!("CARGO_MANIFEST_DIR"));
        fs::copy(src, models.join(format!("{name}.json"))).unwrap();
    }
    let csv = dir.path().join("csv");
    let report = dir.path().join("report.json");
    let args = [
        "corpus", "--dir", models.to_str().unwrap(), "--jobs", "3", "--format", "structured",
        "--out", report.to_str().unwrap(), "--csv-dir", csv.to_str().unwrap(),
    ];
    let (code, _, err) = run(&args);
    assert_eq!(code, 0, "{err}");
    let parsed: CorpusReport = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(parsed.totals.instances, 3);
    assert_eq!(parsed.totals.battery_fails, 0);
    let deficits = fs::read_to_string(csv.join("deficits.csv")).unwrap();
    assert!(deficits.starts_with("instance,d,s,a_squared,b_lo,b_hi,k_lo,k_hi,sigma_lo,sigma_hi,r,r_out,f_lo,f_hi"));
    assert_eq!(deficits.lines().count(), 4);
    assert!(fs::read_to_string(csv.join("battery.csv")).unwrap().contains("stab-kt"));
    assert!(fs::read_to_string(csv.join("empirical.csv")).unwrap().contains("kt-vs-af"));

    let empty = dir.path().join("empty");
    fs::create_dir(&empty).unwrap();
    assert_eq!(run(&["corpus", "--dir", empty.to_str().unwrap()]).0, 2);
}
