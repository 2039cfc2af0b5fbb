use std::path::Path;
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let mut argv = vec!["powertower"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = powertower::run(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut argv = args.to_vec();
    argv.push("--json");
    let r = run(&argv);
    assert!(
        r.stdout.ends_with('\n'),
        "JSON output must be newline-terminated"
    );
    assert_eq!(r.stdout.lines().count(), 1);
    (r.code, serde_json::from_str(&r.stdout).unwrap())
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn golden_outputs() {
    let cases: &[(&str, &[&str])] = &[
        (
            "solve_y27.json",
            &["solve", "--height", "1", "--y", "27", "--json"],
        ),
        (
            "solve_h2_log.json",
            &[
                "solve",
                "--height",
                "2",
                "--log-y",
                "29.662531794038962",
                "--json",
            ],
        ),
        (
            "bracket_h1.json",
            &[
                "bracket",
                "--height",
                "1",
                "--log-y",
                "3.295836866004329",
                "--json",
            ],
        ),
        (
            "lord_pair_2_3_1.json",
            &["lord-pair", "--p", "2", "--m", "3", "--n", "1", "--json"],
        ),
        ("triple_sqrt_5.json", &["triple-sqrt", "--n", "5", "--json"]),
        ("classify_256.json", &["classify", "--y", "256", "--json"]),
        (
            "sweep_witness_g.json",
            &[
                "sweep",
                "--inequality",
                "witness-g",
                "--lo",
                "1.0001",
                "--hi",
                "30",
                "--samples",
                "10000",
                "--seed",
                "7",
                "--json",
            ],
        ),
        (
            "pair_pi.json",
            &["pair", "--base", "pi", "--c", "7/3", "--json"],
        ),
        ("lambert_1.json", &["lambert", "--z", "1", "--json"]),
        ("solve_y27.txt", &["solve", "--height", "1", "--y", "27"]),
    ];
    for (file, args) in cases {
        let r = run(args);
        assert_eq!(r.code, 0, "{file}");
        assert_eq!(r.stdout, golden(file), "{file}");
    }
}

#[test]
fn solve_reports_three() {
    let (code, v) = run_json(&["solve", "--height", "1", "--y", "27"]);
    assert_eq!(code, 0);
    assert!((v["result"]["x"].as_f64().unwrap() - 3.0).abs() <= 1e-10);
    assert!((v["result"]["lambert_x"].as_f64().unwrap() - 3.0).abs() <= 1e-10);
    assert_eq!(v["result"]["bracket"]["provenance"], "theorem2");

    let (code, v) = run_json(&["solve", "--height", "2", "--y", "16"]);
    assert_eq!(code, 0);
    assert!((v["result"]["x"].as_f64().unwrap() - 2.0).abs() <= 1e-10);
    assert!(v["result"].get("lambert_x").is_none());
}

#[test]
fn huge_targets_through_log_y() {
    // y = 10^(10^6)
    let (code, v) = run_json(&["solve", "--height", "2", "--log-y", "2302585.092994046"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["bracket"]["provenance"], "theorem3");
}

#[test]
fn envelope_key_order() {
    let (_, v) = run_json(&["classify", "--y", "5"]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "inputs", "result"]);
    assert_eq!(v["result"]["kind"], "irrational_solution");
    assert!(v["result"]["n"].is_null());

    let (_, v) = run_json(&["classify", "--y", "1/2"]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "inputs", "error"]);
    assert_eq!(v["error"]["code"], "OUT_OF_INTERVAL");
}

#[test]
fn json_reserializes_byte_identically() {
    let commands: &[&[&str]] = &[
        &["solve", "--height", "1", "--log-y", "3"],
        &["solve", "--height", "2", "--y", "1e300"],
        &["bracket", "--height", "2", "--y", "16"],
        &["lambert", "--z", "-0.3"],
        &[
            "sweep",
            "--inequality",
            "lemma4b",
            "--lo",
            "2.718281829",
            "--hi",
            "700",
            "--samples",
            "1000",
            "--seed",
            "3",
        ],
        &["pair", "--base", "sqrt:6", "--c", "2/3"],
        &["triple-sqrt", "--n", "60"],
        &["solve", "--height", "1", "--y", "0.5"],
    ];
    for args in commands {
        let mut argv = args.to_vec();
        argv.push("--json");
        let out = run(&argv).stdout;
        let parsed: Value = serde_json::from_str(&out).unwrap();
        let again = serde_json::to_string(&parsed).unwrap() + "\n";
        assert_eq!(again, out, "{args:?}");
    }
}

#[test]
fn text_and_json_agree_numerically() {
    let commands: &[&[&str]] = &[
        &["solve", "--height", "1", "--log-y", "3"],
        &["solve", "--height", "2", "--y", "1e20"],
        &["lambert", "--z", "7.5"],
        &["lord-pair", "--p", "7", "--m", "10", "--n", "3"],
        &[
            "sweep",
            "--inequality",
            "lemma3",
            "--lo",
            "0.001",
            "--hi",
            "30",
            "--samples",
            "500",
            "--seed",
            "42",
        ],
    ];
    for args in commands {
        let (_, json) = run_json(args);
        let text = run(args).stdout;
        let mut compared = 0;
        for line in text.lines().skip(1) {
            let (key, value) = line.split_once(": ").unwrap();
            let pointer = match key.strip_prefix("input.") {
                Some(k) => format!("/inputs/{}", k.replace('.', "/")),
                None => format!("/result/{}", key.replace('.', "/")),
            };
            let j = json
                .pointer(&pointer)
                .unwrap_or_else(|| panic!("{pointer} missing"));
            if j.is_f64() {
                let t: f64 = value.parse().unwrap();
                assert_eq!(t.to_bits(), j.as_f64().unwrap().to_bits(), "{args:?} {key}");
                // 17 significant digits
                let mantissa = value.split('e').next().unwrap().replace(['-', '.'], "");
                assert_eq!(mantissa.len(), 17, "{value}");
                compared += 1;
            }
        }
        assert!(compared > 0, "{args:?}");
    }
}

#[test]
fn domain_errors_exit_two() {
    let r = run(&["solve", "--height", "1", "--y", "0.5"]);
    assert_eq!(r.code, 2);
    assert!(
        r.stderr.contains("DOMAIN") && r.stderr.contains("y must exceed 1"),
        "{}",
        r.stderr
    );
    assert!(r.stdout.is_empty());

    let (code, v) = run_json(&["solve", "--height", "1", "--y", "0.5"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "DOMAIN");
    assert!(v.get("result").is_none());
}

#[test]
fn every_subcommand_has_a_failing_path() {
    let cases: &[(&[&str], i32, &str)] = &[
        (&["solve", "--height", "2", "--log-y", "-1"], 2, "DOMAIN"),
        (
            &[
                "solve",
                "--height",
                "1",
                "--y",
                "2",
                "--max-iter",
                "1",
                "--tol",
                "1e-15",
            ],
            3,
            "NO_CONVERGENCE",
        ),
        (&["bracket", "--height", "1", "--y", "1"], 2, "DOMAIN"),
        (&["lambert", "--z", "-1"], 2, "DOMAIN"),
        (
            &[
                "sweep",
                "--inequality",
                "lemma4a",
                "--lo",
                "2",
                "--hi",
                "5",
                "--samples",
                "10",
                "--seed",
                "1",
            ],
            2,
            "DOMAIN",
        ),
        (
            &["lord-pair", "--p", "2", "--m", "4", "--n", "1"],
            2,
            "CONDITION_VIOLATED",
        ),
        (&["pair", "--base", "sqrt:9", "--c", "2"], 2, "DOMAIN"),
        (
            &["pair", "--base", "tau", "--c", "2"],
            2,
            "INVALID_ARGUMENT",
        ),
        (&["pair", "--base", "e", "--c", "0.5"], 2, "DOMAIN"),
        (&["triple-sqrt", "--n", "0"], 2, "DOMAIN"),
        (&["classify", "--y", "2/3"], 2, "OUT_OF_INTERVAL"),
    ];
    for (args, code, err_code) in cases {
        let (got, v) = run_json(args);
        assert_eq!(got, *code, "{args:?}");
        assert_eq!(v["error"]["code"], *err_code, "{args:?}");
    }
    let (_, v) = run_json(&["lord-pair", "--p", "3", "--m", "2", "--n", "9"]);
    assert!(v["error"]["message"]
        .as_str()
        .unwrap()
        .contains("p divides n"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"][..],
        &["solve", "--height", "1"],
        &["solve", "--height", "1", "--y", "2", "--log-y", "1"],
        &["solve", "--height", "3", "--y", "2"],
        &["solve", "--height", "1", "--y", "2", "--bogus"],
        &[
            "sweep",
            "--inequality",
            "lemma9",
            "--lo",
            "1",
            "--hi",
            "2",
            "--samples",
            "1",
            "--seed",
            "1",
        ],
        &[],
    ] {
        let r = run(args);
        assert_eq!(r.code, 2, "{args:?}");
        assert!(r.stderr.contains("Usage"), "{args:?}: {}", r.stderr);
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_powertower");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["classify", "--y", "256"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("rational_solution"));
    assert_eq!(
        status(&["solve", "--height", "1", "--y", "0.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(status(&["nope"]).status.code(), Some(2));
    assert_eq!(
        status(&[
            "solve",
            "--height",
            "1",
            "--y",
            "2",
            "--max-iter",
            "1",
            "--tol",
            "1e-15"
        ])
        .status
        .code(),
        Some(3)
    );
}
