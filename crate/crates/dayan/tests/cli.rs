//! End-to-end tests of the `dayan` binary: golden outputs for the worked
//! example, exit-code contracts, JSON schema checks, and determinism of the
//! verification report.

use std::process::{Command, Output};

fn dayan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dayan"))
        .args(args)
        .env_remove("DAYAN_ORACLE_CAP")
        .output()
        .expect("binary runs")
}

fn dayan_with_cap(cap: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dayan"))
        .args(args)
        .env("DAYAN_ORACLE_CAP", cap)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> &str {
    std::str::from_utf8(&out.stderr).expect("stderr is UTF-8")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[track_caller]
fn assert_ok(out: &Output) {
    assert_eq!(code(out), 0, "stderr: {}", stderr(out));
}

#[test]
fn inverse_worked_example() {
    let out = dayan(&["inverse", "38887", "41130"]);
    assert_ok(&out);
    assert_eq!(stdout(&out), "6583\n");
}

#[test]
fn trace_table_matches_golden() {
    let out = dayan(&["trace", "38887", "41130", "--format", "table"]);
    assert_ok(&out);
    assert_eq!(stdout(&out), include_str!("golden/trace_table.txt"));
}

#[test]
fn trace_json_matches_golden_and_schema() {
    let out = dayan(&["trace", "38887", "41130", "--format", "json"]);
    assert_ok(&out);
    assert_eq!(stdout(&out), include_str!("golden/trace.json"));

    let doc: serde_json::Value = serde_json::from_str(stdout(&out)).expect("valid JSON");
    let obj = doc.as_object().expect("an object");
    let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(
        keys,
        ["a", "m", "n_steps", "quotients", "states", "trailing_quotient", "version"]
    );
    assert_eq!(doc["version"], 1);
    assert_eq!(doc["n_steps"], 6);
    // All numerics are decimal strings; states are flat 4-entry rows.
    assert_eq!(doc["a"], "38887");
    assert_eq!(doc["m"], "41130");
    for q in doc["quotients"].as_array().expect("array") {
        q.as_str().expect("quotients are strings");
    }
    let states = doc["states"].as_array().expect("array");
    assert_eq!(states.len(), 7);
    for state in states {
        let entries = state.as_array().expect("array");
        assert_eq!(entries.len(), 4);
        for e in entries {
            e.as_str().expect("state entries are strings");
        }
    }
}

#[test]
fn trace_table_round_trips_to_json() {
    let table = dayan(&["trace", "38887", "41130", "--format", "table"]);
    let json = dayan(&["trace", "38887", "41130", "--format", "json"]);
    assert_ok(&table);
    assert_ok(&json);
    let parsed = dayan::qin::Trace::parse_table(stdout(&table)).expect("table parses");
    assert_eq!(parsed.to_json_string() + "\n", stdout(&json));
}

#[test]
fn cf_text_small_example() {
    let out = dayan(&["cf", "2", "7", "--convergents"]);
    assert_ok(&out);
    assert_eq!(stdout(&out), "[0; 3, 1, 1]\n0/1\n1/3\n1/4\n");

    let with_final = dayan(&["cf", "2", "7", "--convergents", "--with-final"]);
    assert_ok(&with_final);
    assert_eq!(stdout(&with_final), "[0; 3, 1, 1]\n0/1\n1/3\n1/4\n2/7\n");
}

#[test]
fn cf_json_matches_golden() {
    let out = dayan(&["cf", "38887", "41130", "--convergents", "--format", "json"]);
    assert_ok(&out);
    assert_eq!(stdout(&out), include_str!("golden/cf.json"));
}

#[test]
fn lattice_report_matches_golden() {
    let text = dayan(&["lattice", "38887", "41130"]);
    assert_ok(&text);
    assert_eq!(stdout(&text), include_str!("golden/lattice_report.txt"));

    let json = dayan(&["lattice", "38887", "41130", "--format", "json"]);
    assert_ok(&json);
    assert_eq!(stdout(&json), include_str!("golden/lattice_report.json"));
}

#[test]
fn lattice_trivial_case() {
    let out = dayan(&["lattice", "3", "100"]);
    assert_ok(&out);
    assert_eq!(
        stdout(&out),
        "shortest = (1, -3)\nnorm_sq = 10\nsource = trivial_a\ncertified = true\n"
    );
}

#[test]
fn lattice_heuristic_method() {
    let out = dayan(&["lattice", "38887", "41130", "--method", "heuristic"]);
    assert_ok(&out);
    let text = stdout(&out);
    assert!(text.contains("shortest = (55, -25)\n"), "got: {text}");
    assert!(text.contains("certified = false\n"), "got: {text}");
}

#[test]
fn oracle_minima_text_and_json() {
    let text = dayan(&["lattice", "38887", "41130", "--method", "oracle", "--count", "2"]);
    assert_ok(&text);
    assert_eq!(
        stdout(&text),
        "(55, -25) norm_sq = 3650\n(257, 631) norm_sq = 464210\n"
    );

    let json = dayan(&["oracle", "38887", "41130", "--count", "2", "--format", "json"]);
    assert_ok(&json);
    assert_eq!(stdout(&json), include_str!("golden/oracle_minima.json"));
}

#[test]
fn validation_errors_exit_2_and_name_the_condition() {
    let too_small = dayan(&["inverse", "0", "5"]);
    assert_eq!(code(&too_small), 2);
    assert!(stderr(&too_small).contains("a must be at least 2"));

    let one = dayan(&["inverse", "1", "5"]);
    assert_eq!(code(&one), 2);
    assert!(stderr(&one).contains("a must be at least 2"));

    let not_below = dayan(&["inverse", "43373", "41130"]);
    assert_eq!(code(&not_below), 2);
    assert!(stderr(&not_below).contains("a must be strictly less than m"));

    let not_coprime = dayan(&["inverse", "6", "41130"]);
    assert_eq!(code(&not_coprime), 2);
    assert!(stderr(&not_coprime).contains("coprime"));
    assert!(stderr(&not_coprime).contains("gcd(6, 41130) = 6"));

    let not_a_number = dayan(&["inverse", "12x", "41130"]);
    assert_eq!(code(&not_a_number), 2);

    let unknown = dayan(&["frobnicate"]);
    assert_eq!(code(&unknown), 2, "clap errors use the usage exit code");
}

#[test]
fn reduce_maps_a_into_range_first() {
    // 43373 = 41130 + 2243, so --reduce computes the inverse of 2243.
    let out = dayan(&["inverse", "43373", "41130", "--reduce"]);
    assert_ok(&out);
    assert_eq!(stdout(&out), "34547\n");

    let check = dayan(&["inverse", "2243", "41130"]);
    assert_ok(&check);
    assert_eq!(stdout(&check), "34547\n");

    // Reduction cannot rescue a pair that is not coprime.
    let still_bad = dayan(&["inverse", "41136", "41130", "--reduce"]);
    assert_eq!(code(&still_bad), 2);
    assert!(stderr(&still_bad).contains("coprime"));
}

#[test]
fn verify_is_seed_stable() {
    let args = ["verify", "--samples", "50", "--max-m", "10000", "--seed", "7"];
    let first = dayan(&args);
    let second = dayan(&args);
    assert_ok(&first);
    assert_ok(&second);
    assert_eq!(stdout(&first), stdout(&second), "same seed, same bytes");
    assert!(stdout(&first).contains("50/50 passed"), "got: {}", stdout(&first));
    assert!(stdout(&first).starts_with("corpus: samples=50 max_m=10000 seed=7 svp_samples=50\n"));

    let other_seed = dayan(&["verify", "--samples", "50", "--max-m", "10000", "--seed", "8"]);
    assert_ok(&other_seed);
    assert_ne!(stdout(&first), stdout(&other_seed), "seed changes the corpus");
}

#[test]
fn verify_zero_samples_is_a_vacuous_pass_with_warning() {
    let out = dayan(&["verify", "--samples", "0"]);
    assert_ok(&out);
    assert!(stderr(&out).contains("warning"));
    assert!(stderr(&out).contains("vacuous"));
    assert!(stdout(&out).contains("0/0 passed"));
}

#[test]
fn oracle_cap_is_env_overridable() {
    // Default cap (10^12) comfortably admits m = 41130.
    let default_cap = dayan(&["oracle", "38887", "41130", "--count", "1"]);
    assert_ok(&default_cap);

    // A tiny env cap rejects the same modulus with a usage error.
    let capped = dayan_with_cap("100", &["oracle", "38887", "41130", "--count", "1"]);
    assert_eq!(code(&capped), 2);
    assert!(stderr(&capped).contains("cap"));

    // An env cap just above the modulus admits it again.
    let admitted = dayan_with_cap("41130", &["oracle", "38887", "41130", "--count", "1"]);
    assert_ok(&admitted);
    assert_eq!(stdout(&admitted), "(55, -25) norm_sq = 3650\n");

    // --unsafe-no-cap drops the guard regardless of the env variable.
    let uncapped = dayan_with_cap(
        "100",
        &["oracle", "38887", "41130", "--count", "1", "--unsafe-no-cap"],
    );
    assert_ok(&uncapped);

    let garbage = dayan_with_cap("not-a-number", &["oracle", "38887", "41130"]);
    assert_eq!(code(&garbage), 2);
    assert!(stderr(&garbage).contains("DAYAN_ORACLE_CAP"));
}

#[test]
fn oracle_count_bounds() {
    let zero = dayan(&["oracle", "38887", "41130", "--count", "0"]);
    assert_ok(&zero);
    assert_eq!(stdout(&zero), "");

    let three = dayan(&["oracle", "38887", "41130", "--count", "3"]);
    assert_eq!(code(&three), 2);
    assert!(stderr(&three).contains("at most the 2 successive minima"));
}
