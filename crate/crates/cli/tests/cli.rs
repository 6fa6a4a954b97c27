use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn dds(args: &[&str]) -> Output {
    dds_in(None, args, &[])
}

fn dds_in(dir: Option<&Path>, args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_dds"));
    c.args(args).env_remove("DDS_CONFIG").env_remove("DDS_PI_DIGITS");
    if let Some(d) = dir {
        c.current_dir(d);
    }
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

const COMMANDS: &[&[&str]] = &[
    &["sum", "--kernel", "csc", "--to", "100"],
    &["lambda", "--sigma", "100"],
    &["reconstruct", "--sigma", "100"],
    &["bounds", "--sigma", "100", "--c1", "78.1160806386"],
    &["holder", "--p", "4", "--n", "100"],
    &["fermi", "--p", "3", "--x", "-2"],
    &["spikes", "--to", "1000"],
    &["convergents", "--count", "8"],
    &["elliptic", "--to", "100"],
    &["slope-field", "--t-lo", "1", "--t-hi", "10", "--steps", "10"],
];

#[test]
fn json_round_trips_for_every_command() {
    for args in COMMANDS {
        let mut full = vec!["--no-cache", "--format", "json"];
        full.extend_from_slice(args);
        let out = dds(&full);
        assert!(out.status.success(), "{args:?}");
        let v = json(&out);
        for key in ["command", "params", "results", "diagnostics", "tool_version"] {
            assert!(v.get(key).is_some(), "{args:?} lacks {key}");
        }
        let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(again, v);
    }
}

#[test]
fn csv_always_has_a_header() {
    for args in COMMANDS {
        let mut full = vec!["--no-cache", "--format", "csv"];
        full.extend_from_slice(args);
        let out = dds(&full);
        let text = String::from_utf8(out.stdout).unwrap();
        let header = text.lines().next().unwrap();
        assert!(!header.chars().next().unwrap().is_ascii_digit(), "{args:?}: {header}");
    }
    let out = dds(&["--no-cache", "--format", "csv", "slope-field", "--t-lo", "1", "--t-hi", "2", "--steps", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.starts_with("t,slope\n"));
}

#[test]
fn numbers_carry_seventeen_digits() {
    let v = json(&dds(&["--no-cache", "--format", "json", "lambda", "--sigma", "10001"]));
    let raw = v["results"]["lambda"].to_string();
    let mantissa = raw.split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mantissa.len(), 17, "{raw}");
    assert!((v["results"]["lambda"].as_f64().unwrap() - 78.1160806386).abs() < 1e-4);
}

#[test]
fn exit_codes() {
    assert_eq!(dds(&["--no-cache", "lambda", "--sigma", "0"]).status.code(), Some(2));
    assert_eq!(dds(&["--no-cache", "sum", "--phase", "1", "--phase-pi", "--to", "5"]).status.code(), Some(3));
    assert_eq!(dds(&["verify", "--suite", ""]).status.code(), Some(64));
    assert_eq!(dds(&["verify"]).status.code(), Some(64));
    assert_eq!(dds(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(dds(&["--help"]).status.code(), Some(0));
    assert_eq!(dds(&["--no-cache", "slope-field", "--t-lo", "2", "--t-hi", "1", "--steps", "4"]).status.code(), Some(2));
}

#[test]
fn json_error_object() {
    let out = dds(&["--no-cache", "--format", "json", "sum", "--phase", "0.5", "--phase-pi", "--kernel", "sec", "--to", "3"]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["error"]["kind"], "pole");
    assert_eq!(v["error"]["exit_code"], 3);
}

#[test]
fn cache_hit_returns_identical_results() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["--cache-dir", cache, "--format", "json", "sum", "--kernel", "csc", "--to", "2000"];
    let first = json(&dds(&args));
    let second = json(&dds(&args));
    assert_eq!(first["diagnostics"]["cache_hit"], false);
    assert_eq!(second["diagnostics"]["cache_hit"], true);
    assert_eq!(
        serde_json::to_string(&first["results"]).unwrap(),
        serde_json::to_string(&second["results"]).unwrap()
    );
    let other = json(&dds(&["--cache-dir", cache, "--format", "json", "--precision", "fast", "sum", "--to", "2000"]));
    assert_eq!(other["diagnostics"]["cache_hit"], false);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
    let off = json(&dds(&["--cache-dir", cache, "--no-cache", "--format", "json", "sum", "--to", "2000"]));
    assert_eq!(off["diagnostics"]["cache_hit"], false);
}

#[test]
fn config_file_then_env_then_flags() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("dds.conf"), "format = csv\nno_cache = true\n").unwrap();
    let out = dds_in(Some(dir.path()), &["fermi", "--p", "2"], &[]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("key,value\n"));

    let env_conf = dir.path().join("env.conf");
    std::fs::write(&env_conf, "format = json\n").unwrap();
    let out = dds_in(Some(dir.path()), &["fermi", "--p", "2"], &[("DDS_CONFIG", env_conf.to_str().unwrap())]);
    assert_eq!(json(&out)["command"], "fermi");

    let out = dds_in(
        Some(dir.path()),
        &["--format", "table", "fermi", "--p", "2"],
        &[("DDS_CONFIG", env_conf.to_str().unwrap())],
    );
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("fermi (dds"));

    std::fs::write(dir.path().join("dds.conf"), "colour = red\n").unwrap();
    assert_eq!(dds_in(Some(dir.path()), &["fermi", "--p", "2"], &[]).status.code(), Some(64));
}

#[test]
fn digit_file_overrides_pi() {
    let dir = tempfile::tempdir().unwrap();
    let sqrt2 = "1.41421356237309504880168872420969807856967187537694807317667973799073247846210703885038753432764157";
    let path = dir.path().join("sqrt2.txt");
    std::fs::write(&path, sqrt2).unwrap();
    let p = path.to_str().unwrap();
    let args = ["--no-cache", "--format", "json", "--pi-digits", p, "convergents", "--count", "5"];
    let v = json(&dds(&args));
    let qs: Vec<String> = v["results"]["rows"].as_array().unwrap().iter().map(|r| r["q"].to_string()).collect();
    assert_eq!(qs, ["1", "2", "5", "12", "29"]);

    let v = json(&dds_in(None, &["--no-cache", "--format", "json", "convergents", "--count", "2"], &[("DDS_PI_DIGITS", p)]));
    assert_eq!(v["results"]["rows"][1]["p"].to_string(), "3");

    let v = json(&dds(&["--no-cache", "--format", "json", "convergents", "--count", "2"]));
    assert_eq!(v["results"]["rows"][1]["p"].to_string(), "22");
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("o.csv");
    let out = dds(&["--no-cache", "--format", "csv", "--out", path.to_str().unwrap(), "spikes", "--to", "400"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.starts_with("index,magnitude,is_convergent_numerator\n1,"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn cmd_examples() {
    let v = json(&dds(&["--no-cache", "--format", "json", "sum", "--kernel", "cot", "--v", "2", "--s", "3", "--to", "1"]));
    let cot1 = 1f64.cos() / 1f64.sin();
    assert!((v["results"]["value"].as_f64().unwrap() - cot1 * cot1).abs() < 1e-15);

    let sum = json(&dds(&["--no-cache", "--format", "json", "sum", "--kernel", "csc", "--v", "2", "--s", "3", "--to", "10000"]));
    let rec = json(&dds(&["--no-cache", "--format", "json", "reconstruct", "--sigma", "10001"]));
    let (a, b) = (sum["results"]["value"].as_f64().unwrap(), rec["results"]["psi"].as_f64().unwrap());
    assert!((a - b).abs() <= 1e-9 * a);

    let v = json(&dds(&["--no-cache", "--format", "json", "sum", "--kernel", "sec", "--to", "1000"]));
    assert!(v["results"]["value"].as_f64().unwrap() > 0.0);

    let v = json(&dds(&["--no-cache", "--format", "json", "slope-field", "--t-lo", "1", "--t-hi", "10001", "--steps", "11"]));
    let rows = v["results"]["rows"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["slope"].as_f64().unwrap() < 0.0));
    let last = rows.last().unwrap();
    assert_eq!(last["t"].as_f64(), Some(10001.0));
    assert!(last["slope"].as_f64().unwrap().abs() <= 1e-10);
}

#[test]
fn verify_suites_exit_zero() {
    for suite in ["identities", "golden"] {
        let out = dds(&["--format", "json", "verify", "--suite", suite]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
        assert_eq!(json(&out)["results"]["failed"], 0);
    }
}
