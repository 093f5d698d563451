//! End-to-end tests of the `gausschain` binary: exit codes, output formats,
//! determinism, and the validation report.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gausschain"))
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

const SMALL_SWEEP: &str = "chain.n = 3\nchain.omega = 1.0\nchain.kappa = 0.1\n\
    sweep.tau_start = 44.0\nsweep.tau_end = 44.4\nsweep.tau_step = 0.1\nsweep.pairs = 1-2,1-3\n";

#[test]
fn sweep_csv_shape_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "sweep.conf", SMALL_SWEEP);

    let out1 = run(&["sweep", "--config", &config]);
    assert!(out1.status.success(), "{out1:?}");
    let text = String::from_utf8(out1.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "tau,pair,log_negativity");
    // 5 grid points x 2 pairs
    assert_eq!(lines.len(), 11);
    assert!(lines[1].starts_with("4.40000000000000e1,1-2,"));

    let out2 = run(&["sweep", "--config", &config]);
    assert_eq!(out2.stdout, text.as_bytes(), "non-deterministic output");
}

#[test]
fn sweep_json_parses() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "sweep.conf", SMALL_SWEEP);
    let out = run(&["sweep", "--config", &config, "--format", "json"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed.as_array().unwrap().len(), 5);
    assert_eq!(parsed[0]["entries"][0]["pair"], serde_json::json!([1, 2]));
}

#[test]
fn sweep_writes_file_with_out_flag() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "sweep.conf", SMALL_SWEEP);
    let out_path = dir.path().join("records.csv");
    let out = run(&[
        "sweep",
        "--config",
        &config,
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert!(text.starts_with("tau,pair,log_negativity\n"));
}

#[test]
fn parse_error_exits_one_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "bad.conf", "chain.n = 3\nchain.kappa = fast\n");
    let out = run(&["sweep", "--config", &config]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn unknown_key_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "bad.conf", "chain.n = 3\nchain.kapa = 0.1\n");
    let out = run(&["sweep", "--config", &config]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn missing_config_file_exits_three() {
    let out = run(&["sweep", "--config", "/nonexistent/path.conf"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn missing_config_flag_exits_one() {
    let out = run(&["sweep"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn tag_requires_r_and_sweep_rejects_it() {
    let dir = tempfile::tempdir().unwrap();
    let no_r = write_config(dir.path(), "a.conf", "chain.n = 3\nchain.kappa = 0.1\n");
    let out = run(&["tag", "--config", &no_r]);
    assert_eq!(out.status.code(), Some(1));

    let with_r = write_config(
        dir.path(),
        "b.conf",
        "chain.n = 3\nchain.kappa = 0.1\nsweep.r = 0.2\nsweep.tau_end = 1.0\nsweep.tau_step = 0.5\n",
    );
    let out = run(&["sweep", "--config", &with_r]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["tag", "--config", &with_r]);
    assert!(out.status.success(), "{out:?}");
}

#[test]
fn command_mismatch_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "a.conf",
        "command = sweep\nchain.n = 3\nchain.kappa = 0.1\n",
    );
    let out = run(&["validate", "--config", &config]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn validate_passes_stable_chain() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "good.conf",
        "chain.n = 3\nchain.omega = 1.0\nchain.kappa = 0.1\nsweep.tau_end = 50\n",
    );
    let out = run(&["validate", "--config", &config]);
    assert!(out.status.success(), "{out:?}");
    let text = String::from_utf8(out.stdout).unwrap();
    for name in [
        "stability",
        "oracle-equivalence",
        "symplecticity",
        "purity",
        "mirror-symmetry",
        "engine-agreement",
    ] {
        assert!(text.contains(&format!("PASS {name}")), "{text}");
    }
}

#[test]
fn validate_unstable_chain_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "bad.conf",
        "chain.n = 3\nchain.omega = 1.0\nchain.kappa = 0.8\n",
    );
    let out = run(&["validate", "--config", &config]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL stability"), "{text}");
}

#[test]
fn validate_rotating_wave_reports_null_entanglement() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "rwa.conf",
        "chain.n = 4\nchain.omega = 1.0\nchain.kappa = 0.1\nchain.model = rotating_wave\n",
    );
    let out = run(&["validate", "--config", &config]);
    assert!(out.status.success(), "{out:?}");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS rotating-wave-null"), "{text}");
}

#[test]
fn decompose_emits_circuit_text() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "dec.conf",
        "chain.n = 3\nchain.omega = 1.0\nchain.kappa = 0.1\ndecompose.tau = 10.0\n",
    );
    let out = run(&["decompose", "--config", &config]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().starts_with("coupler "));
    // Palindrome: as many lines as 2 couplers + 2 squeezer layers + rotators.
    assert_eq!(text.lines().count(), 2 * 2 + 3 * 3);
    // Round-trips through the library parser.
    let gates = gausschain::parse_circuit(&text, 3).unwrap();
    assert_eq!(gates.len(), 13);
}

#[test]
fn simulate_emits_covariance() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "sim.conf",
        "chain.n = 2\nchain.omega = 1.0\nchain.kappa = 0.1\nsimulate.tau = 5.0\n",
    );
    let out = run(&[
        "simulate", "--config", &config, "--format", "json", "--engine", "both",
    ]);
    assert!(out.status.success(), "{out:?}");
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["modes"], 2);
    assert_eq!(parsed["v"].as_array().unwrap().len(), 4);

    let out = run(&["simulate", "--config", &config]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("i,j,value\n"));
    assert_eq!(text.lines().count(), 17);
}

#[test]
fn thread_cap_env_respected() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "sweep.conf", SMALL_SWEEP);
    let out = bin()
        .args(["sweep", "--config", &config])
        .env("GAUSSCHAIN_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());

    let bad = bin()
        .args(["sweep", "--config", &config])
        .env("GAUSSCHAIN_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

/// Full vacuum sweep through the binary: the (1,2) column of the CSV must
/// peak inside [44.0, 44.5].
#[test]
fn full_sweep_csv_peak_location() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "full.conf",
        "chain.n = 3\nchain.omega = 1.0\nchain.kappa = 0.1\nsweep.pairs = 1-2\n",
    );
    let out = run(&["sweep", "--config", &config]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut best = (0.0f64, -1.0f64);
    for line in text.lines().skip(1) {
        let mut fields = line.split(',');
        let tau: f64 = fields.next().unwrap().parse().unwrap();
        let pair = fields.next().unwrap();
        let lam: f64 = fields.next().unwrap().parse().unwrap();
        assert_eq!(pair, "1-2");
        if lam > best.1 {
            best = (tau, lam);
        }
    }
    assert!(
        (44.0..=44.5).contains(&best.0),
        "peak at tau = {} (value {})",
        best.0,
        best.1
    );
}

#[test]
fn oracle_engine_flag_works() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "sweep.conf", SMALL_SWEEP);
    let dec = run(&["sweep", "--config", &config, "--engine", "decomposition"]);
    let ora = run(&["sweep", "--config", &config, "--engine", "oracle"]);
    let both = run(&["sweep", "--config", &config, "--engine", "both"]);
    assert!(dec.status.success() && ora.status.success() && both.status.success());
    // Engines agree to printed precision except for last-digit jitter.
    let d = String::from_utf8(dec.stdout).unwrap();
    let b = String::from_utf8(both.stdout).unwrap();
    assert_eq!(d, b);
}
