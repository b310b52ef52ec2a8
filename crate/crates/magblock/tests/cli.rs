use std::process::{Command, Output};

use serde_json::Value;

fn magblock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_magblock"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_line(o: &Output) -> Value {
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    serde_json::from_str(err.lines().last().unwrap()).unwrap()
}

#[test]
fn steady_prints_fixed_key_order() {
    let o = magblock(&["steady", "--set", "chi_qm=20", "--set", "delta_m=4.5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let keys = [
        "\"g2\"",
        "\"p_n\"",
        "\"mean_magnon\"",
        "\"qubit_excitation\"",
        "\"residual\"",
        "\"n_fock\"",
        "\"converged\"",
    ];
    let positions: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{text}");
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["n_fock"], 6);
    assert_eq!(v["converged"], true);
    assert_eq!(v["p_n"].as_array().unwrap().len(), 6);
    let lib = magblock_core::steadystate::steady_state(&magblock_core::SystemParams {
        chi_qm: 20.0,
        delta_m: 4.5,
        ..Default::default()
    })
    .unwrap();
    assert_eq!(v["g2"].as_f64(), lib.g2_zero);
}

#[test]
fn fock_flag_sets_truncation() {
    let o = magblock(&["steady", "--fock", "9"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n_fock"], 9);
    assert_eq!(v["p_n"].as_array().unwrap().len(), 9);
}

#[test]
fn resonance_lists_eight_detunings() {
    let o = magblock(&["resonance", "--set", "chi_qm=45"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let got: Vec<f64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["detuning"].as_f64().unwrap())
        .collect();
    let want = [23.29, -23.29, 48.29, -48.29, 33.93, -33.93, 46.43, -46.43];
    assert_eq!(got.len(), 8);
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() < 5e-3, "{got:?}");
    }
    assert_eq!(v[0]["label"], "|g,0>->|g,1>");
}

#[test]
fn check_passes_on_defaults() {
    let o = magblock(&["check"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.lines().count() >= 10);
    assert!(text.lines().all(|l| l.starts_with("PASS ")), "{text}");
}

#[test]
fn sweep_writes_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.conf");
    let out = dir.path().join("cut.csv");
    std::fs::write(
        &config,
        "[sweep]\nmode = sweep\nchi_qm = 20\naxis1 = delta_m:-10:10:5\n",
    )
    .unwrap();
    let o = magblock(&[
        "sweep",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--workers",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let first = std::fs::read_to_string(&out).unwrap();
    assert_eq!(first.lines().count(), 6);
    let o = magblock(&[
        "sweep",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--workers",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), first);

    let o = magblock(&[
        "sweep",
        "--config",
        config.to_str().unwrap(),
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["records"].as_array().unwrap().len(), 5);
    assert_eq!(v["axes"][0]["parameter"], "delta_m");
}

#[test]
fn thermal_threshold_reports_temperature() {
    let o = magblock(&[
        "thermal-threshold",
        "--set",
        "chi_qm=20",
        "--set",
        "noise_channel=m_th",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let crossing = v["crossing"].as_f64().unwrap();
    let t = v["temperature_k"].as_f64().unwrap();
    let f = v["frequency_hz"].as_f64().unwrap();
    assert!((f - 8.5e9).abs() < 1.0);
    let back = magblock_core::observables::thermal_occupation(f, t).unwrap();
    assert!((back - crossing).abs() < 1e-12);
}

#[test]
fn failures_map_to_documented_codes() {
    let o = magblock(&["steady", "--set", "omega_x=1"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(error_line(&o)["error"]["kind"], "config");

    let o = magblock(&["steady", "--config", "/nonexistent/run.conf"]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(error_line(&o)["error"]["code"], 4);

    let o = magblock(&["steady", "--format", "xml"]);
    assert_eq!(o.status.code(), Some(2));

    let o = magblock(&[
        "thermal-threshold",
        "--set",
        "chi_qm=40",
        "--set",
        "delta_m=38",
        "--set",
        "noise_channel=m_th",
    ]);
    assert_eq!(o.status.code(), Some(40));
    let e = error_line(&o);
    assert_eq!(e["error"]["kind"], "bracket_violation");
    assert!(e["error"]["message"].as_str().unwrap().contains("g2 ="));

    let again = magblock(&[
        "thermal-threshold",
        "--set",
        "chi_qm=40",
        "--set",
        "delta_m=38",
        "--set",
        "noise_channel=m_th",
    ]);
    assert_eq!(again.status.code(), o.status.code());
}

#[test]
fn help_documents_exit_codes() {
    let o = magblock(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("Exit codes:"));
    assert!(text.contains("40   thermal threshold bracket violated"));
}
