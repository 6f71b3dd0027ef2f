//! End-to-end tests of the `swapnet` binary: scenario reports, threshold
//! searches, the superadditivity table, the repeater scan, output formats
//! and exit codes.

use std::process::{Command, Output};

use serde_json::Value;

fn swapnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swapnet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(args: &[&str]) -> Value {
    let out = swapnet(args);
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn stdout_lines(args: &[&str]) -> Vec<String> {
    let out = swapnet(args);
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(str::to_string)
        .collect()
}

#[test]
fn swap_star_reports_mk_value() {
    let v = stdout_json(&[
        "swap",
        "--topology",
        "star",
        "--n",
        "3",
        "--m",
        "2",
        "--p",
        "0.8",
        "--criteria",
        "mk-xy",
    ]);
    assert_eq!(v["state_qubits"], 3);
    let report = &v["reports"][0];
    assert_eq!(report["criterion"], "mk-xy");
    let value = report["value"].as_f64().unwrap();
    assert!((value - 1.024).abs() < 1e-6, "got {value}");
    assert_eq!(report["violated"], Value::Bool(true));
}

#[test]
fn swap_noiseless_chain_hits_tsirelson() {
    let v = stdout_json(&[
        "swap",
        "--topology",
        "chain",
        "--n",
        "2",
        "--p",
        "1.0",
        "--criteria",
        "chsh",
    ]);
    let value = v["reports"][0]["value"].as_f64().unwrap();
    assert!(
        (value - 2.0 * std::f64::consts::SQRT_2).abs() < 1e-9,
        "got {value}"
    );
}

#[test]
fn swap_star_with_three_qubit_parents() {
    let v = stdout_json(&[
        "swap",
        "--topology",
        "star",
        "--n",
        "2",
        "--m",
        "3",
        "--p",
        "0.6",
        "--criteria",
        "mk-xy",
    ]);
    let report = &v["reports"][0];
    let value = report["value"].as_f64().unwrap();
    let want = 0.36 * 2f64.powf(1.5);
    assert!((value - want).abs() < 1e-6, "got {value}, want {want}");
    // 0.6 sits above the (2^(3/2))^(-1/2) ≈ 0.5946 threshold.
    assert_eq!(report["violated"], Value::Bool(true));
}

#[test]
fn swap_defaults_cover_all_applicable_criteria() {
    let v = stdout_json(&["swap", "--topology", "chain", "--n", "2", "--p", "0.9"]);
    let names: Vec<&str> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["criterion"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["chsh", "mk-xy", "functional", "ppt", "eof"]);

    let v = stdout_json(&["swap", "--topology", "star", "--n", "3", "--p", "0.9"]);
    let names: Vec<&str> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["criterion"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["mk-xy", "tensor2", "functional"]);
}

#[test]
fn swap_json_round_trips() {
    let v = stdout_json(&["swap", "--topology", "star", "--n", "3", "--p", "0.75"]);
    let reprinted = serde_json::to_string(&v).unwrap();
    let reparsed: Value = serde_json::from_str(&reprinted).unwrap();
    assert_eq!(v, reparsed);
}

#[test]
fn swap_csv_has_one_row_per_criterion() {
    let lines = stdout_lines(&[
        "swap",
        "--topology",
        "chain",
        "--n",
        "2",
        "--p",
        "0.9",
        "--format",
        "csv",
    ]);
    assert_eq!(lines[0], "criterion,value,threshold,violated");
    assert_eq!(lines.len(), 6);
    assert!(lines[1].starts_with("chsh,"));
}

#[test]
fn swap_rejects_inapplicable_criterion() {
    let out = swapnet(&[
        "swap",
        "--topology",
        "star",
        "--n",
        "3",
        "--p",
        "0.8",
        "--criteria",
        "chsh",
    ]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("does not apply"), "stderr: {err}");
}

#[test]
fn swap_rejects_out_of_range_visibility() {
    let out = swapnet(&["swap", "--topology", "chain", "--n", "2", "--p", "1.5"]);
    assert!(!out.status.success());
}

#[test]
fn threshold_examples_from_the_closed_forms() {
    // Seven-parent star, functional criterion: (2/π) 2^(1/7).
    let v = stdout_json(&[
        "threshold",
        "--topology",
        "star",
        "--n",
        "7",
        "--m",
        "2",
        "--criterion",
        "functional",
        "--bracket",
        "0.6,0.8",
    ]);
    let crossing = v["thresholds"]["functional"].as_f64().unwrap();
    assert!((crossing - 0.70290).abs() < 1e-4, "got {crossing}");

    // Three-parent star, MK in the x-y plane: (1/2)^(1/3).
    let v = stdout_json(&[
        "threshold",
        "--topology",
        "star",
        "--n",
        "3",
        "--criterion",
        "mk-xy",
        "--bracket",
        "0.6,0.95",
    ]);
    let crossing = v["thresholds"]["mk-xy"].as_f64().unwrap();
    assert!((crossing - 0.79370).abs() < 1e-4, "got {crossing}");

    // Two-parent chain, CHSH: p² = 1/√2 at p ≈ 0.8409.
    let v = stdout_json(&[
        "threshold",
        "--topology",
        "chain",
        "--n",
        "2",
        "--criterion",
        "chsh",
        "--bracket",
        "0.7,1.0",
    ]);
    let crossing = v["thresholds"]["chsh"].as_f64().unwrap();
    assert!((crossing - 0.84090).abs() < 1e-4, "got {crossing}");

    // Four-parent chain: p⁴ = 1/√2 at p = 2^(−1/8).
    let v = stdout_json(&[
        "threshold",
        "--topology",
        "chain",
        "--n",
        "4",
        "--criterion",
        "chsh",
        "--bracket",
        "0.85,0.99",
    ]);
    let crossing = v["thresholds"]["chsh"].as_f64().unwrap();
    assert!(
        (crossing - 2f64.powf(-1.0 / 8.0)).abs() < 1e-4,
        "got {crossing}"
    );
}

#[test]
fn threshold_grid_reports_every_point() {
    let v = stdout_json(&[
        "threshold",
        "--topology",
        "chain",
        "--n",
        "2",
        "--criterion",
        "chsh",
        "--bracket",
        "0.7,0.95",
        "--grid",
        "0.7,0.9,5",
    ]);
    let grid: Vec<f64> = v["grid"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(grid.len(), 5);
    assert!(grid.windows(2).all(|w| w[0] < w[1]), "grid not increasing");
    assert_eq!(v["points"].as_array().unwrap().len(), 5);
    let crossing = v["thresholds"]["chsh"].as_f64().unwrap();
    assert!(grid[0] <= crossing && crossing <= grid[4]);
    // Reports flip from not violated to violated across the grid.
    assert_eq!(v["points"][0][0]["violated"], Value::Bool(false));
    assert_eq!(v["points"][4][0]["violated"], Value::Bool(true));
}

#[test]
fn threshold_rejects_non_straddling_bracket() {
    let out = swapnet(&[
        "threshold",
        "--topology",
        "chain",
        "--n",
        "2",
        "--criterion",
        "chsh",
        "--bracket",
        "0.9,0.95",
    ]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bracket"), "stderr: {err}");
}

#[test]
fn superadditivity_flags_first_at_seven() {
    let v = stdout_json(&["superadditivity", "--n-min", "2", "--n-max", "10"]);
    assert_eq!(v["first_superadditive_n"], 7);
    let rows = v["rows"].as_array().unwrap();
    let row6 = &rows[4];
    assert_eq!(row6["n"], 6);
    assert_eq!(row6["superadditive"], Value::Bool(false));
    let vf6 = row6["v_functional"].as_f64().unwrap();
    assert!((vf6 - 0.714582).abs() < 1e-4);
    let row7 = &rows[5];
    assert_eq!(row7["n"], 7);
    assert_eq!(row7["superadditive"], Value::Bool(true));
    let vf7 = row7["v_functional"].as_f64().unwrap();
    assert!((vf7 - 0.70289).abs() < 1e-4);
    assert!(vf7 < std::f64::consts::FRAC_1_SQRT_2);
    // The two visibility families decrease monotonically with N.
    let vf: Vec<f64> = rows
        .iter()
        .map(|r| r["v_functional"].as_f64().unwrap())
        .collect();
    let vmk: Vec<f64> = rows.iter().map(|r| r["v_mk2"].as_f64().unwrap()).collect();
    assert!(vf.windows(2).all(|w| w[1] < w[0]));
    assert!(vmk.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn superadditivity_approaches_two_over_pi() {
    let v = stdout_json(&["superadditivity", "--n-min", "400", "--n-max", "400"]);
    let vf = v["rows"][0]["v_functional"].as_f64().unwrap();
    assert!((vf - 2.0 / std::f64::consts::PI).abs() < 2e-3, "got {vf}");
}

#[test]
fn repeater_scan_finds_gain_cells() {
    let lines = stdout_lines(&["repeater-scan"]);
    assert_eq!(lines[0], "a,lambda,eof_in,eof_out,gain");
    assert_eq!(lines.len(), 1 + 2500);
    let gains = lines[1..].iter().filter(|l| l.ends_with(",true")).count();
    assert!(gains >= 1, "no gain cells in the default scan");
    // Every data row parses: four floats and a boolean.
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 5);
        for value in &fields[..4] {
            value.parse::<f64>().unwrap();
        }
        assert!(fields[4] == "true" || fields[4] == "false");
    }
}

#[test]
fn repeater_pure_fixed_point_has_no_gain() {
    let lines = stdout_lines(&[
        "repeater-scan",
        "--a",
        "0.7071067811865476",
        "--lambda",
        "1.0",
    ]);
    assert_eq!(lines.len(), 2);
    let fields: Vec<&str> = lines[1].split(',').collect();
    let eof_in: f64 = fields[2].parse().unwrap();
    let eof_out: f64 = fields[3].parse().unwrap();
    assert!((eof_in - 1.0).abs() < 1e-9);
    assert!((eof_out - 1.0).abs() < 1e-9);
    assert_eq!(fields[4], "false");
}

#[test]
fn repeater_json_counts_gain_cells() {
    let v = stdout_json(&[
        "repeater-scan",
        "--a-grid",
        "0,1,10",
        "--lambda-grid",
        "0.5,1,10",
        "--format",
        "json",
    ]);
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 100);
    let declared = v["gain_cells"].as_u64().unwrap() as usize;
    let counted = cells
        .iter()
        .filter(|c| c["gain"] == Value::Bool(true))
        .count();
    assert_eq!(declared, counted);
}

#[test]
fn zero_concurrence_inputs_report_zero_eof() {
    // Separable corner of the family: eof_in must be exactly 0.
    let lines = stdout_lines(&["repeater-scan", "--a", "0.5", "--lambda", "0.2"]);
    let fields: Vec<&str> = lines[1].split(',').collect();
    let eof_in: f64 = fields[2].parse().unwrap();
    assert_eq!(eof_in, 0.0);
}

#[test]
fn qubit_cap_env_var_overrides_default() {
    // A three-parent star joins 6 qubits before measuring; a cap of 4
    // rejects it, a cap of 8 admits it.
    let tight = Command::new(env!("CARGO_BIN_EXE_swapnet"))
        .args(["swap", "--topology", "star", "--n", "3", "--p", "0.8"])
        .env("SWAPNET_MAX_QUBITS", "4")
        .output()
        .unwrap();
    assert!(!tight.status.success());
    let err = String::from_utf8_lossy(&tight.stderr);
    assert!(err.contains("dimension cap"), "stderr: {err}");

    let loose = Command::new(env!("CARGO_BIN_EXE_swapnet"))
        .args(["swap", "--topology", "star", "--n", "3", "--p", "0.8"])
        .env("SWAPNET_MAX_QUBITS", "8")
        .output()
        .unwrap();
    assert!(loose.status.success());
}

#[test]
fn invalid_arguments_exit_nonzero() {
    assert!(
        !swapnet(&["swap", "--topology", "ring", "--n", "2", "--p", "0.5"])
            .status
            .success()
    );
    assert!(
        !swapnet(&["swap", "--topology", "chain", "--n", "1", "--p", "0.5"])
            .status
            .success()
    );
    assert!(!swapnet(&["threshold", "--topology", "chain", "--n", "2"])
        .status
        .success());
    assert!(!swapnet(&[
        "swap",
        "--topology",
        "chain",
        "--n",
        "2",
        "--m",
        "3",
        "--p",
        "0.5"
    ])
    .status
    .success());
}
