use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lorentz-flow"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compose_reports_all_quantities() {
    let o = run(&["compose", "1", "1", "90", "--degrees", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["lambda"].as_f64().unwrap() - 1.513374006596504).abs() < 1e-12);
    assert!((v["theta"].as_f64().unwrap() - 0.5750061825784119).abs() < 1e-12);
    assert!((v["tau"].as_f64().unwrap() - 0.4207839616380729).abs() < 1e-12);
    assert!(v["oracle_residual"].as_f64().unwrap() < 1e-12);
}

#[test]
fn speed_inputs_are_converted() {
    let a = run(&["compose", "0.6", "0.8", "1", "--speed", "--format", "json"]);
    let b = run(&[
        "compose",
        &0.6f64.atanh().to_string(),
        &0.8f64.atanh().to_string(),
        "1",
        "--format",
        "json",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(
        run(&["compose", "1.2", "0.5", "1", "--speed"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn degenerate_composition_exits_2() {
    let o = run(&["compose", "0", "0", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("degenerate: both rapidities zero"));
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(run(&["compose", "1"]).status.code(), Some(2));
    assert_eq!(run(&["compose", "1", "1", "4"]).status.code(), Some(2));
    assert_eq!(
        run(&["flow", "1", "0.5", "0", "--step", "0.5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn zero_speed_off_axis_exits_4() {
    let o = run(&["flow", "1.0", "0.0", "0", "--xi-end", "1"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("near-singular"));
}

#[test]
fn flow_csv_lands_on_end_point() {
    let o = run(&[
        "flow",
        "1.5707963267948966",
        "0.6",
        "0",
        "--xi-end",
        "5",
        "--every",
        "1000",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "xi,theta,beta,tau,rapidity");
    assert_eq!(lines.len(), 7);
    let last: Vec<f64> = lines[6].split(',').map(|f| f.parse().unwrap()).collect();
    assert_eq!(last[0], 5.0);
    assert!((last[1] - 0.0080857273).abs() < 1e-9);
    assert!((last[3] - 0.6354589660).abs() < 1e-9);
    assert!((last[4] - 5.2231598956).abs() < 1e-9);
}

#[test]
fn portrait_outputs() {
    let csv = run(&["portrait", "--defaults", "--record-every", "500"]);
    assert!(csv.status.success());
    let text = stdout(&csv);
    assert!(text.starts_with("kind,id,xi,theta,beta,tau,dtheta,dbeta,singular_flag\n"));
    assert_eq!(
        text.lines().filter(|l| l.starts_with("arrow,")).count(),
        400
    );
    assert_eq!(
        text.lines()
            .filter(|l| l.starts_with("fixed_point_"))
            .count(),
        4
    );

    let svg = run(&["portrait", "--defaults", "--format", "svg"]);
    assert!(svg.status.success());
    let text = stdout(&svg);
    assert!(text.starts_with("<?xml") && text.trim_end().ends_with("</svg>"));
}

#[test]
fn portrait_spec_file() {
    let dir = std::env::temp_dir().join(format!("lorentz-flow-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let spec = dir.join("spec.json");
    std::fs::write(
        &spec,
        r#"{"n_theta": 3, "n_beta": 4, "initial_states": [{"theta": 1.0, "beta": 0.5, "tau": 0.0}], "xi_end": 2.0}"#,
    )
    .unwrap();
    let out = dir.join("p.csv");
    let o = run(&[
        "portrait",
        "--spec",
        spec.to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("arrow,")).count(), 12);
    assert!(text.lines().any(|l| l.starts_with("trajectory,0,2,")));
    std::fs::remove_dir_all(&dir).unwrap();

    assert_eq!(
        run(&["portrait", "--spec", "/nonexistent/spec.json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn collimate_histogram_and_summary() {
    let o = run(&["collimate", "2", "--n", "5000", "--bins", "10"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 11);
    let total: usize = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap().parse::<usize>().unwrap())
        .sum();
    assert_eq!(total, 5000);

    let j = run(&["collimate", "2", "--n", "5000", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["samples"], 5000);
    assert!(v["max_route_discrepancy"].as_f64().unwrap() < 1e-12);
}

#[test]
fn seeds_change_collimation_samples() {
    let a = run(&[
        "collimate",
        "2",
        "--n",
        "2000",
        "--seed",
        "1",
        "--format",
        "json",
    ]);
    let b = run(&[
        "collimate",
        "2",
        "--n",
        "2000",
        "--seed",
        "2",
        "--format",
        "json",
    ]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn thomas_linearisation() {
    let o = run(&[
        "thomas",
        "0.5",
        "1",
        "1.5707963267948966",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["dtau_dxi_at_zero"].as_f64().unwrap() - 0.46211715726000974).abs() < 1e-14);
}

#[test]
fn verify_passes() {
    let o = run(&["verify", "--n", "300"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}
