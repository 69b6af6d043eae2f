//! End-to-end runs of the binary: argument handling, file IO, output
//! shapes, and exit codes.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_affine-lab"))
}

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("affine-lab-cli-{name}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).unwrap()
}

#[test]
fn sets_gen_writes_progression_file() {
    let dir = workdir("sets");
    let path = dir.join("a.json");
    let output = bin()
        .args(["sets", "gen", "--kind", "ap", "--start", "1", "--step", "1", "--n", "4"])
        .args(["--out", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(output.status.success());
    let written: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written, serde_json::json!(["1", "2", "3", "4"]));
}

#[test]
fn seeded_draws_depend_only_on_the_seed() {
    let run = || {
        let output = bin()
            .args(["sets", "gen", "--kind", "random-int", "--range", "100", "--n", "5"])
            .args(["--seed", "7"])
            .output()
            .unwrap();
        assert!(output.status.success());
        output.stdout
    };
    let first = run();
    assert_eq!(first, run());
    let parsed: Vec<String> = serde_json::from_slice(&first).unwrap();
    assert_eq!(parsed, ["4", "5", "47", "75", "88"]);
}

#[test]
fn family_energy_pipeline_agrees_with_naive() {
    let dir = workdir("pipeline");
    let spec = dir.join("family.json");
    fs::write(
        &spec,
        r#"{"kind":"thm2","c":["1","2","3","4"],"d":["1","2","3","4"],"lambda":"1","mu":"1"}"#,
    )
    .unwrap();
    let family = stdout_json(&bin().args(["family", "--spec", spec.to_str().unwrap()]).output().unwrap());
    assert_eq!(family["report"]["admitted"], 12);
    assert_eq!(family["lines"].as_array().unwrap().len(), 12);

    let lines = dir.join("lines.json");
    fs::write(&lines, serde_json::to_string(&family["lines"]).unwrap()).unwrap();
    let energy = stdout_json(
        &bin()
            .args(["energy", "--lines", lines.to_str().unwrap(), "--naive"])
            .output()
            .unwrap(),
    );
    assert_eq!(energy["energy"], "624");
    assert_eq!(energy["naive"], "624");
    assert_eq!(energy["agree"], true);
}

#[test]
fn grid_trace_on_the_infinite_line_lists_directions() {
    let dir = workdir("trace");
    let points = dir.join("grid.json");
    fs::write(&points, r#"{"a":["0","1"],"b":["0","1"]}"#).unwrap();
    let trace = stdout_json(
        &bin()
            .args(["trace", "--points", points.to_str().unwrap(), "--line", "infinity"])
            .output()
            .unwrap(),
    );
    assert_eq!(trace["size"], 4);
    let dirs = stdout_json(
        &bin()
            .args(["directions", "--points", points.to_str().unwrap()])
            .output()
            .unwrap(),
    );
    assert_eq!(dirs["count"], 4);
}

#[test]
fn incidence_reports_oracle_agreement() {
    let dir = workdir("incidence");
    let points = dir.join("grid.json");
    let lines = dir.join("lines.json");
    fs::write(&points, r#"{"a":["0","1","2"],"b":["0","1","2"]}"#).unwrap();
    fs::write(&lines, r#"[{"m":"1","c":"0"},{"m":"-1","c":"2"}]"#).unwrap();
    let record = stdout_json(
        &bin()
            .args(["incidence", "--points", points.to_str().unwrap()])
            .args(["--lines", lines.to_str().unwrap()])
            .output()
            .unwrap(),
    );
    assert_eq!(record["incidences"], "6");
    assert_eq!(record["agree"], true);
}

#[test]
fn checkers_exit_zero_when_all_assertions_hold() {
    let dir = workdir("checkers");
    let c = dir.join("c.json");
    fs::write(&c, r#"["1","2","3"]"#).unwrap();
    for sub in ["check-thm2", "check-thm3"] {
        let output = bin()
            .args([sub, "--c", c.to_str().unwrap(), "--d", c.to_str().unwrap()])
            .args(["--lambda", "1", "--mu", "1"])
            .output()
            .unwrap();
        let report = stdout_json(&output);
        assert_eq!(report["id"], sub);
        assert!(report["assertions"].as_array().unwrap().iter().all(|a| a["holds"] == true));
    }
    let output = bin()
        .args(["diag-thm3", "--c", c.to_str().unwrap(), "--d", c.to_str().unwrap()])
        .args(["--lambda", "30", "--mu", "1"])
        .output()
        .unwrap();
    assert!(stdout_json(&output)["assertions"].as_array().unwrap().len() >= 4);
}

#[test]
fn elekes_construction_reaches_its_incidence_floor() {
    let dir = workdir("elekes");
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    fs::write(&a, r#"["1","2"]"#).unwrap();
    fs::write(&b, r#"["1","3"]"#).unwrap();
    let report = stdout_json(
        &bin()
            .args(["check-thm1", "--a", a.to_str().unwrap(), "--b", b.to_str().unwrap(), "--elekes"])
            .output()
            .unwrap(),
    );
    assert_eq!(report["id"], "check-thm1");
    assert!(report["assertions"].as_array().unwrap().iter().all(|x| x["holds"] == true));
}

#[test]
fn sweep_csv_has_the_fixed_column_order() {
    let output = bin()
        .args(["sweep", "--kind", "thm2", "--ns", "4,8,16", "--out", "csv"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,measured,bound,ratio,runtime_ms"));
    assert_eq!(lines.clone().count(), 3);
    assert!(lines.all(|row| row.ends_with(",0")));
}

#[test]
fn usage_errors_exit_with_code_two() {
    let missing = bin().args(["energy", "--lines", "/no/such/file.json"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));

    let bad_format = bin()
        .args(["energy", "--lines", "x.json", "--out", "yaml"])
        .output()
        .unwrap();
    assert_eq!(bad_format.status.code(), Some(2));

    let csv_outside_sweep = bin()
        .args(["directions", "--points", "x.json", "--out", "csv"])
        .output()
        .unwrap();
    assert_eq!(csv_outside_sweep.status.code(), Some(2));

    let unknown_flag = bin().args(["energy", "--nope"]).output().unwrap();
    assert_eq!(unknown_flag.status.code(), Some(2));
}
