use std::path::Path;
use std::process::{Command, Output};

fn antibunch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_antibunch"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const SMALL: &str = r#"
schema_version = 1
fock = 3
observables = ["g2_0", "mean_photon"]

[params]
drive = "atom"
epsilon = 0.01
V = 3.0

[[axes]]
param = "delta_c"
values = [6.0, 12.0]

[[axes]]
param = "delta_a"
values = [-7.0, 9.0]
"#;

#[test]
fn sweep_writes_csv_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "small.toml", SMALL);
    let out = antibunch(&["sweep", "--config", &config]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], "delta_c,delta_a,g2_0_numeric,mean_photon,flags");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "small.toml", SMALL);
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for (path, jobs) in [(&a, "1"), (&b, "4")] {
        let out = antibunch(&["sweep", "--config", &config, "--out", path.to_str().unwrap(), "--jobs", jobs]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn json_output_carries_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "small.toml", SMALL);
    let path = dir.path().join("grid.json");
    let out = antibunch(&[
        "sweep",
        "--config",
        &config,
        "--out",
        path.to_str().unwrap(),
        "--engine",
        "both",
        "--timestamp",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["metadata"]["schema_version"], 1);
    assert!(json["metadata"]["timestamp"].as_str().unwrap().starts_with("unix:"));
    let names: Vec<&str> = json["observables"].as_array().unwrap().iter().map(|o| o["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["g2_0_numeric", "g2_0_analytic", "mean_photon", "g2_log_ratio"]);
}

#[test]
fn preset_overrides_from_flags() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(
        dir.path(),
        "overlay.toml",
        "[[axes]]\nparam = \"g\"\nmin = 0.6\nmax = 0.8\nsteps = 3\n[[axes]]\nparam = \"V\"\nvalues = [0.0, 0.1]\n",
    );
    let out = antibunch(&["sweep", "--preset", "fig8a", "--config", &config, "--fock", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 7);
    assert!(csv.starts_with("g,V,g2_0_numeric,g2_0_analytic,g2_log_ratio,flags\n"));
}

#[test]
fn config_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad_axis = write(dir.path(), "bad.toml", "[[axes]]\nparam = \"delta_c\"\nvalues = [1.0]\n");
    let unknown = write(dir.path(), "unknown.toml", "colour = \"red\"\n");
    for args in [
        vec!["sweep", "--config", bad_axis.as_str()],
        vec!["sweep", "--config", unknown.as_str()],
        vec!["sweep", "--config", "/no/such/file.toml"],
        vec!["sweep", "--preset", "fig7"],
        vec!["sweep"],
        vec!["sweep", "--preset", "fig3a", "--fock", "lots"],
        vec!["sweep", "--preset", "fig3a", "--jobs", "0"],
    ] {
        let out = antibunch(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn mostly_flagged_grid_exits_with_3() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(
        dir.path(),
        "cavity.toml",
        "engine = \"weakdrive\"\n[params]\ndrive = \"cavity\"\ngamma = 1.0\nepsilon = 0.01\n[[axes]]\nparam = \"delta_c\"\nvalues = [0.0, 1.0]\n",
    );
    let path = dir.path().join("out.csv");
    let out = antibunch(&["sweep", "--config", &config, "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.lines().nth(2).unwrap().ends_with(",out_of_regime"));
}

#[test]
fn unwritable_output_exits_with_1() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "small.toml", SMALL);
    let path = dir.path().join("missing/out.csv");
    let out = antibunch(&["sweep", "--config", &config, "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn presets_are_listed_and_shown() {
    let out = antibunch(&["presets"]);
    assert_eq!(out.status.code(), Some(0));
    let listing = String::from_utf8(out.stdout).unwrap();
    assert_eq!(listing.lines().count(), 10);
    assert!(listing.contains("fig9b"));

    let out = antibunch(&["presets", "--show", "fig9a"]);
    assert_eq!(out.status.code(), Some(0));
    let spec: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(spec["base"]["epsilon"], 0.2);
    assert_eq!(spec["axes"][0]["param"], "tau");
    assert_eq!(antibunch(&["presets", "--show", "nope"]).status.code(), Some(2));
}
