use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tticad-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn tticad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tticad")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn plot_roots(input: &str, mode: &str, out: &str) -> usize {
    let path = scratch(out);
    let o = tticad(&[input, "--mode", mode, "--plot2d", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["schema"], "tticad-plot2d/1");
    v["base_roots"].as_array().unwrap().len()
}

#[test]
fn worked_example_counts() {
    let a = fixture("worked_a.json");
    let a = a.to_str().unwrap();
    let o = tticad(&[a]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("status: OK"));
    assert!(out.contains("base: roots: 12 / cells: 25"));
    assert!(out.contains("cells: 105"));
    assert!(stdout(&tticad(&[a, "--mode", "full"])).contains("cells: 317"));
    assert!(stdout(&tticad(&[a, "--mode", "ec-product"])).contains("cells: 249"));
    assert!(stdout(&tticad(&[a, "--order", "y,x"])).contains("cells: 153"));
}

#[test]
fn failures_exit_with_two() {
    let o = tticad(&[fixture("fail_ec_nullified.json").to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("status: FAIL_EC_NULLIFIED"));
    let o = tticad(&[fixture("fail_not_well_oriented.json").to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("status: FAIL_P_NOT_WO"));
}

#[test]
fn bad_input_exits_with_three() {
    assert_eq!(code(&tticad(&["no-such-file.json"])), 3);
    let junk = scratch("junk.json");
    fs::write(
        &junk,
        "{ \"vars\": [\"x\"], \"formulae\": [ { \"text\": \"x^ = 0\" } ] }",
    )
    .unwrap();
    assert_eq!(code(&tticad(&[junk.to_str().unwrap()])), 3);
    let circle = fixture("circle.json");
    assert_eq!(code(&tticad(&[circle.to_str().unwrap(), "--order", "x,z"])), 3);
    assert_eq!(code(&tticad(&[circle.to_str().unwrap(), "--ec", "best"])), 3);
    let spheres = fixture("spheres_3d.json");
    let o = tticad(&[
        spheres.to_str().unwrap(),
        "--plot2d",
        scratch("never.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 3);
}

#[test]
fn time_limit_exits_with_four() {
    let spheres = fixture("spheres_3d.json");
    let o = tticad(&[spheres.to_str().unwrap(), "--mode", "full", "--timeout", "1"]);
    assert_eq!(code(&o), 4);
}

#[test]
fn check_reports_and_passes() {
    let a = fixture("worked_a.json");
    let o = tticad(&[a.to_str().unwrap(), "--check", "200", "--seed", "5"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("check: 200 points + 50 on sections, seed 5, 0 failures"));
    assert_eq!(code(&tticad(&[a.to_str().unwrap(), "--check", "0"])), 0);
}

#[test]
fn dumps_are_reproducible() {
    let a = fixture("worked_b.json");
    let mut seen = Vec::new();
    for run in 0..2 {
        let cells = scratch(&format!("cells{run}.json"));
        let proj = scratch(&format!("proj{run}.json"));
        let stats = scratch(&format!("stats{run}.json"));
        let o = tticad(&[
            a.to_str().unwrap(),
            "--dump-cells",
            cells.to_str().unwrap(),
            "--dump-projection",
            proj.to_str().unwrap(),
            "--stats-json",
            stats.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
        seen.push([cells, proj, stats].map(|p| fs::read(p).unwrap()));
    }
    assert_eq!(seen[0], seen[1]);
    let v: serde_json::Value = serde_json::from_slice(&seen[0][0]).unwrap();
    assert_eq!(v["schema"], "tticad-cells/1");
    assert_eq!(v["cells"].as_array().unwrap().len(), 153);
}

#[test]
fn plot_data_has_one_line_per_base_root() {
    let a = fixture("worked_a.json");
    let a = a.to_str().unwrap();
    assert_eq!(plot_roots(a, "tticad", "plot_t.json"), 12);
    assert_eq!(plot_roots(a, "full", "plot_f.json"), 20);
    assert_eq!(
        plot_roots(fixture("circle.json").to_str().unwrap(), "tticad", "plot_c.json"),
        2
    );
}

#[test]
fn compositions_list_scores() {
    let o = tticad(&[fixture("worked_a.json").to_str().unwrap(), "--compositions"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(!v.as_array().unwrap().is_empty());
    assert!(v[0]["sotd"].is_u64());
}
