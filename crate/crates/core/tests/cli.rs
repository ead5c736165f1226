mod common;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

use uav_mission::cli::{cmd_compare, compare_schemes, load_config, load_plan, SAMPLE_HEADER};
use uav_mission::ordering::{distance_matrix, solve_order_exhaustive};
use uav_mission::scenario::{PlanDocument, ScenarioFile};
use uav_mission::subtrajectory::DEFAULT_POS_TOL_M;
use uav_mission::{verify_plan, PrimitiveKind};

use common::*;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_uav-mission"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Workspace {
        let ws = Workspace { dir: tempfile::tempdir().unwrap() };
        ws.write("reference.toml", REFERENCE_SCENARIO);
        ws
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn arg(&self, name: &str) -> String {
        self.path(name).to_string_lossy().into_owned()
    }

    fn write(&self, name: &str, text: &str) {
        fs::write(self.path(name), text).unwrap();
    }

    fn solve(&self, scenario: &str, plan: &str, extra: &[&str]) -> Output {
        let (s, p) = (self.arg(scenario), self.arg(plan));
        let mut args = vec!["solve", &s, "--out", &p];
        args.extend_from_slice(extra);
        run(&args)
    }
}

fn single_target_scenario() -> String {
    let head = REFERENCE_SCENARIO.split("[[targets]]").next().unwrap();
    format!("{head}[[targets]]\nxy = [0.0, 0.0]\nvolume_bits = 0.0\n")
}

#[test]
fn solve_reproduces_reference_order_and_verifies() {
    let ws = Workspace::new();
    let out = ws.solve("reference.toml", "plan.json", &["--order", "exhaustive"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("order: 1,2,3,4"));
    assert!(stdout(&out).contains("total_time_s: "));

    let out = run(&["verify", &ws.arg("reference.toml"), &ws.arg("plan.json")]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("feasible: true"));
}

#[test]
fn single_zero_volume_target_flies_two_segments() {
    let ws = Workspace::new();
    ws.write("one.toml", &single_target_scenario());
    assert_eq!(code(&ws.solve("one.toml", "plan.json", &[])), 0);
    let cfg = load_config(&ws.path("one.toml"), None).unwrap();
    let plan = load_plan(&ws.path("plan.json"), &cfg).unwrap();
    assert_eq!(plan.timeline.len(), 2);
    assert!(plan.timeline.iter().all(|p| p.primitive.kind == PrimitiveKind::Segment));
    assert!(plan.timeline.iter().all(|p| p.primitive.duration_s > 0.0));
}

#[test]
fn repeated_solves_are_byte_identical() {
    let ws = Workspace::new();
    assert_eq!(code(&ws.solve("reference.toml", "a.json", &[])), 0);
    assert_eq!(code(&ws.solve("reference.toml", "b.json", &[])), 0);
    assert_eq!(fs::read(ws.path("a.json")).unwrap(), fs::read(ws.path("b.json")).unwrap());
}

#[test]
fn plan_file_round_trip_is_lossless() {
    let ws = Workspace::new();
    assert_eq!(code(&ws.solve("reference.toml", "plan.json", &[])), 0);
    let cfg = load_config(&ws.path("reference.toml"), None).unwrap();
    let loaded = load_plan(&ws.path("plan.json"), &cfg).unwrap();
    let fresh = uav_mission::planner::plan_mission(&cfg, &Default::default(), DEFAULT_POS_TOL_M).unwrap();
    assert_eq!(loaded, fresh);
    assert_eq!(verify_plan(&cfg, &loaded), verify_plan(&cfg, &fresh));
    assert_eq!(PlanDocument::new(loaded).to_json(), fs::read_to_string(ws.path("plan.json")).unwrap());
}

/// Cuts the timeline at 90 % of the completion time.
fn truncate_plan(path: &Path) {
    let mut doc = PlanDocument::from_json(&fs::read_to_string(path).unwrap()).unwrap();
    let plan = &mut doc.plan;
    let cut = 0.9 * plan.total_time_s;
    plan.timeline.retain(|p| p.t_start_s < cut);
    let last = plan.timeline.last_mut().unwrap();
    last.primitive = last.primitive.slice(0.0, cut - last.t_start_s);
    plan.total_time_s = cut;
    fs::write(path, doc.to_json()).unwrap();
}

#[test]
fn truncated_plan_is_infeasible() {
    let ws = Workspace::new();
    assert_eq!(code(&ws.solve("reference.toml", "plan.json", &[])), 0);
    truncate_plan(&ws.path("plan.json"));
    let out = run(&["verify", &ws.arg("reference.toml"), &ws.arg("plan.json")]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    let causality = text.lines().find(|l| l.starts_with("causality[4]")).unwrap();
    assert!(causality.contains("FAIL") && causality.contains("margin -"), "{causality}");
}

#[test]
fn input_errors_exit_with_code_two() {
    let ws = Workspace::new();
    assert_eq!(code(&ws.solve("reference.toml", "plan.json", &[])), 0);
    ws.write("one.toml", &single_target_scenario());
    let wrong_n = run(&["verify", &ws.arg("one.toml"), &ws.arg("plan.json")]);
    assert_eq!(code(&wrong_n), 2);

    ws.write("bad.toml", "bandwidth_hz = \"wide\"\n");
    assert_eq!(code(&ws.solve("bad.toml", "x.json", &[])), 2);
    assert_eq!(code(&ws.solve("missing.toml", "x.json", &[])), 2);
    assert_eq!(code(&ws.solve("reference.toml", "x.json", &["--order", "fastest"])), 2);
    assert_eq!(code(&ws.solve("reference.toml", "x.json", &["--order", "1,2,2,4"])), 2);
    assert_eq!(code(&ws.solve("reference.toml", "x.json", &["--alpha", "-1"])), 2);

    ws.write("garbage.json", "{ not json");
    assert_eq!(code(&run(&["verify", &ws.arg("reference.toml"), &ws.arg("garbage.json")])), 2);
    assert_eq!(code(&run(&["sample", &ws.arg("reference.toml"), &ws.arg("plan.json"), "--dt", "0"])), 2);
    assert_eq!(code(&run(&["compare", &ws.arg("bad.toml")])), 2);
}

#[test]
fn given_order_is_respected() {
    let ws = Workspace::new();
    let out = ws.solve("reference.toml", "plan.json", &["--order", "3,4,1,2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("order: 3,4,1,2"));
}

#[test]
fn compare_proposed_never_loses() {
    let scenario = ScenarioFile::parse(REFERENCE_SCENARIO).unwrap();
    let rows = compare_schemes(&scenario, &[0.5, 1.0, 1.5, 2.0], DEFAULT_POS_TOL_M).unwrap();
    for r in &rows {
        assert!(r.proposed_time_s <= r.distance_time_s, "alpha {}", r.alpha);
    }
    assert!(rows.windows(2).all(|w| w[1].proposed_time_s >= w[0].proposed_time_s));
    assert!(rows.windows(2).all(|w| w[1].distance_time_s >= w[0].distance_time_s));
}

#[test]
fn compare_at_zero_volume_is_pure_flight() {
    let scenario = ScenarioFile::parse(REFERENCE_SCENARIO).unwrap();
    let row = &compare_schemes(&scenario, &[0.0], DEFAULT_POS_TOL_M).unwrap()[0];
    let flight = solve_order_exhaustive(&distance_matrix(&scenario.to_config_with_alpha(0.0).unwrap()))
        .unwrap()
        .cost_s;
    assert!((row.proposed_time_s - flight).abs() < 1e-9);
    assert!((row.distance_time_s - flight).abs() < 1e-9);
    assert!(row.proposed_time_s <= row.distance_time_s);
}

#[test]
fn compare_writes_csv() {
    let ws = Workspace::new();
    let mut text = Vec::new();
    let csv = ws.path("cmp.csv");
    let status = cmd_compare(&ws.path("reference.toml"), &[1.0, 2.0], DEFAULT_POS_TOL_M, Some(&csv), &mut text).unwrap();
    assert_eq!(status, 0);
    let csv = fs::read_to_string(csv).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "alpha,proposed_order,proposed_time_s,distance_order,distance_time_s");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("1,1-2-3-4,"));
    assert!(lines[1].contains(",3-4-1-2,"));
    assert!(String::from_utf8(text).unwrap().contains("alpha"));

    let out = run(&["compare", &ws.arg("reference.toml"), "--alphas", "0.5,1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("0.5,"));
}

#[test]
fn sample_csv_shape() {
    let ws = Workspace::new();
    assert_eq!(code(&ws.solve("reference.toml", "plan.json", &[])), 0);
    let cfg = load_config(&ws.path("reference.toml"), None).unwrap();
    let total = load_plan(&ws.path("plan.json"), &cfg).unwrap().total_time_s;

    let rows = |dt: f64| {
        let out = run(&["sample", &ws.arg("reference.toml"), &ws.arg("plan.json"), "--dt", &dt.to_string(), "--out", &ws.arg("s.csv")]);
        assert_eq!(code(&out), 0);
        let csv = fs::read_to_string(ws.path("s.csv")).unwrap();
        assert_eq!(csv.lines().next(), Some(SAMPLE_HEADER));
        csv.lines().skip(1).map(str::to_owned).collect::<Vec<_>>()
    };

    assert_eq!(rows(total).len(), 2);
    let dt = 3.0;
    assert!((total / dt).fract() != 0.0);
    let data = rows(dt);
    assert_eq!(data.len(), (total / dt).floor() as usize + 2);
    let last: Vec<&str> = data.last().unwrap().split(',').collect();
    assert_eq!(last[0].parse::<f64>().unwrap(), total);
    assert!(last[4].parse::<f64>().unwrap() >= cfg.total_volume() * (1.0 - 1e-5));
    assert_eq!(last[5], "transmit-4");
}
