use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn vasreach(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vasreach"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn solve_prints_a_sorted_witness() {
    let out = vasreach(&["solve", &path("climb_drop.vas")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("REACHABLE"));
    let run: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    let label: Vec<&str> = run["steps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["action"].as_str().unwrap())
        .collect();
    assert_eq!(label, ["a", "a", "a", "a", "b", "b", "b"]);
    assert_eq!(run["target"], serde_json::json!([1, 0]));
}

#[test]
fn solve_without_actions() {
    let out = vasreach(&["solve", &path("empty.vas"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "REACHABLE");
    assert_eq!(v["witness"]["steps"], serde_json::json!([]));
}

#[test]
fn unreachable_after_one_step_with_trace() {
    let trace = std::env::temp_dir().join(format!("vasreach-trace-{}.jsonl", std::process::id()));
    let out = vasreach(&[
        "solve",
        &path("parity.vas"),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "UNREACHABLE\n");
    let log = std::fs::read_to_string(&trace).unwrap();
    std::fs::remove_file(&trace).ok();
    let steps: Vec<serde_json::Value> = log
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(steps.len(), 1);
    assert_eq!(steps[0]["defect"], "Infeasible");
    assert_eq!(steps[0]["rank"], "w^(w^2*2+w*2)");
}

#[test]
fn exhaustion_has_its_own_exit_code() {
    let out = vasreach(&["solve", &path("climb_drop.vas"), "--max-steps", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).starts_with("EXHAUSTED"));
}

#[test]
fn usage_and_input_errors_exit_with_one() {
    assert_eq!(vasreach(&["solve"]).status.code(), Some(1));
    assert_eq!(vasreach(&["frobnicate"]).status.code(), Some(1));
    let out = vasreach(&["solve", &path("missing.vas")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.vas"));
    assert_eq!(
        vasreach(&["hilbert", &path("climb_drop.vas")]).status.code(),
        Some(1)
    );
}

#[test]
fn rank_of_the_initial_sequence() {
    let out = vasreach(&["rank", "--initial", &path("climb_drop.vas")]);
    assert_eq!(stdout(&out), "w^(w^2*2+w*2)\n");
}

#[test]
fn hilbert_basis_of_a_small_system() {
    let out = vasreach(&["hilbert", &path("square.sys")]);
    assert_eq!(stdout(&out), "homogeneous (0)\nparticular (1)\n  1 1\n");
}

#[test]
fn oracle_and_cover() {
    let out = vasreach(&["oracle", &path("climb_drop.vas"), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "REACHABLE");
    assert_eq!(v["witness"]["steps"].as_array().unwrap().len(), 7);
    let out = vasreach(&["cover", &path("climb_drop.vas")]);
    assert_eq!(stdout(&out), "state 0: (w,w)\n");
    let dot = stdout(&vasreach(&["cover", &path("climb_drop.vas"), "--format", "dot"]));
    assert!(dot.starts_with("digraph"));
}

#[test]
fn decomposed_members_are_perfect_and_rank_back() {
    let out = vasreach(&["decompose", &path("climb_drop.vas"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let family = v["family"].as_array().unwrap();
    assert_eq!(family.len(), 9);
    let file = std::env::temp_dir().join(format!("vasreach-member-{}.json", std::process::id()));
    std::fs::write(&file, serde_json::to_string(&family[0]).unwrap()).unwrap();
    let perfect = stdout(&vasreach(&["perfect", file.to_str().unwrap()]));
    let rank = stdout(&vasreach(&["rank", file.to_str().unwrap()]));
    std::fs::remove_file(&file).ok();
    assert_eq!(perfect, "Perfect\n");
    assert_eq!(rank, "8\n");
}

#[test]
fn decompose_with_samples_is_deterministic() {
    let args = [
        "decompose",
        &path("climb_drop.vas"),
        "--minimize",
        "--samples",
        "3",
        "--seed",
        "5",
    ];
    let first = vasreach(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, vasreach(&args).stdout);
    assert!(stdout(&first).contains("sample 0.2"));
}

#[test]
fn embedding_between_run_files() {
    let vas = path("climb_drop.vas");
    let out = vasreach(&[
        "embed",
        "--vas",
        &vas,
        &path("short.json"),
        &path("long.json"),
    ]);
    assert_eq!(stdout(&out), "EMBEDS at positions [0, 4]\n");
    let out = vasreach(&[
        "embed",
        "--vas",
        &vas,
        &path("long.json"),
        &path("short.json"),
    ]);
    assert_eq!(stdout(&out), "DOES NOT EMBED\n");
}
