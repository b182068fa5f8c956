//! End-to-end checks of the command-line surface and the wire formats:
//! exit codes, JSON parsing errors, CSV determinism, and the airspace
//! report.

use std::fs;
use std::path::PathBuf;

use ttsem::cli;

struct TempDir {
    root: PathBuf,
}

impl TempDir {
    fn new(tag: &str) -> TempDir {
        let root = std::env::temp_dir().join(format!("ttsem-cli-{}-{}", tag, std::process::id()));
        fs::create_dir_all(&root).unwrap();
        TempDir { root }
    }

    fn write(&self, name: &str, contents: &str) -> String {
        let p = self.root.join(name);
        fs::write(&p, contents).unwrap();
        p.to_string_lossy().into_owned()
    }

    fn path(&self, name: &str) -> String {
        self.root.join(name).to_string_lossy().into_owned()
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.root);
    }
}

fn run(args: &[&str]) -> i32 {
    let owned: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    cli::run(&owned)
}

const SCENARIO: &str = r#"{
  "clock": {"d_t": "0", "u_t": "10"},
  "reals": {"a": [["0", "0"], ["10", "10"]]},
  "graph": {
    "vertices": ["level", "climb"],
    "edges": [
      {"id": "climb!", "src": "level", "tgt": "climb"},
      {"id": "level!", "src": "climb", "tgt": "level"}
    ]
  },
  "walks": {"T": {"vertices": ["level", "climb"], "edges": ["climb!"], "times": ["4"]}}
}"#;

#[test]
fn eval_exit_codes() {
    let dir = TempDir::new("eval");
    let scenario = dir.write("scenario.json", SCENARIO);
    let top = dir.write("top.json", r#"{"op": "top"}"#);
    let bottom = dir.write("bottom.json", r#"{"op": "bottom"}"#);
    let broken = dir.write("broken.json", r#"{"op": "no_such_op"}"#);
    assert_eq!(run(&["eval", &scenario, &top]), 0);
    assert_eq!(run(&["eval", &scenario, &bottom]), 1);
    assert_eq!(run(&["eval", &scenario, &broken]), 2);
    assert_eq!(run(&["eval", "/nonexistent.json", &top]), 2);
}

#[test]
fn force_subwindows() {
    let dir = TempDir::new("force");
    let scenario = dir.write("scenario.json", SCENARIO);
    let lt4 = dir.write("lt4.json", r#"{"op": "lt", "q": "4"}"#);
    assert_eq!(
        run(&["force", &scenario, &lt4, "--from", "0", "--to", "4"]),
        0
    );
    assert_eq!(
        run(&["force", &scenario, &lt4, "--from", "0", "--to", "5"]),
        1
    );
    // invalid subwindow
    assert_eq!(
        run(&["force", &scenario, &lt4, "--from", "5", "--to", "5"]),
        2
    );
}

#[test]
fn eval_csv_deterministic() {
    let dir = TempDir::new("csv");
    let scenario = dir.write("scenario.json", SCENARIO);
    let formula = dir.write(
        "f.json",
        r#"{"op": "cmp", "dir": "lt", "left": {"trace": "a"}, "right": {"const": "5"}}"#,
    );
    let out1 = dir.path("a.csv");
    let out2 = dir.path("b.csv");
    assert_eq!(run(&["eval", &scenario, &formula, "--csv", &out1]), 1);
    assert_eq!(run(&["eval", &scenario, &formula, "--csv", &out2]), 1);
    let a = fs::read_to_string(&out1).unwrap();
    let b = fs::read_to_string(&out2).unwrap();
    assert_eq!(a, b);
    assert!(a.lines().count() > 250);
    // exact rationals in the samples
    assert!(a.contains("5/2") || a.contains("1/2") || a.contains(","));
}

#[test]
fn grid_env_var_changes_density() {
    let dir = TempDir::new("grid");
    let scenario = dir.write("scenario.json", SCENARIO);
    let top = dir.write("top.json", r#"{"op": "top"}"#);
    let out = dir.path("c.csv");
    std::env::set_var("TTSEM_GRID", "16");
    assert_eq!(run(&["eval", &scenario, &top, "--csv", &out]), 0);
    std::env::remove_var("TTSEM_GRID");
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.lines().count() < 30, "{}", text.lines().count());
}

#[test]
fn nas_report_and_perturbations() {
    let dir = TempDir::new("nas");
    let runfile = dir.write(
        "run.json",
        r#"{
          "clock": {"d_t": "-1", "u_t": "11"},
          "params": {"safe": "100", "margin": "10", "del": "2", "rate": "20"},
          "a0": "0"
        }"#,
    );
    assert_eq!(run(&["nas", &runfile]), 0);
    assert_eq!(run(&["nas", &runfile, "--perturb", "del=3"]), 1);
    assert_eq!(run(&["nas", &runfile, "--perturb", "margin=0"]), 1);
    assert_eq!(run(&["nas", &runfile, "--perturb", "margin=12"]), 1);
    assert_eq!(run(&["nas", &runfile, "--perturb", "nope=1"]), 2);
}

#[test]
fn mtl_verdicts() {
    let dir = TempDir::new("mtl");
    let signals = dir.write(
        "signals.json",
        r#"{
          "window": "10",
          "signals": {
            "p": {"true_on": [["0", "5", "closed", "closed"]]},
            "q": {"true_on": [["4", "6", "closed", "closed"]]}
          }
        }"#,
    );
    let until = dir.write(
        "until.json",
        r#"{"op": "until", "args": [{"op": "atom", "name": "p"}, {"op": "atom", "name": "q"}]}"#,
    );
    let top = dir.write("top.json", r#"{"op": "top"}"#);
    assert_eq!(run(&["mtl", &signals, &until]), 1);
    assert_eq!(run(&["mtl", &signals, &top]), 0);
    let bad = dir.write("bad.json", r#"{"op": "atom", "name": "zz"}"#);
    assert_eq!(run(&["mtl", &signals, &bad]), 2);
}

#[test]
fn plot_outputs() {
    let dir = TempDir::new("plot");
    let scenario = dir.write("scenario.json", SCENARIO);
    let apart = dir.write("apart.json", r#"{"op": "apart", "a": "7", "b": "3"}"#);
    let svg = dir.path("m.svg");
    let csv = dir.path("m.csv");
    assert_eq!(run(&["plot", &scenario, &apart, "--out", &svg]), 0);
    assert_eq!(run(&["plot", &scenario, &apart, "--out", &csv]), 0);
    let svg_text = fs::read_to_string(&svg).unwrap();
    assert!(svg_text.contains("stroke-dasharray"));
    assert_eq!(svg_text.matches("<polyline").count(), 2);
    let csv_text = fs::read_to_string(&csv).unwrap();
    assert!(csv_text.starts_with("x,value\n"));
}

#[test]
fn walk_formula_over_wire() {
    let dir = TempDir::new("walkf");
    let scenario = dir.write("scenario.json", SCENARIO);
    let trav_hit = dir.write(
        "trav.json",
        r#"{"op": "trav", "walk": "T", "edge": "climb!", "r": "4"}"#,
    );
    let trav_miss = dir.write(
        "trav2.json",
        r#"{"op": "trav", "walk": "T", "edge": "level!", "r": "4"}"#,
    );
    assert_eq!(run(&["eval", &scenario, &trav_hit]), 0);
    assert_eq!(run(&["eval", &scenario, &trav_miss]), 1);
    let vertex = dir.write(
        "vertex.json",
        r#"{"op": "in", "d": "5", "u": "9",
            "arg": {"op": "at_vertex", "walk": "T", "vertex": "climb"}}"#,
    );
    assert_eq!(run(&["eval", &scenario, &vertex]), 0);
}
