use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn celldraw(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_celldraw"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    let mut pipe = child.stdin.take().unwrap();
    if let Some(text) = stdin {
        pipe.write_all(text.as_bytes()).unwrap();
    }
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn doubled_triangulation_passes_fivezero_chain() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.json");
    let p = path.to_str().unwrap();
    let o = celldraw(&["generate", "--construction", "double-tri", "--subdiv", "1", "-o", p], None);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = celldraw(&["verify", p, "--claim", "fivezero-chain"], None);
    assert_eq!(code(&o), 0);
    let o = celldraw(&["--json", "verify", p, "--claim", "fivezero-chain"], None);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let last = v["checks"].as_array().unwrap().last().unwrap().clone();
    assert_eq!((last["lhs"].as_str(), last["rhs"].as_str()), (Some("120"), Some("120")));
}

#[test]
fn forbidden_triangle_is_witnessed_and_reproducible() {
    let map = stdout(&celldraw(&["generate", "--construction", "double-tri"], None));
    let o = celldraw(&["check", "--forbid", "3_0"], Some(&map));
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("cell of type XXX"));
    let again = celldraw(&["check", "-", "--forbid", "XXX"], Some(&map));
    assert_eq!((code(&again), stdout(&again)), (1, stdout(&o)));
}

#[test]
fn missing_input_is_invalid() {
    let o = celldraw(&["census", "missing.json"], None);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing.json"));
    assert_eq!(code(&celldraw(&["census", "--bogus"], None)), 2);
    assert_eq!(code(&celldraw(&["generate", "--construction", "fourone-free", "--k", "4"], None)), 2);
}

#[test]
fn geometry_pipeline_planarize_census_render() {
    let dir = tempfile::tempdir().unwrap();
    let geo = dir.path().join("w.geo.json");
    let g = geo.to_str().unwrap();
    let o = celldraw(&["generate", "--construction", "wedge-kn", "--n", "8", "-o", "-", "--geo-output", g], None);
    assert_eq!(code(&o), 0);
    let direct = stdout(&o);
    let planarized = celldraw(&["planarize", g], None);
    assert_eq!(stdout(&planarized), direct);

    let census = celldraw(&["--json", "census"], Some(&direct));
    let v: Value = serde_json::from_str(&stdout(&census)).unwrap();
    assert_eq!((v["n"].as_u64(), v["edges"].as_u64(), v["sizes"]["16"].as_u64()), (Some(8), Some(28), Some(1)));

    let svg = celldraw(&["render", g, "--shade", "VXX"], None);
    assert_eq!(code(&svg), 0);
    let text = stdout(&svg);
    assert!(text.starts_with("<?xml"));
    let vxx = v["types"].as_array().unwrap().iter().find(|t| t["type"] == "VXX").unwrap()["count"].as_u64().unwrap();
    assert_eq!(text.matches("class=\"cell\"").count() as u64, vxx);
}

#[test]
fn discharging_reports_exact_fifths() {
    let map = stdout(&celldraw(&["generate", "--construction", "threezero-cyl", "--n", "14"], None));
    let o = celldraw(&["--json", "verify", "--claim", "discharging-nh"], Some(&map));
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let min = v["checks"].as_array().unwrap().iter().find(|c| c["label"] == "min ch3").unwrap().clone();
    assert_eq!(min["lhs"], "4/5");
}
