//! End-to-end tests of the `pochh` binary: outputs, exit codes, JSON
//! stability, and agreement with direct library calls.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::Instant;

use pochhammer::homology::twisted_betti;
use pochhammer::io::graph_to_json;
use pochhammer::pants::{canonical_decomposition, dumbbell};
use pochhammer::words::{Presentation, Twist};
use pochhammer::Ranker;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pochh"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).to_string()
}

fn fixture_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pochh-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_fixture(name: &str, contents: &str) -> PathBuf {
    let path = fixture_dir().join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn betti_closed_surfaces_text() {
    for g in 2..=5usize {
        let start = Instant::now();
        let out = run(&["betti", "--genus", &g.to_string()]);
        assert!(out.status.success(), "{}", stderr(&out));
        assert!(start.elapsed().as_secs_f64() < 5.0, "genus {g} too slow");
        let text = stdout(&out);
        assert!(
            text.contains(&format!("b = (0, {}, 0)", 2 * g - 2)),
            "got {text}"
        );
        assert!(text.contains(&format!(
            "chi-check: {} = {} OK",
            2 - 2 * g as i64,
            2 - 2 * g as i64
        )));
    }
    // Exact backend stays within its budget too.
    for g in 2..=5usize {
        let start = Instant::now();
        let out = run(&["betti", "--genus", &g.to_string(), "--exact"]);
        assert!(out.status.success());
        assert!(
            start.elapsed().as_secs_f64() < 60.0,
            "exact genus {g} too slow"
        );
        assert!(stdout(&out).contains(&format!("b = (0, {}, 0)", 2 * g - 2)));
    }
}

#[test]
fn betti_json_matches_library_and_is_byte_stable() {
    let out1 = run(&["betti", "--genus", "3", "--json", "--seed", "7"]);
    let out2 = run(&["betti", "--genus", "3", "--json", "--seed", "7"]);
    assert!(out1.status.success());
    assert_eq!(out1.stdout, out2.stdout, "JSON output must be byte-stable");

    let parsed: serde_json::Value = serde_json::from_str(stdout(&out1).trim()).unwrap();
    let p = Presentation::surface(3, 0).unwrap();
    let t = Twist::hurewicz(&p);
    let lib = twisted_betti(&p, &t, &Ranker::randomized(2, 7)).unwrap();
    let cli_betti: Vec<usize> = parsed["betti"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap() as usize)
        .collect();
    assert_eq!(cli_betti, lib.dims().to_vec());
    assert_eq!(parsed["chi"].as_i64().unwrap(), -4);
    assert!(parsed["chi_ok"].as_bool().unwrap());
}

#[test]
fn seed_env_var_is_honored() {
    let with_env = bin()
        .args(["betti", "--genus", "2", "--json"])
        .env("POCHH_SEED", "99")
        .output()
        .unwrap();
    let with_flag = run(&["betti", "--genus", "2", "--json", "--seed", "99"]);
    assert!(with_env.status.success());
    assert_eq!(with_env.stdout, with_flag.stdout);
}

#[test]
fn betti_with_alpha_file_and_punctures() {
    let alpha = write_fixture("alpha_rank1.json", "{\"alpha\": [[1, 0, 0, 0]]}");
    let out = run(&["betti", "--genus", "2", "--alpha", alpha.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("b = (0, 2, 0)"));

    let out = run(&["betti", "--genus", "2", "--punctures", "1", "--json"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"betti\":[0,3]"));

    let bad = write_fixture("alpha_bad.json", "{\"alpha\": [[1, 0]]}");
    let out = run(&["betti", "--genus", "2", "--alpha", bad.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "shape mismatch is a usage error"
    );
}

#[test]
fn vortex_and_symk_json() {
    let out = run(&["vortex", "--genus", "2", "--rank", "3", "--json"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "{\"betti\":[0,2,0,2,0,2,0]}");

    let out = run(&["symk", "--genus", "3", "-k", "2", "--json"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "{\"betti\":[0,0,6]}");

    let out = run(&["vortex", "--genus", "1", "--rank", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn loop_cycle_and_verdict() {
    let out = run(&["loop", "--genus", "2", "--word", "[a1,b1]"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("class-nonzero: true"), "got {text}");

    // A word that does not lift to a loop is an input error.
    let out = run(&["loop", "--genus", "2", "--word", "a1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("does not lift"));

    // Malformed words are input errors too.
    let out = run(&["loop", "--genus", "2", "--word", "a9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pants_check_reports_the_separating_curve() {
    let path = write_fixture("dumbbell.json", &graph_to_json(&dumbbell()).unwrap());
    let out = run(&["pants-check", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("valid"));
    assert!(
        text.contains("unfashionable: curve S separating"),
        "got {text}"
    );

    let out = run(&["pants-check", path.to_str().unwrap(), "--json"]);
    let parsed: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert!(parsed["valid"].as_bool().unwrap());
    assert!(!parsed["fashionable"].as_bool().unwrap());
    assert_eq!(parsed["separating"][0].as_str().unwrap(), "S");
}

#[test]
fn pants_check_fashionable_graph() {
    let path = write_fixture(
        "canonical3.json",
        &graph_to_json(&canonical_decomposition(3).unwrap()).unwrap(),
    );
    let out = run(&["pants-check", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("fashionable"));
    assert!(text.contains("separating: none"));
}

#[test]
fn malformed_files_exit_2_with_line_diagnostics() {
    let path = write_fixture(
        "broken.json",
        "{\n  \"format\": \"pochhammer/1\",\n  oops\n}",
    );
    let out = run(&["pants-check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "got {}", stderr(&out));

    // Structurally valid JSON that violates the graph invariants also exits 2.
    let text = graph_to_json(&dumbbell()).unwrap().replace(
        "[\n        1,\n        0,\n        0,\n        0\n      ]",
        "[\n        2,\n        0,\n        0,\n        0\n      ]",
    );
    let path = write_fixture("inconsistent.json", &text);
    let out = run(&["pants-check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pants_fashion_writes_a_fashionable_graph() {
    let input = write_fixture(
        "dumbbell_fashion.json",
        &graph_to_json(&dumbbell()).unwrap(),
    );
    let output = fixture_dir().join("fashioned.json");
    let out = run(&[
        "pants-fashion",
        input.to_str().unwrap(),
        "-o",
        output.to_str().unwrap(),
        "--json",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let parsed: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(parsed["flips"].as_array().unwrap().len(), 1);

    let check = run(&["pants-check", output.to_str().unwrap()]);
    assert!(check.status.success());
    assert!(stdout(&check).contains("fashionable"));
}

#[test]
fn pochhammer_and_sew_on_the_canonical_decomposition() {
    let path = write_fixture(
        "canonical2.json",
        &graph_to_json(&canonical_decomposition(2).unwrap()).unwrap(),
    );
    let out = run(&["pochhammer", path.to_str().unwrap(), "--exact", "--json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let parsed: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let vectors = parsed["vectors"].as_array().unwrap();
    assert_eq!(vectors.len(), 2);
    for v in vectors {
        assert!(v["nonzero"].as_bool().unwrap());
    }

    let out = run(&["sew", path.to_str().unwrap(), "--subset", "0,1", "--exact"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("sewing rank of {0, 1} = 2"));

    let out = run(&[
        "sew",
        path.to_str().unwrap(),
        "--subset",
        "",
        "--exact",
        "--json",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "{\"subset\":[],\"rank\":0}");

    let out = run(&["sew", path.to_str().unwrap(), "--subset", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pochhammer_on_a_punctured_surface() {
    // One-holed torus: a single pants obtained by cutting the handle curve;
    // its Pochhammer vector spans the one-dimensional degree-1 homology.
    use pochhammer::PantsGraph;
    let p = Presentation::surface(1, 1).unwrap();
    let w = |text: &str| p.parse_word(text).unwrap();
    let mut pg = PantsGraph::new(1, 1, 1);
    pg.add_curve(0, 0, vec![1, 0], Some(w("a1")));
    pg.add_leg(0, vec![0, 0], Some(w("[b1,a1]")));
    pg.set_pants_words(0, w("a1"), w("b1 a1^-1 b1^-1"));
    let path = write_fixture("one_holed_torus.json", &graph_to_json(&pg).unwrap());

    let out = run(&["pochhammer", path.to_str().unwrap(), "--exact", "--json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let parsed: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert!(parsed["vectors"][0]["nonzero"].as_bool().unwrap());

    let out = run(&["sew", path.to_str().unwrap(), "--subset", "0", "--exact"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("sewing rank of {0} = 1"));
}

#[test]
fn dot_output_flags_separating_curves() {
    let path = write_fixture("dumbbell_dot.json", &graph_to_json(&dumbbell()).unwrap());
    let out = run(&["dot", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("graph pants {"));
    assert!(text.contains("separating=true"));
    assert_eq!(text.matches("separating=false").count(), 2);
}
