use std::path::Path;
use std::process::{Command, Output};

use hamdg::io;

fn hamdg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hamdg")).args(args).env_remove("HAMDG_BUDGET").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_gen(dir: &Path, name: &str, args: &[&str]) -> String {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    let o = hamdg(&full);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let p = dir.join(name);
    std::fs::write(&p, &o.stdout).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn gen_round_trips_byte_identically() {
    for args in [
        vec!["--family", "circulant", "--n", "7"],
        vec!["--family", "random", "--n", "9", "--seed", "4"],
        vec!["--family", "fig1", "--s", "2"],
        vec!["--family", "fig3", "--m", "3"],
        vec!["--family", "nw-extremal", "--n", "7", "--k", "2"],
        vec!["--family", "random-regular-graph", "--n", "12", "--d", "7", "--seed", "1"],
    ] {
        let mut full = vec!["gen"];
        full.extend_from_slice(&args);
        let text = stdout(&hamdg(&full));
        let g = io::parse_graph(&text).unwrap();
        assert_eq!(io::write_auto(&g), text, "{args:?}");
    }
}

#[test]
fn gen_exit_codes_and_parts() {
    let dir = tempfile::tempdir().unwrap();
    let parts = dir.path().join("fig2.parts");
    let o = hamdg(&["gen", "--family", "fig2", "--n", "7", "--parts-out", parts.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let p = io::parse_parts(&std::fs::read_to_string(&parts).unwrap()).unwrap();
    assert_eq!(p[0], ("K".to_string(), vec![0, 1, 2, 3]));
    assert_eq!(code(&hamdg(&["gen", "--family", "circulant", "--n", "6"])), 2);
    assert_eq!(code(&hamdg(&["gen", "--family", "fig1"])), 2);
    assert_eq!(code(&hamdg(&["frobnicate"])), 2);
}

#[test]
fn check_reports_meyniel_pair_on_fig2() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_gen(dir.path(), "fig2_n7.dg", &["--family", "fig2", "--n", "7"]);
    let o = hamdg(&["check", "--rule", "meyniel", "--input", &f]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["holds"], false);
    // z is the last vertex; the pair sums to 2n - 2
    assert_eq!(v["witness"]["y"], 6);
    assert_eq!(v["witness"]["value"], 12);

    let c = write_gen(dir.path(), "c7.dg", &["--family", "circulant", "--n", "7"]);
    // a regular 7-tournament has semidegree sum 6 < 7
    assert_eq!(code(&hamdg(&["check", "--rule", "ghouila-houri", "-i", &c])), 1);
    let k = write_gen(dir.path(), "k6.dg", &["--family", "complete", "--n", "6"]);
    assert_eq!(code(&hamdg(&["check", "--rule", "ghouila-houri", "-i", &k])), 0);
    assert_eq!(code(&hamdg(&["check", "--rule", "ore-oriented", "-i", &c])), 2, "missing --alpha");
    assert_eq!(code(&hamdg(&["check", "--rule", "ore-oriented", "--alpha", "1/100", "-i", &c])), 0);
    assert_eq!(code(&hamdg(&["check", "--rule", "ore-oriented", "--alpha", "1/2", "-i", &c])), 1);
    assert_eq!(code(&hamdg(&["check", "--rule", "meyniel", "-i", "/nonexistent.dg"])), 2);
}

#[test]
fn solve_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let c = write_gen(dir.path(), "c7.dg", &["--family", "circulant", "--n", "7"]);
    let f = write_gen(dir.path(), "fig2.dg", &["--family", "fig2", "--n", "7"]);
    let o = hamdg(&["solve", "--problem", "hamilton", "-i", &c]);
    assert_eq!(code(&o), 0);
    let h = io::parse_cycle(&stdout(&o)).unwrap();
    h.check(&io::parse_graph(&std::fs::read_to_string(&c).unwrap()).unwrap()).unwrap();
    assert_eq!(code(&hamdg(&["solve", "--problem", "hamilton", "-i", &f])), 1);

    let o = Command::new(env!("CARGO_BIN_EXE_hamdg"))
        .args(["solve", "--problem", "hamilton", "-i", &f])
        .env("HAMDG_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    assert_eq!(code(&hamdg(&["--budget", "3", "solve", "--problem", "hamilton", "-i", &f])), 3);

    assert_eq!(code(&hamdg(&["solve", "--problem", "through", "--matching", "0-1,2-3", "-i", &c])), 0);
    assert_eq!(code(&hamdg(&["solve", "--problem", "through", "--matching", "0-1,1-2", "-i", &c])), 2);
    assert_eq!(code(&hamdg(&["solve", "--problem", "k-ordered", "--seq", "0,3,1", "-i", &c])), 0);
    assert_eq!(code(&hamdg(&["solve", "--problem", "pancyclic", "-i", &c])), 0);
    assert_eq!(code(&hamdg(&["solve", "--problem", "factor", "--lengths", "3,4", "-i", &c])), 0);
    assert_eq!(code(&hamdg(&["solve", "--problem", "oriented", "--pattern", "FFFFFFB", "-i", &c])), 0);
    assert_eq!(code(&hamdg(&["solve", "--problem", "oriented", "--pattern", "FFB", "-i", &c])), 2);
    assert_eq!(code(&hamdg(&["solve", "--problem", "power", "--k", "2", "-i", &c])), 0);

    let f4 = write_gen(dir.path(), "fig4.dg", &["--family", "fig4", "--m", "2"]);
    assert_eq!(code(&hamdg(&["solve", "--problem", "power", "--k", "2", "-i", &f4])), 1);

    let tree = dir.path().join("tree.dg");
    std::fs::write(&tree, "DIGRAPH 1 3 2\n0 1\n2 1\n").unwrap();
    let o = hamdg(&["solve", "--problem", "tree", "--tree", tree.to_str().unwrap(), "-i", &c]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("EMBED 1 3 7"));
}

#[test]
fn count_decompose_cover_expander() {
    let dir = tempfile::tempdir().unwrap();
    let c = write_gen(dir.path(), "c5.dg", &["--family", "circulant", "--n", "5"]);
    let o = hamdg(&["count", "-i", &c]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["expected_paths"], "15/2");

    let o = hamdg(&["decompose", "-i", &c]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["cycles"].as_array().unwrap().len(), 2);

    let k4 = write_gen(dir.path(), "k4.dg", &["--family", "complete", "--n", "4"]);
    assert_eq!(code(&hamdg(&["decompose", "-i", &k4])), 1);

    let k7 = write_gen(dir.path(), "k7.dg", &["--family", "complete-graph", "--n", "7"]);
    let o = hamdg(&["cover", "-i", &k7]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["valid"]["holds"], true);
    let t = write_gen(dir.path(), "t.dg", &["--family", "transitive", "--n", "5"]);
    assert_eq!(code(&hamdg(&["cover", "-i", &t])), 2);

    assert_eq!(code(&hamdg(&["expander", "robust", "-i", &c])), 0);
    let two = write_gen(dir.path(), "two.dg", &["--family", "two-regular", "--d", "3"]);
    assert_eq!(code(&hamdg(&["expander", "robust", "-i", &two])), 1);
    let ring = write_gen(
        dir.path(),
        "ring.dg",
        &["--family", "cycle-blowup", "--k", "14", "--sizes", "1,1,1,1,1,1,1,1,1,1,1,1,1,1"],
    );
    assert_eq!(code(&hamdg(&["expander", "robust", "--samples", "200", "-i", &ring])), 1);
    let o = hamdg(&["expander", "pair", "-i", &c, "--a", "0,1", "--b", "2,3", "--eps", "1/2"]);
    assert!(matches!(code(&o), 0 | 1));
    let o = hamdg(&["expander", "blowup", "--base", "pentagon", "--m", "7", "--exceptional", "3", "--seed", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(io::parse_cycle(&stdout(&o)).unwrap().len(), 38);
    assert_eq!(code(&hamdg(&["expander", "blowup", "--m", "5", "--exceptional", "1", "--cap", "0"])), 1);
}

#[test]
fn experiments_are_reproducible() {
    let run = |seed: &str| stdout(&hamdg(&["experiment", "counting", "--n", "5,6", "--trials", "200", "--seed", seed]));
    let a = run("7");
    assert_eq!(a, run("7"));
    assert_ne!(a, run("8"));
    assert!(a.starts_with("# schema=1\nid,family,params,seed,operation,metrics\n"));
    assert_eq!(a.lines().count(), 4);

    let o = hamdg(&["experiment", "walecki", "--n", "5,3", "--jsonl"]);
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    // sorted by id regardless of argument order
    assert_eq!(lines[0]["id"], "walecki-n03");
    assert_eq!(lines[1]["metrics"]["cycles"], "2");

    let o = hamdg(&["experiment", "kelly", "--n", "3,5"]);
    assert!(stdout(&o)
        .contains("kelly-n05,regular_tournament,n=5,0,kelly,cycles_each=2;decomposed=24;exceptions=0;regular=24"));
    assert_eq!(code(&hamdg(&["experiment", "kelly", "--n", "9"])), 2);

    let o = hamdg(&["experiment", "walecki", "--n", "3", "--timing"]);
    assert!(stdout(&o).contains(",wall_ms\n"));
}
