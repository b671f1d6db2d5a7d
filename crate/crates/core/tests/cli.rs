use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn biclique(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biclique"))
        .args(args)
        .env_remove("BICLIQUE_TIME_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_report(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json", "-"];
    full.extend_from_slice(args);
    let o = biclique(&full);
    (
        o.status.code().unwrap(),
        serde_json::from_slice(&o.stdout).expect("stdout is a JSON report"),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn star_partition_colors_with_four_colors() {
    let dir = tempfile::tempdir().unwrap();
    let sys = dir.path().join("stars.txt");
    let o = biclique(&["gen", "gpstars", "--sizes", "1,1,1,1", "-o", sys.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());

    let (code, r) = json_report(&["color", sys.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["command"], "color");
    assert_eq!(r["results"]["distinct_colors"], 4);
    assert_eq!(r["results"]["proper"], true);
    assert_eq!(r["results"]["colors_bound"], 7);
    assert_eq!(r["results"]["bottom_class"], serde_json::json!([4]));
    assert_eq!(r["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn oracle_and_bounds_commands() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = dir.path().join("k4.txt");
    assert!(biclique(&["gen", "kk", "--k", "4", "-o", k4.to_str().unwrap()])
        .status
        .success());
    let k4 = k4.to_str().unwrap();

    let o = biclique(&["oracle", "bp", k4]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("3"));
    assert_eq!(
        json_report(&["oracle", "mincover", k4]).1["results"]["min_cover_weight"],
        8
    );
    assert_eq!(json_report(&["oracle", "chi", k4]).1["results"]["chromatic_number"], 4);
    assert_eq!(
        json_report(&["oracle", "alpha", k4]).1["results"]["independence_number"],
        1
    );

    assert_eq!(stdout(&biclique(&["bounds", "invert", "--k", "6"])).trim(), "3");
    assert_eq!(stdout(&biclique(&["bounds", "colors", "--m", "4"])).trim(), "21");
    let big = json_report(&["bounds", "colors", "--m", "2000"]).1;
    assert!(big["results"]["colors_bound"].is_string());
}

#[test]
fn exit_codes_follow_the_error_taxonomy() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let overlap = write(d, "overlap.txt", "n 4\nb 1 2 | 3 4\nb 1 3 | 2 4\n");
    let garbled = write(d, "garbled.txt", "n 3\nb 1 | 9\n");
    let k6 = write(d, "k6.txt", &stdout(&biclique(&["gen", "kk", "--k", "6"])));
    let path3 = write(d, "p3.txt", "n 3\ne 1 2\ne 2 3\n");
    let wrong = write(d, "wrong.txt", "n 3\nb 1 | 2 3\n");

    let code = |args: &[&str]| biclique(args).status.code().unwrap();
    assert_eq!(code(&["validate", "partition", &overlap]), 1);
    assert_eq!(code(&["color", &overlap]), 1);
    assert_eq!(code(&["color", &garbled]), 1);
    assert_eq!(code(&["validate", "cover", &wrong, &path3]), 1);
    assert_eq!(code(&["oracle", "mincover", &k6]), 2);
    assert_eq!(code(&["--limits", "time_budget=0", "oracle", "chi", &k6]), 3);
    assert_eq!(
        code(&["--limits", "max_edges_cover_weight=2", "oracle", "mincover", &path3]),
        0
    );
    assert_eq!(
        code(&["--limits", "max_edges_cover_weight=1", "oracle", "mincover", &path3]),
        2
    );
    assert_eq!(code(&["--limits", "nonsense=1", "oracle", "chi", &path3]), 3);
    assert_eq!(code(&["oracle", "chi", "/nonexistent/graph.txt"]), 3);
    assert_eq!(code(&["frobnicate"]), 3);
    assert_eq!(code(&["bounds", "thm3", "--k", "4"]), 3);
    assert_eq!(code(&["--help"]), 0);

    let (c, r) = json_report(&["color", &overlap]);
    assert_eq!(c, 1);
    assert!(r["results"]["error"].as_str().unwrap().contains("biclique"));
}

#[test]
fn text_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["gen", "kk", "--k", "7"],
        &["gen", "multipartite", "--sizes", "2,3,1"],
        &["gen", "gpstars", "--sizes", "2,2,3"],
        &["gen", "kscode", "--k", "11"],
        &["--seed", "17", "gen", "random", "--n", "60", "--m", "9"],
    ];
    for args in cases {
        let first = stdout(&biclique(args));
        let is_graph = first.lines().any(|l| l.starts_with("e "));
        let again = if is_graph {
            biclique_core::format::write_graph(&biclique_core::format::parse_graph(&first).unwrap())
        } else {
            biclique_core::format::write_system(&biclique_core::format::parse_system(&first).unwrap())
        };
        assert_eq!(first, again, "{args:?}");
        let f = write(dir.path(), "rt.txt", &first);
        let cmd = if is_graph {
            vec!["oracle", "chi", f.as_str()]
        } else {
            vec!["hansel", "expect", f.as_str()]
        };
        assert_eq!(biclique(&cmd).status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn seeded_commands_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let sys = dir.path().join("r.txt");
    let sys = sys.to_str().unwrap();
    assert!(
        biclique(&["--seed", "5", "gen", "random", "--n", "80", "--m", "10", "-o", sys])
            .status
            .success()
    );
    let (_, a) = json_report(&["--seed", "9", "hansel", "random", sys]);
    let (_, b) = json_report(&["--seed", "9", "hansel", "random", sys]);
    assert_eq!(a["results"], b["results"]);
    assert_eq!(a["seed"], 9);
    let (_, c) = json_report(&["hansel", "derand", sys]);
    assert_eq!(c["seed"], Value::Null);
}

#[test]
fn time_budget_env_var_is_overridden_by_flag() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.txt", &stdout(&biclique(&["gen", "kk", "--k", "3"])));
    let o = Command::new(env!("CARGO_BIN_EXE_biclique"))
        .args(["--limits", "time_budget=5", "oracle", "chi", &g])
        .env("BICLIQUE_TIME_BUDGET", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_biclique"))
        .args(["oracle", "chi", &g])
        .env("BICLIQUE_TIME_BUDGET", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}
