mod common;

use std::collections::BTreeSet;

use common::{chains, edge_file, fixture, json_edges, json_nodes, run};
use serde_json::Value;

#[test]
fn cfrac_output() {
    let o = run(&["cfrac", "17/2"]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "{\"terms\":[9,2]}\n"));
    assert_eq!(run(&["cfrac", "5/2"]).stdout, "{\"terms\":[3,2]}\n");
    assert_eq!(run(&["cfrac", "13/5"]).stdout, "{\"terms\":[3,3,2]}\n");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["frobnicate"][..],
        &["cfrac"],
        &["cfrac", "abc"],
        &["cfrac", "3/0"],
        &["cfrac", "-3/2"],
        &["strata"],
        &["strata", "--pair", "0"],
        &["strata", "--pair", "0", "1", "--seq", "0,1"],
        &["strata", "--pair", "0", "5/2", "--format", "svg"],
        &["enumerate", "--degree", "6", "--rank", "4"],
        &["bundle", "hom", "3,1"],
        &["bundle", "hom", "3", "6,2"],
        &["bundle", "hom", "3,1", "6,2"],
        &["bundle", "ext", "--i", "2", "3,1", "6,1"],
        &["bundle", "fm", "-1,2"],
        &["verify", "flatness", "--omega", "0,-1"],
        &["verify", "functional", "--k", "2"],
        &["verify", "center", "--n", "3", "--samples", "0"],
        &["verify", "nothing"],
    ] {
        let o = run(args);
        assert_eq!(o.code, 2, "{args:?}: {}", o.stdout);
        assert!(!o.stderr.is_empty(), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
    assert!(run(&["frobnicate"]).stderr.contains("Usage"));
}

#[test]
fn help_and_version_exit_0() {
    let o = run(&["--help"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("verify"));
    assert_eq!(run(&["--version"]).code, 0);
}

#[test]
fn five_halves_goldens() {
    assert_eq!(run(&["strata", "--pair", "0", "5/2", "--format", "dot"]).stdout, fixture("strata_0_5-2.dot"));
    let json = run(&["strata", "--pair", "0", "5/2", "--format", "json"]);
    assert_eq!(json.stdout, fixture("strata_0_5-2.json"));
    assert_eq!(run(&["strata", "--pair", "0", "5/2"]).stdout, json.stdout);
    assert_eq!(run(&["strata", "--seq", "5/2,0"]).stdout, json.stdout);
}

#[test]
fn integer_chains() {
    let chains = chains();
    assert_eq!(chains.len(), 6);
    for (n, expected) in chains {
        let o = run(&["strata", "--pair", "0", &n.to_string()]);
        assert_eq!(o.code, 0);
        assert_eq!(json_edges(&o.stdout), expected, "N = {n}");
        let nodes = json_nodes(&o.stdout);
        let terminal = if n % 2 == 0 { format!("{{{}, {}}}", n / 2, n / 2) } else { format!("{{{n}/2}}") };
        assert!(nodes.contains(&terminal));
        assert_eq!(nodes.len(), expected.len() + 1);
    }
}

#[test]
fn seventeen_halves_diagram() {
    let text = fixture("strata_0_17-2.edges");
    assert!(text.contains("{4, 13/3}"), "the fixture records the deviation");
    let expected = edge_file(&text);
    assert_eq!(expected.len(), 17);
    let o = run(&["strata", "--pair", "0", "17/2"]);
    assert_eq!(json_edges(&o.stdout), expected);
    let nodes: BTreeSet<String> = expected.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
    assert_eq!(json_nodes(&o.stdout), nodes);
}

#[test]
fn enumerate_golden() {
    let o = run(&["enumerate", "--degree", "9", "--rank", "2"]);
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout, fixture("enumerate_9_2.json"));
    let closure = json_nodes(&run(&["strata", "--pair", "0", "9/2"]).stdout);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    let mut found: BTreeSet<String> = v["sequences"].as_array().unwrap().iter().map(common::label).collect();
    found.insert("{0, 9/2}".into());
    assert_eq!(found, closure);
}

#[test]
fn bundle_commands() {
    let v = |args: &[&str]| -> Value {
        let o = run(args);
        assert_eq!(o.code, 0, "{args:?}: {}", o.stderr);
        serde_json::from_str(&o.stdout).unwrap()
    };
    assert_eq!(v(&["bundle", "hom", "0,1", "9,2"])["hom"], 9);
    assert_eq!(v(&["bundle", "hom", "9,2", "0,1"])["hom"], 0);
    assert_eq!(v(&["bundle", "ext", "9,2", "0,1"])["ext"], 9);
    assert_eq!(v(&["bundle", "ext", "--i", "0", "3,1", "3,1"])["ext"], 1);
    assert_eq!(v(&["bundle", "hom", "3,1@1/2,1/3", "3,1"])["hom"], 0);
    let d = v(&["bundle", "dual", "3,2@1/2,1/3"]);
    assert_eq!(d["dual"]["degree"], -3);
    assert_eq!(d["dual"]["param"], serde_json::json!(["1/2", "2/3"]));
    let f = v(&["bundle", "fm", "1,1@1/5,0"]);
    assert_eq!((f["fm"]["degree"].clone(), f["fm"]["rank"].clone()), (Value::from(-1), Value::from(1)));
    let s = v(&["bundle", "stable", "3,1@1/2,0", "3,1@0,1/7"]);
    assert_eq!((s["semistable"].clone(), s["stable"].clone()), (Value::Bool(true), Value::Bool(true)));
    let s = v(&["bundle", "stable", "6,2"]);
    assert_eq!((s["semistable"].clone(), s["stable"].clone()), (Value::Bool(true), Value::Bool(false)));
    let s = v(&["bundle", "stable", "0,1", "9,2"]);
    assert_eq!(s["semistable"], Value::Bool(false));
    assert_eq!(s["sum"][0]["degree"], 0);
}

#[test]
fn flatness_report() {
    let o = run(&["verify", "flatness", "--n", "4", "--k", "1", "--seed", "7"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["data"]["draws"][0]["dims"], serde_json::json!({"1": 4, "2": 10, "3": 20}));
    assert!(v["results"].as_array().unwrap().iter().all(|r| r["pass"] == true));
}

#[test]
fn failed_verification_exits_1() {
    // at h = 1e-3 the O(h²) bracket error hides the quintic Casimir of Q_{5,2}
    let o = run(&["verify", "poisson", "--n", "5", "--k", "2", "--h", "1e-3"]);
    assert_eq!(o.code, 1);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["pass"], false);
    let failed: Vec<&str> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["pass"] == false)
        .map(|r| r["check"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["casimirs-in-degree-5"]);
    assert_eq!(run(&["verify", "poisson", "--n", "5", "--k", "2"]).code, 0);
}

#[test]
fn output_flag_writes_the_file() {
    let path = std::env::temp_dir().join(format!("sklyanin-cli-{}.dot", std::process::id()));
    let p = path.to_str().unwrap();
    let o = run(&["strata", "--pair", "0", "5/2", "--format", "dot", "--output", p]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), fixture("strata_0_5-2.dot"));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn verify_is_seed_deterministic() {
    for args in [
        &["verify", "functional", "--seed", "3", "--samples", "5"][..],
        &["verify", "heisenberg", "--n", "5", "--k", "2", "--seed", "9"],
        &["verify", "serre-zero", "--seed", "4"],
    ] {
        let (a, b) = (run(args), run(args));
        assert_eq!(a.code, 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let a = run(&["verify", "functional", "--seed", "3", "--samples", "5"]).stdout;
    let b = run(&["verify", "functional", "--seed", "4", "--samples", "5"]).stdout;
    assert_ne!(a, b);
}
