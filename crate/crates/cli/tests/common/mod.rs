#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use serde_json::Value;

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("sklyanin").chain(args.iter().copied());
    let code = sklyanin_cli::dispatch(argv, &mut out, &mut err);
    Outcome { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

pub fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// `["1","2","2"]` as `{1, 2, 2}`.
pub fn label(seq: &Value) -> String {
    let parts: Vec<&str> = seq.as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    format!("{{{}}}", parts.join(", "))
}

pub type EdgeSet = BTreeSet<(String, String)>;

/// Edge labels of a `strata --format json` document.
pub fn json_edges(doc: &str) -> EdgeSet {
    let v: Value = serde_json::from_str(doc).unwrap();
    let nodes: Vec<String> = v["nodes"].as_array().unwrap().iter().map(label).collect();
    v["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (nodes[e[0].as_u64().unwrap() as usize].clone(), nodes[e[1].as_u64().unwrap() as usize].clone()))
        .collect()
}

pub fn json_nodes(doc: &str) -> BTreeSet<String> {
    let v: Value = serde_json::from_str(doc).unwrap();
    v["nodes"].as_array().unwrap().iter().map(label).collect()
}

/// Lines `A -> B -> C`, skipping `#` comments; an optional `key:` prefix is dropped.
pub fn chain_edges(line: &str) -> EdgeSet {
    let body = line.split_once(':').map_or(line, |(_, b)| b);
    let nodes: Vec<String> = body.split("->").map(|s| s.trim().to_string()).collect();
    nodes.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect()
}

pub fn edge_file(text: &str) -> EdgeSet {
    text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()).flat_map(chain_edges).collect()
}

/// `N -> edges` from `chains.txt`.
pub fn chains() -> Vec<(u32, EdgeSet)> {
    fixture("chains.txt")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| (l.split_once(':').unwrap().0.trim().parse().unwrap(), chain_edges(l)))
        .collect()
}
