#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_skelaug"))
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn skelaug")
}

pub fn ok(args: &[&str]) -> Output {
    let out = run(args);
    assert!(
        out.status.success(),
        "skelaug {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

pub fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// Relative path to file contents, for every file below `root`.
pub fn tree(root: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                out.insert(path.strip_prefix(root).unwrap().to_path_buf(), fs::read(&path).unwrap());
            }
        }
    }
    out
}

/// Synthesizes, preprocesses and splits a dataset under `root`; returns the
/// split manifest path.
pub fn prepared(root: &Path, seed: u64) -> PathBuf {
    let syn = root.join("syn");
    let pre = root.join("pre");
    let spl = root.join("split");
    let seed = seed.to_string();
    ok(&["synth", "--out", p(&syn), "--seed", &seed]);
    ok(&["preprocess", "--in", p(&syn.join("manifest.json")), "--out", p(&pre)]);
    ok(&["split", "--in", p(&pre.join("manifest.json")), "--out", p(&spl), "--seed", &seed]);
    spl.join("manifest.json")
}
