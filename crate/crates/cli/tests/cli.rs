mod common;

use std::fs;

use skelaug::augment::is_augmented;
use skelaug::dataset::Split;
use skelaug::io::{read_manifest, read_sequence};
use skelaug::Schema;

use common::{ok, p, prepared, run};

#[test]
fn synth_default_config() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["synth", "--out", p(dir.path())]);
    let m = read_manifest(&dir.path().join("manifest.json")).unwrap();
    assert_eq!(m.entries.len(), 20);
    assert_eq!(m.subjects().len(), 20);
    assert_eq!(m.label_set.len(), 2);
    let s = read_sequence(&dir.path().join(&m.entries[0].path)).unwrap();
    assert_eq!(s.schema, Schema::Full25);
    assert_eq!(s.len(), 150);
}

#[test]
fn synth_reads_toml_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("synth.toml");
    fs::write(&cfg, "seed = 4\nsubjects_per_class = 2\nduration_s = 2.0\nsensor_noise = 0.0\n").unwrap();
    ok(&["synth", "--config", p(&cfg), "--out", p(&dir.path().join("out"))]);
    let m = read_manifest(&dir.path().join("out/manifest.json")).unwrap();
    assert_eq!(m.entries.len(), 4);
    assert_eq!(m.rng_seed, 4);
}

#[test]
fn synth_missing_config_names_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nowhere.toml");
    let out = run(&["synth", "--config", p(&missing), "--out", p(&dir.path().join("o"))]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nowhere.toml"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let m = prepared(dir.path(), 1);
    let out = run(&["augment", "--in", p(&m), "--out", p(&dir.path().join("a")), "--method", "warp"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["augment", "--in", p(&m), "--out", p(&dir.path().join("a")), "--preset", "table1", "--angle", "20"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("grid"));
}

#[test]
fn preprocess_flags() {
    let dir = tempfile::tempdir().unwrap();
    let syn = dir.path().join("syn");
    ok(&["synth", "--out", p(&syn), "--seed", "3"]);
    let input = syn.join("manifest.json");

    let full = dir.path().join("full");
    ok(&["preprocess", "--in", p(&input), "--out", p(&full), "--no-simplify"]);
    let m = read_manifest(&full.join("manifest.json")).unwrap();
    for e in &m.entries {
        assert_eq!(read_sequence(&full.join(&e.path)).unwrap().schema, Schema::Full25);
    }

    let win = dir.path().join("win");
    ok(&["preprocess", "--in", p(&input), "--out", p(&win), "--window", "100", "--stride", "50"]);
    let m = read_manifest(&win.join("manifest.json")).unwrap();
    // 150 frames: windows start at 0 and 50
    assert_eq!(m.entries.len(), 2 * 20);
    for subject in m.subjects() {
        assert_eq!(m.entries.iter().filter(|e| e.subject_id == subject).count(), 2);
    }

    let out = run(&["preprocess", "--in", p(&input), "--out", p(&dir.path().join("x")), "--window", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn split_is_person_disjoint() {
    let dir = tempfile::tempdir().unwrap();
    let m = read_manifest(&prepared(dir.path(), 8)).unwrap();
    let test: Vec<_> = m.entries.iter().filter(|e| e.split == Split::Test).map(|e| &e.subject_id).collect();
    let train: Vec<_> = m.entries.iter().filter(|e| e.split == Split::Train).map(|e| &e.subject_id).collect();
    assert!(!test.is_empty() && !train.is_empty());
    assert!(test.iter().all(|s| !train.contains(s)));
}

#[test]
fn augment_methods() {
    let dir = tempfile::tempdir().unwrap();
    let m = prepared(dir.path(), 2);
    let input = read_manifest(&m).unwrap();
    let n_train = input.entries.iter().filter(|e| e.split == Split::Train).count();

    let rot = dir.path().join("rot");
    ok(&["augment", "--in", p(&m), "--out", p(&rot), "--method", "rotation", "--angle", "18", "--direction", "horizontal"]);
    let out = read_manifest(&rot.join("manifest.json")).unwrap();
    assert_eq!(out.entries.len(), input.entries.len() + n_train);

    let sub = dir.path().join("sub");
    ok(&["augment", "--in", p(&m), "--out", p(&sub), "--method", "channel-mask", "--axis", "x"]);
    let out = read_manifest(&sub.join("manifest.json")).unwrap();
    let aug: Vec<_> = out.entries.iter().filter(|e| is_augmented(&e.provenance)).collect();
    assert_eq!(aug.len(), n_train);
    assert!(aug.iter().all(|e| e.provenance.last().unwrap().ends_with("raw+subx")));
    assert!(aug.iter().all(|e| e.split == Split::Train && e.source_id.is_some()));

    let jm = |name: &str| {
        let d = dir.path().join(name);
        ok(&["augment", "--in", p(&m), "--out", p(&d), "--method", "joint-mask", "--fraction", "0.2", "--seed", "3"]);
        let out = read_manifest(&d.join("manifest.json")).unwrap();
        let e = out.entries.iter().find(|e| e.source_id.is_some()).unwrap().clone();
        read_sequence(&d.join(&e.path)).unwrap()
    };
    assert_eq!(jm("jm1"), jm("jm2"));
}

#[test]
fn augment_presets_write_one_dataset_per_column() {
    let dir = tempfile::tempdir().unwrap();
    let m = prepared(dir.path(), 2);
    let t1 = dir.path().join("t1");
    ok(&["augment", "--in", p(&m), "--out", p(&t1), "--preset", "table1"]);
    let mut cols: Vec<String> = fs::read_dir(&t1)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    cols.sort();
    assert_eq!(cols.len(), 10);
    assert!(cols.contains(&"raw+h18".to_string()) && cols.contains(&"raw+h180".to_string()));

    let one = dir.path().join("one");
    ok(&["augment", "--in", p(&m), "--out", p(&one), "--preset", "table2", "--angle", "54"]);
    assert!(one.join("raw+v54/manifest.json").exists());
    assert_eq!(fs::read_dir(&one).unwrap().count(), 1);

    let t4 = dir.path().join("t4");
    ok(&["augment", "--in", p(&m), "--out", p(&t4), "--preset", "table4"]);
    for axis in ["x", "y", "z"] {
        assert!(t4.join(format!("raw+sub{axis}/manifest.json")).exists());
    }
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn mi_identity_equals_self_entropy_and_two_bins_bound() {
    let dir = tempfile::tempdir().unwrap();
    let m = prepared(dir.path(), 6);
    let id = dir.path().join("id");
    let noise = dir.path().join("noise");
    ok(&["augment", "--in", p(&m), "--out", p(&id), "--method", "identity"]);
    ok(&["augment", "--in", p(&m), "--out", p(&noise), "--method", "gaussian", "--sigma", "0.05", "--seed", "1"]);

    let rep = dir.path().join("rep");
    let out = ok(&[
        "mi",
        "--raw",
        p(&m),
        "--aug",
        p(&id.join("manifest.json")),
        "--aug",
        p(&noise.join("manifest.json")),
        "--out",
        p(&rep),
    ]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("raw+identity") && stdout.contains("raw+gauss0.05"));
    let rows = csv_rows(&fs::read_to_string(rep.join("mi_report.csv")).unwrap());
    let identity = rows.iter().find(|r| r[0] == "raw+identity").unwrap();
    assert_eq!(identity[1], identity[2]);
    assert_eq!(rows[0][0], "raw+identity");

    let rep2 = dir.path().join("rep2");
    ok(&["mi", "--raw", p(&m), "--aug", p(&noise.join("manifest.json")), "--bins", "2", "--out", p(&rep2)]);
    for r in csv_rows(&fs::read_to_string(rep2.join("mi_report.csv")).unwrap()) {
        assert!(r[1].parse::<f64>().unwrap() <= 1.0);
    }
}

#[test]
fn mi_sweep_ranks_non_noise_methods_first() {
    let dir = tempfile::tempdir().unwrap();
    let m = prepared(dir.path(), 0);
    let methods: [&[&str]; 5] = [
        &["--method", "rotation", "--angle", "18"],
        &["--method", "channel-mask", "--axis", "x"],
        &["--method", "gaussian", "--sigma", "0.05"],
        &["--method", "shear"],
        &["--method", "joint-mask", "--fraction", "0.4"],
    ];
    let mut args = vec!["mi".to_string(), "--raw".into(), p(&m).into(), "--out".into()];
    args.push(p(&dir.path().join("rep")).into());
    for (i, flags) in methods.iter().enumerate() {
        let out = dir.path().join(format!("aug{i}"));
        let mut a = vec!["augment", "--in", p(&m), "--out", p(&out), "--seed", "1"];
        a.extend_from_slice(flags);
        ok(&a);
        args.push("--aug".into());
        args.push(p(&out.join("manifest.json")).into());
    }
    ok(&args.iter().map(String::as_str).collect::<Vec<_>>());
    let rows = csv_rows(&fs::read_to_string(dir.path().join("rep/mi_report.csv")).unwrap());
    let top: Vec<&str> = rows[..2].iter().map(|r| r[0].as_str()).collect();
    assert!(top.contains(&"raw+h18") && top.contains(&"raw+subx"), "{rows:?}");
    assert!(rows[..2].iter().all(|r| r[6] == "non-noise"));
    assert!(rows[2..].iter().all(|r| r[6] == "noise"));
}

#[test]
fn render_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let syn = dir.path().join("syn");
    ok(&["synth", "--out", p(&syn), "--seed", "1"]);
    let m = read_manifest(&syn.join("manifest.json")).unwrap();
    let seq = syn.join(&m.entries[0].path);

    let svg = dir.path().join("f.svg");
    ok(&["render", p(&seq), "--frame", "10", "-o", p(&svg)]);
    let text = fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<line").count(), 24);

    let out = run(&["render", p(&seq), "--frame", "150", "-o", p(&svg)]);
    assert_eq!(out.status.code(), Some(3));

    let out = run(&["render", p(&seq), "--frame", "0", "-o", p(&dir.path().join("missing/dir/f.svg"))]);
    assert!(!out.status.success());

    let pre = dir.path().join("pre");
    let aug = dir.path().join("aug");
    ok(&["preprocess", "--in", p(&syn.join("manifest.json")), "--out", p(&pre)]);
    ok(&["augment", "--in", p(&pre.join("manifest.json")), "--out", p(&aug), "--method", "channel-mask", "--axis", "x"]);
    let am = read_manifest(&aug.join("manifest.json")).unwrap();
    let masked = am.entries.iter().find(|e| e.source_id.is_some()).unwrap();
    let strip = dir.path().join("strip.svg");
    ok(&["render", p(&aug.join(&masked.path)), "--strip", "3", "-o", p(&strip)]);
    let text = fs::read_to_string(&strip).unwrap();
    assert_eq!(text.matches("<line").count(), 3 * 16);
    for line in text.lines().filter(|l| l.starts_with("<line")) {
        let attr = |name: &str| line.split(&format!("{name}=\"")).nth(1).unwrap().split('"').next().unwrap().to_string();
        assert_eq!(attr("x1"), attr("x2"));
    }
}

#[test]
fn export_bundle_counts() {
    let dir = tempfile::tempdir().unwrap();
    let m = prepared(dir.path(), 4);
    let bundle = dir.path().join("bundle");
    ok(&["export", p(&m), p(&bundle)]);
    let manifest = read_manifest(&m).unwrap();
    let n = manifest.entries.len();
    let labels = fs::read_to_string(bundle.join("labels.txt")).unwrap();
    let groups = fs::read_to_string(bundle.join("groups.txt")).unwrap();
    assert_eq!(labels.lines().count(), n);
    assert_eq!(groups.lines().count(), n);
    let bin = fs::read(bundle.join("windows.bin")).unwrap();
    assert_eq!(bin.len(), 12 + n * 100 * 51 * 4);
    let subjects = manifest.subjects().len();
    assert!(groups.lines().all(|g| g.parse::<usize>().unwrap() < subjects));
}
