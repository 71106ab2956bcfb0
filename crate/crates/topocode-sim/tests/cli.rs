use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn topocode(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_topocode"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn error_kind(out: &Output) -> String {
    assert!(!out.status.success());
    let line = String::from_utf8(out.stderr.clone()).unwrap();
    let v: Value = serde_json::from_str(line.trim()).expect("one JSON error line");
    v["error"]["kind"].as_str().unwrap().to_string()
}

#[test]
fn encode_then_decode_restores_the_image() {
    let dir = tempfile::tempdir().unwrap();
    let mut pgm = b"P5\n# ramp\n5 4\n255\n".to_vec();
    pgm.extend((0..20u8).map(|i| if i == 7 { 255 } else { i * 11 }));
    fs::write(dir.path().join("in.pgm"), &pgm).unwrap();

    let enc = topocode(&["encode", "--input", "in.pgm", "--out", "p.bin"], dir.path());
    assert!(enc.status.success(), "{}", String::from_utf8_lossy(&enc.stderr));
    let dec = topocode(&["decode", "--input", "p.bin", "--out", "out.pgm"], dir.path());
    assert!(dec.status.success(), "{}", String::from_utf8_lossy(&dec.stderr));

    let summary: Value = serde_json::from_slice(&dec.stdout).unwrap();
    assert_eq!(summary["width"], 5);
    assert_eq!(summary["groups"][0]["essential"].as_array().unwrap().len(), 1);
    let out = fs::read(dir.path().join("out.pgm")).unwrap();
    assert_eq!(&out[out.len() - 20..], &pgm[pgm.len() - 20..]);
}

#[test]
fn experiment_writes_results_and_reruns_from_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let run = topocode(
        &["correct-compare", "--images", "2", "--iterations", "5", "--seed", "9", "--out", "a"],
        dir.path(),
    );
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let again = topocode(
        &["correct-compare", "--manifest", "a/manifest.json", "--out", "b"],
        dir.path(),
    );
    assert!(again.status.success());
    for f in ["results.csv", "summary.csv"] {
        assert_eq!(
            fs::read(dir.path().join("a").join(f)).unwrap(),
            fs::read(dir.path().join("b").join(f)).unwrap()
        );
    }
    let results = fs::read_to_string(dir.path().join("a/results.csv")).unwrap();
    // Header plus five schemes for two images.
    assert_eq!(results.lines().count(), 11);
}

#[test]
fn failures_exit_nonzero_with_a_structured_line() {
    let dir = tempfile::tempdir().unwrap();
    let missing = topocode(&["detect-batch", "--dataset", "idx:none.idx", "--out", "x"], dir.path());
    assert_eq!(error_kind(&missing), "dataset-not-found");

    let coded = topocode(
        &["snr-sweep", "--schemes", "ldpc", "--pattern", "pixels:0.2", "--out", "x"],
        dir.path(),
    );
    assert_eq!(error_kind(&coded), "config-invalid");

    fs::write(dir.path().join("ascii.pgm"), "P2\n2 2\n255\n0 1 2 3\n").unwrap();
    let ascii = topocode(&["encode", "--input", "ascii.pgm", "--out", "p.bin"], dir.path());
    assert_eq!(error_kind(&ascii), "unsupported-format");

    fs::write(dir.path().join("junk.bin"), b"not a packet").unwrap();
    let junk = topocode(&["decode", "--input", "junk.bin", "--out", "o.pgm"], dir.path());
    assert_eq!(error_kind(&junk), "decode");
}
