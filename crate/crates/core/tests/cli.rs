// Copyright 2026 The ruchan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! End-to-end runs of the `ruchan` binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn ruchan(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ruchan"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn generated(d: usize, k: usize, seed: u64) -> (String, String) {
    let out = ruchan(&["gen", "--d", &d.to_string(), "--k", &k.to_string(), "--seed", &seed.to_string()], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    (v["channel"].to_string(), v["decomposition"].to_string())
}

const AMPLITUDE_DAMPING: &str =
    r#"{"d_in":2,"d_out":2,"kraus":[[[[1,0],[0,0]],[[0,0],[0.8,0]]],[[[0,0],[0.6,0]],[[0,0],[0,0]]]]}"#;

#[test]
fn analyze_reads_stdin() {
    let (channel, _) = generated(3, 2, 1);
    let out = ruchan(&["analyze", "-"], Some(&channel));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["rank"], 2);
    assert_eq!(v["unital"], true);
    assert_eq!(v["k_high"], 4);
}

#[test]
fn decompose_found_and_gated() {
    let (channel, _) = generated(3, 3, 4);
    let out = ruchan(&["decompose", "-"], Some(&channel));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "found");
    assert_eq!(v["method"], "search");
    assert!(v["k"].as_u64().unwrap() <= 9);

    let out = ruchan(&["decompose", "-"], Some(AMPLITUDE_DAMPING));
    assert_eq!(out.status.code(), Some(5));
    assert_eq!(json(&out)["status"], "not_unital");
}

#[test]
fn decompose_not_found_with_tiny_budget() {
    let (channel, _) = generated(3, 9, 8);
    let out = ruchan(&["decompose", "-", "--max-restarts", "1", "--max-iters", "1", "--schedule", "9"], Some(&channel));
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json(&out)["status"], "not_found");
}

#[test]
fn simulate_correct_from_files() {
    let dir = std::env::temp_dir().join(format!("ruchan-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (channel, dec) = generated(2, 3, 2);
    let (cpath, dpath, opath) = (dir.join("ch.json"), dir.join("dec.json"), dir.join("out.json"));
    std::fs::write(&cpath, channel).unwrap();
    std::fs::write(&dpath, dec).unwrap();
    let out = ruchan(
        &[
            "simulate-correct",
            cpath.to_str().unwrap(),
            dpath.to_str().unwrap(),
            "--trials",
            "20",
            "--out",
            opath.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&opath).unwrap()).unwrap();
    assert_eq!(v["n_trials"], 20);
    assert!(v["worst_fidelity"].as_f64().unwrap() >= 1.0 - 1e-9);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn povm_reduce_rejects_non_dice_povm() {
    let identity = r#"{"d_in":2,"d_out":2,"kraus":[[[[1,0],[0,0]],[[0,0],[1,0]]]]}"#;
    let dir = std::env::temp_dir().join(format!("ruchan-povm-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cpath = dir.join("ch.json");
    std::fs::write(&cpath, AMPLITUDE_DAMPING).unwrap();
    let povm = r#"{"r":2,"vectors":[[[1,0],[0,0]],[[0,0],[1,0]]]}"#;
    let out = ruchan(&["povm-reduce", cpath.to_str().unwrap(), "-"], Some(povm));
    assert_eq!(out.status.code(), Some(6), "{}", String::from_utf8_lossy(&out.stderr));

    std::fs::write(&cpath, identity).unwrap();
    let trivial = r#"{"r":1,"vectors":[[[1,0]]]}"#;
    let out = ruchan(&["povm-reduce", cpath.to_str().unwrap(), "-"], Some(trivial));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn malformed_and_invalid_inputs() {
    assert_eq!(ruchan(&["analyze", "-"], Some("{not json")).status.code(), Some(2));
    assert_eq!(ruchan(&["analyze", "-", "--bogus"], Some("")).status.code(), Some(2));
    assert_eq!(ruchan(&["analyze", "/nonexistent/ch.json"], None).status.code(), Some(2));
    assert_eq!(ruchan(&["gen", "--d", "2", "--k", "5"], None).status.code(), Some(2));
    let not_tp = r#"{"d_in":2,"d_out":2,"kraus":[[[[2,0],[0,0]],[[0,0],[1,0]]]]}"#;
    assert_eq!(ruchan(&["analyze", "-"], Some(not_tp)).status.code(), Some(3));
}

#[test]
fn same_seed_same_bytes() {
    let (channel, _) = generated(3, 4, 12);
    let a = ruchan(&["decompose", "-", "--seed", "5"], Some(&channel));
    let b = ruchan(&["decompose", "-", "--seed", "5"], Some(&channel));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(
        ruchan(&["gen", "--d", "3", "--k", "4", "--seed", "9"], None).stdout,
        ruchan(&["gen", "--d", "3", "--k", "4", "--seed", "9"], None).stdout
    );
}
