use std::process::{Command, Output};

fn avcodes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_avcodes")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = avcodes(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&["radius", "--shape", "128,64", "--family", "weighted:1,2:3", "--r", "2", "--method", "recursive"]), "5129\n");
    assert_eq!(stdout(&["bound", "--method", "recursive", "--i", "3,1", "--shape", "2,2", "--r", "2"]), "3\n");
    assert_eq!(stdout(&["table", "--which", "max", "--m", "2", "--q", "2", "--r", "2"]), "0.250\n");
    assert_eq!(stdout(&["radius", "--shape", "80,80", "--family", "total:20", "--r", "2", "--method", "sz"]), "999\n");
}

#[test]
fn exit_codes() {
    assert_eq!(avcodes(&["radius", "--shape", "128,64"]).status.code(), Some(2));
    assert_eq!(avcodes(&["bound", "--i", "1,1", "--shape", "0,2"]).status.code(), Some(2));
    let out = avcodes(&["radius", "--shape", "128,64", "--family", "box:21,41:2,1", "--r", "2", "--method", "sz"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NoCorrection"));
}

#[test]
fn json_and_csv_output() {
    let out = stdout(&["--format", "json", "radius", "--shape", "16,8", "--family", "weighted:1,2:1", "--r", "2"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["cmd"], "radius");
    assert_eq!(v["result"]["radius"], 69);
    let csv = stdout(&["--format", "csv", "radius", "--shape", "16,8", "--family", "weighted:1,2:1", "--r", "1,2", "--method", "recursive,sz"]);
    assert_eq!(csv.lines().next(), Some("r,method,radius"));
    assert_eq!(csv.lines().count(), 5);
}

#[test]
fn simulate_output_is_byte_identical() {
    let args = ["simulate", "--field", "4,1", "--m", "2", "--family", "total:1", "--r", "2", "--trials", "10", "--seed", "3"];
    let out = avcodes(&args);
    assert_eq!(out.status.code(), Some(1), "4 is not prime");
    let args = ["--format", "json", "simulate", "--field", "2,2", "--m", "2", "--family", "total:1", "--r", "2", "--trials", "10", "--seed", "3"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["result"]["successes"], 10);
}

#[test]
fn plan_file_feeds_decode() {
    let dir = std::env::temp_dir().join(format!("avcodes-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let plan = dir.join("plan.json");
    let words = dir.join("words.txt");
    stdout(&["plan", "--shape", "5,5", "--family", "total:1", "--r", "2", "--out", plan.to_str().unwrap()]);
    // constant word 2 with two corrupted positions, and X1 evaluated on the grid
    let mut w1 = vec![2u32; 25];
    w1[3] = 0;
    w1[17] = 4;
    let w2: Vec<u32> = (0..25).map(|j| j / 5).collect();
    let text = format!("{}\n{}\n", serde_json::to_string(&w1).unwrap(), serde_json::to_string(&w2).unwrap());
    std::fs::write(&words, text).unwrap();
    let out = stdout(&[
        "--format", "json", "decode", "--field", "5,1", "--m", "2", "--family", "total:1",
        "--plan", &format!("@{}", plan.display()), "--received", &format!("@{}", words.display()),
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let results = v["result"].as_array().unwrap();
    assert_eq!(results.len(), 2);
    assert!(results[0]["candidates"].as_array().unwrap().iter().any(|c| c["codeword"] == serde_json::json!(vec![2; 25]) && c["distance"] == 2));
    assert!(results[1]["candidates"].as_array().unwrap().iter().any(|c| c["codeword"] == serde_json::json!(w2) && c["distance"] == 0));
    std::fs::remove_dir_all(&dir).unwrap();
}
