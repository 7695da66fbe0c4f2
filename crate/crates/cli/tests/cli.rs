use std::process::{Command, Output};

fn skein(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skein")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn homfly_of_the_unknot() {
    let o = skein(&["homfly", "n=1; w="]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next().unwrap(), "○ = (a - a^(-1))/(q^(1/2) - q^(-1/2))");
    let o = skein(&["homfly", "n=1; w=", "--ascii"]);
    assert!(stdout(&o).starts_with("O = "));
}

#[test]
fn homfly_of_the_unlink() {
    let o = skein(&["homfly", "n=2; w=1,-1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("○^2 = "), "{}", stdout(&o));
}

#[test]
fn homfly_json_output() {
    let o = skein(&["homfly", r#"{"strands":2,"word":[1,1]}"#, "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["normalization"], "framed");
    assert_eq!(v["framing_monomial"], "a^2");
    let hopf = "(a^2*q - a^2 + a^2*q^(-1) - q - q^(-1) + a^(-2))/(q - 2 + q^(-1))";
    assert_eq!(v["value"], hopf);

    let o = skein(&["homfly", "n=2; w=1", "--normalization", "unframed", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["value"], "(a - a^(-1))/(q^(1/2) - q^(-1/2))");
    assert_eq!(v["normalization"], "unframed");
}

#[test]
fn colored_values_and_scope() {
    let o = skein(&["colored", "n=1; w=", "[1]"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next().unwrap(), "(a - a^(-1))/(q^(1/2) - q^(-1/2))");
    let o = skein(&["colored", "n=1; w=", "[2]", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines[0], "value,framing_monomial,normalization");
    assert!(lines[1].contains("a^2*q^(1/2)"));
    let o = skein(&["colored", "n=1; w=", "[3]"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("sizes 1 and 2"));
}

#[test]
fn usage_errors() {
    let o = skein(&["homfly", "n=2; w=1,x"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 9"));
    assert_eq!(code(&skein(&["homfly", "n=2; w=3"])), 2);
    assert_eq!(code(&skein(&["colored", "n=1; w=", "[1,2]"])), 2);
    assert_eq!(code(&skein(&["ov", "nothing"])), 2);
    assert_eq!(code(&skein(&["ov", "psi", "--format", "yaml"])), 2);
    assert_eq!(code(&skein(&["ov", "partition-function", "--link", "trefoil"])), 2);
}

#[test]
fn psi_rendering() {
    let o = skein(&["ov", "psi", "--degree", "1"]);
    assert_eq!(stdout(&o).trim(), "W_∅⊗W_∅ + γ·W_(1)⊗W_(1)");
    let o = skein(&["ov", "psi", "--degree", "1", "--ascii"]);
    assert_eq!(stdout(&o).trim(), "W[] (x) W[] + gamma*W[1] (x) W[1]");
    let o = skein(&["ov", "psi", "--degree", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
}

#[test]
fn kernel_listing() {
    let o = skein(&["ov", "kernel", "--degree", "2"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines[0], "kernel at bidegree (2, 2): dimension 2");
    assert_eq!(&lines[1..], ["W_(2)⊗W_(2)", "W_(1,1)⊗W_(1,1)"]);
}

#[test]
fn partition_function_json() {
    let o = skein(&["ov", "partition-function", "--link", "hopf", "--degree", "2"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["link"], "hopf");
    assert_eq!(v["truncation"], 2);
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 4);
    let o = skein(&["ov", "partition-function", "--link", "hopf"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn verify_reports_json_lines() {
    let o = skein(&["ov", "verify", "--degree", "4"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<serde_json::Value> =
        stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 10);
    assert!(lines.iter().all(|r| r["status"] == "pass"));
    assert!(lines.iter().all(|r| r.get("runtime_ms").is_none()));
    let timed = skein(&["ov", "verify", "--degree", "1", "--timings"]);
    assert!(stdout(&timed).contains("runtime_ms"));
}

#[test]
fn verify_is_bit_identical() {
    let a = skein(&["ov", "verify", "--degree", "3", "--seed", "11"]);
    let b = skein(&["ov", "verify", "--degree", "3", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("\"seed\":11"));
}

#[test]
fn verify_failures_and_scope() {
    let o = skein(&["ov", "verify", "--degree", "2", "--fixture", "flip-content-sign"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("\"status\":\"fail\""));
    assert_eq!(code(&skein(&["ov", "verify", "--degree", "7"])), 3);
}
