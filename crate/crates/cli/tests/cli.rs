use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adele-lab")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gcd_scan_refutes_cubic_against_q_at_seven() {
    let o = run(&["gcd-equiv", "cubic2", "Q", "--bound", "100", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "Refuted");
    assert_eq!(v["site"]["prime"], 7);
}

#[test]
fn isobound_json_is_exact() {
    let o = run(&["genus", "isobound", "9", "--json"]);
    assert_eq!(stdout(&o).trim(), r#"{"alpha":2,"bound":4}"#);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["split", "Q"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_with_one_and_name_the_error() {
    let o = run(&["split", "cubic2", "9"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error[CompositeModulus]"));
    let o = run(&["brauer", "degree", "{not json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error[InvalidInput]"));
}

#[test]
fn class_documents_survive_a_round_trip() {
    let doc = r#"{"field":"Q","inv":[{"place":{"p":2,"slot":0},"num":1,"den":3},{"place":{"p":7,"slot":0},"num":2,"den":3}]}"#;
    let once = stdout(&run(&["brauer", "inverse", doc, "--json"]));
    let twice = stdout(&run(&["brauer", "inverse", once.trim(), "--json"]));
    assert_eq!(twice.trim(), doc);
    let o = run(&["brauer", "validate", doc, "--json"]);
    assert_eq!(stdout(&o).trim(), r#"{"valid":true,"violations":[]}"#);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["match", "dsp799", "dsp12784", "--bound", "300", "--json"];
    let a = Command::new(env!("CARGO_BIN_EXE_adele-lab")).args(args).env("ADELE_LAB_THREADS", "1").output().unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_adele-lab")).args(args).env("ADELE_LAB_THREADS", "4").output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn tree_vertices_accept_the_short_form() {
    let o = run(&["tree", "dist", "2,0,0,0", "2,0,3,5", "--json"]);
    assert_eq!(stdout(&o).trim(), r#"{"distance":3}"#);
    let o = run(&["tree", "neighbors", "3,0,0,0", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
}

#[test]
fn workspace_stores_fields_and_matchings() {
    let path = std::env::temp_dir().join(format!("adele-lab-ws-{}.json", std::process::id()));
    let ws = path.to_str().unwrap();
    let _ = std::fs::remove_file(&path);
    let field = r#"{"label":"quad5","minpoly":["-5","0","1"],"field_discriminant":"5"}"#;
    assert!(run(&["field", "add", field, "--workspace", ws]).status.success());
    let o = run(&["field", "show", "quad5", "--workspace", ws, "--json"]);
    assert_eq!(stdout(&o).trim(), field);
    assert!(run(&["match", "quad5", "quad5", "--bound", "50", "--save", "--workspace", ws]).status.success());
    let saved: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(saved["matchings"]["quad5->quad5"]["verified_bound"], 50);
    assert_eq!(run(&["field", "add", field]).status.code(), Some(1));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn covolume_ratio_is_two() {
    let get = |ext: &str| {
        let o = run(&["volume", "cf", "--zeta-field", "Q", "--disc", "1", "--ext", ext, "--json", "--prime-bound", "200"]);
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        v["value"].as_str().unwrap().parse::<f64>().unwrap()
    };
    let (a, b) = (get("64"), get("128"));
    assert!(a > 0.0 && (a / b - 2.0).abs() < 1e-12, "{a} {b}");
}
