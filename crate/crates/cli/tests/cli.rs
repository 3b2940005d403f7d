use assert_cmd::Command;
use serde_json::Value;

fn micz(args: &[&str]) -> std::process::Output {
    Command::cargo_bin("micz").unwrap().args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = micz(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn same_seed_gives_identical_json() {
    let args = ["--n", "2", "--mu", "1/2", "--suites", "gauge,radial,reps", "--seed", "17", "--points", "5", "--format", "json"];
    let a = micz(&args);
    let b = micz(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn text_and_json_list_the_same_items() {
    let args = ["--n", "2", "--mu", "0", "--suites", "radial,reps", "--kmax", "2", "--lmax", "2", "--imax", "2"];
    let text = String::from_utf8(micz(&args).stdout).unwrap();
    let report = json(&args);
    let items = report["items"].as_array().unwrap();
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL") || l.starts_with("XFAIL")).collect();
    assert_eq!(lines.len(), items.len());
    for (line, item) in lines.iter().zip(items) {
        let mut words = line.split_whitespace();
        let (_, suite, id) = (words.next(), words.next().unwrap(), words.next().unwrap());
        assert_eq!(suite, item["suite"].as_str().unwrap());
        assert_eq!(id, item["id"].as_str().unwrap());
    }
    let pass = report["summary"]["pass"].as_u64().unwrap();
    assert!(text.contains(&format!("summary: {pass} pass, 0 fail, 0 expected-fail")));
}

#[test]
fn reports_the_fourteen_dimensional_level() {
    let report = json(&["--n", "2", "--mu", "0", "--suites", "reps", "--imax", "2"]);
    let item = report["items"].as_array().unwrap().iter().find(|i| i["id"] == "dim[I=2]").unwrap();
    assert_eq!(item["status"], "pass");
    assert!(item["witness"].as_str().unwrap().contains("= 14"));
    assert_eq!(report["config"]["mu"], "0");
    assert_eq!(report["config"]["suites"], serde_json::json!(["reps"]));
}

#[test]
fn falsifier_reports_expected_failures_and_exits_zero() {
    let report = json(&["--n", "2", "--mu", "1", "--points", "3", "--seed", "4"]);
    let items = report["items"].as_array().unwrap();
    assert!(items.iter().all(|i| i["suite"] == "gauge"));
    let xfail: Vec<_> = items.iter().filter(|i| i["status"] == "expected-fail").collect();
    assert_eq!(xfail.len(), 3);
    assert!(xfail.iter().all(|i| i["id"].as_str().unwrap().starts_with("field-contraction")));
    assert_eq!(report["summary"]["fail"], 0);
}

#[test]
fn configuration_errors_exit_two() {
    for args in [
        vec!["--n", "4"],
        vec!["--mu", "0.5"],
        vec!["--mu", "1", "--suites", "radial"],
        vec!["--mu", "1/2", "--suites", "full-scalar"],
        vec!["--suites", "nonsense"],
        vec!["--points", "0"],
    ] {
        let out = micz(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
}

#[test]
fn float_mode_defaults_to_two_hundred_points() {
    let report = json(&["--n", "2", "--mu", "0", "--suites", "gauge", "--mode", "float"]);
    assert_eq!(report["config"]["points"], 200);
    assert!(report["items"].as_array().unwrap().iter().all(|i| i["strategy"] == "float"));
}
