use std::process::{Command, Output};

use logdiv::{Polynomial, WeylOperator};
use serde_json::Value;

fn logdiv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logdiv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = logdiv(&all);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn criterion_certificate() {
    for f in ["x^3+y^3+z^3", "x^2+y^2+z^2", "x^5+y^3+z^2"] {
        let v = json(&["criterion", f, "--dimZ", "0"]);
        assert_eq!(v["schema"], "logdiv/1");
        assert_eq!(v["verdict"], "certified");
        assert_eq!(v["certified"], true);
        assert_eq!(v["split"], true);
        assert_eq!(v["resolution_shape"], "ok");
        assert_eq!(v["grade"], 3);
        assert_eq!(v["required"], 3);
        assert!(v["euler"].is_string());
        assert!(v["torsion_witnesses"].as_array().unwrap().is_empty());
    }
    let v = json(&["criterion", "x^2+y^2+z^2+w^2"]);
    assert_eq!(v["verdict"], "inconclusive");
    assert!(!v["torsion_witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn identical_runs_print_identical_bytes() {
    for args in [
        vec!["criterion", "x*y*z*(x+y+z)", "--json"],
        vec![
            "v0-basis",
            "x*y*(x+y)",
            "-d",
            "2",
            "-w",
            "1",
            "--compare",
            "--json",
        ],
        vec!["symalg", "x^2+y^2+z^2+w^2", "--json"],
        vec!["selftest", "--json"],
    ] {
        let a = logdiv(&args);
        let b = logdiv(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!String::from_utf8_lossy(&a.stdout).contains("time"));
    }
}

#[test]
fn printed_objects_reparse() {
    let v = json(&["logder", "x*y*z*(x+y+z)", "--minimal"]);
    let gens = v["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 4);
    for g in gens {
        let s = g.as_str().unwrap();
        let op = WeylOperator::parse_in(s, 3).unwrap();
        assert_eq!(op.to_string(), s);
    }
    let f = v["f"].as_str().unwrap();
    assert_eq!(
        Polynomial::parse_in(f, 3).unwrap(),
        Polynomial::parse("x*y*z*(x+y+z)").unwrap()
    );
    let v = json(&["v0-basis", "x*y", "-d", "2", "-w", "0"]);
    for b in v["basis"].as_array().unwrap() {
        let s = b.as_str().unwrap();
        assert_eq!(WeylOperator::parse_in(s, 2).unwrap().to_string(), s);
        let m = json(&["v0-member", "-f", "x*y", "-P", s]);
        assert_eq!(m["member"], true);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(logdiv(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(logdiv(&["criterion"]).status.code(), Some(2));
    let bad = logdiv(&["logder", "x+*y"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("column"));
    assert_eq!(
        logdiv(&["v0-basis", "x^4+y^5+x^2*y^3", "-d", "1"]).status.code(),
        Some(3)
    );
    assert_eq!(logdiv(&["logder", "3"]).status.code(), Some(3));
    assert_eq!(logdiv(&["arrangement", "dn", "--n", "7"]).status.code(), Some(2));
}

#[test]
fn config_file_and_precedence() {
    let dir = std::env::temp_dir().join(format!("logdiv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.conf");
    std::fs::write(&cfg, "# defaults\njson = true\ndimZ = 1\n").unwrap();
    let c = cfg.to_str().unwrap();
    // config turns on JSON and raises dim Z
    let out = logdiv(&["criterion", "x*y*z*(x+y+z)", "--config", c]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dimZ"], 1);
    assert_eq!(v["required"], 4);
    // the flag wins over the file
    let v = json(&["criterion", "x*y*z*(x+y+z)", "--config", c, "--dimZ", "0"]);
    assert_eq!(v["dimZ"], 0);
    assert_eq!(v["verdict"], "certified");
    std::fs::write(&cfg, "colour = red\n").unwrap();
    assert_eq!(logdiv(&["euler", "x*y", "--config", c]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn arrangement_checks() {
    for n in ["3", "4", "5"] {
        for check in ["lemma19", "prop17"] {
            let v = json(&["arrangement", "dn", "--n", n, "--check", check]);
            assert_eq!(v["holds"], true, "n={n} {check}");
        }
    }
    let v = json(&["arrangement", "dn", "--n", "4"]);
    assert_eq!(v["eta"].as_array().unwrap().len(), 6);
    assert_eq!(v["sigma"].as_array().unwrap().len(), 4);
    let v = json(&["arrangement", "example9"]);
    assert_eq!(v["order"], 2);
    assert_eq!(v["weight"], 3);
}

#[test]
fn selftest_report_and_fault_injection() {
    let out = logdiv(&["selftest"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains(" s "), "runtimes are reported");
    let v = json_any(&["selftest", "--json"]);
    let cases = v["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 10);
    let passed = |v: &Value, name: &str| {
        v["cases"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["name"] == name)
            .unwrap()["passed"]
            == true
    };
    assert!(passed(&v, "dn-standard-basis"));
    // the exit status follows the report
    assert_eq!(out.status.code(), Some(if v["passed"] == true { 0 } else { 1 }));
    let f = json_any(&["selftest", "--inject-fault", "eta-sign", "--json"]);
    assert!(!passed(&f, "dn-standard-basis"));
    assert!(f["failed"]
        .as_array()
        .unwrap()
        .iter()
        .any(|n| n == "dn-standard-basis"));
}

fn json_any(args: &[&str]) -> Value {
    serde_json::from_slice(&logdiv(args).stdout).expect("valid json")
}

#[test]
fn weight_scan_stops_at_the_first_gap() {
    let f = "x*y*z*(x+y+z)*(x+2*y+3*z)";
    let v = json(&["v0-basis", f, "-d", "2", "--compare", "--weights", "2:3"]);
    assert_eq!(v["verdict"], "refuted-with-witness");
    assert_eq!(v["witness_weight"], 3);
    assert_eq!(v["scan"].as_array().unwrap().len(), 2);
    let witness = v["witness"].as_str().unwrap();
    let m = json(&["v0-member", "-f", f, "-P", witness, "-k", "0", "--mode", "global"]);
    assert_eq!(m["member"], true);

    let v = json(&["v0-basis", "x*y*(x+y)", "-d", "1", "--compare"]);
    assert_eq!(v["verdict"], "inconclusive");
    assert_eq!(v["weight_range"], serde_json::json!([-1, 2]));
    assert_eq!(v["scan"].as_array().unwrap().len(), 4);

    assert_eq!(
        logdiv(&["v0-basis", "x*y", "--compare", "--weights", "3:1"])
            .status
            .code(),
        Some(2)
    );
}
