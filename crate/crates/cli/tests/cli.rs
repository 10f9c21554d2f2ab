use std::collections::HashMap;
use std::process::{Command, Output};

fn octabound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_octabound"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn records(text: &str) -> Vec<HashMap<String, String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            l.split(' ')
                .map(|kv| {
                    let (k, v) = kv.split_once('=').expect("key=value");
                    (k.to_string(), v.to_string())
                })
                .collect()
        })
        .collect()
}

fn num(r: &HashMap<String, String>, key: &str) -> f64 {
    r[key].parse().unwrap_or_else(|_| panic!("{key}={} is not a number", r[key]))
}

#[test]
fn table_reproduces_all_rows() {
    let o = octabound(&["table", "--format", "records"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = records(&stdout(&o));
    assert_eq!(rows.len(), 11);
    for r in &rows {
        for key in ["model", "variant", "resource", "strength", "residual", "paper_value", "abs_diff"] {
            assert!(r.contains_key(key), "missing {key}");
        }
        assert_eq!(r["status"], "pass");
        assert!(num(r, "abs_diff") <= num(r, "tolerance"));
    }
    let find = |model: &str, resource: &str| {
        rows.iter()
            .find(|r| r["model"] == model && r["resource"] == resource)
            .unwrap_or_else(|| panic!("no row {model} {resource}"))
    };
    assert_eq!(find("knill", "phase-states")["published"], "13.71%");
    assert!((num(find("depolarizing-two-hit", "all-gates"), "strength") - 0.2605).abs() <= 2e-4);
    assert!((num(find("dephasing-two-hit", "phase-gates/states"), "strength") - 0.0796).abs() <= 1e-4);
}

#[test]
fn threshold_examples() {
    let cases: [(&[&str], f64, f64); 3] = [
        (&["--model", "knill", "--variant", "state", "--resource", "phase:0.7853981634"], 0.136861, 1e-5),
        (&["--model", "decoding-poly"], 0.092888, 1e-5),
        (&["--model", "epg-general-phase"], 0.1041008383, 1e-9),
    ];
    for (args, want, tol) in cases {
        let mut full = vec!["threshold", "--format", "records"];
        full.extend_from_slice(args);
        let o = octabound(&full);
        assert_eq!(o.status.code(), Some(0));
        let r = &records(&stdout(&o))[0];
        assert!((num(r, "strength") - want).abs() <= tol, "{args:?}: {}", r["strength"]);
        assert_eq!(r["status"], "pass");
        assert!(r.contains_key("identity"));
    }
}

#[test]
fn threshold_accepts_pi_fractions() {
    let a = stdout(&octabound(&["threshold", "--model", "epg", "--variant", "gate", "--resource", "phase:pi/4"]));
    let b = stdout(&octabound(&["threshold", "--model", "epg", "--variant", "gate", "--resource", "phase:0.78539816339744830962"]));
    assert_eq!(a, b);
    assert!(a.contains("0.0300338904"));
}

#[test]
fn stabilizer_resource_is_flagged() {
    let o = octabound(&["threshold", "--model", "knill", "--resource", "general:0,0,1", "--format", "records"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &records(&stdout(&o))[0];
    assert_eq!(r["already_inside"], "true");
    assert_eq!(num(r, "strength"), 0.0);
    assert_eq!(r["paper_value"], "none");
}

#[test]
fn verify_levels() {
    let rules = octabound(&["verify", "--level", "rules", "--format", "records"]);
    assert_eq!(rules.status.code(), Some(0));
    let text = stdout(&rules);
    assert!(text.starts_with("# verify: 18/18 checks pass"));
    assert_eq!(records(&text).len(), 18);

    let maps = octabound(&["verify", "--level", "maps", "--format", "records"]);
    let rows = records(&stdout(&maps));
    assert_eq!(rows.len(), 20);
    assert!(rows.iter().all(|r| num(r, "residual") <= 1e-10));

    assert_eq!(octabound(&["verify"]).status.code(), Some(0));
}

#[test]
fn scan_examples() {
    let o = octabound(&["scan", "--model", "knill", "--variant", "state", "--kind", "phase", "--format", "records"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &records(&stdout(&o))[0];
    assert!((num(r, "strength") - 0.1371).abs() <= 2e-4);
    let theta: f64 = r["params"].parse().unwrap();
    assert!((theta - std::f64::consts::FRAC_PI_4).abs() < 0.1, "theta* = {theta}");

    let o = octabound(&["scan", "--model", "epg", "--variant", "gate", "--kind", "phase", "--format", "records"]);
    assert!((num(&records(&stdout(&o))[0], "strength") - 0.0301).abs() <= 2e-4);

    let o = octabound(&["scan", "--model", "knill", "--variant", "state", "--kind", "general", "--format", "records"]);
    let r = &records(&stdout(&o))[0];
    assert!((num(r, "strength") - 0.2178).abs() <= 2e-4);
    let b: Vec<f64> = r["resource"].split(',').map(|v| v.parse().unwrap()).collect();
    let cos = (b[0] + b[1] + b[2]) / 3f64.sqrt();
    assert!(cos.acos().to_degrees() < 5.0);
}

#[test]
fn scan_csv_profile_is_written_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    for name in ["a.csv", "b.csv"] {
        let o = octabound(&["scan", "--model", "epg", "--variant", "state", "--format", "csv", "--out", &path(name)]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
    let a = std::fs::read_to_string(path("a.csv")).unwrap();
    assert_eq!(a, std::fs::read_to_string(path("b.csv")).unwrap());
    let mut lines = a.lines();
    let meta = lines.next().unwrap();
    for key in ["model=epg", "variant=state", "grid=512", "version="] {
        assert!(meta.starts_with('#') && meta.contains(key), "{meta}");
    }
    assert!(lines.next().unwrap().starts_with('#'));
    assert_eq!(lines.next().unwrap(), "theta,x,y,z,threshold");
    assert_eq!(lines.count(), 512);
}

#[test]
fn table_output_is_deterministic() {
    let a = octabound(&["table", "--format", "csv"]);
    let b = octabound(&["table", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn invalid_configuration_exits_2() {
    let bad: [&[&str]; 6] = [
        &["threshold", "--model", "bogus"],
        &["threshold", "--model", "knill", "--resource", "general:0,0,0"],
        &["threshold", "--model", "knill", "--resource", "phase:pi/x"],
        &["threshold", "--model", "decoding-poly", "--variant", "gate"],
        &["scan", "--model", "knill", "--level", "rules"],
        &["table", "--out", "/nonexistent-dir/table.txt"],
    ];
    for args in bad {
        let o = octabound(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}
