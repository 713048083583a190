use std::process::{Command, Output};

fn posmogram(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_posmogram"))
        .args(args)
        .env_remove("POSMOGRAM_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("lambda"))
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn density_csv_shape() {
    let o = posmogram(&["density", "--l", "0", "--m", "0", "--lo", "-8", "--hi", "8", "--n", "1601", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with('#') && lines[0].contains("hbar = r = 1"));
    assert_eq!(lines[1], "lambda,re_I,im_I,density");
    assert_eq!(lines[2], "# l=0 m=0 parity=+");
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 1601);
    assert_eq!(rows[800][0], 0.0);
    assert!((rows[800][3] - 1.0942198076132383).abs() < 1e-9);
}

#[test]
fn density_range_of_orders() {
    let o = posmogram(&["density", "--l", "5", "--m", "0..5", "--n", "241"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let blocks: Vec<&str> = text.lines().filter(|l| l.starts_with("# l=")).collect();
    assert_eq!(blocks.len(), 6);
    assert_eq!(blocks[5], "# l=5 m=5 parity=+");
    assert_eq!(blocks[4], "# l=5 m=4 parity=-");
}

#[test]
fn vanishing_sector_is_zero() {
    let o = posmogram(&["density", "--l", "1", "--m", "0", "--parity", "+", "--n", "101"]);
    assert!(o.status.success());
    assert!(data_rows(&stdout(&o)).iter().all(|r| r[3] == 0.0));
}

#[test]
fn density_json_mirrors_posmogram() {
    let o = posmogram(&["density", "--l", "2", "--m", "-1", "--n", "21", "--lo", "-2", "--hi", "2", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let p = &v["posmograms"][0];
    assert_eq!(p["mode"]["m"], -1);
    assert_eq!(p["parity"], "-");
    assert_eq!(p["grid"]["count"], 21);
    assert_eq!(p["density"].as_array().unwrap().len(), 21);
    assert_eq!(p["amplitudes"][0].as_array().unwrap().len(), 2);
    assert_eq!(p["config"]["panel_order"], 16);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |p: &std::path::Path| {
        vec!["density".to_string(), "--l".into(), "3".into(), "--m".into(), "1".into(), "--n".into(), "401".into(), "--output".into(), p.display().to_string()]
    };
    let run = |p: &std::path::Path, threads: &str| {
        let st = Command::new(env!("CARGO_BIN_EXE_posmogram"))
            .args(args(p))
            .env("POSMOGRAM_THREADS", threads)
            .status()
            .unwrap();
        assert!(st.success());
    };
    run(&a, "1");
    run(&b, "3");
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn exit_codes() {
    assert_eq!(posmogram(&["density", "--l", "1", "--m", "2"]).status.code(), Some(2));
    assert_eq!(posmogram(&["density", "--l", "1", "--m", "5..2"]).status.code(), Some(2));
    assert_eq!(posmogram(&["density", "--l", "0", "--lo", "3", "--hi", "1"]).status.code(), Some(2));
    assert_eq!(posmogram(&["density"]).status.code(), Some(2));
    let o = posmogram(&["density", "--l", "2", "--n", "3", "--rel-tol", "1e-300", "--abs-tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("tolerance"));
    let o = Command::new(env!("CARGO_BIN_EXE_posmogram"))
        .args(["density", "--l", "0"])
        .env("POSMOGRAM_THREADS", "none")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# test\nlo = -2\nhi = 2\nn = 11\nformat = json\n").unwrap();
    let c = cfg.display().to_string();
    let o = posmogram(&["density", "--l", "0", "--config", &c]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["posmograms"][0]["grid"]["count"], 11);
    let o = posmogram(&["density", "--l", "0", "--config", &c, "--n", "5", "--format", "csv"]);
    assert_eq!(data_rows(&stdout(&o)).len(), 5);
    std::fs::write(&cfg, "bogus = 1\n").unwrap();
    assert_eq!(posmogram(&["density", "--l", "0", "--config", &c]).status.code(), Some(1));
}

#[test]
fn validate_nodes_suite() {
    let o = posmogram(&["validate", "--suite", "nodes"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let counts: Vec<f64> = v["suites"][0]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["value"].as_f64().unwrap())
        .collect();
    assert_eq!(counts, vec![2.0, 2.0, 1.0, 1.0, 0.0, 0.0]);
}

#[test]
fn validate_closed_forms_suite() {
    let o = posmogram(&["validate", "--suite", "closed-forms", "--tol", "1e-7"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let checks = v["suites"][0]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 6);
    assert!(checks.iter().all(|c| c["pass"] == true));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2λ+3i"));
}

#[test]
fn validate_reports_failure_with_exit_one() {
    let o = posmogram(&["validate", "--suite", "sho"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], false);
}

#[test]
fn compare_sho_outputs() {
    let o = posmogram(&["compare-sho", "--l", "0", "--m", "0", "--n", "0", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["report"]["linf_diff"].as_f64().unwrap() > 0.0);
    assert_eq!(v["overlay"]["lambda"].as_array().unwrap().len(), 3001);

    let o = posmogram(&["compare-sho", "--l", "0", "--m", "0", "--n", "0", "--lo", "-6", "--hi", "6", "--points", "121"]);
    assert!(o.status.success());
    assert_eq!(data_rows(&stdout(&o)).len(), 121);
    let o = posmogram(&["compare-sho", "--l", "2", "--m", "3", "--n", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn compare_sho_csv_overlay() {
    let o = posmogram(&["compare-sho", "--l", "20", "--m", "0", "--n", "10"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "lambda,posmom_density,sho_density"));
    assert!(text.contains("sho_level=10"));
    assert_eq!(data_rows(&text).len(), 5001);
}

#[test]
fn expand_matches_density_for_ground_state() {
    let e = posmogram(&["expand", "--term", "0,0,1", "--lo", "-6", "--hi", "6", "--n", "121"]);
    let d = posmogram(&["density", "--l", "0", "--m", "0", "--lo", "-6", "--hi", "6", "--n", "121"]);
    assert!(e.status.success() && d.status.success());
    let er = data_rows(&stdout(&e));
    let dr = data_rows(&stdout(&d));
    assert_eq!(er.len(), dr.len());
    for (a, b) in er.iter().zip(&dr) {
        for k in 0..4 {
            assert!((a[k] - b[k]).abs() < 1e-12);
        }
    }
}

#[test]
fn expand_parseval_summary() {
    let s = "0.70710678118654752";
    let o = posmogram(&["expand", "--term", &format!("0,0,{s}"), "--term", &format!("1,0,{s}")]);
    assert!(o.status.success());
    let text = stdout(&o);
    let line = text.lines().find(|l| l.starts_with("# parseval=")).unwrap();
    let v: f64 = line.trim_start_matches("# parseval=").parse().unwrap();
    assert!((v - 1.0).abs() < 1e-4);
    assert!(text.contains("# m=0 parity=+") && text.contains("# m=0 parity=-"));
}

#[test]
fn expand_rejects_bad_states() {
    assert_eq!(posmogram(&["expand"]).status.code(), Some(2));
    assert_eq!(posmogram(&["expand", "--term", "0,0,2"]).status.code(), Some(2));
    assert_eq!(posmogram(&["expand", "--term", "1,3,1"]).status.code(), Some(2));
    assert_eq!(posmogram(&["expand", "--term", "1,0"]).status.code(), Some(2));
    let o = posmogram(&["expand", "--term", "0,0,2", "--allow-unnormalized", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["parseval"].as_f64().unwrap() - 4.0).abs() < 1e-3);
}
