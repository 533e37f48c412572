use std::process::{Command, Output};

fn btpe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_btpe"))
        .args(args)
        .env_remove("BTPE_SEED")
        .env_remove("BTPE_TRIALS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn predict_table() {
    let out = btpe(&["predict"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,ev_min_p,ev_half");
    assert_eq!(lines.len(), 18);
    assert!(lines.contains(&"20,3.996,3.996"));
    assert!(lines.contains(&"128,3.790,2.985"));
    assert!(lines.contains(&"8192,3.799,2.300"));
}

#[test]
fn predict_rejects_inapplicable_n() {
    let out = btpe(&["predict", "--n-min", "16", "--n-max", "64"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(btpe(&["validate", "--bogus"]).status.code(), Some(1));
    assert_eq!(btpe(&["validate", "--n-min", "100"]).status.code(), Some(1));
    assert_eq!(btpe(&["validate", "--seed", "0xZZ"]).status.code(), Some(1));
    assert_eq!(btpe(&["validate", "--trials", "1"]).status.code(), Some(1));
    assert_eq!(btpe(&[]).status.code(), Some(1));
    assert_eq!(btpe(&["--help"]).status.code(), Some(0));
}

#[test]
fn validate_is_reproducible() {
    let args = [
        "validate", "--trials", "300", "--n-max", "256", "--seed", "0x2A",
    ];
    let a = btpe(&args);
    let b = btpe(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("n,p,predicted_ev,mean,ci_half_width,t_p_value,trials,seed")
    );
    assert_eq!(lines.count(), 8);

    // decimal and hex seeds are the same seed
    let c = btpe(&[
        "validate", "--trials", "300", "--n-max", "256", "--seed", "42",
    ]);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn cells_do_not_depend_on_run_composition() {
    let both = stdout(&btpe(&["validate", "--trials", "200", "--n-max", "128"]));
    let half = stdout(&btpe(&[
        "validate", "--trials", "200", "--n-min", "64", "--n-max", "128", "--p-mode", "half",
    ]));
    for line in half.lines().skip(1) {
        assert!(both.lines().any(|l| l == line), "{line}");
    }
}

#[test]
fn environment_variables_configure_runs() {
    let flags = btpe(&[
        "validate", "--trials", "100", "--n-max", "64", "--seed", "7",
    ]);
    let env = Command::new(env!("CARGO_BIN_EXE_btpe"))
        .arg("validate")
        .env("BTPE_TRIALS", "100")
        .env("BTPE_N_MAX", "64")
        .env("BTPE_SEED", "7")
        .output()
        .unwrap();
    assert!(env.status.success());
    assert_eq!(flags.stdout, env.stdout);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("limits.csv");
    let out = btpe(&["limits", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("quantity,value\n"));
    let value = |name: &str| -> f64 {
        text.lines()
            .find_map(|l| l.strip_prefix(&format!("{name},")))
            .unwrap()
            .parse()
            .unwrap()
    };
    assert!((value("min_p.result") - 3.801).abs() <= 0.01);
    assert!((value("half.result") - 2.319).abs() <= 0.01);
    assert!(value("delta.min_p") <= 0.01);
    assert!(value("delta.half") <= 0.01);
}

#[test]
fn gof_audit_passes() {
    let out = btpe(&["gof"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.starts_with("n,p,chi2_p_value,pass\n"));
    assert!(text.lines().any(|l| l == "10,0,1,true"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}
