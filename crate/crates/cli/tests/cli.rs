use std::process::{Command, Output};

fn suexp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_suexp"))
        .args(args)
        .env_remove("SUEXP_JOBS")
        .env_remove("SUEXP_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn help_exits_zero() {
    for args in [
        &["--help"][..],
        &["compute", "--help"],
        &["verify", "--help"],
        &["table", "--help"],
    ] {
        assert_eq!(suexp(args).status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn single_values() {
    let o = suexp(&["compute", "ord", "--p", "3", "--x", "54"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "3");

    let o = suexp(&["compute", "bound", "--p", "3", "--n", "27"]);
    assert!(
        stdout(&o).contains("new=30 old=30 restated=30"),
        "{}",
        stdout(&o)
    );

    let o = suexp(&["compute", "tau", "--p", "3", "--a", "1", "--b", "8"]);
    assert_eq!(stdout(&o).trim(), "2");
}

#[test]
fn certified_family_value() {
    let o = suexp(&[
        "compute", "ep", "--p", "3", "--n", "29", "--k", "2*3^L+28", "--L", "auto",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("32 (certified: stable-family"), "{out}");
}

#[test]
fn uncertified_value_exits_two() {
    let o = suexp(&[
        "compute",
        "ep",
        "--p",
        "3",
        "--n",
        "29",
        "--k",
        "9999999999999",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("uncertified: heuristic-window"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(suexp(&["verify", "no-such-check"]).status.code(), Some(64));
    assert_eq!(
        suexp(&["verify", "combthm", "--grid", "p=3;alpha=1;n=1..;r=0;l=0"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(
        suexp(&["verify", "combthm", "--grid", "p=3;n=1..4"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(
        suexp(&["compute", "ord", "--p", "4", "--x", "8"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(
        suexp(&["table", "one", "--format", "xml"]).status.code(),
        Some(64)
    );
}

#[test]
fn golden_mismatch_exits_one() {
    let o = suexp(&["table", "one", "--from", "19", "--to", "41", "--golden"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("n=28"), "{}", stderr(&o));

    assert_eq!(suexp(&["table", "two", "--golden"]).status.code(), Some(0));
    assert_eq!(
        suexp(&["table", "delta", "--golden"]).status.code(),
        Some(0)
    );
}

#[test]
fn table_formats() {
    let csv = stdout(&suexp(&[
        "table", "one", "--from", "19", "--to", "20", "--format", "csv",
    ]));
    assert_eq!(
        csv.lines().take(3).collect::<Vec<_>>(),
        ["n,stable,bound", "19,20,20", "20,21,21"]
    );

    let json = stdout(&suexp(&["table", "two", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["schema"], 1);

    let md = stdout(&suexp(&["table", "delta"]));
    assert!(md.starts_with('|') || md.starts_with('#'), "{md}");
}

#[test]
fn sweep_report_is_independent_of_jobs() {
    let grid = "p=2,3,5;alpha=1..2;n=2*p^alpha-1..60;r=0..n";
    let run = |jobs: &str| {
        stdout(&suexp(&[
            "verify", "conj52", "--grid", grid, "--jobs", jobs, "--format", "json",
        ]))
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    let v: serde_json::Value = serde_json::from_str(&one).unwrap();
    assert_eq!(v["check"], "conj52");
    assert!(v.get("wall_time").is_none());
    assert_eq!(v["equality"]["rate"], 1.0);
}

#[test]
fn skipped_instances_are_counted() {
    let o = suexp(&[
        "verify",
        "combthm",
        "--grid",
        "p=4;alpha=1;n=1..3;r=0;l=0",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        (v["checked"].as_u64(), v["skipped"].as_u64()),
        (Some(0), Some(3))
    );
}
