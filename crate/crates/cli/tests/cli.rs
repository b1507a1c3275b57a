//! End-to-end checks of the command-line interface: exit codes, exact CSV
//! bytes for hand-derivable tables, output routing, and format switches.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_primelab"))
        .args(args)
        .output()
        .expect("failed to spawn the CLI binary")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("stdout must be UTF-8")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("stderr must be UTF-8")
}

// ---------------------------------------------------------------------------
// Exit codes
// ---------------------------------------------------------------------------

#[test]
fn passing_verdicts_exit_zero() {
    let o = run(&["verify", "pnt", "--limit", "100000"]);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", stderr(&o));
    assert!(stderr(&o).contains("PASS"));
}

#[test]
fn failing_verdicts_exit_one_with_a_full_table() {
    // The Mertens trend honestly fails with only three decades.
    let o = run(&["verify", "lemma6", "--limit", "100000"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("FAIL"));
    let out = stdout(&o);
    assert!(out.starts_with("x,raw,normalized,predicted,deviation\n"));
    assert_eq!(out.lines().count(), 4, "header plus three checkpoint rows");
}

#[test]
fn advisory_verdicts_exit_zero() {
    let o = run(&[
        "verify",
        "thm10",
        "--modulus",
        "4",
        "--residue",
        "1",
        "--limit",
        "100000",
        "--terms",
        "1000000",
    ]);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", stderr(&o));
    assert!(stderr(&o).contains("ADVISORY"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["verify", "pnt", "--limit", "100"], // below the experiment floor
        vec!["psi", "--limit", "100", "--residue", "1"], // residue without modulus
        vec!["psi", "--limit", "100", "--modulus", "3", "--residue", "5"], // residue >= modulus
        vec!["mertens", "--limit", "100", "--tolerance", "-1"], // nonpositive tolerance
        vec!["psi", "--limit", "0"],             // empty range
        vec!["zeta", "--s", "1"],                // evaluation at the pole
        vec!["zeta", "--s", "0.3"],              // left of the convergence region
        vec!["zeta"],                            // missing --s
        vec!["stieltjes", "--limit", "9"],       // unsupported order
        vec![
            "verify",
            "dirichlet",
            "--modulus",
            "4",
            "--residue",
            "2",
            "--limit",
            "10000",
        ],
        vec!["sieve", "--limit", "200000000"], // over the guard without --allow-large
        vec!["frobnicate"],                    // unknown subcommand
        vec!["pi", "--limit", "100", "--frobnicate"], // unknown flag
        vec!["mertens", "--limit", "1000", "--checkpoints", "geometric:1"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "args {args:?}: {}", stderr(&o));
    }
}

#[test]
fn io_errors_exit_three() {
    let o = run(&[
        "mertens",
        "--limit",
        "1000",
        "--output",
        "/nonexistent-dir-for-cli-test/out.csv",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!stderr(&o).is_empty());
}

#[test]
fn help_exits_zero() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for sub in [
        "sieve",
        "psi",
        "pi",
        "mertens",
        "zeta",
        "stieltjes",
        "verify",
    ] {
        assert!(text.contains(sub), "help must mention {sub}");
    }
}

// ---------------------------------------------------------------------------
// Exact CSV bytes
// ---------------------------------------------------------------------------

#[test]
fn mertens_table_bytes_are_exact() {
    let o = run(&["mertens", "--limit", "1000", "--checkpoints", "10,100,1000"]);
    assert_eq!(o.status.code(), Some(0));
    let want = "x,raw,normalized,predicted,deviation\n\
                10,-1.000000000e0,-1.000000000e-1,0.000000000e0,-1.000000000e-1\n\
                100,1.000000000e0,1.000000000e-2,0.000000000e0,1.000000000e-2\n\
                1000,2.000000000e0,2.000000000e-3,0.000000000e0,2.000000000e-3\n";
    assert_eq!(stdout(&o), want);
}

#[test]
fn zeta_point_evaluation_bytes_are_exact() {
    let o = run(&["zeta", "--s", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let want = "x,raw,normalized,predicted,deviation\n\
                10000,1.644934067e0,0.000000000e0,,\n";
    assert_eq!(stdout(&o), want);
}

#[test]
fn tsv_format_switches_the_delimiter() {
    let o = run(&[
        "mertens",
        "--limit",
        "100",
        "--checkpoints",
        "10,100",
        "--format",
        "tsv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("x\traw\tnormalized\tpredicted\tdeviation\n"));
    assert!(out.contains("\t-1.000000000e0\t"));
    assert!(!out.contains(','));
}

// ---------------------------------------------------------------------------
// Table semantics
// ---------------------------------------------------------------------------

#[test]
fn pi_table_reports_the_exact_final_count() {
    let o = run(&["pi", "--limit", "1000000"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let last = out.lines().last().unwrap();
    let fields: Vec<&str> = last.split(',').collect();
    assert_eq!(fields[0], "1000000");
    assert_eq!(fields[1].parse::<f64>().unwrap(), 78_498.0);
}

#[test]
fn psi_progression_mode_predicts_the_reciprocal_totient() {
    let o = run(&[
        "psi",
        "--limit",
        "100",
        "--modulus",
        "3",
        "--residue",
        "1",
        "--checkpoints",
        "10,100",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    for row in &rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[3], "5.000000000e-1", "predicted limit is 1/phi(3)");
    }
    // psi(10;3,1) = log 2 + log 7.
    let first: Vec<&str> = rows[0].split(',').collect();
    let want = 2f64.ln() + 7f64.ln();
    assert!((first[1].parse::<f64>().unwrap() - want).abs() < 1e-8);
}

#[test]
fn sieve_table_tracks_the_squarefree_density() {
    let o = run(&["sieve", "--limit", "100000"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let last: Vec<&str> = out.lines().last().unwrap().split(',').collect();
    // 6/pi^2 = 0.6079271...; the density at 1e5 is within 1e-3 of it.
    let normalized: f64 = last[2].parse().unwrap();
    assert!((normalized - 0.607_927).abs() < 1e-3);
    let predicted: f64 = last[3].parse().unwrap();
    assert!((predicted - 0.607_927_101_854_026_6).abs() < 1e-9);
}

#[test]
fn stieltjes_table_lists_the_constants_by_order() {
    let o = run(&["stieltjes", "--limit", "2", "--terms", "1000000"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    let frozen = [
        0.577_215_664_901_532_9,
        -0.072_815_845_483_676_73,
        -0.009_690_363_192_872_32,
    ];
    for (k, row) in rows.iter().enumerate() {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[0], k.to_string());
        let raw: f64 = fields[1].parse().unwrap();
        assert!((raw - frozen[k]).abs() < 1e-8, "gamma_{k} = {raw}");
        assert_eq!(fields[3], "", "no predicted column for constants");
        assert_eq!(fields[4], "", "no deviation column for constants");
    }
}

#[test]
fn zeta_near_the_pole_routes_through_the_laurent_expansion() {
    let o = run(&["zeta", "--s", "1.2"]);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", stderr(&o));
    let row = stdout(&o).lines().nth(1).unwrap().to_string();
    let raw: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
    assert!((raw - 5.591_582_44).abs() < 1e-4, "zeta(1.2) = {raw}");
}

#[test]
fn complex_zeta_evaluation_carries_both_components() {
    let o = run(&["zeta", "--s", "2,3", "--terms", "10000"]);
    assert_eq!(o.status.code(), Some(0));
    let row = stdout(&o).lines().nth(1).unwrap().to_string();
    let fields: Vec<String> = row.split(',').map(str::to_string).collect();
    let re: f64 = fields[1].parse().unwrap();
    let im: f64 = fields[2].parse().unwrap();
    // zeta(2+3i) lies in the right half-plane with a small negative
    // imaginary part; sanity-box the components.
    assert!(re > 0.7 && re < 1.1, "re = {re}");
    assert!(im < 0.0 && im > -0.3, "im = {im}");
}

// ---------------------------------------------------------------------------
// Output routing
// ---------------------------------------------------------------------------

#[test]
fn output_flag_writes_the_table_to_a_file() {
    let path = std::env::temp_dir().join(format!("primelab-cli-test-{}.csv", std::process::id()));
    let o = run(&[
        "mertens",
        "--limit",
        "1000",
        "--checkpoints",
        "10,100,1000",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty(), "table goes to the file, not stdout");
    let contents = std::fs::read_to_string(&path).unwrap();
    assert!(contents.starts_with("x,raw,normalized,predicted,deviation\n"));
    assert_eq!(contents.lines().count(), 4);
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_summary_goes_to_stderr_not_stdout() {
    let o = run(&["verify", "psi-mean", "--limit", "100000"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("x,raw,normalized,predicted,deviation\n"));
    assert!(!out.contains("PASS"));
    let err = stderr(&o);
    assert!(err.contains("psi_mean") || err.contains("psi-mean"));
    assert!(err.contains("PASS"));
}

#[test]
fn remaining_experiments_run_clean_at_small_scale() {
    for args in [
        vec!["verify", "lemma5", "--limit", "100000"],
        vec!["verify", "axer", "--limit", "100000"],
        vec!["verify", "thm9", "--limit", "100000"],
        vec!["verify", "wintner", "--limit", "100000"],
        vec!["verify", "dirichlet", "--limit", "100000"],
        vec!["verify", "lemma11", "--limit", "100000"],
        vec!["verify", "thm10", "--limit", "100000", "--terms", "1000000"],
        vec![
            "verify",
            "lemma11",
            "--modulus",
            "7",
            "--residue",
            "2",
            "--limit",
            "100000",
        ],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "args {args:?}: {}", stderr(&o));
        assert!(stdout(&o).starts_with("x,raw,normalized,predicted,deviation\n"));
    }
}

#[test]
fn checkpoint_grids_accept_geometric_bases() {
    let o = run(&["pi", "--limit", "64000", "--checkpoints", "geometric:4"]);
    assert_eq!(o.status.code(), Some(0));
    let xs: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .map(|r| r.split(',').next().unwrap().to_string())
        .collect();
    assert_eq!(xs, vec!["1024", "4096", "16384", "64000"]);
}
