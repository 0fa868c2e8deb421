//! End-to-end CLI tests: exit-code matrix, JSON schema tagging, file
//! round trips, and the flag validation rules.

mod common;

use common::{stardisc, stardisc_env, write_file};
use stardisc::montecarlo::generate_uniform;

#[test]
fn bound_json_report() {
    let out = stardisc(&["bound", "--q", "0.9", "--s", "10", "--n", "1000"]);
    assert_eq!(out.status, 0, "stderr: {}", out.stderr);
    let v = out.json();
    assert_eq!(v["schema"], "stardisc/1");
    assert_eq!(v["command"], "bound");
    let bound = v["bound"].as_f64().unwrap();
    assert!((bound - 1.2910542163950272).abs() < 1e-12);
    assert_eq!(v["coefficient_display"], "12.91");
    assert_eq!(v["trivial_regime"], false);
}

#[test]
fn bound_single_point_single_dimension() {
    let out = stardisc(&["bound", "--q", "0.9", "--s", "1", "--n", "1"]);
    assert_eq!(out.status, 0);
    let v = out.json();
    assert_eq!(v["coefficient_display"], "15.30");
    assert!((v["bound"].as_f64().unwrap() - 15.297450430427175).abs() < 1e-12);
    assert_eq!(v["trivial_regime"], true);
}

#[test]
fn bound_uniform_form() {
    let out = stardisc(&["bound", "--q", "0.9", "--s", "10", "--n", "1000", "--uniform"]);
    let v = out.json();
    assert!((v["coefficient"].as_f64().unwrap() - 15.297450430427175).abs() < 1e-12);
    assert!((v["bound"].as_f64().unwrap() - 1.5297450430427175).abs() < 1e-12);
}

#[test]
fn bound_rejects_closed_interval_endpoints() {
    for q in ["1.0", "0.0"] {
        let out = stardisc(&["bound", "--q", q, "--s", "1", "--n", "10"]);
        assert_eq!(out.status, 2, "q={q}");
        assert!(out.stderr.contains("(0,1)"), "stderr: {}", out.stderr);
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(stardisc(&["bound", "--q", "0.5"]).status, 2);
    assert_eq!(stardisc(&["frobnicate"]).status, 2);
    assert_eq!(stardisc(&[]).status, 2);
}

#[test]
fn table_text_default_shows_two_decimals() {
    let out = stardisc(&["table"]);
    assert_eq!(out.status, 0);
    for cell in ["12.62", "12.71", "12.91", "13.20", "13.48", "12.65"] {
        assert!(out.stdout.contains(cell), "missing {cell} in:\n{}", out.stdout);
    }
}

#[test]
fn table_csv_round_trips_exactly() {
    let out = stardisc(&["table", "--format", "csv", "--q-list", "0.9,0.99", "--s-list", "10"]);
    assert_eq!(out.status, 0);
    let mut lines = out.stdout.lines();
    assert_eq!(lines.next().unwrap(), "s,0.9,0.99");
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "10");
    let parsed: Vec<f64> = row[1..].iter().map(|t| t.parse().unwrap()).collect();
    let expected = stardisc::bounds::coefficient_table(&[0.9, 0.99], &[10]).unwrap();
    for (got, want) in parsed.iter().zip(&expected[0]) {
        assert_eq!(got.to_bits(), want.to_bits());
    }
}

#[test]
fn table_json_carries_display_matrix() {
    let out = stardisc(&["table", "--format", "json"]);
    let v = out.json();
    assert_eq!(v["display"][0][0], "12.62");
    assert_eq!(v["display"][1][4], "12.71");
    assert_eq!(v["coefficients"][0].as_array().unwrap().len(), 5);
}

#[test]
fn inverse_theorem_route() {
    let out = stardisc(&["inverse", "--q", "0.9", "--s", "10", "--eps", "1.292"]);
    assert_eq!(out.status, 0);
    let v = out.json();
    assert_eq!(v["route"], "theorem");
    assert_eq!(v["n"], 999);
    assert!(v["bound_at_n"].as_f64().unwrap() <= 1.292);
}

#[test]
fn inverse_existence_route() {
    let out = stardisc(&["inverse", "--existence", "--s", "15", "--eps", "0.25"]);
    assert_eq!(out.status, 0);
    let v = out.json();
    assert_eq!(v["route"], "existence");
    assert_eq!(v["n"], 24000);
}

#[test]
fn inverse_existence_conflicts_with_q() {
    let out = stardisc(&["inverse", "--existence", "--q", "0.5", "--s", "1", "--eps", "0.5"]);
    assert_eq!(out.status, 2);
}

#[test]
fn disc_exact_on_three_point_example() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("points.txt");
    write_file(&path, "2 3\n0.3 0.7\n0.6 0.2\n0.9 0.9\n");
    let out = stardisc(&["disc", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status, 0, "stderr: {}", out.stderr);
    let v = out.json();
    assert!((v["result"]["value"].as_f64().unwrap() - 0.42).abs() < 1e-12);
    assert_eq!(v["result"]["method"], "exact");
    assert_eq!(v["result"]["witness"][0], 0.6);
    assert_eq!(v["result"]["witness"][1], 0.7);
    assert_eq!(v["n"], 3);
    assert_eq!(v["s"], 2);
}

#[test]
fn disc_cover_brackets_the_midpoint() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mid.txt");
    write_file(&path, "1 1\n0.5\n");
    let out = stardisc(&[
        "disc", "--input", path.to_str().unwrap(), "--method", "cover", "--delta", "0.25",
    ]);
    assert_eq!(out.status, 0);
    let v = out.json();
    assert_eq!(v["result"]["method"], "cover");
    assert_eq!(v["result"]["delta"], 0.25);
    let value = v["result"]["value"].as_f64().unwrap();
    assert!(value <= 0.5 && 0.5 <= value + 0.25);
}

#[test]
fn disc_missing_file_is_usage() {
    let out = stardisc(&["disc", "--input", "/nonexistent/points.txt"]);
    assert_eq!(out.status, 2);
    assert!(out.stderr.contains("/nonexistent/points.txt"));
}

#[test]
fn disc_malformed_file_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    write_file(&path, "2 2\n0.1 0.2\n0.3\n");
    let out = stardisc(&["disc", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status, 2);
    assert!(out.stderr.contains("line 3"), "stderr: {}", out.stderr);
}

#[test]
fn disc_method_delta_pairing_is_validated_before_io() {
    let out = stardisc(&["disc", "--input", "/nonexistent.txt", "--delta", "0.1"]);
    assert_eq!(out.status, 2);
    assert!(out.stderr.contains("--method cover"));
    let out = stardisc(&["disc", "--input", "/nonexistent.txt", "--method", "cover"]);
    assert_eq!(out.status, 2);
    assert!(out.stderr.contains("--delta"));
}

#[test]
fn budget_refusal_and_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("points.txt");
    write_file(&path, "2 3\n0.3 0.7\n0.6 0.2\n0.9 0.9\n");
    let file = path.to_str().unwrap();

    let out = stardisc(&["disc", "--input", file, "--budget", "10"]);
    assert_eq!(out.status, 3);
    assert!(out.stderr.contains("cover"), "stderr: {}", out.stderr);

    let out = stardisc_env(&["disc", "--input", file], &[("STARDISC_BUDGET", "10")]);
    assert_eq!(out.status, 3);

    // An explicit flag wins over the environment.
    let out = stardisc_env(
        &["disc", "--input", file, "--budget", "1000000"],
        &[("STARDISC_BUDGET", "10")],
    );
    assert_eq!(out.status, 0);

    let out = stardisc_env(&["disc", "--input", file], &[("STARDISC_BUDGET", "abc")]);
    assert_eq!(out.status, 2);
    assert!(out.stderr.contains("STARDISC_BUDGET"));
}

#[test]
fn cover_stdout_is_a_point_set_file() {
    let out = stardisc(&["cover", "--s", "1", "--delta", "0.5"]);
    assert_eq!(out.status, 0);
    let ps = stardisc::io::parse_point_set(&out.stdout).unwrap();
    assert_eq!(ps.dim(), 1);
    assert_eq!(ps.len(), 2);
    assert_eq!(ps.points()[0].coords(), &[0.5]);
    assert_eq!(ps.points()[1].coords(), &[1.0]);
}

#[test]
fn cover_bracket_stdout_parses() {
    let out = stardisc(&["cover", "--s", "1", "--delta", "0.5", "--bracket"]);
    assert_eq!(out.status, 0);
    let (dim, brackets) = stardisc::io::parse_brackets(&out.stdout).unwrap();
    assert_eq!(dim, 1);
    assert_eq!(brackets.len(), 2);
    assert_eq!(brackets[0].lower.coords(), &[0.0]);
    assert_eq!(brackets[0].upper.coords(), &[0.5]);
    assert_eq!(brackets[1].upper.coords(), &[1.0]);
}

#[test]
fn cover_output_file_with_summary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cover.txt");
    let out = stardisc(&[
        "cover", "--s", "2", "--delta", "0.5", "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status, 0);
    let v = out.json();
    assert_eq!(v["command"], "cover");
    assert_eq!(v["m"], 4);
    assert_eq!(v["count"], 16);
    let text = std::fs::read_to_string(&path).unwrap();
    let ps = stardisc::io::parse_point_set(&text).unwrap();
    assert_eq!(ps.len(), 16);
}

#[test]
fn cover_budget_refusal() {
    let out = stardisc(&["cover", "--s", "9", "--delta", "0.01"]);
    assert_eq!(out.status, 3);
}

#[test]
fn chain_json_structure() {
    let out = stardisc(&["chain", "--s", "2", "--k", "3", "--x", "0.3,0.7"]);
    assert_eq!(out.status, 0, "stderr: {}", out.stderr);
    let v = out.json();
    let chain = v["chain"].as_array().unwrap();
    assert_eq!(chain.len(), 5);
    assert_eq!(chain[0][0], 0.0);
    assert_eq!(chain[0][1], 0.0);
    let boxes = v["boxes"].as_array().unwrap();
    assert_eq!(boxes.len(), 4);
    for (k, b) in boxes.iter().enumerate() {
        let measure = b["measure"].as_f64().unwrap();
        assert!(measure <= f64::exp2(-(k as f64)), "level {k}: {measure}");
    }
}

#[test]
fn chain_flag_validation() {
    assert_eq!(stardisc(&["chain", "--s", "3", "--k", "2", "--x", "0.3,0.7"]).status, 2);
    assert_eq!(stardisc(&["chain", "--s", "2", "--k", "2", "--x", "0.3;0.7"]).status, 2);
    assert_eq!(stardisc(&["chain", "--s", "2", "--k", "2", "--x", "1.5,0.7"]).status, 2);
}

#[test]
fn audit_passes_at_scale() {
    let out = stardisc(&["audit", "--q", "0.9", "--s", "10", "--n", "1000000"]);
    assert_eq!(out.status, 0, "stderr: {}", out.stderr);
    let v = out.json();
    assert_eq!(v["overall"], true);
    // K = ceil((log2 N - log2(s + L)) / 2) = 9 here, and there are K + 10 checks.
    assert_eq!(v["constants"]["k"], 9);
    assert_eq!(v["checks"].as_array().unwrap().len(), 19);
}

#[test]
fn audit_trivial_regime_exits_3() {
    let out = stardisc(&["audit", "--q", "0.9", "--s", "10", "--n", "100"]);
    assert_eq!(out.status, 3);
    assert!(out.stderr.contains("393.6"), "stderr: {}", out.stderr);
}

#[test]
fn audit_text_format_renders() {
    let out = stardisc(&["audit", "--q", "0.5", "--s", "2", "--n", "10000", "--format", "text"]);
    assert_eq!(out.status, 0);
    assert!(out.stdout.contains("overall  pass"));
    assert!(out.stdout.contains("assembly"));
}

#[test]
fn generate_then_disc_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sample.txt");
    let out = stardisc(&[
        "generate", "--s", "2", "--n", "5", "--seed", "9", "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status, 0);
    assert_eq!(out.json()["rng"], stardisc::montecarlo::RNG_ID);

    // The file must hold bit-identical coordinates to an in-process draw.
    let read_back = stardisc::io::read_point_set(&path).unwrap();
    let direct = generate_uniform(2, 5, 9, 0).unwrap();
    for (a, b) in read_back.points().iter().zip(direct.points()) {
        for (x, y) in a.coords().iter().zip(b.coords()) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }

    let out = stardisc(&["disc", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status, 0);
    let value = out.json()["result"]["value"].as_f64().unwrap();
    assert!(value > 0.0 && value <= 1.0);
}

#[test]
fn verify_report_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("trials.csv");
    let out = stardisc(&[
        "verify", "--s", "2", "--n", "16", "--q", "0.9", "--trials", "10", "--seed", "3",
        "--csv", csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status, 0, "stderr: {}", out.stderr);
    let v = out.json();
    assert_eq!(v["command"], "verify");
    assert_eq!(v["config"]["method"]["name"], "exact");
    assert_eq!(v["pass_count"], 10);
    assert_eq!(v["empirical_probability"], 1.0);
    assert!(v.get("per_trial").is_none());

    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 11);
    assert_eq!(lines[0], "trial,value,pass");
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(fields[0], "0");
    let value: f64 = fields[1].parse().unwrap();
    assert!(value > 0.0 && value <= 1.0);
    assert_eq!(fields[2], "true");
}

#[test]
fn verify_flag_validation() {
    let base = ["verify", "--s", "2", "--n", "8", "--q", "0.9", "--trials", "2", "--seed", "1"];
    let mut with_par = base.to_vec();
    with_par.extend(["--parallelism", "fast"]);
    assert_eq!(stardisc(&with_par).status, 2);

    let mut cover_no_delta = base.to_vec();
    cover_no_delta.extend(["--method", "cover"]);
    assert_eq!(stardisc(&cover_no_delta).status, 2);

    let mut bad_q = base.to_vec();
    bad_q[6] = "1.0";
    assert_eq!(stardisc(&bad_q).status, 2);
}

#[test]
fn verify_stdout_is_parallelism_invariant() {
    let run = |threads: &str| {
        let out = stardisc(&[
            "verify", "--s", "2", "--n", "16", "--q", "0.9", "--trials", "8", "--seed", "5",
            "--parallelism", threads,
        ]);
        assert_eq!(out.status, 0);
        out.stdout
    };
    let reference = run("1");
    assert_eq!(run("2"), reference);
    assert_eq!(run("8"), reference);
}
