use serde_json::Value;
use symbez_cli::{run, EXIT_OK, EXIT_USAGE};

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn symbez(args: &[&str]) -> Output {
    let argv: Vec<String> = std::iter::once("symbez").chain(args.iter().copied()).map(String::from).collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

#[test]
fn solve_line_and_quintic() {
    let o = symbez(&["solve", "--space", "p2", "-f", "X+Y+Z", "-g", "X^5+Y^5+Z^5"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stdout.contains("5 points:"));
    assert!(o.stdout.contains("orbit type: [S3/C3] + [S3/C2]"));
    assert!(o.stdout.contains("real points: 3"));
    for p in ["[-1 : 0 : 1]", "[0 : -1 : 1]", "[-1 : 1 : 0]"] {
        assert!(o.stdout.contains(p), "{p} missing");
    }
}

#[test]
fn common_factor_is_a_usage_error() {
    let o = symbez(&["solve", "--space", "p2", "-f", "X+Y+Z", "-g", "2*X+2*Y+2*Z"]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.starts_with("error:"));
    assert!(o.stderr.contains("common factor"));
    assert!(o.stdout.is_empty());
}

#[test]
fn bad_input_is_reported() {
    for args in [
        vec!["solve", "-f", "X+Y+", "-g", "X*Y*Z"],
        vec!["solve", "-f", "X+Y", "-g", "X*Y*Z"],
        vec!["solve", "--space", "p3", "-f", "X+Y+Z+W", "-g", "X*Y*Z*W"],
        vec!["solve", "--space", "p4", "-f", "X", "-g", "Y"],
        vec!["verify-table", "--space", "p3"],
        vec!["random-instance", "--degrees", "1,2,3"],
        vec!["solve", "-f", "X+Y+Z", "-g", "X*Y*Z", "--precision", "8"],
        vec!["frobnicate"],
    ] {
        let o = symbez(&args);
        assert_eq!(o.code, EXIT_USAGE, "{args:?}");
        assert!(o.stderr.starts_with("error:"), "{args:?}: {}", o.stderr);
    }
}

#[test]
fn elementary_basis_input_in_p3() {
    let o = symbez(&[
        "solve", "--space", "p3", "--basis", "elementary", "-f", "e1", "-g", "3*e2-2*e1^2", "-h", "e3+5*e1*e2-7*e1^3",
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stdout.contains("orbit type: [S4/C4]"));
    assert!(o.stdout.contains("real points: 0"));
}

#[test]
fn orbit_type_only() {
    let o = symbez(&["orbit-type", "-f", "X+Y+Z", "-g", "X*Y+Y*Z+Z*X"]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout, "[S3/C3]\n");
}

#[test]
fn json_report_keys_and_round_trip() {
    let o = symbez(&["solve", "-f", "X+Y+Z", "-g", "X^5+Y^5+Z^5", "--json"]);
    assert_eq!(o.code, EXIT_OK);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    for key in ["space", "degrees", "bezout", "transverse", "obstruction", "orbit_type", "real_count", "points"] {
        assert!(v.get(key).is_some(), "{key} missing");
    }
    assert_eq!(v["orbit_type"], "[S3/C3] + [S3/C2]");
    assert_eq!(v["points"].as_array().unwrap().len(), 5);
    let point = &v["points"][0];
    for key in ["coords", "exact", "stabilizer", "orbit_id", "multiplicity", "residual", "jacobian_score", "is_real"] {
        assert!(point.get(key).is_some(), "{key} missing");
    }
    let rendered = serde_json::to_string_pretty(&v).unwrap() + "\n";
    assert_eq!(rendered, o.stdout);
}

#[test]
fn seeded_output_is_byte_identical() {
    let args = ["verify-table", "--max-product", "6", "--trials", "3", "--seed", "11", "--json"];
    let a = symbez(&args);
    let b = symbez(&args);
    assert_eq!(a.code, EXIT_OK, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    let runs: Value = serde_json::from_str(&a.stdout).unwrap();
    for run in runs.as_array().unwrap() {
        for key in ["theorem", "params", "trials", "verdict"] {
            assert!(run.get(key).is_some(), "{key} missing");
        }
    }
    let r1 = symbez(&["random-instance", "--space", "p3", "--degrees", "1,2,3", "--seed", "5", "--json"]);
    let r2 = symbez(&["random-instance", "--space", "p3", "--degrees", "1,2,3", "--seed", "5", "--json"]);
    assert_eq!(r1.stdout, r2.stdout);
}

#[test]
fn verify_table_grid_passes() {
    let o = symbez(&["verify-table", "--space", "p2", "--max-product", "20", "--trials", "10", "--seed", "42"]);
    assert_eq!(o.code, EXIT_OK, "{}\n{}", o.stdout, o.stderr);
    assert!(o.stdout.contains("35/35 runs pass"));
    assert!(o.stdout.contains("(4,5)"));
    assert!(o.stdout.contains("[S3/C3] + 3[S3]"));
}

#[test]
fn independence_and_p3_checks() {
    let o = symbez(&["independence", "--space", "p2", "--degrees", "1,5", "--trials", "5", "--seed", "3"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
    assert!(o.stdout.contains("orbit types seen: [S3/C3] + [S3/C2]\n"));
    let o = symbez(&["verify-p3", "--degrees", "1,2,3", "--trials", "3", "--seed", "3"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
    let o = symbez(&["verify-p3", "--degrees", "1,2", "--trials", "3"]);
    assert_eq!(o.code, EXIT_USAGE);
}

#[test]
fn fixed_point_catalogs() {
    for space in ["p2", "p3"] {
        let o = symbez(&["fixed-points", "--space", space]);
        assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
        assert!(o.stdout.contains(": pass"));
    }
}

#[test]
fn help_is_long_only() {
    let o = symbez(&["--help"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("verify-table"));
    let o = symbez(&["solve", "--help"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("-h <H>"));
}
