//! Round trips, exit codes and output stability of the command-line surface.

use std::process::Command;

use motivic_steenrod::sampling::{random_homogeneous_element, random_scalar, Rng};
use motivic_steenrod::scalar::HScalar;
use motivic_steenrod::steenrod::SteenrodElement;
use motivic_steenrod::Algebra;
use steenrod_cli::commands::decode_milnor;
use steenrod_cli::format;
use steenrod_cli::parser::{eval, parse, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_motivic"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

#[test]
fn parse_format_round_trip_on_seeded_elements() {
    let alg = Algebra::default();
    let mut rng = Rng::new(4711);
    for k in 0..200 {
        if k % 3 == 0 {
            // scalars
            let h = random_scalar(&mut rng, 4, 3);
            let text = h.to_string();
            let v = eval(&alg, &parse(&text).unwrap()).unwrap();
            let back = match v {
                Value::Scalar(s) => s,
                Value::Dual(d) => {
                    // `0`/`1` literals come back as scalars; sums may promote
                    assert!(d.is_zero());
                    HScalar::zero()
                }
                other => panic!("scalar `{text}` evaluated to {other:?}"),
            };
            assert_eq!(back, h, "scalar round trip of `{text}`");
        } else {
            let x = random_homogeneous_element(&alg, &mut rng, 12);
            let text = x.to_string();
            let v = eval(&alg, &parse(&text).unwrap()).unwrap();
            let back = v.into_milnor().unwrap();
            assert_eq!(back, x, "milnor round trip of `{text}`");
        }
    }
}

#[test]
fn dual_element_round_trip() {
    use motivic_steenrod::dual::{multiply_monomials, DualMonomial};
    let alg = Algebra::default();
    let m1 = DualMonomial::new(&[0, 2], &[3, 0, 1]).unwrap();
    let m2 = DualMonomial::tau_gen(0).unwrap();
    let x = multiply_monomials(&m1, &m2).unwrap();
    let text = x.to_string();
    let v = eval(&alg, &parse(&text).unwrap()).unwrap();
    assert_eq!(v.into_dual().unwrap(), x, "dual round trip of `{text}`");
}

#[test]
fn json_reingests_through_text() {
    let alg = Algebra::default();
    let mut rng = Rng::new(99);
    for _ in 0..50 {
        let x = random_homogeneous_element(&alg, &mut rng, 12);
        let json = format::milnor_json(&x);
        let decoded = decode_milnor(&json).expect("schema round trip");
        assert_eq!(decoded, x);
        // the text rendering of the decoded element re-parses to the same
        let v = eval(&alg, &parse(&decoded.to_string()).unwrap()).unwrap();
        assert_eq!(v.into_milnor().unwrap(), x);
    }
}

#[test]
fn exit_code_zero_on_verified_identity() {
    let (code, stdout) = run(&["verify", "corollary", "--n", "0..2"]);
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("pass"));
    assert!(stdout.contains("VERIFIED"));
}

#[test]
fn exit_code_two_on_parse_error() {
    let (code, stdout) = run(&["product", "Sq2*", "Sq1"]);
    assert_eq!(code, 2, "stdout: {stdout}");
    assert!(stdout.contains("position 4"));
    let (code, _) = run(&["verify", "no-such-identity"]);
    assert_eq!(code, 2);
    // clap usage errors are also 2
    let out = bin().arg("definitely-not-a-command").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_code_three_on_guard_exceeded() {
    let (code, stdout) = run(&["--degree-guard", "10", "product", "Sq8", "Sq8"]);
    assert_eq!(code, 3, "stdout: {stdout}");
    assert!(stdout.contains("degree"));
}

#[test]
fn failing_reports_map_to_exit_one() {
    // no true identity fails, so the mapping is checked on a synthetic report
    use motivic_steenrod::steenrod::Identity;
    use std::time::Duration;
    use steenrod_cli::verify::{VerifyCase, VerifyReport};
    let report = VerifyReport {
        identity: Identity::Corollary,
        cases: vec![VerifyCase {
            n: 0,
            i: None,
            pass: false,
            wall: Duration::ZERO,
            diff: Some(SteenrodElement::unit()),
        }],
    };
    assert!(!report.all_pass());
    assert_eq!(i32::from(!report.all_pass()), 1);
}

#[test]
fn json_output_is_byte_stable() {
    for args in [
        vec!["--format", "json", "product", "Sq2", "Sq1"],
        vec!["--format", "json", "qn", "2", "--basis", "cartan"],
        vec!["--format", "json", "coproduct", "tau(1)*xi(1)"],
        vec!["--format", "json", "adem", "Sq3*Sq2"],
        vec!["--format", "json", "cartan-count", "2"],
        vec!["--format", "json", "--seed", "7", "classical-check", "--degree", "4", "--samples", "3"],
        vec!["--format", "json", "lemma-check", "2", "--n", "2..3", "--maxlen", "3"],
    ] {
        let (c1, first) = run(&args);
        let (c2, second) = run(&args);
        assert_eq!(c1, c2, "{args:?}");
        assert_eq!(first, second, "bytes differ for {args:?}");
    }
}

#[test]
fn parallel_flag_does_not_change_output() {
    let (c1, serial) = run(&["verify", "remark-low", "--n", "1..3"]);
    let (c2, parallel) = run(&["--parallel", "4", "verify", "remark-low", "--n", "1..3"]);
    assert_eq!(c1, c2);
    // wall times differ; compare everything else line by line
    let strip = |s: &str| -> Vec<String> {
        s.lines()
            .map(|l| l.split(" (").next().unwrap_or(l).to_string())
            .collect()
    };
    assert_eq!(strip(&serial), strip(&parallel));
}

#[test]
fn verify_all_passes() {
    let (code, stdout) = run(&["verify", "all"]);
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("VERIFIED"));
    assert!(!stdout.contains("FAIL"));
    // every identity shows up in the report
    for name in [
        "theorem-main",
        "corollary",
        "remark-low",
        "remark-eq",
        "remark-high",
        "remark-alt",
        "voevodsky-136",
        "theorem-main2",
        "eq-qn",
        "lem-qsq",
        "q-square",
        "q-commute",
    ] {
        assert!(stdout.contains(name), "missing {name}");
    }
}

#[test]
fn spec_examples() {
    let (code, stdout) = run(&["qn", "1", "--basis", "cartan"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "Sq2*Sq1 + Sq3\n");
    let (code, stdout) = run(&["cartan-count", "2"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "5\n");
    let (code, stdout) = run(&["cartan-count", "4"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "47\n");
    let (code, stdout) = run(&["adem", "Sq3*Sq3"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "Sq5*Sq1\n");
    let (code, stdout) = run(&["sq", "3"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "Q(0)*P(1)\n");
    let (code, stdout) = run(&["pn", "2"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "P(0,1)\n");
    let (code, stdout) = run(&["qn", "2", "--recursive"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "Q(2)\n");
    let (code, stdout) = run(&["coproduct", "tau(0)"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "(1|tau(0)) + (tau(0)|1)\n");
    let (_, latex) = run(&["--format", "latex", "qn", "1", "--basis", "cartan"]);
    assert_eq!(
        latex,
        "\\operatorname{Sq}^{2}\\operatorname{Sq}^{1} + \\operatorname{Sq}^{3}\n"
    );
}

#[test]
fn cache_dir_round_trip_preserves_results() {
    let dir = std::env::temp_dir().join(format!("motivic-cache-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let args = ["product", "Sq4", "Sq2*Sq1"];
    let (c0, plain) = run(&args);
    let with_cache = |d: &std::path::Path| {
        let out = bin()
            .arg("--cache-dir")
            .arg(d)
            .args(args)
            .output()
            .unwrap();
        (
            out.status.code().unwrap(),
            String::from_utf8_lossy(&out.stdout).into_owned(),
        )
    };
    let (c1, cold) = with_cache(&dir);
    let (c2, warm) = with_cache(&dir);
    assert_eq!((c0, c1, c2), (0, 0, 0));
    assert_eq!(plain, cold);
    assert_eq!(plain, warm);
    assert!(dir.join("products.json").exists());
    let _ = std::fs::remove_dir_all(&dir);
}
