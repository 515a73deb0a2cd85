use std::path::PathBuf;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = scoh::run(
        std::iter::once("scoh").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

/// Compares against `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, actual: &str) {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name]
        .iter()
        .collect();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

#[test]
fn integer_colon() {
    assert_eq!(
        run(&["ideal", "colon", "--ring", "z", "<6>", "4"]),
        (0, "<3>\n".into(), String::new())
    );
}

#[test]
fn idealization_annihilator_is_split() {
    let (code, out, _) = run(&["ideal", "ann", "--ring", "idealization", "(2; {})"]);
    assert_eq!((code, out.trim()), (0, "Split(0, full)"));
    let (_, json, _) = run(&[
        "ideal",
        "ann",
        "--ring",
        "idealization",
        "(2; {})",
        "--json",
    ]);
    assert_eq!(json.trim(), r#"{"zPart":"0","f2Part":"full"}"#);
}

#[test]
fn modular_operations() {
    assert_eq!(
        run(&["ideal", "intersect", "--ring", "zmod:12", "<4>", "<6>"])
            .1
            .trim(),
        "<0>"
    );
    assert_eq!(
        run(&["ideal", "sum", "--ring", "zmod:12", "<4>", "<6>"])
            .1
            .trim(),
        "<2>"
    );
    assert_eq!(
        run(&["ideal", "member", "--ring", "zmod:12", "<4>", "8"])
            .1
            .trim(),
        "member, coefficients [2]"
    );
}

#[test]
fn parse_errors_report_a_column() {
    let (code, out, err) = run(&[
        "ideal",
        "sum",
        "--ring",
        "idealization",
        "<(2; {1,1})>",
        "<1>",
    ]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("column 9"), "{err}");
    assert_eq!(run(&["ideal", "colon", "--ring", "q", "<1>", "1"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn certificate_round_trip() {
    let (code, cert, _) = run(&[
        "cert",
        "find",
        "--ring",
        "idealization",
        "--sset",
        "(2; {})",
        "Split(0, full)",
    ]);
    assert_eq!(code, 0);
    let path = std::env::temp_dir().join(format!("scoh-cert-{}.json", std::process::id()));
    std::fs::write(&path, &cert).unwrap();
    let (code, report, _) = run(&["cert", "verify", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{report}");
    assert!(report.contains("\"valid\": true"));

    // Shrinking s breaks the certificate.
    let broken = cert.replacen("\"s\": \"(2; {})\"", "\"s\": \"(1; {})\"", 1);
    assert_ne!(broken, cert);
    std::fs::write(&path, &broken).unwrap();
    let (code, report, _) = run(&["cert", "verify", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 1, "{report}");
    assert!(report.contains("\"valid\": false"));
}

#[test]
fn malformed_certificate_is_a_usage_error() {
    let path = std::env::temp_dir().join(format!("scoh-bad-{}.json", std::process::id()));
    std::fs::write(&path, "{\"kind\": \"nonsense\"}").unwrap();
    let (code, _, err) = run(&["cert", "verify", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 2, "{err}");
}

#[test]
fn refutations() {
    let (code, out, _) = run(&["refute", "fp", "--m", "1", "(0; {1})"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"witness\": \"(0; {2})\""), "{out}");
    assert_eq!(run(&["refute", "fp", "--m", "1", "(1; {1})"]).0, 1);
    let (code, out, _) = run(&["refute", "csfp", "--n", "3", "<0>"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"witness\": \"(16; {})\""), "{out}");
}

#[test]
fn demo_matches_golden() {
    let (code, out, _) = run(&["demo", "example", "--format", "json"]);
    assert_eq!(code, 0);
    golden("demo.json", &out);
}

#[test]
fn chase_audit_matches_golden() {
    let (code, out, _) = run(&[
        "chase",
        "audit",
        "--ring",
        "idealization",
        "--sset",
        "(2; {})",
        "--trials",
        "50",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    golden("chase-idealization.json", &out);
    let (code, out, _) = run(&[
        "chase",
        "audit",
        "--ring",
        "zmod:12",
        "--sset",
        "2",
        "--exhaustive",
        "--format",
        "md",
    ]);
    assert_eq!(code, 0);
    golden("chase-zmod12.md", &out);
}

#[test]
fn noetherian_check_passes() {
    let (code, out, _) = run(&["noetherian", "check", "--trials", "100", "--format", "md"]);
    assert_eq!(code, 0, "{out}");
}
