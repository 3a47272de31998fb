use std::process::Command as Process;

use arcline::Window;
use arcline_cli::{run_command, Command, OutputFormat, Verb, EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE};

fn run(verb: Verb, region: &str) -> (i32, String) {
    let out = run_command(&Command::new(verb).region(region));
    (out.status, out.stdout + &out.stderr)
}

fn binary(args: &[&str]) -> (i32, String, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_arcline")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn classify_lower_half() {
    let (status, out) = run(Verb::Classify, "lower(3)");
    assert_eq!(status, EXIT_OK);
    assert!(out.contains("torsion_class: true\n"));
    assert!(out.contains("t_structure: HalfLine(3)\n"));
    assert!(out.contains("co_t_structure: Not\n"));
    assert_eq!(out.lines().count(), 12);
}

#[test]
fn classify_json_is_one_object() {
    let out = run_command(&Command::new(Verb::Classify).region("all").format(OutputFormat::Json));
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["t_structure"], "All");
    assert_eq!(v["torsion_class"], true);
    assert_eq!(v.as_object().unwrap().keys().next().unwrap(), "fountains.left");
}

#[test]
fn region_verbs_print_dsl() {
    assert_eq!(run(Verb::Coaisle, "lower(0)"), (EXIT_OK, "upper(-1)\n".to_string()));
    assert_eq!(run(Verb::Ort, "lower(0)"), (EXIT_OK, "upper(0)\n".to_string()));
    assert_eq!(
        run(Verb::Closure, "arcs{(0,2),(1,3)}"),
        (EXIT_OK, "arcs{(0,2),(0,3),(1,3)}\n".to_string())
    );
}

#[test]
fn precover_needs_a_precovering_region() {
    let cmd = Command::new(Verb::Precover)
        .region("upper(0)")
        .object("(0,5)".parse().unwrap());
    let out = run_command(&cmd);
    assert_eq!(out.status, EXIT_PRECONDITION);
    assert!(out
        .stderr
        .contains("not precovering: right fountain 0 is not a left fountain"));

    let cmd = Command::new(Verb::Precover)
        .region("lower(3)")
        .object("(0,5)".parse().unwrap());
    let out = run_command(&cmd);
    assert_eq!(out.status, EXIT_OK);
    assert_eq!(
        out.stdout,
        "target: (0,5)\ncomponents: (0,2) (0,3)\nfountain_line: none\n"
    );

    let cmd = Command::new(Verb::Preenvelope)
        .region("upper(-3)")
        .object("(-5,0)".parse().unwrap());
    assert!(run_command(&cmd).stdout.contains("components: (-3,0) (-2,0)\n"));
}

#[test]
fn usage_and_parse_errors_exit_one() {
    assert_eq!(run(Verb::Classify, "arcs{(0,1)}").0, EXIT_USAGE);
    assert_eq!(run(Verb::Classify, "lower(").0, EXIT_USAGE);
    assert_eq!(
        run_command(&Command::new(Verb::Precover).region("all")).status,
        EXIT_USAGE
    );
    assert_eq!(run_command(&Command::new(Verb::Ort)).status, EXIT_USAGE);
    assert_eq!(
        run_command(&Command::new(Verb::Ort).region("all").format(OutputFormat::Svg)).status,
        EXIT_USAGE
    );
}

#[test]
fn render_window_limit_is_a_precondition() {
    let cmd = Command::new(Verb::Render)
        .region("empty")
        .window(Window::new(0, 300).unwrap());
    assert_eq!(run_command(&cmd).status, EXIT_PRECONDITION);
}

#[test]
fn check_passes_on_sample_regions() {
    for r in [
        "lower(3)",
        "upper(0)",
        "all",
        "empty",
        "arcs{(0,2),(1,3)} | rightray(5,9)",
    ] {
        let (status, out) = run(Verb::Check, r);
        assert_eq!(status, EXIT_OK, "{r}: {out}");
        assert!(!out.contains("fail"));
    }
}

#[test]
fn oracle_verb_reports_agreement() {
    let mut cmd = Command::new(Verb::Oracle);
    cmd.cases = Some(20);
    cmd.seed = 7;
    let out = run_command(&cmd);
    assert_eq!(out.status, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.starts_with("cases: 20\n"));
    assert!(out.stdout.contains("ort_vs_brute.failed: 0\n"));
}

#[test]
fn binary_exit_codes() {
    let (status, out, _) = binary(&["coaisle", "--region", "lower(0)"]);
    assert_eq!((status, out.as_str()), (0, "upper(-1)\n"));

    let (status, _, err) = binary(&["precover", "--region", "upper(0)", "--object", "(0,5)"]);
    assert_eq!(status, 2);
    assert!(err.contains("not precovering"));

    assert_eq!(binary(&["frobnicate"]).0, 1);
    assert_eq!(binary(&["classify", "--region", "arcs{(0,1)}"]).0, 1);
    assert_eq!(binary(&["--help"]).0, 0);

    let (status, out, _) = binary(&[
        "render",
        "--region",
        "arcs{(-1,2)}",
        "--window",
        "-2..3",
        "--format",
        "svg",
    ]);
    assert_eq!(status, 0);
    assert!(out.starts_with("<svg"));
}

#[test]
fn region_from_file() {
    let dir = std::env::temp_dir().join(format!("arcline-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.arcs");
    std::fs::write(&path, "# a half plane\nlower(0)\n").unwrap();
    let source = format!("@{}", path.display());
    assert_eq!(run(Verb::Coaisle, &source), (EXIT_OK, "upper(-1)\n".to_string()));
    std::fs::remove_dir_all(&dir).unwrap();
}
