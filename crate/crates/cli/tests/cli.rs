use std::io::Write;
use std::path::Path;

use quantalg_cli::commands::{main_with, Outcome};

const DEMO: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/demo.qa");

fn run(workspace: &Path, args: &[&str]) -> Outcome {
    let mut full = vec![
        "quantalg".to_string(),
        "-w".into(),
        workspace.display().to_string(),
    ];
    full.extend(args.iter().map(|s| s.to_string()));
    main_with(full)
}

fn demo(args: &[&str]) -> Outcome {
    run(Path::new(DEMO), args)
}

fn scratch(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn check_algebra_passes_on_the_demo() {
    let out = demo(&["check-algebra", "Flip"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("verdict: pass"));
    assert!(out.stdout.contains("check.valid: pass"));
}

#[test]
fn derive_reports_the_triangle_bound() {
    let out = demo(&[
        "derive",
        "Involution",
        "[x =[1] y; y =[2] z] |- x =[3] z",
        "--proof",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("result.bound: 3"));
    assert!(out.stdout.contains("check.proof-checks: pass"));
    assert!(out.stdout.contains("Triang"));
}

#[test]
fn underivable_goal_exits_one() {
    let out = demo(&["derive", "Involution", "[x =[1] y] |- x =[1/2] y"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("verdict: fail"));
}

#[test]
fn countermodel_found_exits_one_with_a_witness() {
    let out = demo(&["--json", "countermodel", "[x =[1] y] |- x =[1/2] y"]);
    assert_eq!(out.code, 1);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "fail");
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 1);
    assert!(v["output"]
        .as_str()
        .unwrap()
        .starts_with("algebra Countermodel"));
}

#[test]
fn missing_distance_is_an_input_error() {
    let ws = scratch("signature { }\nalgebra A { carrier { a b } }\n");
    let out = run(ws.path(), &["check-algebra", "A"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.starts_with("error: "), "{}", out.stderr);
    assert!(out.stdout.is_empty());
}

#[test]
fn unknown_name_is_an_input_error() {
    assert_eq!(demo(&["check-algebra", "Nowhere"]).code, 2);
}

#[test]
fn fractional_bounds_parse() {
    let ws = scratch(
        "signature { }\nvars { x y }\nalgebra A { carrier { a b }; dist a b = 1/2 }\n\
         theory T { |- x =[1/2] y }\n",
    );
    let out = run(ws.path(), &["check-sat", "A", "T"]);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
}

#[test]
fn term_cap_exceeded_exits_three() {
    let out = demo(&[
        "--term-cap",
        "3",
        "derive",
        "Involution",
        "[x =[1] y] |- f(f(x)) =[1] y",
    ]);
    assert_eq!(out.code, 3, "{}", out.stdout);
}

#[test]
fn arrow_names_the_output() {
    let out = demo(&["to-algebra", "Near", "->", "Back"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("algebra Back {"));
    assert!(out.stdout.contains("command: to-algebra Near -> Back"));
}

#[test]
fn json_report_has_the_schema_fields() {
    let out = demo(&["--json", "product", "Flip", "Point"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    for key in [
        "command",
        "inputs",
        "verdict",
        "budgets",
        "results",
        "checks",
        "witnesses",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert!(v["inputs"].as_str().unwrap().starts_with("sha256:"));
    assert!(v.get("timing_ms").is_none());
}

#[test]
fn reports_are_reproducible() {
    let a = demo(&["canonical-model", "Flip", "--vars", "2"]);
    let b = demo(&["canonical-model", "Flip", "--vars", "2"]);
    assert_eq!(a, b);
    assert!(a.stdout.contains("result.components: 4"));
}

#[test]
fn fmt_output_is_a_fixed_point() {
    let text = |out: Outcome| {
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        v["output"].as_str().unwrap().to_string()
    };
    let once = text(demo(&["--json", "fmt"]));
    let ws = scratch(&once);
    assert_eq!(once, text(run(ws.path(), &["--json", "fmt"])));
}

#[test]
fn save_appends_constructions() {
    let ws = scratch(&std::fs::read_to_string(DEMO).unwrap());
    let out = run(
        ws.path(),
        &["--save", "product", "Flip", "Flip", "->", "Square"],
    );
    assert_eq!(out.code, 0, "{}", out.stderr);
    let out = run(ws.path(), &["check-algebra", "Square"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("result.carrier: 4"));
}

#[test]
fn homomorphism_checks() {
    assert_eq!(demo(&["check-hom", "Flip", "Point", "a=p", "b=p"]).code, 0);
    let out = demo(&["check-reflexive", "Flip", "Point", "a=p", "b=p", "--c", "2"]);
    assert_eq!(out.code, 0, "{}", out.stdout);

    // Collapsing distance 2 to 1 breaks isometric pullback of the pair.
    let ws = scratch(
        "signature { }\nalgebra Far { carrier { a b }; dist a b = 2 }\n\
         algebra Near { carrier { a b }; dist a b = 1 }\n",
    );
    let args = ["check-reflexive", "Far", "Near", "a=a", "b=b", "--c"];
    assert_eq!(run(ws.path(), &[&args[..], &["2"]].concat()).code, 0);
    let out = run(ws.path(), &[&args[..], &["3"]].concat());
    assert_eq!(out.code, 1, "{}", out.stdout);
}

#[test]
fn horn_formula_and_reduced_product() {
    assert_eq!(demo(&["eval-horn", "Near", "Swap"]).code, 0);
    let out = demo(&["reduced-product", "Near", "Near", "--filter", "1", "2"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("structure Reduced {"));
}

#[test]
fn unknown_suite_is_an_input_error() {
    assert_eq!(demo(&["suite", "no-such-suite"]).code, 2);
}

#[test]
fn subalgebra_generated_by_elements() {
    let out = demo(&["subalgebra", "Flip", "{a}"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("result.carrier: 2"));
    let out = demo(&["subalgebra", "Point", "p", "->", "Same"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("algebra Same {"));
}

#[test]
fn every_subcommand_parses() {
    use clap::CommandFactory;
    quantalg_cli::commands::Cli::command().debug_assert();
}
