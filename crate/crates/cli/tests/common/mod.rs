#![allow(dead_code)]

use std::path::PathBuf;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

const fn case(name: &'static str, args: &'static [&'static str], exit: i32) -> Case {
    Case { name, args, exit }
}

pub const CASES: &[Case] = &[
    case("validate_x2", &["validate", "space", "X2"], 0),
    case("validate_uv", &["validate", "space", "UV"], 0),
    case("validate_bad_triangle", &["validate", "space", "BadTriangle"], 1),
    case("validate_bad_diag", &["validate", "space", "BadDiag"], 1),
    case("validate_submetric_half", &["validate", "submetric", "half"], 0),
    case("validate_submetric_above", &["validate", "submetric", "above"], 1),
    case("validate_map_collapse", &["validate", "map", "collapse"], 0),
    case("validate_map_stretch", &["validate", "map", "stretch"], 1),
    case("product_x2_x2", &["product", "X2", "X2"], 0),
    case("product_x2_empty", &["product", "X2", "Empty"], 0),
    case("coproduct_x2_s1", &["coproduct", "X2", "S1"], 0),
    case("equalizer_id_swap", &["equalizer", "id", "swap"], 0),
    case("equalizer_id_const", &["equalizer", "id", "const_a"], 0),
    case("pushout_gluing", &["pushout", "--embedding", "i", "--along", "f"], 0),
    case("pushout_gluing_oracle", &["pushout", "--embedding", "i", "--along", "f", "--oracle"], 0),
    case("pushout_gluing_json", &["--json", "pushout", "--embedding", "i", "--along", "f", "--oracle"], 0),
    case("pushout_not_embedding", &["pushout", "--embedding", "collapse", "--along", "collapse"], 2),
    case("cokernel_pair_at_a", &["cokernel-pair", "at_a"], 0),
    case("cokernel_pair_empty", &["cokernel-pair", "empty_in"], 0),
    case("factorize_const_a", &["factorize", "const_a"], 0),
    case("kernel_metric_collapse", &["kernel-metric", "collapse"], 0),
    case("quotient_half", &["quotient", "half"], 0),
    case("quotient_zero", &["quotient", "zero"], 0),
    case("quotient_leq_id_collapse", &["quotient-leq", "id", "collapse"], 0),
    case("quotient_leq_collapse_id", &["quotient-leq", "collapse", "id"], 1),
    case("corelation_check_singleton", &["corelation", "check", "singleton"], 1),
    case("corelation_check_literal", &["corelation", "check", "two_point_literal"], 1),
    case("corelation_check_closed", &["corelation", "check", "two_point_closed"], 1),
    case("corelation_check_through_a", &["corelation", "check", "through_a"], 0),
    case("corelation_effective_through_a", &["corelation", "effective", "through_a"], 0),
    case("corelation_effective_discrete", &["corelation", "effective", "discrete"], 0),
    case("corelation_effective_singleton", &["corelation", "effective", "singleton"], 1),
    case("corelation_from_subset_a", &["corelation", "from-subset", "X2", "a"], 0),
    case("corelation_from_subset_empty", &["corelation", "from-subset", "X2", ""], 0),
    case("corelation_check_json", &["--json", "corelation", "check", "singleton"], 1),
    case("idempotent_check_diag5", &["idempotent", "check", "diag5"], 1),
    case("idempotent_check_via_a", &["idempotent", "check", "via_a"], 0),
    case("idempotent_factor_via_a", &["idempotent", "factor", "via_a"], 0),
    case("idempotent_factor_all_inf", &["idempotent", "factor", "all_inf"], 0),
    case("idempotent_check_empty", &["idempotent", "check", "none"], 2),
    case("relation_witness_r", &["relation", "witness", "R", "1", "3"], 0),
    case("relation_witness_q", &["relation", "witness", "Q", "1", "3"], 0),
    case("relation_witness_unrelated", &["relation", "witness", "R", "3", "1"], 2),
    case("relation_witness_not_idempotent", &["relation", "witness", "step", "1", "2"], 2),
    case("missing_name", &["product", "X2", "Nope"], 2),
    case("selftest_fixtures", &["selftest", "--suite", "fixtures", "--seed", "0"], 0),
    case("selftest_effective", &["selftest", "--suite", "effective-exhaustive"], 0),
];

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn fixture_path() -> PathBuf {
    manifest_dir().join("tests/fixtures/fixtures.json")
}

pub fn golden_path(name: &str) -> PathBuf {
    manifest_dir().join("tests/golden").join(format!("{name}.txt"))
}

pub fn run(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["finmet".to_string(), "--file".to_string(), fixture_path().display().to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let mut out = Vec::new();
    let code = finmet_cli::run_command(&argv, &mut out);
    (code, String::from_utf8(out).expect("utf-8 output"))
}

/// Compares every case against its golden file, rewriting the files when
/// `BLESS` is set. Returns one message per mismatch.
pub fn check_golden() -> Vec<String> {
    let bless = std::env::var_os("BLESS").is_some();
    let mut problems = Vec::new();
    for case in CASES {
        let (code, output) = run(case.args);
        if code != case.exit {
            problems.push(format!("{}: exit {code}, expected {}", case.name, case.exit));
        }
        let path = golden_path(case.name);
        if bless {
            std::fs::write(&path, &output).expect("write golden file");
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(expected) if expected == output => {}
            Ok(expected) => problems.push(format!("{}: output differs\n--- expected\n{expected}--- actual\n{output}", case.name)),
            Err(e) => problems.push(format!("{}: cannot read golden file: {e}", case.name)),
        }
    }
    problems
}
