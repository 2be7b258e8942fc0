mod common;

#[test]
fn reports_match_golden_files() {
    let problems = common::check_golden();
    assert!(problems.is_empty(), "{}", problems.join("\n"));
}

#[test]
fn reports_are_stable_across_runs() {
    for case in common::CASES.iter().take(10) {
        assert_eq!(common::run(case.args), common::run(case.args), "{}", case.name);
    }
}
