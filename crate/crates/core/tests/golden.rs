mod common;

#[test]
fn cli_reports_match_golden_files() {
    let failures: Vec<String> = common::CASES.iter().filter_map(|c| common::check_golden(c).err()).collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn oracle_grading_for_the_fundamental_weight() {
    // W(ω) is the natural representation: w and f w.
    assert_eq!(common::oracle::graded_dims(1, 2, 4)[..2], [1, 1]);
}
