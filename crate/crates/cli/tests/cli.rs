//! End-to-end tests of the binary: the documented exit codes, the JSON
//! shapes, and byte-level determinism of repeated invocations.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootfund"))
        .args(args)
        .env_remove("ROOTFUND_GROUP_LIMIT")
        .output()
        .expect("binary runs")
}

fn run_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootfund"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "expected success, stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn info_summarizes_small_systems() {
    let a2 = stdout_json(&run(&["info", "A2"]));
    assert_eq!(a2["roots"], 6);
    assert_eq!(a2["group_order"], "6");
    assert_eq!(a2["rank"], 2);
    assert_eq!(a2["dominant_roots"].as_array().unwrap().len(), 1);

    let b2 = stdout_json(&run(&["info", "B2"]));
    assert_eq!(b2["roots"], 8);
    assert_eq!(b2["dominant_roots"].as_array().unwrap().len(), 2);

    let prod = stdout_json(&run(&["info", "A1xA1"]));
    assert_eq!(prod["roots"], 4);
    assert_eq!(prod["group_order"], "4");
}

#[test]
fn canon_reflects_a_negative_vector_in_a1() {
    let v = stdout_json(&run(&["canon", "A1", r#"[["-1/1"]]"#]));
    assert_eq!(v["word"], "s1");
    assert_eq!(v["canonical"], serde_json::json!([["1"]]));
}

#[test]
fn canon_fixes_the_rank_one_pair_example() {
    let v = stdout_json(&run(&["canon", "A1", r#"[["0"],["-1"]]"#]));
    assert_eq!(v["canonical"], serde_json::json!([["0"], ["1"]]));
    assert_eq!(v["stabilizer_chain"], serde_json::json!([[1], [1], []]));
}

#[test]
fn canon_returns_the_empty_word_on_canonical_input() {
    let first = stdout_json(&run(&["canon", "B2", r#"[["-1","-1"],["2","1"]]"#]));
    let canonical = first["canonical"].to_string();
    let second = stdout_json(&run(&["canon", "B2", &canonical]));
    assert_eq!(second["word"], "");
    assert_eq!(second["canonical"], first["canonical"]);
}

#[test]
fn strata_counts_match_the_small_catalogs() {
    let a1 = stdout_json(&run(&["strata", "A1", "2"]));
    assert_eq!(a1["nodes"].as_array().unwrap().len(), 5);
    let a2 = stdout_json(&run(&["strata", "A2", "1"]));
    assert_eq!(a2["nodes"].as_array().unwrap().len(), 13);
}

#[test]
fn strata_euler_prints_the_matching_sums() {
    let out = run(&["strata", "A1", "2", "--euler"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "0 = 0\n");
}

#[test]
fn strata_dot_emits_a_graph() {
    let out = run(&["strata", "A1", "1", "--dot"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("graph strata {"));
    assert!(text.trim_end().ends_with('}'));
    assert!(text.contains(" -- "));
}

#[test]
fn char_passes_on_small_groups() {
    for (t, n) in [("A1", "1"), ("A2", "2"), ("B2", "3")] {
        let out = run(&["char", t, n]);
        assert_eq!(code(&out), 0, "char {t} {n}");
        let text = String::from_utf8_lossy(&out.stdout);
        assert!(text.contains("pass"));
        assert!(!text.contains("FAIL"));
    }
}

#[test]
fn classify_finds_one_b3_class_in_b4_certified() {
    let v = stdout_json(&run(&["classify", "B4", "B3", "--oracle"]));
    assert_eq!(v["class_count"], 1);
    assert_eq!(v["certified"], true);
}

#[test]
fn classify_finds_one_d4_class_in_b5_from_a_three_element_fiber() {
    let v = stdout_json(&run(&["classify", "B5", "D4"]));
    assert_eq!(v["class_count"], 1);
    assert_eq!(v["fiber"].as_array().unwrap().len(), 3);
}

#[test]
fn classify_splits_f4_a2_by_root_length() {
    let v = stdout_json(&run(&["classify", "F4", "A2", "--oracle"]));
    assert_eq!(v["class_count"], 2);
    assert_eq!(v["certified"], true);
}

#[test]
fn gram_kind_pins_lengths_where_cartan_kind_does_not() {
    let cartan = stdout_json(&run(&["classify", "B3", "A1xA1"]));
    assert_eq!(cartan["class_count"], 3);
    let gram = stdout_json(&run(&["classify", "B3", "A1xA1", "--kind", "gram"]));
    assert_eq!(gram["class_count"], 1);
}

#[test]
fn classify_table_mode_lists_representatives() {
    let out = run(&["classify", "B5", "D4", "--table"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("type D4 in B5"));
    assert!(text.contains("class 1:"));
}

#[test]
fn oracle_certification_requires_the_cartan_kind() {
    let out = run(&["classify", "B3", "A1", "--kind", "gram", "--oracle"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn fiber_of_the_d4_genus_in_b5_has_three_members() {
    let v = stdout_json(&run(&["fiber", "B5", "--of", "D4"]));
    assert_eq!(v["size"], 3);
    assert_eq!(v["fiber"].as_array().unwrap().len(), 3);
    for idx in v["root_indices"].as_array().unwrap() {
        assert_eq!(idx.as_array().unwrap().len(), 4);
    }
}

#[test]
fn fiber_accepts_an_explicit_gram_matrix() {
    let v = stdout_json(&run(&[
        "fiber",
        "B2",
        "--matrix",
        r#"[["2","0"],["0","2"]]"#,
        "--kind",
        "gram",
    ]));
    assert_eq!(v["size"], 1);
}

#[test]
fn oshima_passes_on_g2() {
    let v = stdout_json(&run(&["oshima", "G2"]));
    assert_eq!(v["pass"], true);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn oracle_canon_agrees_with_canonicalization() {
    let v = stdout_json(&run(&["oracle", "canon", "B2", r#"[["-1","-1"],["1","0"]]"#]));
    assert_eq!(v["agree"], true);
    assert_eq!(v["canonical"], v["lex_max"]);
}

#[test]
fn oracle_orbits_joins_all_a2_roots() {
    let v = stdout_json(&run(&["oracle", "orbits", "A2", "[[0],[1],[2],[3],[4],[5]]"]));
    assert_eq!(v["count"], 1);
    assert_eq!(v["orbits"].as_array().unwrap()[0].as_array().unwrap().len(), 6);
}

#[test]
fn oracle_simpcon_passes_on_a_reducible_system() {
    let out = run(&["oracle", "simpcon", "A2xA1", "--samples", "50", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], true);
}

#[test]
fn bad_inputs_exit_with_code_two() {
    assert_eq!(code(&run(&["info", "Z9"])), 2);
    assert_eq!(code(&run(&["canon", "A1", r#"[["-1""#])), 2);
    assert_eq!(code(&run(&["canon", "A2", r#"[["1"]]"#])), 2);
    assert_eq!(code(&run(&["oracle", "orbits", "A2", "[[99]]"])), 2);
}

#[test]
fn exceeding_the_group_limit_exits_with_code_three() {
    let flag = run(&["char", "B4", "1", "--group-limit", "10"]);
    assert_eq!(code(&flag), 3);
    let env = run_with_env(&["char", "B4", "1"], "ROOTFUND_GROUP_LIMIT", "10");
    assert_eq!(code(&env), 3);
    let msg = String::from_utf8_lossy(&flag.stderr);
    assert!(msg.contains("384"), "guard message names the computed size: {msg}");
}

#[test]
fn repeated_invocations_are_byte_identical() {
    for args in [
        vec!["classify", "B5", "D4"],
        vec!["strata", "A2", "1"],
        vec!["info", "F4"],
        vec!["fiber", "B5", "--of", "D4"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.stdout, second.stdout, "stdout differs for {args:?}");
        assert_eq!(code(&first), code(&second));
    }
}

#[test]
fn json_goes_to_stdout_and_diagnostics_to_stderr() {
    let out = run(&["classify", "B4", "B3"]);
    assert!(out.stderr.is_empty());
    serde_json::from_slice::<serde_json::Value>(&out.stdout).expect("pure JSON on stdout");

    let bad = run(&["info", "Z9"]);
    assert!(bad.stdout.is_empty());
    assert!(!bad.stderr.is_empty());
}
