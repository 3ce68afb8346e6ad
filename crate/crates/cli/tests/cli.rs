//! End-to-end runs of the `plumbing` binary against the files in `data/`.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    root.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plumbing"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid JSON on stdout");
    assert_eq!(v["schema_version"], "1");
    (v, out.status.code().unwrap())
}

#[test]
fn check_reports_predicates() {
    let (v, code) = json(&["check", &data("non_almost_rational.txt")]);
    assert_eq!(code, 0);
    let r = &v["results"];
    assert_eq!(r["determinant"], "2304");
    assert_eq!(r["bad_vertex_count"], 2);
    assert_eq!(r["almost_rational_proxy"], false);
    assert_eq!(r["negative_definite"], true);

    let (v, _) = json(&["check", &data("two_bad_minus_one.txt")]);
    assert_eq!(v["results"]["determinant"], "-1");
    assert_eq!(v["results"]["minimal"], false);
}

#[test]
fn theta_on_reference_graphs() {
    for (file, want) in [
        ("two_branching.txt", "2/3"),
        ("two_bad_minus_one.txt", "-10"),
        ("non_almost_rational.txt", "-18"),
        ("chain_33.txt", "-1"),
        ("star_7_half4.txt", "-2"),
    ] {
        let (v, code) = json(&["theta", &data(file), "--all-roots"]);
        assert_eq!(code, 0, "{file}");
        assert_eq!(v["results"]["theta_recursion"], want, "{file}");
        assert_eq!(v["results"]["theta_oracle"], want, "{file}");
        assert_eq!(v["results"]["root_independent"], true);
    }
}

#[test]
fn theta_table_sums_to_total() {
    let (v, _) = json(&["theta", &data("chain_33.txt"), "--root", "b", "--table"]);
    let root = &v["results"]["roots"][0];
    assert_eq!(root["root"], "b");
    assert_eq!(root["sum"], "1");
    assert_eq!(root["table"].as_array().unwrap().len(), 2);
}

#[test]
fn theta_seifert_routes_agree() {
    let (v, code) = json(&[
        "theta-seifert",
        "--e0",
        "-7",
        "--leg",
        "2/1",
        "--leg",
        "2/1",
        "--leg",
        "2/1",
        "--leg",
        "2/1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["theta"], "-2");
    assert_eq!(v["results"]["routes"].as_array().unwrap().len(), 4);
    assert_eq!(v["results"]["euler_number"], "-5");
}

#[test]
fn theta_seifert_normalizes_and_flags_minus_one() {
    // 3/2 folds into the central weight: (-2; 3/2) becomes (-1; 1/2).
    let (v, code) = json(&[
        "theta-seifert",
        "--e0",
        "-2",
        "--leg",
        "2/3",
        "--leg",
        "3/1",
        "--leg",
        "7/1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["normalized"]["e0"], "-1");
    assert_eq!(v["diagnostics"].as_array().unwrap().len(), 1);
}

#[test]
fn theta_seifert_single_route() {
    let (v, _) = json(&[
        "theta-seifert",
        "--e0",
        "-3",
        "--leg",
        "5/2",
        "--leg",
        "3/1",
        "--route",
        "nn",
    ]);
    let routes = v["results"]["routes"].as_array().unwrap();
    assert_eq!(routes.len(), 1);
    assert_eq!(routes[0]["route"], "dedekind");
}

#[test]
fn d_invariant_values() {
    let (v, _) = json(&["d", &data("single.txt")]);
    assert_eq!(v["results"]["d"], "1/4");
    assert_eq!(v["results"]["gap"], "0");

    let (v, _) = json(&["d", &data("two_branching.txt")]);
    assert_eq!(v["results"]["gap"], "0");
    assert_eq!(v["results"]["d"], v["results"]["lower_bound"]);

    let (v, _) = json(&["d", &data("non_almost_rational.txt")]);
    assert_eq!(v["results"]["lower_bound"], "-4");
    assert_eq!(v["results"]["d"], "2");
}

#[test]
fn rotations_verdict_and_cap() {
    let (v, code) = json(&["rotations", &data("chain_33.txt")]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["vectors"], 4);
    assert_eq!(v["results"]["verdict"], "minimization holds");

    let (v, code) = json(&["rotations", &data("two_branching.txt"), "--cap", "2"]);
    assert_eq!(code, 6);
    assert!(v["results"]["error"].as_str().unwrap().contains("cap"));
}

#[test]
fn rotations_reject_non_minimal() {
    let out = run(&["rotations", &data("two_bad_minus_one.txt")]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn search_finds_sporadics() {
    let (v, code) = json(&["search-theta2"]);
    assert_eq!(code, 0);
    let stars = v["results"]["stars"].as_array().unwrap();
    let sporadic = stars.iter().filter(|s| s["origin"] == "sporadic").count();
    assert_eq!(sporadic, 5);
    assert!(stars.iter().all(|s| s["theta"] == "-2" && s["tree_verified"] == true));
}

#[test]
fn search_families_listing() {
    let (v, _) = json(&["search-theta2", "--families", "--max-ell", "2"]);
    assert_eq!(v["results"]["hits"], 6);
}

#[test]
fn ssw_certificate() {
    let (v, code) = json(&["verify-ssw", &data("chain_52.txt"), &data("chain_52.cert")]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["valid"], true);

    let (v, code) = json(&["verify-ssw", &data("chain_33.txt"), &data("chain_52.cert")]);
    assert_eq!(code, 1);
    assert_eq!(v["results"]["valid"], false);
}

#[test]
fn error_exit_codes() {
    assert_eq!(run(&["check", &data("missing.txt")]).status.code(), Some(3));
    assert_eq!(run(&["check", &data("triangle.txt")]).status.code(), Some(4));
    let out = run(&["check", &data("bad_weight.txt")]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2, column 10"));
    assert_eq!(
        run(&["theta-seifert", "--e0", "-2", "--leg", "0/1"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    // A certificate with the wrong shape is a parse failure.
    assert_eq!(
        run(&["verify-ssw", &data("chain_52.txt"), &data("chain_33.txt")])
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn text_output_matches_json_numbers() {
    let out = run(&["theta", &data("two_branching.txt")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("theta_recursion: 2/3"));
    assert!(text.contains("agree: true"));
}

#[test]
fn errors_echo_inputs() {
    let (v, code) = json(&["search-theta2", "--max-vertices", "1"]);
    assert_eq!(code, 2);
    assert_eq!(v["command"], "search-theta2");
    assert_eq!(v["input_echo"]["max_vertices"], 1);
    let (v, _) = json(&["d", &data("missing.txt")]);
    assert_eq!(v["input_echo"]["file"], data("missing.txt"));
}

#[test]
fn rotation_tables_on_reference_graphs() {
    let (v, code) = json(&["rotations", &data("two_branching.txt")]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["vectors"], 9);

    let (v, code) = json(&["rotations", &data("star_7_half4.txt")]);
    assert_eq!(code, 0);
    for row in v["results"]["rows"].as_array().unwrap() {
        if row["class"] == "consistent" {
            assert_eq!(row["theta"], "-2");
        } else {
            assert_eq!(row["rhb_obstructed"], true);
        }
    }
}

#[test]
fn smallest_theta_two_star() {
    let (v, _) = json(&["search-theta2", "--max-vertices", "5"]);
    let stars = v["results"]["stars"].as_array().unwrap();
    assert_eq!(stars.len(), 1);
    assert_eq!(
        (stars[0]["ell"].clone(), stars[0]["k"].clone(), stars[0]["b"].clone()),
        (1.into(), 4.into(), 7.into())
    );

    let (v, _) = json(&["search-theta2", "--families", "--max-ell", "3"]);
    assert_eq!(v["results"]["hits"], 9);
    assert_eq!(v["results"]["all_verified"], true);
}

#[test]
fn reference_contribution_tables() {
    let (v, _) = json(&[
        "theta",
        &data("two_branching.txt"),
        "--table",
        "--root",
        "v1",
        "--root",
        "v5",
    ]);
    let roots = v["results"]["roots"].as_array().unwrap();
    let nonzero = |r: &Value| -> Vec<String> {
        r["table"]
            .as_array()
            .unwrap()
            .iter()
            .map(|row| row["alpha_s2"].as_str().unwrap().to_string())
            .filter(|x| x != "0")
            .collect()
    };
    assert_eq!(nonzero(&roots[0]), ["28/39", "196/65", "8/5"]);
    assert_eq!(nonzero(&roots[1]), ["8/5", "56/15"]);
    assert!(roots.iter().all(|r| r["theta"] == "2/3" && r["sum"] == "16/3"));
}
