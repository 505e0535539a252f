use std::process::{Command, Output};

use gmpn::{BraidWord, Factorization, GroupParams};
use serde_json::Value;

const WORKED: &str = "[(1 2)(3 4 5); (1,21,2,3,2,6)]";
const WORKED_FACTORIZATION: &str =
    "[(1 3); 1]; [(1 3); 23]; [(3 6); 0]; [(3 6); 29]; [id; (0,0,0,0,0,5)]; [(1 2); 1]; [(3 4); 2]; [(4 5); 3]";

fn gmpn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gmpn")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = gmpn(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    serde_json::from_str(&stdout(&all)).expect("valid JSON")
}

#[test]
fn worked_length() {
    let text = stdout(&["reflen", "--group", "30,5,6", WORKED]);
    assert_eq!(text.lines().next(), Some("8"));
    let v = json(&["reflen", "--group", "30,5,6", WORKED]);
    assert_eq!(v["length"], 8);
    assert_eq!(v["max_partitions"].as_array().unwrap().len(), 1);
}

#[test]
fn orbit_counts() {
    let text = stdout(&["orbit-count", "--group", "4,4,4", "[id;(2,2,2,2)]"]);
    assert_eq!(text.lines().next(), Some("12"));
    let text = stdout(&["orbit-count", "--group", "2,1,2", "[id;(1,1)]"]);
    assert_eq!(text.lines().next(), Some("2"));

    let v = json(&["orbit-count", "--group", "4,4,4", "[id;(2,2,2,2)]"]);
    assert_eq!(v["count"], 12);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 3);
    assert!(terms.iter().all(|t| t["count"] == 4));
}

#[test]
fn census_matches_formula() {
    let v = json(&["orbit-enumerate", "--group", "4,4,4", "[id;(2,2,2,2)]"]);
    assert_eq!(v["orbits"].as_array().unwrap().len(), 12);
}

#[test]
fn every_subcommand_emits_json() {
    let f = "[(1 2);0]; [(1 2);1]";
    let f2 = "[(1 2);1]; [(1 2);0]";
    let d = "[id;(1,0)]; [id;(0,1)]";
    let cases: Vec<(Vec<&str>, &str, &[&str])> = vec![
        (vec!["reflen", "[id;(1,1)]"], "reflen", &["element", "length", "max_partitions"]),
        (vec!["reflections"], "reflections", &["count", "reflections"]),
        (vec!["factorize", "[id;(1,1)]"], "factorize", &["length", "count", "factorizations"]),
        (vec!["orbit-count", "[id;(1,1)]"], "orbit-count", &["count", "transitive", "terms"]),
        (vec!["orbit-enumerate", "[id;(1,1)]"], "orbit-enumerate", &["factorizations", "orbits"]),
        (vec!["equivalent", f, d], "equivalent", &["equivalent", "reason", "invariants"]),
        (vec!["connect", f, f2], "connect", &["connected", "word"]),
        (vec!["normalize", f2], "normalize", &["standard_form", "word"]),
        (vec!["subgroup", f], "subgroup", &["fingerprint", "closure_size"]),
        (vec!["qc", "[(1 2);(1,0)]"], "qc", &["weak", "strong", "rank_length"]),
        (vec!["cross-check"], "cross-check", &["elements", "passed", "suites"]),
    ];
    for (mut args, command, keys) in cases {
        args.extend(["--group", "2,1,2"]);
        let v = json(&args);
        assert_eq!(v["command"], command);
        assert_eq!(v["group"]["m"], 2);
        for key in keys {
            assert!(v.get(key).is_some(), "{command} lacks {key}");
        }
    }
}

#[test]
fn equivalence_reasons() {
    let v = json(&["equivalent", "--group", "2,1,2", "[(1 2);0]; [(1 2);1]", "[id;(1,0)]; [id;(0,1)]"]);
    assert_eq!(v["equivalent"], false);
    assert_eq!(v["reason"], "partition-mismatch");
    let v = json(&["equivalent", "--group", "2,1,2", "[(1 2);0]; [(1 2);1]", "[(1 2);1]; [(1 2);0]"]);
    assert_eq!(v["equivalent"], true);
    assert_eq!(v["reason"], "same-invariants");
    // one block of two cycles with r = 2: the pair weight mod 2 separates orbits
    let v = json(&["equivalent", "--group", "4,4,2", "[(1 2);0]; [(1 2);2]", "[(1 2);1]; [(1 2);3]"]);
    assert_eq!(v["equivalent"], false);
    assert_eq!(v["reason"], "residue-mismatch");
}

#[test]
fn connect_word_carries_second_to_first() {
    let params: GroupParams = "30,5,6".parse().unwrap();
    let first = Factorization::parse(WORKED_FACTORIZATION, params).unwrap();
    let second = first.apply_braid(&"3 -1 4 2 -5 6 -7 1".parse().unwrap()).unwrap();
    let v = json(&["connect", "--group", "30,5,6", WORKED_FACTORIZATION, &second.to_string()]);
    assert_eq!(v["connected"], true);
    let letters: Vec<i32> = v["word"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap() as i32).collect();
    let w = BraidWord::new(letters).unwrap();
    assert_eq!(second.apply_braid(&w).unwrap(), first);

    let text = stdout(&["connect", "--group", "4,4,2", "[(1 2);0]; [(1 2);2]", "[(1 2);1]; [(1 2);3]"]);
    assert_eq!(text.trim(), "inequivalent");
}

#[test]
fn normalize_reaches_a_standard_form() {
    let params: GroupParams = "30,5,6".parse().unwrap();
    let f = Factorization::parse(WORKED_FACTORIZATION, params)
        .unwrap()
        .apply_braid(&"1 2 3 -4 5 6 7".parse().unwrap())
        .unwrap();
    let v = json(&["normalize", "--group", "30,5,6", &f.to_string()]);
    let std = v["standard_form"].as_array().unwrap();
    let std: Vec<&str> = std.iter().map(|x| x.as_str().unwrap()).collect();
    let std = Factorization::parse(&std.join("; "), params).unwrap();
    assert!(gmpn::is_standard_form(&std).unwrap());
    let letters: Vec<i32> = v["word"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap() as i32).collect();
    assert_eq!(f.apply_braid(&BraidWord::new(letters).unwrap()).unwrap(), std);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["orbit-enumerate", "--group", "3,3,3", "[(1 2 3);(0,1,2)]"],
        vec!["factorize", "--group", "4,2,3", "[(1 2);(1,1,2)]", "--json"],
        vec!["cross-check", "--group", "2,2,3", "--threads", "3"],
    ] {
        assert_eq!(stdout(&args), stdout(&args));
    }
}

#[test]
fn exit_statuses() {
    let out = gmpn(&["reflen", "--group", "4,3,2", "[id;(0,0)]"]);
    assert_eq!(out.status.code(), Some(1));
    let out = gmpn(&["reflen", "--group", "4,1,2", "[id;(1)]"]);
    assert_eq!(out.status.code(), Some(1));
    let out = gmpn(&["reflen", "[id]"]);
    assert_eq!(out.status.code(), Some(1));
    let out = gmpn(&["normalize", "--group", "2,1,2", "[(1 2);0]; [(1 2);0]"]);
    assert_eq!(out.status.code(), Some(1));

    let out = gmpn(&["orbit-enumerate", "--group", "4,4,4", "[id;(2,2,2,2)]", "--max-factorizations", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let out = gmpn(&["cross-check", "--group", "3,1,3", "--max-states", "100", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "limit");
}

#[test]
fn subgroup_closure_respects_the_guard() {
    let f = "[(1 2);1]; [(2 3);0]; [id;(1,0,0)]";
    let v = json(&["subgroup", "--group", "4,1,3", f]);
    assert_eq!(v["closure_size"], 384);
    assert_eq!(v["fingerprint"]["order"], 384);
    let v = json(&["subgroup", "--group", "4,1,3", f, "--max-states", "50"]);
    assert!(v["closure_size"].is_null());
}
