use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut argv = vec!["vlink"];
    argv.extend_from_slice(args);
    let mut input = stdin.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = vlink::cli::run_with_io(argv, &mut input, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn schema() -> jsonschema::JSONSchema {
    let raw: Value =
        serde_json::from_str(include_str!("../schema/vlink-output.schema.json")).unwrap();
    jsonschema::JSONSchema::compile(&raw).expect("schema compiles")
}

fn json(args: &[&str], stdin: &str) -> (i32, Value) {
    let (code, out, err) = run(args, stdin);
    let value: Value =
        serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}\n{err}"));
    let compiled = schema();
    if let Err(errors) = compiled.validate(&value) {
        let msgs: Vec<String> = errors
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect();
        panic!("{args:?} violates schema: {msgs:#?}\n{out}");
    }
    (code, value)
}

const VIRTUAL_HOPF: &str = "O1+ / U1+";
const VIRTUAL_TREFOIL: &str = "O1+ U2+ / U1+ O2+ O3+ U3+";

#[test]
fn invariants_of_the_virtual_hopf_link() {
    let (code, v) = json(&["invariants", "-"], VIRTUAL_HOPF);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "invariants");
    assert_eq!(v["total_span"], 1);
    assert_eq!(v["pairs"][0]["doubled_lk"], 1);
    assert_eq!(v["warping_degree"], 0);
}

#[test]
fn search_finds_an_exact_index() {
    let (code, v) = json(&["search", "-"], VIRTUAL_HOPF);
    assert_eq!(code, 0);
    assert_eq!(v["kind"], "exact");
    assert_eq!(v["m"], 1);
    assert_eq!(v["n"], 0);
}

#[test]
fn every_subcommand_matches_the_schema() {
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["bounds", "-"], VIRTUAL_TREFOIL),
        (vec!["search", "-"], VIRTUAL_TREFOIL),
        (vec!["simplify", "-"], "O1+ U1+ O2- U2-"),
        (vec!["--enable-r3", "simplify", "-"], "O1+ U1+"),
        (vec!["pretzel", "gen", "1,3"], ""),
        (
            vec![
                "pretzel", "formula", "--thm32", "2,2", "--k-even", "1,0", "--k-odd", "0,1",
            ],
            "",
        ),
        (
            vec![
                "pretzel", "formula", "--cor33", "2,4", "--k", "3", "--k1", "1",
            ],
            "",
        ),
        (vec!["pretzel", "verify", "1,3", "--all-subsets"], ""),
        (
            vec![
                "pretzel",
                "verify",
                "3,3,3,3",
                "--max-subsets",
                "8",
                "--no-search",
            ],
            "",
        ),
        (vec!["oracle", "lemma22", "--random", "5"], ""),
        (vec!["oracle", "thm26", "--random", "5"], ""),
    ];
    for (args, input) in cases {
        let (code, v) = json(&args, input);
        assert!(code == 0 || code == 2, "{args:?} exited {code}");
        assert!(v.get("command").is_some(), "{args:?}");
    }
}

#[test]
fn worked_example_formula() {
    let (code, v) = json(
        &[
            "pretzel", "formula", "--thm31", "7,5,9,11", "--k", "13", "--k1", "10",
        ],
        "",
    );
    assert_eq!(code, 0);
    assert_eq!((v["m"].as_u64(), v["n"].as_u64()), (Some(7), Some(6)));
}

#[test]
fn subset_totals_survive_serialization() {
    let (_, v) = json(
        &[
            "pretzel",
            "verify",
            "9,9,9,9,9,9",
            "--max-subsets",
            "2",
            "--no-search",
        ],
        "",
    );
    assert_eq!(v["total_subsets"].as_u64(), Some(1u64 << 54));
}

#[test]
fn batches_produce_arrays() {
    let input = format!("{VIRTUAL_HOPF}\n\n{VIRTUAL_TREFOIL}\n");
    let (code, v) = json(&["invariants", "-"], &input);
    assert_eq!(code, 0);
    assert_eq!(v.as_array().map(Vec::len), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["invariants", "-"], "O1+ O1+").0, 1);
    assert_eq!(run(&["frobnicate"], "").0, 1);
    assert_eq!(run(&["pretzel", "gen", "0,2"], "").0, 1);
    let (code, out, _) = run(&["--help"], "");
    assert_eq!(code, 0);
    assert!(out.contains("search"));

    let trefoil = "O1+ U2+ O3+ U1+ O2+ U3+";
    assert_eq!(run(&["search", "-"], trefoil).0, 0);
    assert_eq!(run(&["--require-exact", "search", "-"], trefoil).0, 2);
    assert_eq!(run(&["--require-exact", "search", "-"], VIRTUAL_HOPF).0, 0);
}

#[test]
fn text_output_is_plain() {
    let (code, out, _) = run(&["--format", "text", "bounds", "-"], VIRTUAL_HOPF);
    assert_eq!(code, 0);
    assert!(serde_json::from_str::<Value>(&out).is_err());
    assert!(out.contains("lower"));
}

#[test]
fn output_is_deterministic() {
    let args = ["--seed", "7", "oracle", "thm26", "--random", "20"];
    assert_eq!(run(&args, "").1, run(&args, "").1);
    let search = ["search", "-"];
    assert_eq!(
        run(&search, VIRTUAL_TREFOIL).1,
        run(&search, VIRTUAL_TREFOIL).1
    );
}

#[test]
fn schema_rejects_malformed_documents() {
    let compiled = schema();
    let (_, mut v) = json(&["search", "-"], VIRTUAL_HOPF);
    assert!(compiled.is_valid(&v));
    v["m"] = Value::from(-1);
    assert!(!compiled.is_valid(&v));
    assert!(!compiled.is_valid(&serde_json::json!({"command": "nonsense"})));
}
