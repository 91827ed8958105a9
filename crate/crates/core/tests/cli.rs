use pmcoh::cli::run;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("pmcoh").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn theta_bracket() {
    assert_eq!(invoke(&["bracket", "--family", "theta", "--m", "1"]), (0, "z^-2 + 1\n".into(), String::new()));
}

#[test]
fn bracket_variants() {
    let (_, four, _) = invoke(&["bracket", "--four-color", "--family", "theta"]);
    let (_, general, _) = invoke(&["bracket", "--general", "1", "-z", "z^-1 + 1 + z", "--family", "theta"]);
    assert_eq!(four, general);
    let (code, norm, _) = invoke(&["bracket", "--normalize", "--family", "theta"]);
    assert_eq!((code, norm.as_str()), (0, "z^-1\n"));
    let (code, _, err) = invoke(&["bracket", "--general", "1", "z^", "1", "--family", "theta"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));
}

#[test]
fn k4_table_layout() {
    let (code, out, _) = invoke(&["cohomology", "--family", "K4"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows[0].split_whitespace().collect::<Vec<_>>(), ["j\\i", "0", "1", "2"]);
    assert_eq!(rows[1].split_whitespace().collect::<Vec<_>>(), ["4", ".", ".", "1"]);
    assert_eq!(rows.last().unwrap().split_whitespace().collect::<Vec<_>>(), ["-1", "1", ".", "."]);
    assert_eq!(rows.len(), 7);
}

#[test]
fn json_schema() {
    let (_, out, _) = invoke(&["cohomology", "--family", "theta", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schemaVersion"], 1);
    let cells: Vec<(i64, i64, i64)> = v["cohomology"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["i"].as_i64().unwrap(), c["j"].as_i64().unwrap(), c["dim"].as_i64().unwrap()))
        .collect();
    assert_eq!(cells, [(0, -2, 1), (0, 0, 1)]);
    let (_, out, _) = invoke(&["bracket", "--family", "K4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["polynomial"], serde_json::json!([[-1, 1], [0, -1], [1, 1], [4, 1]]));
}

#[test]
fn tsv_output() {
    let (_, out, _) = invoke(&["cohomology", "--family", "theta", "--format", "tsv"]);
    assert_eq!(out, "i\tj\tdim\n0\t-2\t1\n0\t0\t1\n");
}

#[test]
fn verify_all_on_p3_ladder() {
    let (code, out, _) = invoke(&["verify", "--suite", "all", "--family", "prism-L", "--m", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().filter(|l| !l.starts_with("info")).all(|l| l.starts_with("pass")));
    assert!(out.contains("info"));
}

#[test]
fn single_suites() {
    for suite in ["dsq", "euler", "flips", "oracles", "lollipop", "union", "smap"] {
        let (code, out, _) = invoke(&["verify", "--suite", suite, "--family", "dumbbell", "--m", "2"]);
        assert_eq!(code, 0, "{suite}: {out}");
        assert!(!out.is_empty());
    }
}

#[test]
fn usage_errors() {
    assert_eq!(invoke(&["cohomology"]).0, 1);
    assert_eq!(invoke(&["cohomology", "--family", "petersen"]).0, 1);
    assert_eq!(invoke(&["cohomology", "--family", "K4", "--m", "2"]).0, 1);
    assert_eq!(invoke(&["frobnicate"]).0, 1);
    assert_eq!(invoke(&["cohomology", "--input", "/nonexistent/graph.txt"]).0, 1);
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Usage"));
}

#[test]
fn file_input_matches_family() {
    let dir = std::env::temp_dir().join(format!("pmcoh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("theta.txt");
    std::fs::write(&path, "vertex u: e1.0 e2.0 e3.0\nvertex v: e1.1 e3.1 e2.1\nmatching: e1\n").unwrap();
    let from_file = invoke(&["cohomology", "--input", path.to_str().unwrap()]);
    let from_family = invoke(&["cohomology", "--family", "theta"]);
    assert_eq!(from_file, from_family);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn flip_report_and_emit() {
    let (code, out, _) = invoke(&["flip", "--family", "theta", "--m", "2", "--inside", "u1,v1"]);
    assert_eq!(code, 0);
    assert!(out.contains("cut edges: s1,t1"));
    assert!(out.contains("cohomology unchanged: yes"));
    let (code, out, _) = invoke(&["flip", "--family", "theta", "--m", "2", "--inside", "u1,v1", "--emit"]);
    assert_eq!(code, 0);
    let d = pmcoh::parse_diagram(&out).unwrap();
    assert_eq!(d.num_vertices(), 4);
    assert_eq!(invoke(&["flip", "--family", "theta", "--inside", "nowhere"]).0, 1);
}

#[test]
fn oracle_and_tait() {
    assert_eq!(invoke(&["oracle", "tait-colorings", "--family", "K4"]).1, "taitColorings: 6\n");
    assert!(invoke(&["oracle", "two-factors", "--family", "theta"]).1.starts_with("twoFactors: 2\n"));
    assert!(invoke(&["oracle", "even", "--family", "prism-L"]).1.starts_with("even: false\n"));
    assert!(invoke(&["oracle", "matchings", "--family", "prism-L"]).1.starts_with("perfectMatchings: 4\n"));
    assert_eq!(invoke(&["tait", "--family", "theta"]).1, "3z^-2 + 3\n");
    let (_, out, _) = invoke(&["tait", "--per-matching", "--family", "prism-L", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["matchings"].as_array().unwrap().len(), 4);
}

#[test]
fn hypercube_dump() {
    let (code, out, _) = invoke(&["hypercube", "--family", "K4", "--format", "tsv"]);
    assert_eq!(code, 0);
    let states: Vec<&str> = out.lines().filter(|l| l.starts_with("state")).collect();
    assert_eq!(states, ["state\t00\t0\t1", "state\t10\t1\t1", "state\t01\t1\t1", "state\t11\t2\t2"]);
    assert_eq!(out.lines().filter(|l| l.starts_with("edge")).count(), 4);
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--family", "K4", "--format", "json"];
    assert_eq!(invoke(&args), invoke(&args));
}
