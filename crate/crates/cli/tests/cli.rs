use std::process::{Command, Output};

fn incidence(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_incidence"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn monex_coproduct() {
    let o = incidence(&["coproduct", "monex", "--morphism", "(x,x)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1*(x,x)⊗(x,x) + 1*(x,y)⊗(y,x)");
}

#[test]
fn scaled_coproduct_of_the_unit() {
    let o = incidence(&["coproduct", "xmod-s3", "--morphism", "(e,e)"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.matches("1/3*").count(), 3, "{out}");
}

#[test]
fn forest_antipode() {
    let o = incidence(&["antipode", "forest", "--morphism", "•"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "-1*•");
}

#[test]
fn antipode_needs_a_group_of_objects() {
    let o = incidence(&["antipode", "monex", "--morphism", "(x,y)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not a Hopf algebra"), "{}", stderr(&o));
}

#[test]
fn passing_and_failing_suites() {
    let ok = incidence(&["verify", "skew", "--suite", "combinatorial", "--max-size", "3"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert!(stdout(&ok).contains("overall: PASS"));

    let bad = incidence(&["verify", "quiver", "--suite", "combinatorial"]);
    assert_eq!(bad.status.code(), Some(1));
    let out = stdout(&bad);
    assert!(out.contains("overall: FAIL"));
    assert!(out.contains("domain 4 -> codomain 3"), "{out}");

    let hopf = incidence(&["verify", "xmod-s3", "--suite", "weakhopf"]);
    assert_eq!(hopf.status.code(), Some(0), "{}", stdout(&hopf));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(incidence(&["verify", "no-such-preset"]).status.code(), Some(2));
    assert_eq!(incidence(&["verify", "skew", "--max-size", "0"]).status.code(), Some(2));
    assert_eq!(incidence(&["verify", "skew", "--suite", "weakhopf"]).status.code(), Some(2));
    assert_eq!(incidence(&["coproduct", "skew", "--morphism", "skew(1,0"]).status.code(), Some(2));
    assert_eq!(incidence(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(incidence(&["--help"]).status.code(), Some(0));
}

#[test]
fn config_files_are_read() {
    let dir = std::env::temp_dir().join(format!("incidence-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("z3.toml");
    std::fs::write(&good, "kind = \"relmonoid\"\nmonoid = \"Z/3\"\nrelation = \"equality\"\n").unwrap();
    let o = incidence(&["verify", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "kind = \"relmonoid\"\nmonoid = \"Z/0\"\nrelation = \"equality\"\n").unwrap();
    assert_eq!(incidence(&["verify", bad.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_report() {
    let path = std::env::temp_dir().join(format!("incidence-cli-{}.json", std::process::id()));
    let o = incidence(&[
        "verify",
        "monex",
        "--suite",
        "bialgebra",
        "--seed",
        "7",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(doc["instance"], "monex");
    assert_eq!(doc["seed"], 7);
    assert_eq!(doc["passed"], false);
    let checks = doc["reports"][0]["checks"].as_array().unwrap();
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed.len(), 1, "{failed:?}");
    assert!(failed[0].starts_with("pointedness"));
}

#[test]
fn output_is_deterministic() {
    let run = || stdout(&incidence(&["verify", "forest", "--max-size", "3"]));
    assert_eq!(run(), run());
    let demo = || stdout(&incidence(&["demo", "xmod-s3"]));
    assert_eq!(demo(), demo());
}

#[test]
fn demos_and_presets() {
    for name in ["monex", "skew", "forest-ck", "bigraph-react", "quiver-fail", "xmod-s3"] {
        let o = incidence(&["demo", name]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
        assert!(!stdout(&o).is_empty());
    }
    let o = incidence(&["presets"]);
    let listed = stdout(&o);
    for name in ["monex", "skew", "forest", "bigraph", "quiver", "xmod-s3", "aut-s3"] {
        assert!(listed.lines().any(|l| l.starts_with(name)), "{name}");
    }
}
