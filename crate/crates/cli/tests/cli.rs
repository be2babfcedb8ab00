use hopdom::{parse_roles, read_dimacs};
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hopdom"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_p4(dir: &Path) -> String {
    let path = dir.join("p4.dimacs");
    fs::write(&path, "p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n").unwrap();
    path.to_string_lossy().into_owned()
}

fn write_k2(dir: &Path) -> String {
    let path = dir.join("k2.dimacs");
    fs::write(&path, "p edge 2 1\ne 1 2\n").unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn solve_hop_p4_exact_value_two() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = write_p4(dir.path());
    let json = dir.path().join("out.json");
    let out = run(&[
        "solve", "--problem", "hop", "--r", "2", "--input", &p4, "--method", "exact", "--json",
        json.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("status optimal value 2"), "{text}");
    let record: serde_json::Value = serde_json::from_str(&fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(record["problem"], "hop");
    assert_eq!(record["r"], 2);
    assert_eq!(record["status"], "optimal");
    assert_eq!(record["value"], 2);
    assert!(record["witness"]["vertex_set"].is_array());
}

#[test]
fn solve_methods_agree_and_greedy_is_valid() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = write_p4(dir.path());
    for problem in ["dom", "totaldom", "step", "hop"] {
        let mut args = vec!["solve", "--problem", problem, "--input", p4.as_str()];
        if matches!(problem, "step" | "hop") {
            args.extend(["--r", "2"]);
        }
        let exact = stdout(&run(&[args.clone(), vec!["--method", "exact"]].concat()));
        let brute = stdout(&run(&[args.clone(), vec!["--method", "brute"]].concat()));
        let pick = |s: &str| s.lines().find(|l| l.starts_with("status")).unwrap().to_string();
        assert_eq!(pick(&exact), pick(&brute), "{problem}");
    }
}

#[test]
fn transform_r1_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = write_p4(dir.path());
    let out_path = dir.path().join("d1.dimacs");
    let out = run(&["transform", "--r", "1", "--input", &p4, "--output", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    let original = read_dimacs(&fs::read_to_string(&p4).unwrap()).unwrap();
    let transformed = read_dimacs(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(original.edges(), transformed.edges());
}

#[test]
fn gadget_outputs_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = write_k2(dir.path());
    let g2 = dir.path().join("g2.dimacs");
    let roles = dir.path().join("roles.txt");
    let out = run(&[
        "gadget", "--family", "step-bipartite", "--r", "2", "--input", &k2, "--output",
        g2.to_str().unwrap(), "--roles", roles.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let graph = read_dimacs(&fs::read_to_string(&g2).unwrap()).unwrap();
    assert_eq!(graph.n(), 19);
    assert_eq!(graph.m(), 21);
    let parsed = parse_roles(&fs::read_to_string(&roles).unwrap()).unwrap();
    assert_eq!(parsed.len(), graph.n());
}

#[test]
fn certify_k2_step_bipartite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = write_k2(dir.path());
    let out = run(&[
        "certify", "--gadget-family", "step-bipartite", "--r", "2", "--input", &k2, "--domset", "1",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("PASS size 5 (= k+2r)"));
}

#[test]
fn certify_non_dominating_set_fails_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = write_p4(dir.path());
    // {v1} does not dominate P4, so the certificate builder refuses.
    let out = run(&[
        "certify", "--gadget-family", "step-bipartite", "--r", "2", "--input", &p4, "--domset", "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_runs_campaign_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("campaign.json");
    fs::write(
        &config,
        r#"{
            "master_seed": 7,
            "checks": ["transform", "structural"],
            "instances": [{"family": "path", "n": 4}, {"family": "cycle", "n": 5}],
            "r_values": [2],
            "parallelism": 2
        }"#,
    )
    .unwrap();
    let report = dir.path().join("report.json");
    let out = run(&[
        "verify", "--config", config.to_str().unwrap(), "--report", report.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let parsed: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert!(parsed["records"].as_array().unwrap().len() > 0);
    assert_eq!(parsed["summary"]["mismatches"], 0);
}

#[test]
fn gen_respects_hopdom_seed_override() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.dimacs");
    let b = dir.path().join("b.dimacs");
    let c = dir.path().join("c.dimacs");
    let gen = |path: &Path, env_seed: Option<&str>| {
        let mut cmd = bin();
        cmd.args([
            "gen", "--family", "gnp", "--n", "12", "--p", "0.5", "--seed", "1", "--output",
            path.to_str().unwrap(),
        ]);
        match env_seed {
            Some(s) => cmd.env("HOPDOM_SEED", s),
            None => cmd.env_remove("HOPDOM_SEED"),
        };
        assert!(cmd.output().unwrap().status.success());
    };
    gen(&a, None);
    gen(&b, Some("999"));
    gen(&c, Some("999"));
    assert_ne!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(fs::read(&b).unwrap(), fs::read(&c).unwrap());
}

#[test]
fn bench_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("bench.json");
    let out = run(&["bench", "--report", report.to_str().unwrap()]);
    assert!(out.status.success());
    let parsed: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(parsed["suite"], "default");
    assert!(parsed["entries"].as_array().unwrap().len() > 0);
}

#[test]
fn errors_exit_one_with_diagnostics() {
    // Unknown flag.
    let out = run(&["solve", "--problem", "dom", "--input", "x", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    // Missing file names the path.
    let out = run(&["solve", "--problem", "dom", "--input", "/nonexistent/g.dimacs"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/g.dimacs"));
    // --r on a non-distance problem.
    let dir = tempfile::tempdir().unwrap();
    let p4 = write_p4(dir.path());
    let out = run(&["solve", "--problem", "dom", "--r", "2", "--input", &p4]);
    assert_eq!(out.status.code(), Some(1));
}
