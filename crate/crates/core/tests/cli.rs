use std::process::Command;

const BIN: &str = env!("CARGO_BIN_EXE_mhg-twist");
const GOLDEN_CSV: &str = include_str!("golden/classify_delta3.csv");
const GOLDEN_JSON: &str = include_str!("golden/classify_delta3.json");

fn run(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(BIN);
    cmd.args(args).env_remove("MHG_TWIST_JOBS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn twists_delta5() {
    let (code, out, _) = run(&["twists", "--delta", "5"], &[]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "rho = (1 2 4 3 5)\nrho_inv = (1 5 3 4 2)\ntau0 = (1 4)\ntau1 = (1 5)\n"
    );
}

#[test]
fn check_exceptional_row() {
    let (code, out, _) = run(
        &[
            "check", "--delta", "3", "--k1", "1", "--k2", "2", "--c", "10", "--cprime", "11",
            "--sigma", "tau1",
        ],
        &[],
    );
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["outcome"], "TWISTABLE");
    assert_eq!(v["image_params"]["C"], 10);
}

#[test]
fn check_rejects_inadmissible_tuple() {
    let (code, _, err) = run(
        &[
            "check", "--delta", "4", "--k1", "1", "--k2", "1", "--c", "9", "--cprime", "10",
            "--sigma", "rho",
        ],
        &[],
    );
    assert_eq!(code, 2);
    assert!(err.contains("not admissible"), "{err}");
}

#[test]
fn classify_matches_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let (code, out, _) = run(
        &[
            "classify",
            "--delta-min",
            "3",
            "--delta-max",
            "3",
            "--out",
            csv.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(code, 0);
    assert_eq!(out, GOLDEN_JSON);
    assert_eq!(std::fs::read_to_string(&csv).unwrap(), GOLDEN_CSV);
}

#[test]
fn output_is_independent_of_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for (i, jobs) in ["1", "3", "8"].iter().enumerate() {
        let csv = dir.path().join(format!("{i}.csv"));
        let (code, out, _) = run(
            &[
                "classify",
                "--delta-min",
                "3",
                "--delta-max",
                "6",
                "--verify-table1",
                "--out",
                csv.to_str().unwrap(),
            ],
            &[("MHG_TWIST_JOBS", jobs)],
        );
        assert_eq!(code, 0);
        outputs.push((out, std::fs::read(&csv).unwrap()));
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn classify_full_range_passes() {
    let (code, out, _) = run(
        &[
            "--jobs",
            "2",
            "classify",
            "--delta-min",
            "3",
            "--delta-max",
            "7",
            "--verify-table1",
        ],
        &[],
    );
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pass"], true);
}

#[test]
fn bad_jobs_env_is_a_usage_error() {
    let (code, _, err) = run(&["twists", "--delta", "3"], &[("MHG_TWIST_JOBS", "zero")]);
    assert_eq!(code, 2);
    assert!(err.contains("MHG_TWIST_JOBS"));
}

#[test]
fn cycle_and_finite() {
    let (code, out, _) = run(&["cycle", "--n", "7"], &[]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "mu1\t()\tverified\nmu2\t(1 2 3)\tverified\nmu3\t(1 3 2)\tverified\n"
    );

    let (code, out, _) = run(
        &[
            "finite",
            "--graph",
            "icosahedron",
            "--sigma",
            "transposition:1:2",
        ],
        &[],
    );
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["valid"], true);
    assert_eq!(v["twisted_homogeneous"], true);

    let (code, out, _) = run(&["finite", "--graph", "crown:4", "--sigma", "(1 2)"], &[]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["valid"], false);
}

#[test]
fn finite_reads_edge_list_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c7.txt");
    std::fs::write(
        &path,
        (0..7)
            .map(|i| format!("{i} {}\n", (i + 1) % 7))
            .collect::<String>(),
    )
    .unwrap();
    let arg = format!("file:{}", path.display());
    let (code, out, _) = run(&["finite", "--graph", &arg, "--sigma", "mu:7:3"], &[]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["isometric_to_original"], true);
}

#[test]
fn table1_delta4() {
    let (code, out, _) = run(&["table1", "--delta", "4"], &[]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "kind,delta,K1,K2,C,Cprime,bipartite,exceptional");
    assert!(lines.contains(&"tau1,4,2,3,11,12,false,false"));
    assert!(lines.contains(&"tau0,4,inf,0,9,10,true,false"));
    assert!(lines.contains(&"tau1,4,1,3,11,14,false,true"));
    assert_eq!(lines.len(), 9);
}

#[test]
fn usage_errors() {
    assert_eq!(run(&[], &[]).0, 2);
    assert_eq!(run(&["classify", "--delta-min", "3"], &[]).0, 2);
    assert_eq!(run(&["twists", "--delta", "3", "--frob"], &[]).0, 2);
    let (code, out, _) = run(&["--help"], &[]);
    assert_eq!(code, 0);
    assert!(out.contains("classify"));
}
