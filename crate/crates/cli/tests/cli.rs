use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use turan_core::bounds::{bounds_report, report_csv};
use turan_core::constructions::{
    design_shadow_construction, disjoint_blocks, fores_construction, steiner_triple_system,
};
use turan_core::embed::{count_copies, is_free};
use turan_core::search::{max_edges_bnb, max_edges_oracle, Engine, SearchProblem};
use turan_core::{blowup, make_pattern, suspend, Hypergraph};

fn turan(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_turan"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(input) = stdin {
            pipe.write_all(input.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn stdout_of(args: &[&str], stdin: Option<&str>) -> String {
    let out = turan(args, stdin);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(h: &Hypergraph) -> String {
    h.to_json() + "\n"
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("turan-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn construct_matches_library() {
    assert_eq!(
        stdout_of(&["construct", "sts", "--m", "9"], None),
        json(&steiner_triple_system(9).unwrap())
    );
    assert_eq!(
        stdout_of(&["construct", "fores", "--n", "13"], None),
        json(&fores_construction(13).unwrap())
    );
    assert_eq!(
        stdout_of(&["construct", "suspend", "--r", "4", "--graph", "C5"], None),
        json(&suspend(&make_pattern("C5").unwrap(), 4).unwrap())
    );
    assert_eq!(
        stdout_of(&["construct", "pattern", "--spec", "H(2)"], None),
        json(&make_pattern("H(2)").unwrap())
    );

    let k3 = make_pattern("S3(K3)").unwrap();
    assert_eq!(
        stdout_of(
            &["construct", "blowup", "--in", "-", "--sizes", "2,1,3,1"],
            Some(&k3.to_json())
        ),
        json(&blowup(&k3, &[2, 1, 3, 1]).unwrap())
    );

    let design = disjoint_blocks(8, 4).unwrap();
    let path = temp_file("blocks.json", &design.to_json());
    assert_eq!(
        stdout_of(
            &[
                "construct",
                "shadow",
                "--in",
                path.to_str().unwrap(),
                "--r",
                "3"
            ],
            None
        ),
        json(&design_shadow_construction(&design, 3).unwrap())
    );
}

#[test]
fn construct_writes_files() {
    let path = temp_file("out.json", "");
    let out = stdout_of(
        &[
            "construct",
            "sts",
            "--m",
            "7",
            "--out",
            path.to_str().unwrap(),
        ],
        None,
    );
    assert!(out.is_empty());
    assert_eq!(
        std::fs::read_to_string(path).unwrap(),
        json(&steiner_triple_system(7).unwrap())
    );
}

#[test]
fn fores_pipeline_is_free() {
    let host = stdout_of(&["construct", "fores", "--n", "13"], None);
    assert_eq!(
        stdout_of(&["check", "free", "--pattern", "S3(P3+K2)"], Some(&host)),
        "true\n"
    );
    assert_eq!(
        stdout_of(
            &["check", "free", "--host", "-", "--pattern", "S3(P3)"],
            Some(&host)
        ),
        "false\n"
    );
}

#[test]
fn checks_and_counts_match_library() {
    let sts = steiner_triple_system(7).unwrap();
    let input = sts.to_json();
    assert_eq!(
        stdout_of(
            &["check", "design", "--in", "-", "--k", "2", "--lambda", "1"],
            Some(&input)
        ),
        "true\n"
    );
    assert_eq!(
        stdout_of(
            &["check", "design", "--k", "1", "--lambda", "3"],
            Some(&input)
        ),
        "true\n"
    );
    assert_eq!(
        stdout_of(
            &["check", "design", "--k", "1", "--lambda", "2"],
            Some(&input)
        ),
        "false\n"
    );

    for spec in ["S3(M2)", "S3(K2)", "S3(P3)"] {
        let expected = count_copies(&sts, &make_pattern(spec).unwrap()).unwrap();
        assert_eq!(
            stdout_of(&["count", "copies", "--pattern", spec], Some(&input)),
            format!("{expected}\n")
        );
    }
    let free = is_free(&sts, &make_pattern("S3(K3)").unwrap()).unwrap();
    assert_eq!(
        stdout_of(&["check", "free", "--pattern", "S3(K3)"], Some(&input)),
        format!("{free}\n")
    );
}

#[test]
fn search_matches_library() {
    assert_eq!(
        stdout_of(
            &["search", "extremal", "--n", "4", "--r", "3", "--forbid", "S3(K3)"],
            None
        ),
        "2\n"
    );

    let p = SearchProblem::new(
        7,
        3,
        vec![make_pattern("S3(P3)").unwrap()],
        Engine::BranchAndBound,
    )
    .unwrap();
    let res = max_edges_bnb(&p).unwrap();
    let path = temp_file("witness.json", "");
    let out = stdout_of(
        &[
            "search",
            "extremal",
            "--n",
            "7",
            "--r",
            "3",
            "--forbid",
            "S3(P3)",
            "--witness",
            path.to_str().unwrap(),
            "--workers",
            "3",
        ],
        None,
    );
    assert_eq!(out, format!("{}\n", res.value));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), json(&res.witness));

    let family = vec![
        make_pattern("S3(K3)").unwrap(),
        make_pattern("S3(M2)").unwrap(),
    ];
    let p = SearchProblem::new(6, 3, family, Engine::Oracle).unwrap();
    let res = max_edges_oracle(&p).unwrap();
    let out = stdout_of(
        &[
            "search", "extremal", "--n", "6", "--r", "3", "--forbid", "S3(K3)", "--forbid",
            "S3(M2)", "--engine", "oracle",
        ],
        None,
    );
    assert_eq!(out, format!("{}\n", res.value));
}

#[test]
fn bounds_report_matches_library() {
    let expected = report_csv(&bounds_report("S3(P3)", 4, 7, true).unwrap());
    let out = stdout_of(
        &[
            "bounds", "report", "--family", "S3(P3)", "--from", "4", "--to", "7", "--search",
        ],
        None,
    );
    assert_eq!(out, expected);
    let out = stdout_of(
        &[
            "bounds",
            "report",
            "--family",
            "S3(P3+K2)",
            "--from",
            "13",
            "--to",
            "13",
        ],
        None,
    );
    assert_eq!(
        out,
        report_csv(&bounds_report("S3(P3+K2)", 13, 13, false).unwrap())
    );
}

#[test]
fn classify_reports_partition_and_claims() {
    let host = fores_construction(9).unwrap().to_json();
    let out = stdout_of(&["classify", "links"], Some(&host));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "vertex\tclass");
    assert_eq!(lines.len(), 1 + 9 + 3 + 5);
    assert_eq!(lines[10], "M\t{0,1,2}");
    assert_eq!(lines[11], "S1\t{3,4,5,6,7,8}");
    assert_eq!(lines[12], "S2\t{}");
    assert!(lines[13..].iter().all(|l| l.starts_with("pass\t")));
}

#[test]
fn errors_use_exit_codes() {
    let out = turan(&["construct", "sts", "--m", "8"], None);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("1 or 3 (mod 6)"), "{err}");
    assert_eq!(err.lines().count(), 1);

    let out = turan(
        &["check", "free", "--pattern", "S3(P0)"],
        Some("{\"n\":3,\"r\":3,\"edges\":[[0,1,2]]}"),
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("position"));

    let out = turan(&["check", "free", "--pattern", "K3"], Some("not json"));
    assert_eq!(out.status.code(), Some(1));

    let out = turan(
        &[
            "search", "extremal", "--n", "12", "--r", "3", "--forbid", "S3(K3)", "--engine",
            "oracle",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(1));

    assert_eq!(
        turan(&["search", "extremal", "--n", "4"], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(turan(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(
        turan(&["construct", "sts", "--m", "x"], None).status.code(),
        Some(2)
    );
}

#[test]
fn help_documents_the_pattern_grammar() {
    for args in [
        vec!["--help"],
        vec!["check", "free", "--help"],
        vec!["search", "extremal", "--help"],
        vec!["construct", "suspend", "--help"],
        vec!["bounds", "report", "--help"],
        vec!["count", "copies", "--help"],
    ] {
        let out = stdout_of(&args, None);
        assert!(
            out.contains("P<k>        path on k vertices, so P3 is the path v1 v2 v3"),
            "{args:?}"
        );
        assert!(out.contains("S<r>(A)"), "{args:?}");
    }
}
