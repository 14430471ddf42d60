use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;

use pqc_core::bar::abelianized_bar;
use pqc_core::fingroup::{cyclic, FiniteGroup};
use pqc_core::pqc::{FiniteLevel, FinitePqc, Pqc};
use serde_json::Value;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn pqc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pqc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn with_report(args: &[&str]) -> (i32, Value, String) {
    let dir = tempfile::tempdir().unwrap();
    let out: PathBuf = dir.path().join("report.json");
    let mut full: Vec<&str> = args.to_vec();
    let out_str = out.to_string_lossy().into_owned();
    full.extend(["--out", &out_str]);
    let output = pqc(&full);
    let report =
        serde_json::from_slice(&std::fs::read(&out).unwrap_or_default()).unwrap_or(Value::Null);
    (
        output.status.code().unwrap(),
        report,
        String::from_utf8_lossy(&output.stdout).into_owned(),
    )
}

fn check_names(report: &Value) -> Vec<String> {
    let mut names: Vec<String> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect();
    names.dedup();
    names
}

#[test]
fn verify_bar_c2_passes_four_checks() {
    let (code, report, stdout) = with_report(&["verify-bar", "--group", "c2", "--max-degree", "3"]);
    assert_eq!(code, 0);
    assert_eq!(
        check_names(&report),
        ["pch", "faces", "structural", "lowDegreeFormulas"]
    );
    assert_eq!(report["passed"], true);
    assert!(stdout.contains("4 of 4 checks pass"));
    assert_eq!(
        report["command"],
        serde_json::json!(["verify-bar", "--group", "c2", "--max-degree", "3"])
    );
}

#[test]
fn verify_bar_s3_passes() {
    assert_eq!(
        pqc(&["verify-bar", "--group", "s3", "--max-degree", "3"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn verify_bar_subset_of_checks() {
    let (code, report, _) = with_report(&[
        "verify-bar",
        "--group",
        "c3",
        "--max-degree",
        "2",
        "--checks",
        "faces,pch",
    ]);
    assert_eq!(code, 0);
    assert_eq!(check_names(&report), ["pch", "faces"]);
}

#[test]
fn input_errors_exit_two() {
    let bad = pqc(&["verify-bar", "--group", &fixture("bad.group")]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("associativity"));
    assert_eq!(
        pqc(&["verify-bar", "--group", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(
        pqc(&["verify-bar", "--group", "c2", "--checks", "bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        pqc(&[
            "homology",
            "--pqc",
            &fixture("zero_c4.pqc"),
            "--degree",
            "7"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        pqc(&["h2", "--n", "s3", "--g", "c2", "--trivial-action"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        pqc(&[
            "ext",
            "build",
            "--n",
            "c2",
            "--g",
            "c2",
            "--trivial-action",
            "--f",
            "1,t=t"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(pqc(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn homology_examples() {
    let (code, report, _) = with_report(&[
        "homology",
        "--pqc",
        &fixture("zero_c4.pqc"),
        "--degree",
        "0",
    ]);
    assert_eq!(code, 0);
    assert_eq!(report["data"]["classCount"], 4);
    let (_, report, _) = with_report(&[
        "homology",
        "--pqc",
        &fixture("conj_s3.pqc"),
        "--degree",
        "0",
    ]);
    assert_eq!(
        report["data"]["classes"],
        serde_json::json!([["1"], ["r", "r2"], ["s", "rs", "r2s"]])
    );
}

/// `(ℤ/2)^rank` as a table group, indices read as bit vectors.
fn elementary_abelian(rank: usize) -> Arc<FiniteGroup> {
    let size = 1usize << rank;
    let labels = (0..size)
        .map(|i| {
            if i == 0 {
                "1".to_string()
            } else {
                format!("v{i}")
            }
        })
        .collect();
    let table = (0..size)
        .map(|a| (0..size).map(|b| a ^ b).collect())
        .collect();
    Arc::new(FiniteGroup::from_table(format!("z2^{rank}"), labels, table).unwrap())
}

#[test]
fn homology_of_abelianized_bar_through_the_cli() {
    let ab = abelianized_bar(Arc::new(cyclic(2)), 2, 1, 1 << 10).unwrap();
    let x = ab.complex.as_ref();
    let levels = (x.lo()..=x.hi())
        .map(|n| {
            let group = elementary_abelian(x.rank(n));
            let table = |plus: bool| -> Vec<usize> {
                if n == x.lo() {
                    return vec![];
                }
                (0..x.size(n).unwrap())
                    .map(|i| {
                        let e = x.element(n, i);
                        let image = if plus {
                            x.dplus(n, &e)
                        } else {
                            x.dminus(n, &e)
                        };
                        x.index_of(n - 1, &image)
                    })
                    .collect()
            };
            FiniteLevel {
                group,
                dplus: table(true),
                dminus: table(false),
            }
        })
        .collect();
    let finite = FinitePqc::new(x.lo(), levels).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bar.pqc");
    std::fs::write(&path, serde_json::to_string(&finite.to_file()).unwrap()).unwrap();
    let (code, report, _) = with_report(&[
        "homology",
        "--pqc",
        &path.to_string_lossy(),
        "--degree",
        "0",
    ]);
    assert_eq!(code, 0);
    assert_eq!(report["data"]["classCount"], 1);
}

#[test]
fn ext_analyze_c4() {
    let (code, report, stdout) =
        with_report(&["ext", "analyze", "--ext", &fixture("c4_over_c2.ext")]);
    assert_eq!(code, 0);
    assert_eq!(report["data"]["f"][1][1], 1);
    assert_eq!(report["data"]["factorSet"]["t,t"], "t");
    assert!(stdout.contains("f(t,t) = t [1]"));
    assert!(report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
}

#[test]
fn ext_analyze_s3_has_inverting_pseudoaction() {
    let (code, report, _) = with_report(&["ext", "analyze", "--ext", &fixture("s3_over_c2.ext")]);
    assert_eq!(code, 0);
    assert_eq!(
        report["data"]["L"],
        serde_json::json!([[0, 1, 2], [0, 2, 1]])
    );
}

#[test]
fn ext_build_gives_c4() {
    let (code, report, _) = with_report(&[
        "ext",
        "build",
        "--n",
        "c2",
        "--g",
        "c2",
        "--trivial-action",
        "--f",
        "t,t=1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(report["data"]["isomorphicTo"], "c4");
    let (_, report, _) = with_report(&[
        "ext",
        "build",
        "--n",
        "c2",
        "--g",
        "c2",
        "--trivial-action",
        "--f",
        "",
    ]);
    assert_eq!(report["data"]["isomorphicTo"], "v4");
}

#[test]
fn ext_build_failure_exits_one() {
    let out = pqc(&[
        "ext",
        "build",
        "--n",
        "c3",
        "--g",
        "c3",
        "--trivial-action",
        "--f",
        &fixture("noncocycle_c3.f"),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn classify_and_h2() {
    let (code, report, _) = with_report(&[
        "ext",
        "classify",
        "--n",
        "c2",
        "--g",
        "c2",
        "--trivial-action",
    ]);
    assert_eq!(code, 0);
    assert_eq!(report["data"]["classCount"], 2);
    assert_eq!(report["data"]["extensionClasses"], 2);
    let (_, report, _) = with_report(&["h2", "--n", "c3", "--g", "c3", "--trivial-action"]);
    assert_eq!(report["data"]["classCount"], 3);
    let (_, report, _) = with_report(&[
        "h2",
        "--n",
        "c3",
        "--g",
        "c2",
        "--action",
        &fixture("invert_c3.action"),
    ]);
    assert_eq!(report["data"]["classCount"], 1);
}

#[test]
fn broken_extension_exits_one_with_witness() {
    let (code, report, _) = with_report(&["ext", "analyze", "--ext", &fixture("broken_sigma.ext")]);
    assert_eq!(code, 1);
    assert_eq!(report["checks"][0]["witnesses"][0], "sigma misses t");
}

#[test]
fn jobs_and_out_do_not_change_the_report() {
    let (_, a, _) = with_report(&[
        "verify-bar",
        "--group",
        "v4",
        "--max-degree",
        "2",
        "--jobs",
        "1",
    ]);
    let (_, b, _) = with_report(&["verify-bar", "--group", "v4", "--max-degree", "2"]);
    assert_eq!(a, b);
}
