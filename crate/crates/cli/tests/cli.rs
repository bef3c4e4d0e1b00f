//! End-to-end tests driving the compiled `decomp` binary.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};
use tempfile::NamedTempFile;

const BIG_SHAPE: &str =
    r#"{"naky": 32, "nakx": 32, "ntgrid": 15, "nlambda": 32, "negrid": 8, "nspec": 2}"#;
const DESK_SHAPE: &str = r#"{"naky": 8, "nakx": 8, "inx": 12, "iny": 12, "ntgrid": 3,
                             "nlambda": 4, "negrid": 2, "nspec": 2}"#;

fn config_file(body: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f.flush().unwrap();
    f
}

fn decomp(config: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_decomp"))
        .arg(args[0])
        .arg("--config")
        .arg(config)
        .args(&args[1..])
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn plan_reports_the_balanced_blocksize() {
    let cfg = config_file(BIG_SHAPE);
    let out = decomp(
        cfg.path(),
        &[
            "plan", "--layout", "lexys", "--nprocs", "1536", "--space", "xxf_lo", "--format",
            "json",
        ],
    );
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["plan"]["blocksize_large"], 662);
    assert_eq!(doc["plan"]["kind"], "balanced");
    assert_eq!(doc["shape"]["nig"], 31);
    let xxf = &doc["spaces"][1];
    assert_eq!(xxf["space"], "xxf_lo");
    assert_eq!(xxf["total_size"], 1_015_808);
    assert_eq!(xxf["idle_procs"], 1.546828);
}

#[test]
fn unbalanced_plan_reports_both_blocksizes() {
    let cfg = config_file(BIG_SHAPE);
    let out = decomp(
        cfg.path(),
        &[
            "plan",
            "--layout",
            "xyles",
            "--nprocs",
            "2048",
            "--space",
            "xxf_lo",
            "--unbalanced",
            "--format",
            "json",
        ],
    );
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["plan"]["kind"], "unbalanced");
    assert_eq!(doc["plan"]["blocksize_small"], 480);
    assert_eq!(doc["plan"]["blocksize_large"], 512);
    assert_eq!(doc["plan"]["imbalance"], 0.066667);
    assert_eq!(doc["plan"]["empty_ranks"], 0);
}

#[test]
fn plan_csv_lists_every_rank() {
    let cfg = config_file(DESK_SHAPE);
    let out = decomp(
        cfg.path(),
        &["plan", "--layout", "xyles", "--nprocs", "48", "--format", "csv"],
    );
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("rank,lo,hi,extent"));
    assert_eq!(lines.count(), 48);
}

#[test]
fn sweetspots_include_the_power_of_two_counts() {
    let cfg = config_file(BIG_SHAPE);
    let out = decomp(
        cfg.path(),
        &["sweetspots", "--layout", "lexys", "--max-procs", "1100", "--format", "json"],
    );
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    for list in ["xxf_lo", "yxf_lo"] {
        let spots: Vec<u64> = doc["sweetspots"][list]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_u64().unwrap())
            .collect();
        for p in [256, 512, 1024] {
            assert!(spots.contains(&p), "{list} misses {p}");
        }
    }
}

#[test]
fn simulate_csv_rows_sum_to_the_transfer_total() {
    let cfg = config_file(DESK_SHAPE);
    let json = stdout_of(&decomp(
        cfg.path(),
        &["simulate", "--layout", "xyles", "--nprocs", "48", "--format", "json"],
    ));
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    let total = doc["transfer"]["total_elements"].as_u64().unwrap();

    let csv = stdout_of(&decomp(
        cfg.path(),
        &["simulate", "--layout", "xyles", "--nprocs", "48", "--format", "csv"],
    ));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("src_rank,dst_rank,elements,bytes"));
    let mut sum = 0u64;
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 4);
        let elements: u64 = fields[2].parse().unwrap();
        let bytes: u64 = fields[3].parse().unwrap();
        assert_eq!(bytes, elements * 16);
        sum += elements;
    }
    assert_eq!(sum, total);
}

#[test]
fn compare_reports_the_signed_relative_error() {
    let cfg = config_file(DESK_SHAPE);
    let out = decomp(
        cfg.path(),
        &["compare", "--layout", "xyles", "--nprocs", "64", "--format", "json"],
    );
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["comparison"]["oracle_off_diagonal"], 1536);
    assert!(doc["comparison"]["relative_error"].is_number());
}

#[test]
fn repeated_runs_are_byte_identical() {
    let cfg = config_file(BIG_SHAPE);
    let args = [
        "estimate", "--layout", "yxles", "--nprocs", "1536", "--format", "json",
    ];
    let first = decomp(cfg.path(), &args);
    let second = decomp(cfg.path(), &args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn config_defaults_supply_layout_and_nprocs() {
    let cfg = config_file(
        r#"{"naky": 8, "nakx": 8, "ntgrid": 3, "nlambda": 4, "negrid": 2, "nspec": 2,
            "layout": "yxles", "nprocs": 16}"#,
    );
    let out = decomp(cfg.path(), &["plan", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["layout"], "yxles");
    assert_eq!(doc["nprocs"], 16);
}

#[test]
fn usage_errors_exit_with_code_2() {
    let cfg = config_file(DESK_SHAPE);
    for args in [
        vec!["plan", "--layout", "zzzzz", "--nprocs", "8"],
        vec!["plan"], // nprocs missing everywhere
        vec!["plan", "--nprocs", "0"],
        vec!["simulate", "--nprocs", "8", "--transform", "nope"],
        vec!["plan", "--nprocs", "8", "--space", "zzz_lo"],
    ] {
        let out = decomp(cfg.path(), &args);
        assert_eq!(out.status.code(), Some(2), "args: {args:?}");
    }
}

#[test]
fn size_guard_violations_exit_with_code_3() {
    let cfg = config_file(DESK_SHAPE);
    let out = decomp(
        cfg.path(),
        &["simulate", "--nprocs", "8", "--size-guard", "10"],
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("guard"));
}

#[test]
fn config_errors_exit_with_code_4() {
    // unreadable path
    let out = decomp(Path::new("/definitely/not/here.json"), &["plan", "--nprocs", "4"]);
    assert_eq!(out.status.code(), Some(4));

    // unknown key
    let cfg = config_file(r#"{"naky": 4, "nakx": 4, "ntgrid": 2, "nlamda": 2}"#);
    let out = decomp(cfg.path(), &["plan", "--nprocs", "4"]);
    assert_eq!(out.status.code(), Some(4));

    // invalid extents (inx < nakx)
    let cfg = config_file(
        r#"{"naky": 4, "nakx": 4, "inx": 2, "ntgrid": 2, "nlambda": 2, "negrid": 2, "nspec": 2}"#,
    );
    let out = decomp(cfg.path(), &["plan", "--nprocs", "4"]);
    assert_eq!(out.status.code(), Some(4));
}
