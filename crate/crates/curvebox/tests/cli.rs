//! End-to-end tests of the `curvebox` binary: subcommand behavior, file
//! formats, determinism, and exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn curvebox(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvebox"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn assert_success(out: &Output) {
    assert!(
        out.status.success(),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn synth_encode_decode_eval_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();

    assert_success(&curvebox(
        &["synth", "--kind", "quadratic", "--count", "6", "--seed", "3", "--out", "corpus.jsonl"],
        d,
    ));
    assert_success(&curvebox(
        &["encode", "corpus.jsonl", "labels.jsonl", "--mask", "2(2)+c"],
        d,
    ));
    assert_success(&curvebox(&["decode", "labels.jsonl", "polys.jsonl"], d));

    let out = curvebox(
        &["eval", "--pred", "polys.jsonl", "--gt", "polys.jsonl", "--iou", "0.5"],
        d,
    );
    assert_success(&out);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(
        text.contains("precision 100.00") && text.contains("hmean 100.00"),
        "unexpected eval output: {text}"
    );
}

#[test]
fn synth_is_deterministic_given_seed() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for name in ["a.jsonl", "b.jsonl"] {
        assert_success(&curvebox(
            &["synth", "--kind", "sinusoid", "--count", "4", "--seed", "11", "--out", name],
            d,
        ));
    }
    let a = std::fs::read(d.join("a.jsonl")).unwrap();
    let b = std::fs::read(d.join("b.jsonl")).unwrap();
    assert_eq!(a, b, "same seed must produce identical bytes");

    assert_success(&curvebox(
        &["synth", "--kind", "sinusoid", "--count", "4", "--seed", "12", "--out", "c.jsonl"],
        d,
    ));
    let c = std::fs::read(d.join("c.jsonl")).unwrap();
    assert_ne!(a, c, "different seeds must differ");
}

#[test]
fn fit_report_emits_one_row_per_setting() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_success(&curvebox(
        &["synth", "--kind", "straight", "--count", "5", "--seed", "1", "--out", "corpus.jsonl"],
        d,
    ));
    let out = curvebox(
        &[
            "fit-report",
            "--corpus",
            "corpus.jsonl",
            "--settings",
            "1(1),2(2),3(3)",
            "--json",
            "report.json",
        ],
        d,
    );
    assert_success(&out);
    let text = String::from_utf8_lossy(&out.stdout);
    let rows: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("1(1)") || l.starts_with("2(2)") || l.starts_with("3(3)"))
        .collect();
    assert_eq!(rows.len(), 3, "table:\n{text}");

    let json = std::fs::read_to_string(d.join("report.json")).unwrap();
    let report: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(report["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn encode_malformed_annotation_exits_2_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // 27 values on line 2 of a poly14 file.
    let good: Vec<String> = (0..28).map(|i| (i * 3).to_string()).collect();
    let bad: Vec<String> = (0..27).map(|i| (i * 2).to_string()).collect();
    std::fs::write(
        d.join("anns.txt"),
        format!("{}\n{}\n", good.join(","), bad.join(",")),
    )
    .unwrap();
    let out = curvebox(
        &["encode", "anns.txt", "labels.jsonl", "--format", "poly14"],
        d,
    );
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "stderr lacks line number: {err}");
}

#[test]
fn unknown_subcommand_exits_1_and_help_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    let out = curvebox(&["frobnicate"], dir.path());
    assert_eq!(out.status.code(), Some(1));

    let help = curvebox(&["--help"], dir.path());
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("encode"));
}

#[test]
fn maps_tensor_round_trip_through_cli() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_success(&curvebox(
        &["synth", "--kind", "scene", "--count", "2", "--seed", "5", "--out", "scenes.jsonl"],
        d,
    ));
    assert_success(&curvebox(
        &[
            "encode",
            "scenes.jsonl",
            "labels.jsonl",
            "--mask",
            "3(3)+c",
            "--maps-dir",
            "maps",
        ],
        d,
    ));
    assert!(d.join("maps/synth-0000.edgt").exists());
    assert!(d.join("maps/synth-0001.edgt").exists());

    assert_success(&curvebox(
        &["decode", "maps", "from_maps.jsonl", "--mask", "3(3)+c"],
        d,
    ));
    assert_success(&curvebox(&["decode", "labels.jsonl", "from_labels.jsonl"], d));

    let out = curvebox(
        &[
            "eval",
            "--pred",
            "from_maps.jsonl",
            "--gt",
            "from_labels.jsonl",
            "--iou",
            "0.5",
        ],
        d,
    );
    assert_success(&out);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("hmean 100.00"), "maps decode disagreed: {text}");
}

#[test]
fn loss_between_identical_label_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_success(&curvebox(
        &["synth", "--kind", "straight", "--count", "3", "--seed", "9", "--out", "c.jsonl"],
        d,
    ));
    assert_success(&curvebox(&["encode", "c.jsonl", "l.jsonl"], d));
    let out = curvebox(&["loss", "--pred", "l.jsonl", "--gt", "l.jsonl"], d);
    assert_success(&out);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(
        text.contains("l_edge 0.000000") && text.contains("l_trun 0.000000"),
        "self-loss should zero the curve and truncation terms: {text}"
    );
}

#[test]
fn render_writes_svg_with_tiers() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_success(&curvebox(
        &["synth", "--kind", "quadratic", "--count", "2", "--seed", "2", "--out", "c.jsonl"],
        d,
    ));
    assert_success(&curvebox(&["encode", "c.jsonl", "l.jsonl"], d));
    assert_success(&curvebox(&["decode", "l.jsonl", "p.jsonl"], d));
    assert_success(&curvebox(
        &[
            "render",
            "--pred",
            "p.jsonl",
            "--gt",
            "p.jsonl",
            "--size",
            "512x512",
            "overlay.svg",
        ],
        d,
    ));
    let svg = std::fs::read_to_string(d.join("overlay.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("pred-high"), "perfect match renders high tier");
    assert!(svg.contains("class=\"gt\""));
}

#[test]
fn missing_input_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = curvebox(&["decode", "nope.jsonl", "out.jsonl"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}
