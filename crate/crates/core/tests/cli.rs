use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use persmod::io::{read_module, ReportFile};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn pmd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmd")).args(args).env_remove("PMD_FIELD_CHAR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_reports_shape_and_dimension() {
    let o = pmd(&["validate", path_str(&fixture("chain.json"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Chain(3) over F_5"), "{}", stdout(&o));
    assert!(stdout(&o).contains("total dimension 4"));
}

#[test]
fn validation_failure_names_the_diamond() {
    let o = pmd(&["validate", path_str(&fixture("diamond.json"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("0->1"), "{}", stderr(&o));
}

#[test]
fn parse_error_has_a_location() {
    let o = pmd(&["validate", path_str(&fixture("truncated.json"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn missing_file_and_bad_usage_exit_one() {
    assert_eq!(pmd(&["validate", "/nonexistent/module.json"]).status.code(), Some(1));
    assert_eq!(pmd(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(pmd(&["--help"]).status.code(), Some(0));
}

#[test]
fn barcode_of_chain_fixture() {
    let o = pmd(&["barcode", path_str(&fixture("chain.json"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2 bars\n[0, 1] x1\n[1, 2] x1\n");
}

#[test]
fn barcode_rejects_grids() {
    let o = pmd(&["barcode", path_str(&fixture("grid.json"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("chain"));
}

#[test]
fn decompose_writes_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = pmd(&["decompose", path_str(&fixture("grid.json")), "--seed", "5", "--json", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("4 summands"));
    let report = ReportFile::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report.seed, Some(5));
    assert_eq!(report.command[0], "decompose");
}

#[test]
fn blocks_of_generated_grid() {
    let o = pmd(&["blocks", path_str(&fixture("grid.json"))]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("4 blocks"));
    assert!(text.contains("[2, 5, 8] [bb,hb] x2"), "{text}");
}

#[test]
fn middle_exact_reports_failure_and_blocks_refuses() {
    let f = fixture("point_in_square.json");
    let o = pmd(&["middle-exact", path_str(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("not middle exact"));
    let o = pmd(&["blocks", path_str(&f)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not middle exact"));
}

#[test]
fn extend_and_zigzag_on_fence() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ext.json");
    let o = pmd(&["extend", path_str(&fixture("fence.json")), "-o", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let e = read_module(&out).unwrap();
    assert_eq!(e.poset().grid_dims(), Some((3, 3)));
    let o = pmd(&["middle-exact", path_str(&out)]);
    assert!(stdout(&o).starts_with("middle exact"));

    let o = pmd(&["zigzag", path_str(&fixture("fence.json"))]);
    assert_eq!(stdout(&o), "3 bars\n[0, 1, 2] x1\n[1, 2, 3, 4] x1\n[3] x1\n");
    assert_eq!(pmd(&["extend", path_str(&fixture("chain.json")), "-o", path_str(&out)]).status.code(), Some(1));
}

#[test]
fn dualize_swaps_corner_blocks() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("dual.json");
    let o = pmd(&["dualize", path_str(&fixture("grid.json")), "-o", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&pmd(&["blocks", path_str(&out)]));
    assert!(text.contains("[0] [db] x1"), "{text}");
    assert!(text.contains("[4, 5, 7, 8] [bb] x1"), "{text}");
}

#[test]
fn gen_from_sampled_functions() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.json");
    let o = pmd(&["gen", "interlevel", path_str(&fixture("interlevel.json")), "-o", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(read_module(&out).unwrap().dims(), &[4, 2, 3, 1]);

    let o = pmd(&["gen", "sublevel", path_str(&fixture("sublevel.json")), "-o", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&pmd(&["barcode", path_str(&out)])), "3 bars\n[0, 1, 2, 3] x1\n[1] x1\n[1, 2] x1\n");
}

#[test]
fn gen_respects_field_override_and_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let spec = fixture("grid_spec.json");
    let o = Command::new(env!("CARGO_BIN_EXE_pmd"))
        .args(["gen", "intervals", path_str(&spec), "-o", path_str(&a)])
        .env("PMD_FIELD_CHAR", "13")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(read_module(&a).unwrap().field().p(), 13);
    pmd(&["gen", "intervals", path_str(&spec), "-o", path_str(&b), "--seed", "99"]);
    let bm = read_module(&b).unwrap();
    assert_eq!(bm.field().p(), 32003);
    assert_ne!(std::fs::read(fixture("grid.json")).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn gen_rejects_overlapping_thresholds() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("bad.json");
    std::fs::write(&spec, r#"{"values": [0, 1], "s": [0, 2], "t": [1, 3]}"#).unwrap();
    let o = pmd(&["gen", "interlevel", path_str(&spec), "-o", path_str(&dir.path().join("m.json"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("max(s) < min(t)"));
}

#[test]
fn plot_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    for (input, rects) in [("chain.json", 2), ("grid.json", 3), ("fence.json", 3)] {
        let out = dir.path().join("p.svg");
        let o = pmd(&["plot", path_str(&fixture(input)), "-o", path_str(&out)]);
        assert_eq!(o.status.code(), Some(0), "{input}: {}", stderr(&o));
        let svg = std::fs::read_to_string(&out).unwrap();
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<rect").count(), rects, "{input}");
    }
}
