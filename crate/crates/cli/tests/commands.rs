use std::path::Path;
use std::process::{Command, Output};

use involute_core::catalog::{parse_index, INDEX_FILE};

fn involute(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_involute"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
}

#[test]
fn stats_of_d8() {
    let o = involute(&["stats", "D8"], Path::new("."));
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(field(&text, "j"), "6");
    assert_eq!(field(&text, "alpha"), "3/4 (0.750000)");
    assert_eq!(field(&text, "factorization"), "2^3 * 1");
    assert_eq!(field(&text, "center order"), "2");
}

#[test]
fn classify_regimes() {
    let o = involute(&["classify", "EA5"], Path::new("."));
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(field(&text, "regime"), "alpha > 3/4");
    assert_eq!(field(&text, "elementary abelian 2-group"), "yes");

    let text = stdout(&involute(&["classify", "D8xC2^2"], Path::new(".")));
    assert_eq!(field(&text, "regime"), "alpha = 3/4");
    assert_eq!(field(&text, "witness"), "isomorphic to D8 x C2^2");

    let text = stdout(&involute(&["classify", "Dih(C3)"], Path::new(".")));
    assert_eq!(field(&text, "regime"), "alpha <= 3/4");
}

#[test]
fn aut_of_d8() {
    let text = stdout(&involute(&["aut", "D8"], Path::new(".")));
    assert_eq!(field(&text, "|Aut|"), "8");
    assert_eq!(field(&text, "involutions in Aut (identity included)"), "6");
    assert_eq!(text.matches("inverts 6").count(), 3);
}

#[test]
fn exit_codes() {
    let here = Path::new(".");
    assert_eq!(involute(&["stats", "D7"], here).status.code(), Some(2));
    assert_eq!(involute(&["stats", "Dih(Q8)"], here).status.code(), Some(2));
    assert_eq!(involute(&["stats", "C4 x"], here).status.code(), Some(2));
    assert_eq!(involute(&["frobnicate"], here).status.code(), Some(2));
    assert_eq!(involute(&["verify", "--enumerate-up-to", "9"], here).status.code(), Some(2));
    assert_eq!(involute(&["stats", "table:missing.tbl"], here).status.code(), Some(3));
}

#[test]
fn malformed_table_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.tbl"), "2\n0 1\n1 1\n").unwrap();
    let o = involute(&["stats", "table:bad.tbl"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exported_tables_match_the_index() {
    let dir = tempfile::tempdir().unwrap();
    let o = involute(&["catalog", "--max-order", "12", "--out-dir", "cat"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let cat = dir.path().join("cat");
    let index = parse_index(&std::fs::read_to_string(cat.join(INDEX_FILE)).unwrap()).unwrap();
    assert_eq!(index.len(), 1 + 1 + 1 + 2 + 1 + 2 + 1 + 5 + 2 + 2 + 1 + 5);
    for line in &index {
        let spec = format!("table:{}", line.file);
        let text = stdout(&involute(&["stats", &spec], &cat));
        assert_eq!(field(&text, "order"), line.order.to_string(), "{}", line.name);
        assert_eq!(field(&text, "j"), line.j.to_string(), "{}", line.name);
        assert!(field(&text, "alpha").starts_with(&format!("{} (", line.alpha)), "{}", line.name);
    }
}

#[test]
fn verify_small_orders_in_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let o = involute(
        &["verify", "--max-order", "8", "--dihedral-max", "8", "--enumerate-up-to", "6", "--format", "json", "--out", "r.json"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(json["schemaVersion"], 1);
    assert_eq!(json["overallPass"], true);
    assert_eq!(json["checks"].as_array().unwrap().len(), 21);

    let o = involute(&["verify", "--max-order", "4", "--dihedral-max", "4", "--threads", "2"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("overall: PASS"));
}
