use std::process::{Command, Output};

use serde_json::Value;

fn equicut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equicut"))
        .args(args)
        .env_remove("EQUICUT_FIXTURES")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = equicut(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn petersen_report() {
    let r = json(&["analyze", "--name", "petersen"]);
    assert_eq!(r["is_l1"], true);
    assert_eq!(r["size"], "3");
    assert_eq!(r["scale"], 2);
    assert_eq!(r["rigid"], true);
    assert_eq!(r["equicut"], true);
    assert_eq!(r["v"], 10);
    assert_eq!(r["wiener"], 75);
    assert_eq!(r["antipodal"], false);
}

#[test]
fn k23_is_not_l1() {
    let r = json(&["analyze", "--name", "k23"]);
    assert_eq!(r["is_l1"], false);
    for absent in ["size", "scale", "rigid", "equicut"] {
        assert!(r.get(absent).is_none(), "{absent} should be absent");
    }
}

#[test]
fn triangle_size_is_a_fraction() {
    let r = json(&["analyze", "--name", "c3"]);
    assert_eq!(r["size"], "3/2");
    assert_eq!(r["bounds"]["lower"], "3/2");
}

#[test]
fn report_is_consistent_with_its_bounds() {
    for name in ["c7", "star6", "prism:4", "w5", "hamming:3,2"] {
        let r = json(&["analyze", "--name", name]);
        let size = equicut_core::lp::parse_rational(r["size"].as_str().unwrap()).unwrap();
        let lower =
            equicut_core::lp::parse_rational(r["bounds"]["lower"].as_str().unwrap()).unwrap();
        let upper =
            equicut_core::lp::parse_rational(r["bounds"]["upper"].as_str().unwrap()).unwrap();
        assert!(lower <= size && size <= upper, "{name}");
    }
}

#[test]
fn output_is_deterministic() {
    let a = equicut(&["analyze", "--name", "k5"]);
    let b = equicut(&["analyze", "--name", "k5"]);
    assert_eq!(a.stdout, b.stdout);
    let a = equicut(&["embed", "--name", "prism:5"]);
    let b = equicut(&["embed", "--name", "prism:5"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn text_report() {
    let out = equicut(&["analyze", "--name", "c5", "--text"]);
    let text = stdout(&out);
    assert!(
        text.lines()
            .any(|l| l.split_whitespace().eq(["size", "5/2"])),
        "{text}"
    );
}

#[test]
fn embed_square() {
    let out = equicut(&["embed", "--name", "c4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("4 2 1"));
    assert_eq!(lines.count(), 4);
}

#[test]
fn embed_pentagon_is_circulant() {
    let text = stdout(&equicut(&["embed", "--name", "c5"]));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("5 5 2"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    let doubled = format!("{0}{0}", rows[0]);
    for row in &rows {
        assert!(
            doubled.contains(row),
            "{row} is not a rotation of {}",
            rows[0]
        );
        assert_eq!(row.matches('1').count(), 2);
    }
}

#[test]
fn embed_star() {
    let text = stdout(&equicut(&["embed", "--name", "k13"]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, ["4 3 1", "000", "100", "010", "001"]);
}

#[test]
fn embed_at_requested_scale() {
    let text = stdout(&equicut(&["embed", "--name", "k5", "--scale", "2"]));
    let r = equicut_core::Realization::parse_text(&text).unwrap();
    assert_eq!(r.scale(), 2);
    let g = equicut_core::catalog::families::complete(5).unwrap();
    assert!(
        equicut_core::cutcone::validate_realization(&g, &r)
            .unwrap()
            .isometric
    );

    let out = equicut(&["embed", "--name", "c5", "--scale", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn embed_json() {
    let r = json(&["embed", "--name", "c6", "--json"]);
    assert_eq!(r["v"], 6);
    assert_eq!(r["n"], 3);
    assert_eq!(r["t"], 1);
    assert_eq!(r["rows"].as_array().unwrap().len(), 6);
}

#[test]
fn double_path() {
    let r = json(&["double", "--name", "p4"]);
    assert_eq!(r["graph"]["v"], 8);
    assert_eq!(r["graph"]["edges"].as_array().unwrap().len(), 8);
    assert_eq!(r["header"]["scale"], 1);
    let rows: Vec<String> = r["realization"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect();
    assert_eq!(rows.len(), 8);
    // C8 has size 4 = D(P4) + 1.
    assert_eq!(r["realization"]["n"], 4);
}

#[test]
fn double_text_round_trips() {
    let text = stdout(&equicut(&["double", "--name", "c5", "--text"]));
    let (graph, rest) = text.split_once("\n\n").unwrap();
    let g = equicut_core::Graph::parse_text(graph).unwrap();
    let (_, matrix) = rest.split_once('\n').unwrap();
    let r = equicut_core::Realization::parse_text(matrix).unwrap();
    assert!(
        equicut_core::cutcone::validate_realization(&g, &r)
            .unwrap()
            .isometric
    );
}

#[test]
fn double_without_block_realization() {
    let r = json(&["double", "--name", "star5"]);
    assert_eq!(r["graph"]["v"], 10);
    assert!(r.get("realization").is_none());
    assert!(r["reason"].is_string());
}

#[test]
fn census6() {
    let out = equicut(&["verify-catalog", "--filter", "census6"]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["passed"], true);
    assert_eq!(r["results"].as_array().unwrap().len(), 11);
}

#[test]
fn doubling_identities() {
    let out = equicut(&["verify-catalog", "--filter", "doublings", "--text"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(!stdout(&out).contains("FAIL"));
}

#[test]
fn full_catalog() {
    let out = equicut(&["verify-catalog"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    let statuses: Vec<&str> = r["results"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|e| e["checks"].as_array().unwrap())
        .map(|c| c["status"].as_str().unwrap())
        .collect();
    assert!(statuses.contains(&"erratum"));
    assert!(!statuses.contains(&"fail"));
}

#[test]
fn parse_errors_exit_2() {
    assert_eq!(
        equicut(&["analyze", "--name", "nonesuch"]).status.code(),
        Some(2)
    );
    assert_eq!(equicut(&["analyze"]).status.code(), Some(2));
    let dir = std::env::temp_dir().join(format!("equicut-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "3 2\n0 1\n").unwrap();
    let out = equicut(&["analyze", "--file", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let disconnected = dir.join("disconnected.txt");
    std::fs::write(&disconnected, "4 2\n0 1\n2 3\n").unwrap();
    assert_eq!(
        equicut(&["analyze", "--file", disconnected.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    let good = dir.join("good.txt");
    std::fs::write(&good, "# a square\n4 4\n0 1\n1 2\n2 3\n0 3\n").unwrap();
    let r = json(&["analyze", "--file", good.to_str().unwrap()]);
    assert_eq!(r["size"], "2");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn limits_exit_3_unless_forced() {
    assert_eq!(
        equicut(&["analyze", "--name", "p20"]).status.code(),
        Some(3)
    );
    assert_eq!(
        equicut(&["analyze", "--name", "c8", "--cut-limit", "6"])
            .status
            .code(),
        Some(3)
    );
    let r = json(&["analyze", "--name", "p20", "--force"]);
    assert_eq!(r["wiener"], 1330);
    assert!(r.get("is_l1").is_none());
    assert!(r["reason"].as_str().unwrap().contains("limit"));
}

#[test]
fn budget_exit_4_unless_forced() {
    let out = equicut(&["analyze", "--name", "k5", "--node-budget", "1"]);
    assert_eq!(out.status.code(), Some(4));
    let r = json(&["analyze", "--name", "k5", "--node-budget", "1", "--force"]);
    assert_eq!(r["size"], "5/3");
    assert!(r.get("scale").is_none());
    assert!(r["reason"].is_string());
}

#[test]
fn fixture_override() {
    let r = json(&["analyze", "--name", "snub24cell", "--force"]);
    assert_eq!(r["v"], 96);
    assert_eq!(r["antipodal"], true);

    let dir = std::env::temp_dir().join(format!("equicut-fixture-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("snub24cell.txt"), "0101\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_equicut"))
        .args(["analyze", "--name", "snub24cell", "--force"])
        .env("EQUICUT_FIXTURES", &dir)
        .output()
        .unwrap();
    assert_ne!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("fixture"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn help_exits_cleanly() {
    let out = equicut(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verify-catalog"));
}
