use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn sqroot(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sqroot"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const K5: &str = "5 10\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";
const K13: &str = "4 3\n0 1\n0 2\n0 3\n";
const K23: &str = "5 6\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n";

#[test]
fn exit_code_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = write(dir.path(), "k5.el", K5);
    let k13 = write(dir.path(), "k13.el", K13);
    let k23 = write(dir.path(), "k23.el", K23);
    let bad = write(dir.path(), "bad.el", "2 1\n0 0\n");
    let k9 = write(
        dir.path(),
        "k9.el",
        &{
            let mut s = String::from("9 36\n");
            for a in 0..9 {
                for b in a + 1..9 {
                    s += &format!("{a} {b}\n");
                }
            }
            s
        },
    );
    let cycle40 = write(
        dir.path(),
        "c40.el",
        &(String::from("40 40\n") + &(0..40).map(|i| format!("{} {}\n", i, (i + 1) % 40)).collect::<String>()),
    );
    let corpus = dir.path().join("corpus");
    let corpus = corpus.to_str().unwrap();

    let cases: Vec<(Vec<&str>, Option<&str>, i32)> = vec![
        (vec!["solve", "--family", "outerplanar", &k5], None, 0),
        (vec!["solve", "--family", "outerplanar", &k13], None, 1),
        (vec!["solve", "--family", "pw2", "--json", "-"], Some(K5), 0),
        (vec!["solve", &bad], None, 3),
        (vec!["solve", "--family", "planar", &k5], None, 3),
        (vec!["solve", "--frobnicate", &k5], None, 3),
        (vec!["width", "--path", &k23], None, 0),
        (vec!["width", "--tree", &cycle40], None, 2),
        (vec!["oracle", &k9], None, 2),
        (vec!["oracle", &k13], None, 1),
        (vec!["gen", "--family", "cactus", "--n", "6", "--count", "5", "--seed", "1", "--out", corpus], None, 0),
        (vec!["verify-corpus", corpus], None, 0),
    ];
    assert_eq!(cases.len(), 12);
    for (args, stdin, want) in cases {
        let out = sqroot(&args, stdin);
        assert_eq!(
            out.status.code(),
            Some(want),
            "{args:?}\nstdout: {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn solve_outputs() {
    let out = sqroot(&["solve", "--json", "-"], Some(K5));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["answer"], "yes");
    assert_eq!(v["family"], "outerplanar");
    let root: Vec<(usize, usize)> = serde_json::from_value(v["root_edges"].clone()).unwrap();
    let g = sqroot_core::Graph::from_edges(5, root).unwrap();
    assert_eq!(g.square(), sqroot_core::Graph::complete(5));

    let out = sqroot(&["solve", "-"], Some(K13));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("answer: no\n"), "{text}");
    assert!(text.contains("reason: "));
}

#[test]
fn width_prints_value_and_decomposition() {
    let out = sqroot(&["width", "--path", "-"], Some(K23));
    let text = String::from_utf8(out.stdout).unwrap();
    let (first, rest) = text.split_once('\n').unwrap();
    assert_eq!(first, "2");
    let dec = sqroot::decomposition::parse_decomposition(rest, sqroot_core::width::WidthKind::Path).unwrap();
    let g = sqroot::parse_edge_list(K23).unwrap();
    assert!(sqroot_core::width::is_valid_decomposition(&g, &dec));
    assert_eq!(dec.width(), 2);
}

#[test]
fn oracle_summary_line() {
    let out = sqroot(&["oracle", "-"], Some("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 8);
    assert!(text.ends_with("minimal=7\n"), "{text}");
    assert!(text.lines().next().unwrap().contains('-'));
}

#[test]
fn reduce_trace_is_json() {
    let spider_sq = sqroot(&["power", "-"], Some("7 6\n0 1\n0 2\n0 3\n1 4\n2 5\n3 6\n"));
    let sq = String::from_utf8(spider_sq.stdout).unwrap();
    let out = sqroot(&["reduce", "--trace", "-"], Some(&sq));
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let c = &v["components"][0];
    assert_eq!(c["red"], serde_json::json!([[0, 1], [0, 2], [0, 3]]));
    assert_eq!(c["status"], "running");
}

#[test]
fn labeled_input_and_exports() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let root = dir.path().join("root.el");
    let text = "a b\nb c\nc a\n";
    let out = sqroot(
        &["solve", "--labeled", "--dot", dot.to_str().unwrap(), "--out", root.to_str().unwrap(), "-"],
        Some(text),
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("root: "));
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("graph G {"));
    let h = sqroot::parse_edge_list(&std::fs::read_to_string(&root).unwrap()).unwrap();
    assert_eq!(h.m(), 2);
}

#[test]
fn power_bound_report() {
    let out = sqroot(&["power", "--bound", "--k", "2", "-"], Some("8 8\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n7 0\n"));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("tw(G)=2 tw(G^2)=4 bound=12 holds=true"), "{text}");
}
