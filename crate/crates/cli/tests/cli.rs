use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn tenpage(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tenpage"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.unwrap_or_default()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn generate(args: &[&str]) -> Vec<u8> {
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    let o = tenpage(&full, None);
    assert!(o.status.success());
    o.stdout
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_and_embed_extended_wheel() {
    let g = generate(&["xw", "3"]);
    let o = tenpage(&["embed", "-"], Some(&g));
    assert_eq!(o.status.code(), Some(0));
    let pages: usize = stdout(&o).trim().strip_prefix("pages: ").unwrap().parse().unwrap();
    assert!(pages <= 10);
}

#[test]
fn hamiltonian_route_uses_four_pages() {
    let g = generate(&["xw", "3"]);
    let o = tenpage(&["hamiltonian", "-"], Some(&g));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "pages: 4");
}

#[test]
fn verify_accepts_embedding_and_rejects_tampered_one() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.json");
    let emb = dir.path().join("g.emb");
    let svg = dir.path().join("g.svg");
    std::fs::write(&graph, generate(&["one-planar", "30", "--seed", "7"])).unwrap();
    let o = tenpage(&["embed", path(&graph), "-o", path(&emb), "--svg", path(&svg)], None);
    assert_eq!(o.status.code(), Some(0));
    let o = tenpage(&["verify", path(&graph), path(&emb)], None);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let text = std::fs::read_to_string(&emb).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let pages = v["pages"].as_array_mut().unwrap();
    let moved: Vec<serde_json::Value> = pages.iter_mut().skip(1).flat_map(|p| p["edges"].as_array_mut().unwrap().drain(..)).collect();
    pages[0]["edges"].as_array_mut().unwrap().extend(moved);
    let bad = dir.path().join("bad.emb");
    std::fs::write(&bad, v.to_string()).unwrap();
    let o = tenpage(&["verify", path(&graph), path(&bad)], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("twists"));

    let svg_text = std::fs::read_to_string(&svg).unwrap();
    let m = v["pages"].as_array().unwrap().iter().map(|p| p["edges"].as_array().unwrap().len()).sum::<usize>();
    assert_eq!(svg_text.matches("<path").count(), m);
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let emb = dir.path().join("c.emb");
    let svg = dir.path().join("c.svg");
    let g = generate(&["crossed-cube"]);
    assert!(tenpage(&["embed", "-", "-o", path(&emb)], Some(&g)).status.success());
    assert!(tenpage(&["render", path(&emb), "-o", path(&svg)], None).status.success());
    let s = std::fs::read_to_string(&svg).unwrap();
    assert!(s.starts_with("<svg") && s.trim_end().ends_with("</svg>"));
    assert_eq!(s.matches("<path").count(), 24);
}

#[test]
fn normalize_reports_tight_bound_on_crossed_cube() {
    let o = tenpage(&["normalize", "-"], Some(&generate(&["crossed-cube"])));
    assert!(o.status.success());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("edges: 25"), "{err}");
    assert!(err.contains("bound 4n-7: 25 (ok)"), "{err}");
    let back: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(back["edges"].as_array().unwrap().len(), 25);
}

#[test]
fn oracle_on_complete_graph() {
    let o = tenpage(&["oracle", "-"], Some(&generate(&["kn", "6"])));
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("book thickness: 3"));
}

#[test]
fn malformed_input_is_a_validation_failure() {
    let o = tenpage(&["embed", "-"], Some(b"{\"version\": 1, \"n\": 3,"));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    let o = tenpage(&["embed", "-"], Some(&generate(&["kn", "5"])));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn seed_comes_from_environment() {
    let with_env = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_tenpage"))
            .args(["generate", "triangulation", "20"])
            .env("TENPAGE_SEED", seed)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(with_env("5"), generate(&["triangulation", "20", "--seed", "5"]));
    assert_ne!(with_env("5"), with_env("6"));
}

#[test]
fn bench_emits_csv() {
    let o = tenpage(&["bench", "--family", "xw", "--max-k", "20", "--reps", "1"], None);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("k,n,m,pages,micros"));
    let ks: Vec<usize> = lines.map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(ks, vec![3, 5, 10, 20]);
}
