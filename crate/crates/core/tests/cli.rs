use std::path::{Path, PathBuf};
use std::process::Command;

use polysft::cli::run;
use serde_json::Value;

struct Out {
    code: i32,
    stdout: Vec<u8>,
    stderr: String,
}

impl Out {
    fn json(&self) -> Value {
        serde_json::from_slice(&self.stdout).unwrap()
    }

    fn text(&self) -> String {
        String::from_utf8(self.stdout.clone()).unwrap()
    }
}

fn cli(args: &[&str]) -> Out {
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let argv = std::iter::once("polysft").chain(args.iter().copied());
    let code = run(argv, &mut stdout, &mut stderr);
    Out {
        code,
        stdout,
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const FULL2: &str = r#"{"group":{"family":"free_abelian","rank":2},"alphabet":["a","b"]}"#;
const DEAD: &str = r#"{"group":{"family":"free_abelian","rank":2},"alphabet":["a"],
  "forbidden":[{"support":[{"coords":[0,0]},{"coords":[1,0]}],"symbols":["a","a"]}]}"#;
const ABELIANIZATION: &str = r#"{"source":{"family":"heisenberg3"},"target":{"family":"free_abelian","rank":2},
  "images":[{"coords":[1,0]},{"coords":[0,1]},{"coords":[0,0]}],"kind":"quotient",
  "kernel_generators":[{"coords":[0,0,1]}]}"#;
const SINGLE_TILE: &str = r#"{"tiles":[{"n":"x","e":"x","s":"x","w":"x"}]}"#;

#[test]
fn mod3_output_shape_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = cli(&["mod3", "--dim", "2"]);
    assert_eq!(out.code, 0);
    let v = out.json();
    assert_eq!(v["alphabet"].as_array().unwrap().len(), 9);
    assert_eq!(v["forbidden"].as_array().unwrap().len(), 144);
    let text = out.text();
    let reparsed = polysft::io::parse_sft(&text).unwrap();
    assert_eq!(polysft::io::sft_to_string(&reparsed), text);
    // feeding the output back through a construction keeps it loadable
    let m = write(dir.path(), "m.json", &text);
    let p = cli(&["product", s(&m), s(&m)]);
    assert_eq!(p.code, 0);
    assert_eq!(p.json()["alphabet"].as_array().unwrap().len(), 81);
}

#[test]
fn check_full_shift_gives_first_symbol_witness() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "full.json", FULL2);
    let out = cli(&["check", s(&f), "--radius", "2"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v = out.json();
    assert_eq!(v["result"]["verdict"], "witness");
    let cells = v["result"]["witness"]["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 13);
    assert!(cells.iter().all(|c| c["value"] == 0));
    assert_eq!(v["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn exit_codes_partition_outcomes() {
    let dir = tempfile::tempdir().unwrap();
    let dead = write(dir.path(), "dead.json", DEAD);
    let out = cli(&["check", s(&dead), "--radius", "1"]);
    assert_eq!(out.code, 1);
    assert_eq!(out.json()["result"]["verdict"], "empty");

    let m = write(dir.path(), "m.json", &cli(&["mod3", "--dim", "2"]).text());
    let out = cli(&["check", s(&m), "--radius", "3", "--budget", "2"]);
    assert_eq!(out.code, 2);
    assert_eq!(out.json()["result"]["verdict"], "inconclusive");

    assert_eq!(cli(&["periodic", s(&m), "--lattice", "2,0;0,2"]).code, 1);
    assert_eq!(cli(&["search-periods", s(&dead), "--max-index", "3"]).code, 1);
    assert_eq!(cli(&["search-periods", s(&m), "--max-index", "9"]).code, 0);
}

#[test]
fn usage_and_malformed_inputs() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(cli(&["frobnicate"]).code, 64);
    assert_eq!(cli(&["check"]).code, 64);
    assert_eq!(cli(&["mod3", "--dim", "x"]).code, 64);
    assert_eq!(cli(&["--help"]).code, 0);

    let bad = write(dir.path(), "bad.json", "{\"group\":");
    let out = cli(&["check", s(&bad), "--radius", "1"]);
    assert_eq!(out.code, 65);
    assert!(out.stderr.contains("malformed"));
    assert_eq!(cli(&["check", "/nonexistent/file.json", "--radius", "1"]).code, 65);

    let dead = write(dir.path(), "dead.json", DEAD);
    // radius below the pattern radius
    assert_eq!(cli(&["check", s(&dead), "--radius", "0"]).code, 64);
    assert_eq!(cli(&["periodic", s(&dead), "--lattice", "1,2,3"]).code, 64);

    // a quotient is not an embedding
    let f = write(dir.path(), "full.json", FULL2);
    let h = write(dir.path(), "ab.json", ABELIANIZATION);
    assert_eq!(cli(&["induce", s(&f), "--hom", s(&h)]).code, 65);
}

#[test]
fn periodic_witness_feeds_stabilizer_and_render() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", &cli(&["mod3", "--dim", "2"]).text());
    let out = cli(&["periodic", s(&m), "--lattice", "3,0;0,3"]);
    assert_eq!(out.code, 0);
    let report = write(dir.path(), "p.json", &out.text());
    let st = cli(&["stabilizer", s(&report)]);
    assert_eq!(st.code, 0);
    assert_eq!(st.json()["result"]["stabilizer"], serde_json::json!([[3, 0], [0, 3]]));

    let text = cli(&["render", s(&report)]).text();
    assert_eq!(text.lines().count(), 3);

    let pgm = cli(&["render", s(&report), "--format", "pgm"]).stdout;
    let header = b"P5\n3 3\n255\n";
    assert_eq!(&pgm[..header.len()], header);
    let pixels = &pgm[header.len()..];
    assert_eq!(pixels.len(), 9);
    // nine symbols: gray levels floor(255 i / 8)
    let mut levels: Vec<u8> = pixels.to_vec();
    levels.sort();
    let expected: Vec<u8> = (0..9).map(|i| (255 * i / 8) as u8).collect();
    assert_eq!(levels, expected);
}

#[test]
fn aut_check_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", &cli(&["mod3", "--dim", "2"]).text());
    let report = write(dir.path(), "p.json", &cli(&["periodic", s(&m), "--lattice", "3,0;0,3"]).text());
    let out = cli(&["aut-check", s(&m), s(&report), "--matrix", "-1,0;0,-1"]);
    assert_eq!(out.code, 1);
    assert_eq!(out.json()["result"]["verdict"], "refuted");
    assert_eq!(cli(&["aut-check", s(&m), s(&report), "--matrix", "1,0;0,1"]).code, 0);
    let sh = write(dir.path(), "shear.json", r#"{"shear":{"u":[1,0],"v":[0,1]}}"#);
    let out = cli(&["aut-check", s(&m), s(&report), "--matrix", s(&sh)]);
    assert!(out.code == 0 || out.code == 1);
    assert_eq!(out.json()["result"]["matrix"], serde_json::json!([[1, 0], [1, 1]]));
    assert_eq!(cli(&["aut-check", s(&m), s(&report), "--matrix", "2,0;0,1"]).code, 64);
}

#[test]
fn constructions_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "full.json", FULL2);
    let h = write(dir.path(), "ab.json", ABELIANIZATION);
    let lifted = cli(&["lift", s(&f), "--hom", s(&h)]);
    assert_eq!(lifted.code, 0);
    assert_eq!(lifted.json()["group"]["family"], "heisenberg3");
    assert_eq!(lifted.json()["forbidden"].as_array().unwrap().len(), 2);

    let t = write(dir.path(), "tiles.json", SINGLE_TILE);
    let wang = cli(&["wang", s(&t)]);
    assert_eq!(wang.code, 0);
    assert_eq!(wang.json()["alphabet"], serde_json::json!(["t0"]));

    let chain = write(dir.path(), "chain.json", &format!("{{\"chain\":[{ABELIANIZATION}]}}"));
    let reduced = cli(&["reduce", s(&t), "--chain", s(&chain)]);
    assert_eq!(reduced.code, 0);
    let r = write(dir.path(), "r.json", &reduced.text());
    assert_eq!(cli(&["check", s(&r), "--radius", "3"]).code, 0);

    let z1 = write(dir.path(), "z1.json", r#"{"group":{"family":"free_abelian","rank":1},"alphabet":["a","b"]}"#);
    let emb = write(
        dir.path(),
        "emb.json",
        r#"{"source":{"family":"free_abelian","rank":1},"target":{"family":"free_abelian","rank":2},
            "images":[{"coords":[1,0]}],"kind":"embedding"}"#,
    );
    let induced = cli(&["induce", s(&z1), "--hom", s(&emb)]);
    assert_eq!(induced.code, 0);
    assert_eq!(induced.json()["group"]["rank"], 2);
}

#[test]
fn cnf_export_header() {
    let dir = tempfile::tempdir().unwrap();
    let dead = write(dir.path(), "dead.json", DEAD);
    let out = cli(&["export-cnf", s(&dead), "--radius", "1"]);
    assert_eq!(out.code, 0);
    let text = out.text();
    // 5 cells, one symbol: 5 unit clauses plus 2 domino placements
    assert!(text.contains("p cnf 5 7\n"));
    assert_eq!(cli(&["export-cnf", s(&dead), "--radius", "0"]).code, 64);
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", &cli(&["mod3", "--dim", "2"]).text());
    let a = cli(&["check", s(&m), "--radius", "2"]);
    let b = cli(&["check", s(&m), "--radius", "2"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.json().get("timing").is_none());
    let mut timed = cli(&["check", s(&m), "--radius", "2", "--timing"]).json();
    assert!(timed["timing"]["wall_ms"].is_u64());
    let obj = timed.as_object_mut().unwrap();
    obj.remove("timing");
    obj.insert("command".into(), a.json()["command"].clone());
    assert_eq!(timed, a.json());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_polysft");
    let dir = tempfile::tempdir().unwrap();
    let dead = write(dir.path(), "dead.json", DEAD);
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code().unwrap();
    assert_eq!(status(&["mod3", "--dim", "1"]), 0);
    assert_eq!(status(&["check", s(&dead), "--radius", "1"]), 1);
    assert_eq!(status(&["nonsense"]), 64);
    let out = Command::new(bin).args(["render", s(&dead)]).output().unwrap();
    assert_eq!(out.status.code(), Some(65));
}
