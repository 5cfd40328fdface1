use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;

use framed4::chord::polygon_diagram;
use framed4::planarity::planar_rotation;
use framed4::spatial::diagram_of_chords;
use framed4::text::{parse_graph, parse_graph_or_word, parse_loop, parse_spatial, parse_witness, write_graph, write_spatial};
use framed4::*;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(name)
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn kv(&self) -> BTreeMap<String, String> {
        self.stdout.lines().filter_map(|l| l.split_once('=')).map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_framed4")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn kv(args: &[&str]) -> (i32, BTreeMap<String, String>) {
    let mut a = args.to_vec();
    a.extend(["--format", "kv"]);
    let r = run(&a);
    (r.code, r.kv())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn assert_minor_replays(input: &str, witness: &str) {
    let g = parse_graph_or_word(&std::fs::read_to_string(input).unwrap()).unwrap();
    let w = parse_witness(witness).unwrap();
    assert_eq!(canonical_form(&w.replay(&g).unwrap()), canonical_form(&delta()));
}

#[test]
fn delta_is_not_planar_and_the_transcript_replays() {
    let path = data("delta.f4g");
    let p = path.to_str().unwrap();
    let (code, out) = kv(&["check-planarity", p, "--witness"]);
    assert_eq!(code, 1);
    assert_eq!(out["planar"], "false");
    assert!(out["input.digest"].starts_with("sha256:"));
    assert_minor_replays(p, &out["witness.delta_minor"]);
    for i in 0..3 {
        parse_loop(&out[&format!("witness.transverse.{i}")]).unwrap().check(&delta()).unwrap();
    }
    let text = run(&["check-planarity", p]);
    assert_eq!(text.code, 1);
    assert!(text.stdout.contains("planar: false"));
}

#[test]
fn chord_words_are_accepted_as_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let z5 = write(dir.path(), "z5.txt", "a b c d e\n");
    assert_eq!(run(&["check-planarity", &z5]).code, 2);
    let word = framed4::text::write_chord_word(&polygon_diagram(5).unwrap());
    let z5 = write(dir.path(), "z5.txt", &word);
    let (code, out) = kv(&["check-planarity", &z5]);
    assert_eq!(code, 1);
    assert_minor_replays(&z5, &out["witness.delta_minor"]);
    let (code, out) = kv(&["delta-minor", &z5]);
    assert_eq!(code, 0);
    assert_eq!(out["replays_to_delta"], "true");
    assert_minor_replays(&z5, &out["witness.moves"]);

    let planar = write(dir.path(), "p.txt", "a b a b");
    let (code, out) = kv(&["check-planarity", &planar, "--witness"]);
    assert_eq!((code, out["planar"].as_str()), (0, "true"));
    assert_eq!(kv(&["delta-minor", &planar]).0, 1);
    let circle = write(dir.path(), "c.txt", "");
    assert_eq!(kv(&["check-planarity", &circle]).1["graph.circles"], "1");
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "w.txt", "a b a");
    let r = run(&["check-planarity", &bad]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("`b`"), "{}", r.stderr);
    let dup = write(dir.path(), "g.f4g", "vertices: 1\nv0: h0 h1 h1 h3\nedges:\ncircles: 0\n");
    let r = run(&["genus", &dup]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 2") && r.stderr.contains("h1"), "{}", r.stderr);
    assert_eq!(run(&["nonsense"]).code, 2);
    assert_eq!(run(&["census", "--frobnicate"]).code, 2);
    assert_eq!(run(&["genus", "/nonexistent/file"]).code, 2);
    let sd = write(dir.path(), "bad.sd", "base: g.f4g\ncrossings:\nx0: h0.0 over h1.0 sign +\narcs:\nh0: x0\n");
    write(dir.path(), "g.f4g", &write_graph(&figure_eight()));
    assert_eq!(run(&["parity", &sd]).code, 2);
}

#[test]
fn realize_output_parses_back() {
    let dir = tempfile::tempdir().unwrap();
    let w = write(dir.path(), "w.txt", "a b c a b c");
    let r = run(&["realize", &w]);
    assert_eq!(r.code, 0);
    assert!(is_isomorphic(&parse_graph(&r.stdout).unwrap(), &delta()));
    let dot = run(&["realize", &w, "--dot"]);
    assert!(dot.stdout.starts_with("graph framed4 {"));
    let (_, out) = kv(&["realize", &w]);
    assert_eq!(out["output.0"], "vertices: 3");
}

#[test]
fn source_sink_chord_diagram_and_genus() {
    let d = data("delta.f4g");
    let d = d.to_str().unwrap();
    let (code, out) = kv(&["source-sink", d, "--witness"]);
    assert_eq!((code, out["count"].as_str()), (0, "2"));
    assert_eq!(out.keys().filter(|k| k.starts_with("witness.edge.")).count(), 6);
    let (code, out) = kv(&["chord-diagram", d]);
    assert_eq!(code, 0);
    assert_eq!(out["component.0.bipartite"], "false");
    let word = &out["component.0.word"];
    assert!(is_isomorphic(&framed4::text::parse_chord_word(word).unwrap().realize(), &delta()));
    let (code, out) = kv(&["genus", d, "--witness"]);
    assert_eq!((code, out["genus"].as_str()), (0, "1"));
    assert_eq!(out.keys().filter(|k| k.starts_with("witness.rotation.")).count(), 3);

    let dir = tempfile::tempdir().unwrap();
    let twisted = write(dir.path(), "t.f4g", "vertices: 1\nv0: h0 h1 h2 h3\nedges:\nh0 -- h2\nh1 -- h3\ncircles: 0\n");
    let (code, out) = kv(&["source-sink", &twisted]);
    assert_eq!((code, out["count"].as_str()), (1, "0"));
    assert_eq!(run(&["check-planarity", &twisted]).code, 2);
}

#[test]
fn golden_parity_is_odd() {
    let sd = data("delta_immersion.sd");
    let sd = sd.to_str().unwrap();
    let (code, out) = kv(&["parity", sd]);
    assert_eq!(code, 0);
    assert_eq!(out["parity"], "odd");
    assert_eq!(out["lk.F"], "0");
    assert_eq!(out["crossings"], "3");
    let (code, out) = kv(&["parity", sd, "--seed", "9"]);
    assert_eq!((code, out["fuzz.odd"].as_str()), (0, "1000"));
    let text = run(&["parity", sd]);
    assert!(text.stdout.contains("parity: odd"));
}

fn assert_pair_replays(sd: &SpatialDiagram, out: &BTreeMap<String, String>) {
    let a = parse_loop(&out["witness.loop.0"]).unwrap();
    let b = parse_loop(&out["witness.loop.1"]).unwrap();
    let lk = sd.linking_number(&a, &b).unwrap();
    assert_eq!(lk.to_string(), out["witness.linking_number"]);
    assert_eq!(lk.rem_euclid(2), 1);
}

#[test]
fn linking_witnesses_replay() {
    let path = data("delta_immersion.sd");
    let p = path.to_str().unwrap();
    let sd = delta_immersion();
    let (code, out) = kv(&["linking", p]);
    assert_eq!(code, 0);
    assert_pair_replays(&sd, &out);
    let (code, out) = kv(&["linking", p, "--loop", "h0 h1 h8 h11 h7 h4", "--loop", "h2 h3 h10 h9 h5 h6"]);
    assert_eq!(code, 0);
    assert_eq!(out["linking_number"].parse::<i64>().unwrap().rem_euclid(2), 1);
    let (code, out) = kv(&["linkless", p]);
    assert_eq!((code, out["linkless"].as_str()), (1, "false"));
    assert_ne!(out["witness.linking_number"], "0");

    let dir = tempfile::tempdir().unwrap();
    let z = diagram_of_chords(&polygon_diagram(5).unwrap(), |x| x % 3 == 0);
    write(dir.path(), "z5.f4g", &write_graph(z.base()));
    let zp = write(dir.path(), "z5.sd", &write_spatial(&z, "z5.f4g"));
    let (code, out) = kv(&["linking", &zp]);
    assert_eq!(code, 0);
    let reread = parse_spatial(&std::fs::read_to_string(&zp).unwrap(), |_| Ok(z.base().clone())).unwrap();
    assert_pair_replays(&reread, &out);
    assert_eq!(run(&["parity", &zp]).code, 2);

    let g = framed4::text::parse_chord_word("a b a b").unwrap().realize();
    let flat = SpatialDiagram::flat(&g, &planar_rotation(&g).unwrap());
    write(dir.path(), "p.f4g", &write_graph(&g));
    let fp = write(dir.path(), "p.sd", &write_spatial(&flat, "p.f4g"));
    assert_eq!(kv(&["linkless", &fp]).0, 0);
    assert_eq!(kv(&["linking", &fp]).1["odd_pair"], "false");
}

#[test]
fn census_reports_no_disagreements() {
    let (code, out) = kv(&["census", "--max-chords", "4"]);
    assert_eq!(code, 0);
    assert_eq!(out["diagrams"], "27");
    assert_eq!(out["disagreements"], "0");
}
