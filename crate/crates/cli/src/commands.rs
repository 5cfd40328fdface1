use std::path::Path;

use framed4::census::{run_census, summarize};
use framed4::chord::chord_diagram_of;
use framed4::circuits::{find_rotating_circuit, transverse_count};
use framed4::planarity::planar_rotation;
use framed4::spatial::{SpatialDiagram, DELTA_PAIRS};
use framed4::text::{parse_graph_or_word, parse_loop, parse_spatial, to_dot, write_chord_word, write_graph};
use framed4::{
    canonical_form, delta, find_delta_minor, find_source_sink, genus_oracle, is_planar, odd_transverse_triple,
    Component, FramedFourGraph, LinkPair, RotationSystem,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::Report;
use crate::Opts;

type Outcome = Result<(Report, bool), String>;

fn read(path: &Path) -> Result<Vec<u8>, String> {
    std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_graph(command: &str, path: &Path) -> Result<(FramedFourGraph, Report), String> {
    let bytes = read(path)?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| format!("{}: not UTF-8", path.display()))?;
    let g = parse_graph_or_word(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((g, Report::new(command).with_input(&path.display().to_string(), &bytes)))
}

fn load_diagram(command: &str, path: &Path) -> Result<(SpatialDiagram, Report), String> {
    let bytes = read(path)?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| format!("{}: not UTF-8", path.display()))?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let sd = parse_spatial(&text, |name| {
        let p = dir.join(name);
        let t = std::fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display()))?;
        parse_graph_or_word(&t).map_err(|e| format!("{}: {e}", p.display()))
    })
    .map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((sd, Report::new(command).with_input(&path.display().to_string(), &bytes)))
}

fn graph_facts(r: &mut Report, g: &FramedFourGraph) {
    r.fact("graph.vertices", g.vertex_count());
    r.fact("graph.edges", g.edge_count());
    r.fact("graph.circles", g.circle_count());
}

fn rotation_witness(r: &mut Report, g: &FramedFourGraph, rot: &RotationSystem) {
    for v in g.vertex_ids() {
        let o = rot.cyclic_order(g, v);
        r.witness(&format!("rotation.{v}"), format!("{} {} {} {}", o[0], o[1], o[2], o[3]));
    }
}

fn pair_witness(r: &mut Report, p: &LinkPair) {
    r.witness("loop.0", &p.first);
    r.witness("loop.1", &p.second);
    let xs: Vec<String> = p.crossings.iter().map(|(x, s)| format!("x{x}:{}", if *s > 0 { '+' } else { '-' })).collect();
    r.witness("crossings", xs.join(" "));
    r.witness("linking_number", p.linking_number);
}

pub fn check_planarity(path: &Path, opts: &Opts) -> Outcome {
    let (g, mut r) = load_graph("check-planarity", path)?;
    graph_facts(&mut r, &g);
    let planar = is_planar(&g).map_err(|e| e.to_string())?;
    r.fact("planar", planar);
    if planar {
        if opts.witness {
            if let Some(rot) = planar_rotation(&g) {
                rotation_witness(&mut r, &g, &rot);
            }
        }
    } else {
        let w = find_delta_minor(&g).map_err(|e| e.to_string())?.ok_or("no Δ minor found for a non-planar graph")?;
        r.witness("delta_minor", &w);
        if opts.witness {
            if let Some(t) = odd_transverse_triple(&g) {
                for (i, l) in t.iter().enumerate() {
                    r.witness(&format!("transverse.{i}"), l);
                }
            }
        }
    }
    Ok((r, planar))
}

pub fn delta_minor(path: &Path) -> Outcome {
    let (g, mut r) = load_graph("delta-minor", path)?;
    graph_facts(&mut r, &g);
    let w = find_delta_minor(&g).map_err(|e| e.to_string())?;
    r.fact("delta_minor", w.is_some());
    if let Some(w) = &w {
        let m = w.replay(&g).map_err(|e| e.to_string())?;
        r.fact("replays_to_delta", canonical_form(&m) == canonical_form(&delta()));
        r.witness("moves", w);
    }
    Ok((r, w.is_some()))
}

pub fn source_sink(path: &Path, opts: &Opts) -> Outcome {
    let (g, mut r) = load_graph("source-sink", path)?;
    graph_facts(&mut r, &g);
    let all = find_source_sink(&g);
    r.fact("admits", !all.is_empty());
    r.fact("count", all.len());
    if opts.witness {
        if let Some(o) = all.first() {
            for (k, (t, h)) in &o.direction {
                r.witness(&format!("edge.{k}"), format!("{t} -> {h}"));
            }
            for (i, c) in o.circles.iter().enumerate() {
                r.witness(&format!("circle.{i}"), format!("{c:?}"));
            }
        }
    }
    Ok((r, !all.is_empty()))
}

pub fn chord_diagram(path: &Path) -> Outcome {
    let (g, mut r) = load_graph("chord-diagram", path)?;
    graph_facts(&mut r, &g);
    for (i, c) in g.connected_components().iter().enumerate() {
        if let Component::Circle(_) = c {
            r.fact(&format!("component.{i}.circle"), true);
            continue;
        }
        let circuit = find_rotating_circuit(&g, c).map_err(|e| e.to_string())?;
        let d = chord_diagram_of(&g, &circuit).map_err(|e| e.to_string())?;
        r.fact(&format!("component.{i}.circuit"), circuit.as_loop());
        r.fact(&format!("component.{i}.word"), write_chord_word(&d));
        r.fact(&format!("component.{i}.bipartite"), d.interlacement().is_bipartite());
    }
    Ok((r, true))
}

pub fn realize(path: &Path, dot: bool) -> Outcome {
    let (g, mut r) = load_graph("realize", path)?;
    graph_facts(&mut r, &g);
    r.body = Some(if dot { to_dot(&g) } else { write_graph(&g) });
    Ok((r, true))
}

pub fn genus(path: &Path, opts: &Opts) -> Outcome {
    let (g, mut r) = load_graph("genus", path)?;
    graph_facts(&mut r, &g);
    if g.vertex_count() > 24 {
        return Err(format!("genus oracle limited to 24 vertices, input has {}", g.vertex_count()));
    }
    let genus = genus_oracle(&g);
    r.fact("genus", genus);
    if opts.witness {
        let n = g.vertex_count();
        let best = (0..1u64 << n)
            .map(|m| RotationSystem::from_mask(&g, m))
            .find(|rot| framed4::planarity::genus_of(&g, rot) == genus)
            .expect("minimum is attained");
        rotation_witness(&mut r, &g, &best);
    }
    Ok((r, true))
}

pub fn linking(path: &Path, loops: &[String]) -> Outcome {
    let (sd, mut r) = load_diagram("linking", path)?;
    graph_facts(&mut r, sd.base());
    r.fact("crossings", sd.crossing_count());
    if !loops.is_empty() {
        if loops.len() != 2 {
            return Err(format!("--loop must be given exactly twice, got {}", loops.len()));
        }
        let a = parse_loop(&loops[0]).map_err(|e| e.to_string())?;
        let b = parse_loop(&loops[1]).map_err(|e| e.to_string())?;
        let p = sd.link_pair(&a, &b).map_err(|e| e.to_string())?;
        r.fact("linking_number", p.linking_number);
        r.fact("transverse", transverse_count(sd.base(), &a, &b).map_err(|e| e.to_string())?);
        let odd = p.linking_number.rem_euclid(2) == 1;
        pair_witness(&mut r, &p);
        return Ok((r, odd));
    }
    let p = sd.find_odd_linking_pair().map_err(|e| e.to_string())?;
    r.fact("odd_pair", p.is_some());
    if let Some(p) = &p {
        r.fact("linking_number", p.linking_number);
        pair_witness(&mut r, p);
    }
    Ok((r, p.is_some()))
}

pub fn linkless(path: &Path) -> Outcome {
    let (sd, mut r) = load_diagram("linkless", path)?;
    graph_facts(&mut r, sd.base());
    r.fact("crossings", sd.crossing_count());
    let linked = sd.first_linked_pair();
    r.fact("linkless", linked.is_none());
    if let Some(p) = &linked {
        pair_witness(&mut r, p);
    }
    Ok((r, linked.is_none()))
}

pub fn parity(path: &Path, opts: &Opts) -> Outcome {
    let (sd, mut r) = load_diagram("parity", path)?;
    r.fact("crossings", sd.crossing_count());
    let lk = sd.delta_linking_numbers().map_err(|e| e.to_string())?;
    for ((name, _, _), l) in DELTA_PAIRS.iter().zip(lk) {
        r.fact(&format!("lk.{name}"), l);
    }
    let p = sd.delta_parity().map_err(|e| e.to_string())?;
    r.fact("parity", if p == 1 { "odd" } else { "even" });
    let mut ok = p == 1;
    if let Some(seed) = opts.seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sequences = 1000;
        let mut odd = 0;
        for _ in 0..sequences {
            let len = rng.gen_range(1..40);
            if sd.random_switches(&mut rng, len).delta_parity().map_err(|e| e.to_string())? == 1 {
                odd += 1;
            }
        }
        r.fact("fuzz.seed", seed);
        r.fact("fuzz.sequences", sequences);
        r.fact("fuzz.odd", odd);
        ok &= odd == sequences;
    }
    Ok((r, ok))
}

pub fn census(opts: &Opts) -> Outcome {
    let mut r = Report::new("census");
    let rows = run_census(opts.max_chords);
    let s = summarize(&rows);
    r.fact("max_chords", opts.max_chords);
    r.fact("diagrams", s.diagrams);
    r.fact("non_planar", s.non_planar);
    r.fact("disagreements", s.disagreements);
    r.fact("bad_source_sink_counts", s.bad_source_sink);
    r.fact("bad_round_trips", s.bad_round_trips);
    if let Some(d) = &s.first_disagreement {
        r.witness("first_disagreement", write_chord_word(d));
    }
    let ok = s.disagreements == 0 && s.bad_source_sink == 0 && s.bad_round_trips == 0;
    Ok((r, ok))
}
