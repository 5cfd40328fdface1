//! Text formats: graph files, chord words, spatial diagrams and DOT output.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::chord::{label_name, ChordDiagram};
use crate::error::ParseError;
use crate::circuits::RotatingLoop;
use crate::graph::{Choice, FramedFourGraph, HalfEdge, Orientation, VertexId};
use crate::minor::{MinorWitness, Move};
use crate::spatial::{Curve, Layer, Passage, SpatialDiagram};

/// Non-empty lines with their 1-based numbers, `#` comments removed.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap().trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_id(tok: &str, prefix: char, line: usize) -> Result<u32, ParseError> {
    tok.strip_prefix(prefix)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| ParseError::new(line, format!("expected {prefix}<number>, found `{tok}`")))
}

fn parse_count(l: &str, key: &str, line: usize) -> Result<usize, ParseError> {
    l.strip_prefix(key)
        .and_then(|s| s.strip_prefix(':'))
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| ParseError::new(line, format!("expected `{key}: <count>`, found `{l}`")))
}

pub fn parse_graph(text: &str) -> Result<FramedFourGraph, ParseError> {
    let mut it = lines(text).peekable();
    let (ln, first) = it.next().ok_or_else(|| ParseError::new(1, "empty graph file"))?;
    let n = parse_count(first, "vertices", ln)?;
    let mut vertices = BTreeMap::new();
    let mut owner: BTreeMap<HalfEdge, usize> = BTreeMap::new();
    for _ in 0..n {
        let (ln, l) = it.next().ok_or_else(|| ParseError::new(ln, format!("expected {n} vertex lines")))?;
        let (head, rest) = l.split_once(':').ok_or_else(|| ParseError::new(ln, "expected `v<i>: h.. h.. h.. h..`"))?;
        let v = VertexId(parse_id(head.trim(), 'v', ln)?);
        let hs: Vec<&str> = rest.split_whitespace().collect();
        if hs.len() != 4 {
            return Err(ParseError::new(ln, format!("{v} lists {} half-edges, expected 4", hs.len())));
        }
        let mut quad = [HalfEdge(0); 4];
        for (k, tok) in hs.iter().enumerate() {
            let h = HalfEdge(parse_id(tok, 'h', ln)?);
            if let Some(prev) = owner.insert(h, ln) {
                return Err(ParseError::new(ln, format!("duplicate half-edge {h} (first used on line {prev})")));
            }
            quad[k] = h;
        }
        if vertices.insert(v, quad).is_some() {
            return Err(ParseError::new(ln, format!("duplicate vertex {v}")));
        }
    }
    let (ln, l) = it.next().ok_or_else(|| ParseError::new(ln, "missing `edges:` line"))?;
    if l != "edges:" {
        return Err(ParseError::new(ln, format!("expected `edges:`, found `{l}`")));
    }
    let mut edges = Vec::new();
    let mut paired: BTreeMap<HalfEdge, usize> = BTreeMap::new();
    let mut last = ln;
    let circles = loop {
        let (ln, l) = it.next().ok_or_else(|| ParseError::new(last, "missing `circles:` line"))?;
        last = ln;
        if l.starts_with("circles") {
            break parse_count(l, "circles", ln)?;
        }
        let (a, b) = l.split_once("--").ok_or_else(|| ParseError::new(ln, format!("expected `h<a> -- h<b>`, found `{l}`")))?;
        let (a, b) = (HalfEdge(parse_id(a.trim(), 'h', ln)?), HalfEdge(parse_id(b.trim(), 'h', ln)?));
        for h in [a, b] {
            if !owner.contains_key(&h) {
                return Err(ParseError::new(ln, format!("unknown half-edge {h}")));
            }
            if let Some(prev) = paired.insert(h, ln) {
                return Err(ParseError::new(ln, format!("half-edge {h} already paired on line {prev}")));
            }
        }
        if a == b {
            return Err(ParseError::new(ln, format!("half-edge {a} paired with itself")));
        }
        edges.push((a, b));
    };
    if let Some((ln, l)) = it.next() {
        return Err(ParseError::new(ln, format!("unexpected line `{l}`")));
    }
    if let Some(h) = owner.keys().find(|h| !paired.contains_key(h)) {
        return Err(ParseError::new(last, format!("half-edge {h} is not paired")));
    }
    FramedFourGraph::new(vertices, edges, vec![Orientation::Positive; circles])
        .map_err(|e| ParseError::new(last, e.to_string()))
}

pub fn write_graph(g: &FramedFourGraph) -> String {
    let mut s = String::new();
    writeln!(s, "vertices: {}", g.vertex_count()).unwrap();
    for (v, q) in g.vertices() {
        writeln!(s, "{v}: {} {} {} {}", q[0], q[1], q[2], q[3]).unwrap();
    }
    s.push_str("edges:\n");
    for (a, b) in g.edges() {
        writeln!(s, "{a} -- {b}").unwrap();
    }
    writeln!(s, "circles: {}", g.circle_count()).unwrap();
    s
}

/// Reads a cyclic double-occurrence word; labels are numbered by first
/// appearance.
pub fn parse_chord_word(text: &str) -> Result<ChordDiagram, ParseError> {
    let mut ids: BTreeMap<&str, u32> = BTreeMap::new();
    let mut count: BTreeMap<&str, usize> = BTreeMap::new();
    let mut word = Vec::new();
    let mut line_of = BTreeMap::new();
    for (ln, l) in lines(text) {
        for tok in l.split_whitespace() {
            let next = ids.len() as u32;
            word.push(*ids.entry(tok).or_insert(next));
            *count.entry(tok).or_default() += 1;
            line_of.entry(tok).or_insert(ln);
        }
    }
    if let Some((tok, c)) = count.iter().find(|(_, &c)| c != 2) {
        return Err(ParseError::new(line_of[tok], format!("label `{tok}` occurs {c} times, expected 2")));
    }
    ChordDiagram::new(word).map_err(|e| ParseError::new(1, e.to_string()))
}

pub fn write_chord_word(d: &ChordDiagram) -> String {
    d.word().iter().map(|&x| label_name(x)).collect::<Vec<_>>().join(" ")
}

/// A graph file or a chord word; chord words are realized.
pub fn parse_graph_or_word(text: &str) -> Result<FramedFourGraph, ParseError> {
    let first = lines(text).next();
    match first {
        Some((_, l)) if l.starts_with("vertices") => parse_graph(text),
        _ => Ok(parse_chord_word(text)?.realize()),
    }
}

fn curve_name(c: Curve) -> String {
    c.to_string()
}

fn parse_curve(tok: &str, line: usize) -> Result<Curve, ParseError> {
    if let Some(rest) = tok.strip_prefix('o') {
        rest.parse().map(Curve::Circle).map_err(|_| ParseError::new(line, format!("bad circle name `{tok}`")))
    } else {
        Ok(Curve::Edge(HalfEdge(parse_id(tok, 'h', line)?)))
    }
}

/// Writes a diagram. Strands are named `<curve>.<k>` for the k-th passage
/// along the curve; circles are `o<i>`. `base` is the path written in the
/// header.
pub fn write_spatial(sd: &SpatialDiagram, base: &str) -> String {
    let mut s = String::new();
    writeln!(s, "base: {base}").unwrap();
    s.push_str("rotations:\n");
    for (v, r) in sd.rotation() {
        writeln!(s, "{v}: {} {} {} {}", r[0], r[1], r[2], r[3]).unwrap();
    }
    s.push_str("crossings:\n");
    for (x, (o, u)) in sd.strands().into_iter().enumerate() {
        let name = |st: Option<crate::spatial::Strand>| match st {
            Some(st) => format!("{}.{}", curve_name(st.curve), st.position),
            None => "?".to_string(),
        };
        let sign = if sd.signs()[x] > 0 { '+' } else { '-' };
        writeln!(s, "x{x}: {} over {} sign {sign}", name(o), name(u)).unwrap();
    }
    s.push_str("arcs:\n");
    for (c, ps) in sd.curves() {
        let xs: Vec<String> = ps.iter().map(|p| format!("x{}", p.crossing)).collect();
        if xs.is_empty() {
            writeln!(s, "{}:", curve_name(*c)).unwrap();
        } else {
            writeln!(s, "{}: {}", curve_name(*c), xs.join(" ")).unwrap();
        }
    }
    s
}

/// Reads a diagram. `resolve` loads the graph named in the header. A missing
/// `rotations:` section means every vertex uses its listed order.
pub fn parse_spatial(
    text: &str,
    mut resolve: impl FnMut(&str) -> Result<FramedFourGraph, String>,
) -> Result<SpatialDiagram, ParseError> {
    #[derive(PartialEq)]
    enum Section {
        Head,
        Rotations,
        Crossings,
        Arcs,
    }
    let mut section = Section::Head;
    let mut base = None;
    let mut rotation = BTreeMap::new();
    let mut crossings: Vec<(usize, (Curve, usize), (Curve, usize), i8)> = Vec::new();
    let mut curves: BTreeMap<Curve, (usize, Vec<usize>)> = BTreeMap::new();
    let mut last = 1;
    for (ln, l) in lines(text) {
        last = ln;
        match l {
            "rotations:" => {
                section = Section::Rotations;
                continue;
            }
            "crossings:" => {
                section = Section::Crossings;
                continue;
            }
            "arcs:" => {
                section = Section::Arcs;
                continue;
            }
            _ => {}
        }
        if let Some(path) = l.strip_prefix("base:") {
            if section != Section::Head || base.is_some() {
                return Err(ParseError::new(ln, "`base:` must be the first line"));
            }
            base = Some(resolve(path.trim()).map_err(|e| ParseError::new(ln, format!("base graph: {e}")))?);
            continue;
        }
        let (head, rest) = l.split_once(':').ok_or_else(|| ParseError::new(ln, format!("malformed line `{l}`")))?;
        let (head, rest) = (head.trim(), rest.trim());
        match section {
            Section::Head => return Err(ParseError::new(ln, "expected `base: <graph file>`")),
            Section::Rotations => {
                let v = VertexId(parse_id(head, 'v', ln)?);
                let hs: Vec<HalfEdge> =
                    rest.split_whitespace().map(|t| parse_id(t, 'h', ln).map(HalfEdge)).collect::<Result<_, _>>()?;
                let r: [HalfEdge; 4] =
                    hs.try_into().map_err(|_| ParseError::new(ln, format!("{v} needs 4 half-edges")))?;
                if rotation.insert(v, r).is_some() {
                    return Err(ParseError::new(ln, format!("duplicate rotation for {v}")));
                }
            }
            Section::Crossings => {
                let x = parse_id(head, 'x', ln)? as usize;
                if x != crossings.len() {
                    return Err(ParseError::new(ln, format!("expected x{}, found x{x}", crossings.len())));
                }
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let [o, "over", u, "sign", s] = toks[..] else {
                    return Err(ParseError::new(ln, "expected `x<i>: <arc> over <arc> sign <+|->`"));
                };
                let strand = |t: &str| -> Result<(Curve, usize), ParseError> {
                    let (c, k) = t.rsplit_once('.').ok_or_else(|| ParseError::new(ln, format!("bad strand `{t}`")))?;
                    let k = k.parse().map_err(|_| ParseError::new(ln, format!("bad strand `{t}`")))?;
                    Ok((parse_curve(c, ln)?, k))
                };
                let sign = match s {
                    "+" => 1,
                    "-" => -1,
                    _ => return Err(ParseError::new(ln, format!("bad sign `{s}`"))),
                };
                crossings.push((ln, strand(o)?, strand(u)?, sign));
            }
            Section::Arcs => {
                let c = parse_curve(head, ln)?;
                let xs: Vec<usize> =
                    rest.split_whitespace().map(|t| parse_id(t, 'x', ln).map(|x| x as usize)).collect::<Result<_, _>>()?;
                if curves.insert(c, (ln, xs)).is_some() {
                    return Err(ParseError::new(ln, format!("duplicate arc list for {c}")));
                }
            }
        }
    }
    let base = base.ok_or_else(|| ParseError::new(1, "missing `base:` line"))?;
    if rotation.is_empty() {
        rotation = base.vertices().collect();
    }
    let mut layers: BTreeMap<(Curve, usize), (usize, Layer)> = BTreeMap::new();
    for (x, &(ln, o, u, _)) in crossings.iter().enumerate() {
        for (st, layer) in [(o, Layer::Over), (u, Layer::Under)] {
            if layers.insert(st, (x, layer)).is_some() {
                return Err(ParseError::new(ln, format!("strand {}.{} used twice", st.0, st.1)));
            }
        }
    }
    let mut used = BTreeSet::new();
    let mut out = BTreeMap::new();
    for (c, (ln, xs)) in curves {
        let mut ps = Vec::new();
        for (k, x) in xs.into_iter().enumerate() {
            match layers.get(&(c, k)) {
                Some(&(y, layer)) if y == x => {
                    used.insert((c, k));
                    ps.push(Passage { crossing: x, layer });
                }
                _ => return Err(ParseError::new(ln, format!("passage {k} of {c} is x{x}, but no crossing names strand {c}.{k}"))),
            }
        }
        out.insert(c, ps);
    }
    if let Some((st, &(x, _))) = layers.iter().find(|(st, _)| !used.contains(*st)) {
        return Err(ParseError::new(crossings[x].0, format!("strand {}.{} is not on any arc list", st.0, st.1)));
    }
    let signs = crossings.iter().map(|c| c.3).collect();
    let sd = SpatialDiagram::from_parts_unchecked(base, rotation, out, signs);
    let violations = sd.validate();
    if !violations.is_empty() {
        let msg = violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ");
        return Err(ParseError::new(last, msg));
    }
    Ok(sd)
}

/// Reads a witness as printed by [`MinorWitness`]'s `Display`:
/// `smooth v3 A; delete component 0`.
pub fn parse_witness(text: &str) -> Result<MinorWitness, ParseError> {
    let mut moves = Vec::new();
    if text.trim() == "identity" {
        return Ok(MinorWitness { moves });
    }
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let toks: Vec<&str> = part.split_whitespace().collect();
        let m = match toks[..] {
            ["smooth", v, c] => {
                let choice = match c {
                    "A" => Choice::A,
                    "B" => Choice::B,
                    _ => return Err(ParseError::new(1, format!("bad smoothing choice `{c}`"))),
                };
                Move::Smooth(VertexId(parse_id(v, 'v', 1)?), choice)
            }
            ["delete", "component", i] => {
                Move::DeleteComponent(i.parse().map_err(|_| ParseError::new(1, format!("bad component `{i}`")))?)
            }
            _ => return Err(ParseError::new(1, format!("bad move `{part}`"))),
        };
        moves.push(m);
    }
    Ok(MinorWitness { moves })
}

/// Reads a loop as printed by [`RotatingLoop`]'s `Display`.
pub fn parse_loop(text: &str) -> Result<RotatingLoop, ParseError> {
    let text = text.trim();
    if let Some(i) = text.strip_prefix("circle ") {
        return i.trim().parse().map(RotatingLoop::Circle).map_err(|_| ParseError::new(1, format!("bad circle `{i}`")));
    }
    let hs = text.split_whitespace().map(|t| parse_id(t, 'h', 1).map(HalfEdge)).collect::<Result<Vec<_>, _>>()?;
    if hs.is_empty() || hs.len() % 2 != 0 {
        return Err(ParseError::new(1, "a loop lists an even, nonzero number of half-edges"));
    }
    Ok(RotatingLoop::from_walk(hs))
}

/// DOT export; each vertex is a record whose ports are its half-edges in
/// slot order.
pub fn to_dot(g: &FramedFourGraph) -> String {
    let mut s = String::from("graph framed4 {\n  node [shape=record];\n");
    for (v, q) in g.vertices() {
        writeln!(s, "  {v} [label=\"<{}> {}|<{}> {}|<{}> {}|<{}> {}\"];", q[0], q[0], q[1], q[1], q[2], q[2], q[3], q[3])
            .unwrap();
    }
    for (a, b) in g.edges() {
        let (va, vb) = (g.slot_of(a).unwrap().0, g.slot_of(b).unwrap().0);
        writeln!(s, "  {va}:{a} -- {vb}:{b};").unwrap();
    }
    for i in 0..g.circle_count() {
        writeln!(s, "  o{i} [shape=circle, label=\"\"];").unwrap();
    }
    s.push_str("}\n");
    s
}
