//! Canonical forms and isomorphisms of framed 4-graphs.
//!
//! A connected component is encoded by a breadth-first traversal that starts
//! at a root half-edge with a chosen local orientation. Each newly reached
//! vertex is entered at slot 0 and gets one of two orientations (the eight
//! framing-preserving relabelings of a vertex are the four entry slots times
//! two directions). The form is the lexicographic minimum over all roots and
//! orientation choices, found by branch and bound. Circle orientations are
//! ignored; only their number counts.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::graph::{Component, FramedFourGraph, HalfEdge, VertexId};

/// Dense view: vertex `i` owns half-edges `4i..4i+3` in slot order.
pub(crate) struct Dense {
    pub ids: Vec<VertexId>,
    pub quads: Vec<[HalfEdge; 4]>,
    pub mate: Vec<usize>,
}

impl Dense {
    pub fn new(g: &FramedFourGraph) -> Dense {
        let mut ids = Vec::new();
        let mut quads = Vec::new();
        let mut index = BTreeMap::new();
        for (i, (v, q)) in g.vertices().enumerate() {
            ids.push(v);
            quads.push(q);
            for (s, h) in q.into_iter().enumerate() {
                index.insert(h, 4 * i + s);
            }
        }
        let mate = (0..4 * ids.len()).map(|d| index[&g.mate(quads[d / 4][d % 4])]).collect();
        Dense { ids, quads, mate }
    }

    pub fn half_edge(&self, d: usize) -> HalfEdge {
        self.quads[d / 4][d % 4]
    }

    pub fn vertex_index(&self, v: VertexId) -> usize {
        self.ids.binary_search(&v).expect("vertex in graph")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Frame {
    label: u32,
    entry: u8,
    reversed: bool,
}

impl Frame {
    fn old_slot(self, k: usize) -> usize {
        let e = self.entry as usize;
        if self.reversed {
            (e + 4 - k) % 4
        } else {
            (e + k) % 4
        }
    }

    fn new_slot(self, old: usize) -> usize {
        let e = self.entry as usize;
        if self.reversed {
            (e + 4 - old) % 4
        } else {
            (old + 4 - e) % 4
        }
    }
}

#[derive(Clone)]
struct State {
    frames: BTreeMap<usize, Frame>,
    order: Vec<usize>,
    code: Vec<u32>,
}

struct Best {
    code: Vec<u32>,
    frames: BTreeMap<usize, Frame>,
}

fn emit(state: &mut State, value: u32, cmp: &mut Ordering, best: &Option<Best>) -> bool {
    let pos = state.code.len();
    state.code.push(value);
    if *cmp == Ordering::Equal {
        if let Some(b) = best {
            match value.cmp(&b.code[pos]) {
                Ordering::Greater => return false,
                Ordering::Less => *cmp = Ordering::Less,
                Ordering::Equal => {}
            }
        }
    }
    true
}

fn search(dense: &Dense, mut state: State, mut q: usize, mut k: usize, mut cmp: Ordering, best: &mut Option<Best>) {
    loop {
        if q == state.order.len() {
            let better = match best {
                None => true,
                Some(b) => state.code < b.code,
            };
            if better {
                *best = Some(Best { code: state.code, frames: state.frames });
            }
            return;
        }
        if k == 4 {
            q += 1;
            k = 0;
            continue;
        }
        let v = state.order[q];
        let frame = state.frames[&v];
        let m = dense.mate[4 * v + frame.old_slot(k)];
        let (w, t) = (m / 4, m % 4);
        k += 1;
        if let Some(fw) = state.frames.get(&w) {
            let value = fw.label * 4 + fw.new_slot(t) as u32;
            if !emit(&mut state, value, &mut cmp, best) {
                return;
            }
        } else {
            let label = state.order.len() as u32;
            for reversed in [false, true] {
                let mut next = state.clone();
                next.frames.insert(w, Frame { label, entry: t as u8, reversed });
                next.order.push(w);
                let mut c = cmp;
                if emit(&mut next, label * 4, &mut c, best) {
                    search(dense, next, q, k, c, best);
                }
            }
            return;
        }
    }
}

/// Canonical code and frames of the component containing dense vertices `comp`.
fn canonical_component(dense: &Dense, comp: &[usize]) -> (Vec<u32>, BTreeMap<usize, Frame>) {
    let mut best: Option<Best> = None;
    for &v in comp {
        for entry in 0..4u8 {
            for reversed in [false, true] {
                let mut frames = BTreeMap::new();
                frames.insert(v, Frame { label: 0, entry, reversed });
                let state = State { frames, order: vec![v], code: vec![comp.len() as u32] };
                let cmp = match &best {
                    Some(b) if b.code[0] == comp.len() as u32 => Ordering::Equal,
                    Some(_) => Ordering::Less,
                    None => Ordering::Less,
                };
                search(dense, state, 0, 0, cmp, &mut best);
            }
        }
    }
    let b = best.expect("nonempty component");
    (b.code, b.frames)
}

struct ComponentLabel {
    code: Vec<u32>,
    frames: BTreeMap<usize, Frame>,
}

fn label_components(g: &FramedFourGraph, dense: &Dense) -> Vec<ComponentLabel> {
    let mut out: Vec<ComponentLabel> = g
        .connected_components()
        .into_iter()
        .filter_map(|c| match c {
            Component::Vertices(vs) => {
                let idx: Vec<usize> = vs.iter().map(|&v| dense.vertex_index(v)).collect();
                let (code, frames) = canonical_component(dense, &idx);
                Some(ComponentLabel { code, frames })
            }
            Component::Circle(_) => None,
        })
        .collect();
    out.sort_by(|a, b| a.code.cmp(&b.code));
    out
}

/// Isomorphism-invariant byte string. Equal iff the graphs are isomorphic as
/// framed graphs with the same number of circles.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

fn push_u32(out: &mut Vec<u8>, x: u32) {
    out.extend_from_slice(&x.to_be_bytes());
}

pub fn canonical_form(g: &FramedFourGraph) -> CanonicalForm {
    let dense = Dense::new(g);
    let comps = label_components(g, &dense);
    CanonicalForm(encode(g.circle_count(), comps.iter().map(|c| &c.code)))
}

fn encode<'a>(circles: usize, codes: impl Iterator<Item = &'a Vec<u32>>) -> Vec<u8> {
    let mut out = Vec::new();
    push_u32(&mut out, circles as u32);
    for code in codes {
        push_u32(&mut out, code.len() as u32);
        for &x in code {
            push_u32(&mut out, x);
        }
    }
    out
}

/// Canonical codes of the non-circular components, sorted, and the circle count.
pub(crate) fn component_codes(g: &FramedFourGraph) -> (Vec<Vec<u32>>, usize) {
    let dense = Dense::new(g);
    (label_components(g, &dense).into_iter().map(|c| c.code).collect(), g.circle_count())
}

/// A framing-preserving isomorphism between two graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub vertices: BTreeMap<VertexId, VertexId>,
    pub half_edges: BTreeMap<HalfEdge, HalfEdge>,
    /// `circles[i]` is the image of circle `i`.
    pub circles: Vec<usize>,
}

impl Isomorphism {
    pub fn map(&self, h: HalfEdge) -> HalfEdge {
        self.half_edges[&h]
    }
}

/// Canonical positions `(component rank, label, slot)` of every half-edge.
fn positions(comps: &[ComponentLabel]) -> BTreeMap<(usize, u32, usize), usize> {
    let mut pos = BTreeMap::new();
    for (ci, c) in comps.iter().enumerate() {
        for (&v, f) in &c.frames {
            for old in 0..4 {
                pos.insert((ci, f.label, f.new_slot(old)), 4 * v + old);
            }
        }
    }
    pos
}

pub fn find_isomorphism(g: &FramedFourGraph, h: &FramedFourGraph) -> Option<Isomorphism> {
    if g.vertex_count() != h.vertex_count() || g.circle_count() != h.circle_count() {
        return None;
    }
    let (dg, dh) = (Dense::new(g), Dense::new(h));
    let (cg, ch) = (label_components(g, &dg), label_components(h, &dh));
    if cg.len() != ch.len() || cg.iter().zip(&ch).any(|(a, b)| a.code != b.code) {
        return None;
    }
    let (pg, ph) = (positions(&cg), positions(&ch));
    let mut half_edges = BTreeMap::new();
    let mut vertices = BTreeMap::new();
    for (key, &a) in &pg {
        let b = ph[key];
        half_edges.insert(dg.half_edge(a), dh.half_edge(b));
        vertices.insert(dg.ids[a / 4], dh.ids[b / 4]);
    }
    Some(Isomorphism { vertices, half_edges, circles: (0..g.circle_count()).collect() })
}

pub fn is_isomorphic(g: &FramedFourGraph, h: &FramedFourGraph) -> bool {
    g.vertex_count() == h.vertex_count() && canonical_form(g) == canonical_form(h)
}
