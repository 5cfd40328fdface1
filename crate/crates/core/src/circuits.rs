//! Rotating loops and circuits.
//!
//! A walk is stored as its passages through vertices, flattened:
//! `[in0, out0, in1, out1, ...]` with `in_i` and `out_i` at the same vertex and
//! `mate(out_i) = in_{i+1}` cyclically. A passage may go straight (use an
//! opposite pair) when the loop meets the vertex once; at a vertex met twice
//! both passages must turn.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::GraphError;
use crate::graph::{Choice, Component, FramedFourGraph, HalfEdge, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RotatingLoop {
    Circle(usize),
    Walk(Vec<HalfEdge>),
}

impl RotatingLoop {
    /// Normalizes a walk up to cyclic rotation and reversal: the
    /// lexicographically smallest variant is kept.
    pub fn from_walk(passages: Vec<HalfEdge>) -> RotatingLoop {
        RotatingLoop::Walk(normalize(&passages))
    }

    pub fn passages(&self) -> &[HalfEdge] {
        match self {
            RotatingLoop::Circle(_) => &[],
            RotatingLoop::Walk(p) => p,
        }
    }

    /// `(in, out)` pairs in traversal order.
    pub fn steps(&self) -> impl Iterator<Item = (HalfEdge, HalfEdge)> + '_ {
        self.passages().chunks(2).map(|c| (c[0], c[1]))
    }

    /// Traversed edges as `(from, to)` half-edges, in order.
    pub fn traversed_edges<'a>(&'a self, g: &'a FramedFourGraph) -> impl Iterator<Item = (HalfEdge, HalfEdge)> + 'a {
        self.steps().map(move |(_, out)| (out, g.mate(out)))
    }

    /// Edge keys (smaller half-edge of each edge) used by the loop.
    pub fn edge_set(&self, g: &FramedFourGraph) -> BTreeSet<HalfEdge> {
        self.steps().map(|(_, out)| g.edge_key(out)).collect()
    }

    pub fn edge_count(&self) -> usize {
        match self {
            RotatingLoop::Circle(_) => 1,
            RotatingLoop::Walk(p) => p.len() / 2,
        }
    }

    pub fn reversed(&self) -> RotatingLoop {
        match self {
            RotatingLoop::Circle(i) => RotatingLoop::Circle(*i),
            RotatingLoop::Walk(p) => RotatingLoop::Walk(p.iter().rev().copied().collect()),
        }
    }

    /// Passages `(in, out)` of the loop at vertex `v`.
    pub fn passages_at(&self, g: &FramedFourGraph, v: VertexId) -> Vec<(HalfEdge, HalfEdge)> {
        self.steps().filter(|(i, _)| g.slot_of(*i).map(|x| x.0) == Some(v)).collect()
    }

    pub fn vertices(&self, g: &FramedFourGraph) -> BTreeSet<VertexId> {
        self.steps().filter_map(|(i, _)| g.slot_of(i).map(|x| x.0)).collect()
    }

    /// Checks closure, edge-injectivity and the turning rule.
    pub fn check(&self, g: &FramedFourGraph) -> Result<(), GraphError> {
        let p = match self {
            RotatingLoop::Circle(i) if *i < g.circle_count() => return Ok(()),
            RotatingLoop::Circle(i) => return Err(GraphError::Loop(format!("no circle {i}"))),
            RotatingLoop::Walk(p) => p,
        };
        if p.is_empty() || p.len() % 2 != 0 {
            return Err(GraphError::Loop("walk must have an even, nonzero length".into()));
        }
        let distinct: BTreeSet<_> = p.iter().collect();
        if distinct.len() != p.len() {
            return Err(GraphError::Loop("walk reuses a half-edge".into()));
        }
        let mut visits: BTreeMap<VertexId, Vec<bool>> = BTreeMap::new();
        let steps: Vec<_> = self.steps().collect();
        for (k, &(i, o)) in steps.iter().enumerate() {
            let (vi, _) = g.slot_of(i).ok_or(GraphError::UnknownHalfEdge(i))?;
            let (vo, _) = g.slot_of(o).ok_or(GraphError::UnknownHalfEdge(o))?;
            if vi != vo {
                return Err(GraphError::Loop(format!("passage {i} {o} changes vertex")));
            }
            let next_in = steps[(k + 1) % steps.len()].0;
            if g.mate(o) != next_in {
                return Err(GraphError::Loop(format!("{o} is not joined to {next_in}")));
            }
            visits.entry(vi).or_default().push(g.are_opposite(i, o));
        }
        for (v, straight) in visits {
            if straight.len() == 2 && straight.iter().any(|&s| s) {
                return Err(GraphError::Loop(format!("loop crosses itself transversely at {v}")));
            }
        }
        Ok(())
    }

    /// Whether the loop uses an opposite pair at `v`.
    fn straight_at(&self, g: &FramedFourGraph, v: VertexId) -> bool {
        self.passages_at(g, v).iter().any(|&(i, o)| g.are_opposite(i, o))
    }
}

impl fmt::Display for RotatingLoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RotatingLoop::Circle(i) => write!(f, "circle {i}"),
            RotatingLoop::Walk(p) => {
                let s: Vec<String> = p.iter().map(|h| h.to_string()).collect();
                write!(f, "{}", s.join(" "))
            }
        }
    }
}

fn normalize(p: &[HalfEdge]) -> Vec<HalfEdge> {
    let n = p.len();
    let rev: Vec<HalfEdge> = p.iter().rev().copied().collect();
    let mut best: Option<Vec<HalfEdge>> = None;
    for seq in [p, &rev[..]] {
        for start in (0..n).step_by(2) {
            let cand: Vec<HalfEdge> = (0..n).map(|k| seq[(start + k) % n]).collect();
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// A rotating loop covering every edge of a connected component once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotatingCircuit(pub RotatingLoop);

impl RotatingCircuit {
    pub fn as_loop(&self) -> &RotatingLoop {
        &self.0
    }
}

/// Per-vertex smoothing choices read as transitions: a walk entering at a
/// half-edge leaves through its partner.
fn transition_loops(g: &FramedFourGraph, choice: &BTreeMap<VertexId, Choice>) -> Vec<Vec<HalfEdge>> {
    let mut seen = BTreeSet::new();
    let mut loops = Vec::new();
    let starts: Vec<HalfEdge> = choice.keys().flat_map(|&v| g.quad(v).unwrap()).collect();
    let mut sorted = starts.clone();
    sorted.sort();
    for start in sorted {
        if seen.contains(&start) {
            continue;
        }
        let mut walk = Vec::new();
        let mut cur = start;
        loop {
            let (v, s) = g.slot_of(cur).unwrap();
            let out = g.quad(v).unwrap()[choice[&v].partner(s)];
            seen.insert(cur);
            seen.insert(out);
            walk.push(cur);
            walk.push(out);
            cur = g.mate(out);
            if cur == start {
                break;
            }
        }
        loops.push(walk);
    }
    loops
}

/// Rotating circuit of a component by splicing: start from the transition
/// system that uses choice `A` everywhere, then repeatedly merge the two
/// lowest-numbered loops meeting at a vertex by switching that vertex to the
/// other adjacent transition. Loops are numbered by their smallest half-edge.
pub fn find_rotating_circuit(g: &FramedFourGraph, component: &Component) -> Result<RotatingCircuit, GraphError> {
    let vs = match component {
        Component::Circle(i) => {
            if *i >= g.circle_count() {
                return Err(GraphError::UnknownComponent(*i));
            }
            return Ok(RotatingCircuit(RotatingLoop::Circle(*i)));
        }
        Component::Vertices(vs) => vs,
    };
    let mut choice: BTreeMap<VertexId, Choice> = vs.iter().map(|&v| (v, Choice::A)).collect();
    loop {
        let loops = transition_loops(g, &choice);
        if loops.len() == 1 {
            let walk = loops.into_iter().next().unwrap();
            return Ok(RotatingCircuit(RotatingLoop::from_walk(walk)));
        }
        let mut owner = BTreeMap::new();
        for (i, l) in loops.iter().enumerate() {
            for &h in l {
                owner.insert(h, i);
            }
        }
        let mut best: Option<((usize, usize), VertexId)> = None;
        for (&v, _) in &choice {
            let q = g.quad(v).unwrap();
            let (x, y) = (owner[&q[0]], owner[&q[2]]);
            if x != y {
                let key = ((x.min(y), x.max(y)), v);
                if best.map_or(true, |b| key < b) {
                    best = Some(key);
                }
            }
        }
        let (_, v) = best.ok_or(GraphError::NotConnected)?;
        let c = choice.get_mut(&v).unwrap();
        *c = c.other();
    }
}

/// True iff both loops go straight through `v`.
pub fn loops_transverse_at(
    g: &FramedFourGraph,
    l1: &RotatingLoop,
    l2: &RotatingLoop,
    v: VertexId,
) -> Result<bool, GraphError> {
    if l1.passages_at(g, v).is_empty() || l2.passages_at(g, v).is_empty() {
        return Err(GraphError::Loop(format!("{v} is not on both loops")));
    }
    Ok(l1.straight_at(g, v) && l2.straight_at(g, v))
}

/// Number of vertices at which two edge-disjoint loops cross transversely.
pub fn transverse_count(g: &FramedFourGraph, l1: &RotatingLoop, l2: &RotatingLoop) -> Result<usize, GraphError> {
    if !l1.edge_set(g).is_disjoint(&l2.edge_set(g)) {
        return Err(GraphError::Loop("loops share an edge".into()));
    }
    let shared: Vec<VertexId> = l1.vertices(g).intersection(&l2.vertices(g)).copied().collect();
    Ok(shared.into_iter().filter(|&v| l1.straight_at(g, v) && l2.straight_at(g, v)).count())
}

pub fn edge_disjoint(g: &FramedFourGraph, l1: &RotatingLoop, l2: &RotatingLoop) -> bool {
    match (l1, l2) {
        (RotatingLoop::Circle(a), RotatingLoop::Circle(b)) => a != b,
        _ => l1.edge_set(g).is_disjoint(&l2.edge_set(g)),
    }
}

/// `true` if the loops share no edge and never cross transversely.
pub fn compatible(g: &FramedFourGraph, l1: &RotatingLoop, l2: &RotatingLoop) -> bool {
    edge_disjoint(g, l1, l2) && transverse_count(g, l1, l2).map_or(false, |t| t == 0)
}

/// Every rotating loop, up to rotation and reversal, including circles.
pub fn enumerate_rotating_loops(g: &FramedFourGraph) -> Vec<RotatingLoop> {
    let mut found = BTreeSet::new();
    for (v, quad) in g.vertices() {
        for a in 0..4 {
            for b in 0..4 {
                if a == b {
                    continue;
                }
                let (i0, o0) = (quad[a], quad[b]);
                let mut used = BTreeSet::from([i0, o0]);
                let mut visits = BTreeMap::from([(v, vec![(i0, o0)])]);
                let mut walk = vec![i0, o0];
                extend(g, i0, &mut walk, &mut used, &mut visits, &mut found);
            }
        }
    }
    let mut out: Vec<RotatingLoop> = (0..g.circle_count()).map(RotatingLoop::Circle).collect();
    out.extend(found.into_iter().map(RotatingLoop::Walk));
    out
}

fn extend(
    g: &FramedFourGraph,
    first_in: HalfEdge,
    walk: &mut Vec<HalfEdge>,
    used: &mut BTreeSet<HalfEdge>,
    visits: &mut BTreeMap<VertexId, Vec<(HalfEdge, HalfEdge)>>,
    found: &mut BTreeSet<Vec<HalfEdge>>,
) {
    let next = g.mate(*walk.last().unwrap());
    if next == first_in {
        found.insert(normalize(walk));
        return;
    }
    if used.contains(&next) {
        return;
    }
    let (v, _) = g.slot_of(next).unwrap();
    let quad = g.quad(v).unwrap();
    let earlier = visits.get(&v).cloned().unwrap_or_default();
    if earlier.len() >= 2 {
        return;
    }
    for out in quad {
        if out == next || used.contains(&out) {
            continue;
        }
        if let Some(&(pi, po)) = earlier.first() {
            // second passage: both passages must turn
            if g.are_opposite(pi, po) || g.are_opposite(next, out) {
                continue;
            }
        }
        used.insert(next);
        used.insert(out);
        walk.push(next);
        walk.push(out);
        visits.entry(v).or_default().push((next, out));
        extend(g, first_in, walk, used, visits, found);
        visits.get_mut(&v).unwrap().pop();
        walk.truncate(walk.len() - 2);
        used.remove(&next);
        used.remove(&out);
    }
}
