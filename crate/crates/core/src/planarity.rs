//! Planarity of framed 4-graphs with a source-sink structure.
//!
//! The fast test reads a rotating circuit of every component as a chord
//! diagram and checks that its interlacement graph is bipartite. The genus
//! oracle is independent of it: it traces faces of every framing-compatible
//! rotation system.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::canon::{find_isomorphism, Dense};
use crate::chord::{chord_diagram_of, find_odd_polygon};
use crate::circuits::{edge_disjoint, enumerate_rotating_loops, find_rotating_circuit, transverse_count, RotatingLoop};
use crate::error::GraphError;
use crate::faces;
use crate::graph::{delta, Choice, Component, DeltaEdge, FramedFourGraph, VertexId};
use crate::minor::{expand_edge, is_minor, MinorWitness, Move};
use crate::orientation::admits_source_sink;

/// Counter-clockwise cyclic order of the half-edges at each vertex. Only the
/// two orders that keep opposite half-edges apart are framing compatible:
/// `(h0, h1, h2, h3)` and `(h0, h3, h2, h1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    pub reversed: BTreeMap<VertexId, bool>,
}

impl RotationSystem {
    pub fn forward(g: &FramedFourGraph) -> RotationSystem {
        RotationSystem { reversed: g.vertex_ids().map(|v| (v, false)).collect() }
    }

    /// Rotation number `mask` in the enumeration of all `2^|V|` systems.
    pub fn from_mask(g: &FramedFourGraph, mask: u64) -> RotationSystem {
        RotationSystem { reversed: g.vertex_ids().enumerate().map(|(i, v)| (v, mask >> i & 1 == 1)).collect() }
    }

    pub fn cyclic_order(&self, g: &FramedFourGraph, v: VertexId) -> [crate::graph::HalfEdge; 4] {
        let [a, b, c, d] = g.quad(v).expect("vertex");
        if self.reversed[&v] {
            [a, d, c, b]
        } else {
            [a, b, c, d]
        }
    }
}

/// Orientable genus of the embedding given by `rot`, summed over components.
/// Circles contribute nothing.
pub fn genus_of(g: &FramedFourGraph, rot: &RotationSystem) -> usize {
    let dense = Dense::new(g);
    let n = dense.ids.len();
    if n == 0 {
        return 0;
    }
    let sigma: Vec<usize> = (0..4 * n)
        .map(|d| {
            let step = if rot.reversed[&dense.ids[d / 4]] { 3 } else { 1 };
            4 * (d / 4) + (d % 4 + step) % 4
        })
        .collect();
    let f = faces::count_faces(&sigma, &dense.mate);
    let c = faces::count_components(&sigma, &dense.mate);
    faces::genus(n, 2 * n, f, c)
}

/// Minimum genus over all framing-compatible rotation systems.
pub fn genus_oracle(g: &FramedFourGraph) -> usize {
    let n = g.vertex_count();
    assert!(n < 40, "genus oracle is exponential in the vertex count");
    (0..1u64 << n).into_par_iter().map(|m| genus_of(g, &RotationSystem::from_mask(g, m))).min().unwrap_or(0)
}

/// A rotation system of genus zero, if one exists.
pub fn planar_rotation(g: &FramedFourGraph) -> Option<RotationSystem> {
    let n = g.vertex_count();
    (0..1u64 << n).map(|m| RotationSystem::from_mask(g, m)).find(|r| genus_of(g, r) == 0)
}

fn component_is_planar(g: &FramedFourGraph, comp: &Component) -> bool {
    let circuit = find_rotating_circuit(g, comp).expect("connected component has a circuit");
    let d = chord_diagram_of(g, &circuit).expect("circuit of its own component");
    d.interlacement().is_bipartite()
}

/// Planarity by the bipartite-interlacement criterion, componentwise.
pub fn is_planar(g: &FramedFourGraph) -> Result<bool, GraphError> {
    if !admits_source_sink(g) {
        return Err(GraphError::NoSourceSink);
    }
    Ok(g.connected_components().iter().all(|c| matches!(c, Component::Circle(_)) || component_is_planar(g, c)))
}

fn nonplanar_component(g: &FramedFourGraph, within: &BTreeSet<VertexId>) -> Option<Component> {
    g.connected_components().into_iter().find(|c| match c {
        Component::Vertices(vs) => vs.iter().all(|v| within.contains(v)) && !component_is_planar(g, c),
        Component::Circle(_) => false,
    })
}

/// A witness that `g` contains Δ as a minor, or `None` if `g` is planar.
///
/// Steps: pick a non-planar component; smooth every vertex off a shortest
/// odd cycle of its chord diagram along the circuit (each such smoothing
/// deletes one chord), leaving an odd polygon; shrink the polygon one
/// smoothing at a time while it stays non-planar; delete everything else.
pub fn find_delta_minor(g: &FramedFourGraph) -> Result<Option<MinorWitness>, GraphError> {
    if !admits_source_sink(g) {
        return Err(GraphError::NoSourceSink);
    }
    let all: BTreeSet<VertexId> = g.vertex_ids().collect();
    let Some(comp) = nonplanar_component(g, &all) else {
        return Ok(None);
    };
    let circuit = find_rotating_circuit(g, &comp)?;
    let diagram = chord_diagram_of(g, &circuit)?;
    let polygon = find_odd_polygon(&diagram).expect("non-planar component has an odd cycle");

    let mut moves = Vec::new();
    let mut cur = g.clone();
    let Component::Vertices(vs) = &comp else { unreachable!() };
    for &v in vs {
        if polygon.contains(&v.0) {
            continue;
        }
        let (i, o) = circuit.as_loop().passages_at(g, v)[0];
        let (_, si) = g.slot_of(i).unwrap();
        let (_, so) = g.slot_of(o).unwrap();
        let c = if Choice::A.partner(si) == so { Choice::A } else { Choice::B };
        cur = cur.smooth(v, c)?;
        moves.push(Move::Smooth(v, c));
    }

    let mut alive: BTreeSet<VertexId> = polygon.iter().map(|&x| VertexId(x)).collect();
    while alive.len() > 3 {
        let mut step = None;
        'search: for &v in &alive {
            for c in Choice::BOTH {
                let next = cur.smooth(v, c)?;
                let rest: BTreeSet<VertexId> = alive.iter().copied().filter(|&w| w != v).collect();
                if let Some(Component::Vertices(k)) = nonplanar_component(&next, &rest) {
                    step = Some((v, c, next, k));
                    break 'search;
                }
            }
        }
        match step {
            Some((v, c, next, k)) => {
                moves.push(Move::Smooth(v, c));
                cur = next;
                alive = k.into_iter().collect();
            }
            None => {
                // greedy shrinking found nothing; search exhaustively
                let sub = cur.component_graph(&Component::Vertices(alive.iter().copied().collect()));
                let w = is_minor(&sub, &delta()).ok_or_else(|| GraphError::Loop("no Δ minor in odd polygon".into()))?;
                for (v, c) in w.smoothings() {
                    cur = cur.smooth(v, c)?;
                    moves.push(Move::Smooth(v, c));
                }
                alive = match nonplanar_component(&cur, &alive) {
                    Some(Component::Vertices(k)) => k.into_iter().collect(),
                    _ => unreachable!("Δ component survives"),
                };
            }
        }
    }

    let comps = cur.connected_components();
    let keep = comps
        .iter()
        .position(|c| matches!(c, Component::Vertices(k) if k.iter().copied().collect::<BTreeSet<_>>() == alive))
        .expect("Δ component");
    for i in (0..comps.len()).rev() {
        if i != keep {
            moves.push(Move::DeleteComponent(i));
        }
    }
    Ok(Some(MinorWitness { moves }))
}

/// Lifts a loop of the minor `witness.replay(g)` to a loop of `g`.
pub fn lift_loop(g: &FramedFourGraph, witness: &MinorWitness, l: &RotatingLoop) -> RotatingLoop {
    match l {
        RotatingLoop::Circle(_) => l.clone(),
        RotatingLoop::Walk(_) => {
            let mut walk = Vec::new();
            for (i, o) in l.steps() {
                walk.push(i);
                walk.push(o);
                walk.extend(expand_edge(g, witness, o));
            }
            RotatingLoop::from_walk(walk)
        }
    }
}

/// The loop of Δ through the given edges in cyclic order. Consecutive edges
/// must share a vertex.
pub fn delta_loop(edges: &[DeltaEdge]) -> RotatingLoop {
    let d = delta();
    let vertex = |h| d.slot_of(h).unwrap().0;
    let ends: Vec<_> = edges.iter().map(|e| e.half_edges()).collect();
    let (x, y) = ends[0];
    let (lx, ly) = ends[ends.len() - 1];
    let mut at = [vertex(x), vertex(y)]
        .into_iter()
        .filter(|&v| v == vertex(lx) || v == vertex(ly))
        .min()
        .expect("edges form a closed cycle");
    let mut outs = Vec::new();
    for &(x, y) in &ends {
        let out = if vertex(x) == at { x } else { y };
        assert_eq!(vertex(out), at, "consecutive edges must share a vertex");
        outs.push(out);
        at = vertex(d.mate(out));
    }
    let n = outs.len();
    let walk = (0..n).flat_map(|k| [d.mate(outs[(k + n - 1) % n]), outs[k]]).collect();
    RotatingLoop::from_walk(walk)
}

/// Three pairwise edge-disjoint loops, each pair crossing transversely an odd
/// number of times. Any plane immersion then needs a crossing for each pair.
pub fn odd_transverse_triple(g: &FramedFourGraph) -> Option<[RotatingLoop; 3]> {
    if admits_source_sink(g) {
        let w = find_delta_minor(g).ok()??;
        let m = w.replay(g).ok()?;
        let iso = find_isomorphism(&delta(), &m)?;
        let pairs = [
            [DeltaEdge::A, DeltaEdge::APrime],
            [DeltaEdge::B, DeltaEdge::BPrime],
            [DeltaEdge::C, DeltaEdge::CPrime],
        ];
        let lifted: Vec<RotatingLoop> = pairs
            .iter()
            .map(|p| {
                let l = delta_loop(p);
                let mapped = RotatingLoop::from_walk(l.passages().iter().map(|&h| iso.map(h)).collect());
                lift_loop(g, &w, &mapped)
            })
            .collect();
        return lifted.try_into().ok();
    }
    let loops: Vec<RotatingLoop> =
        enumerate_rotating_loops(g).into_iter().filter(|l| matches!(l, RotatingLoop::Walk(_))).collect();
    let odd = |a: &RotatingLoop, b: &RotatingLoop| {
        edge_disjoint(g, a, b) && transverse_count(g, a, b).map_or(false, |t| t % 2 == 1)
    };
    for i in 0..loops.len() {
        for j in i + 1..loops.len() {
            if !odd(&loops[i], &loops[j]) {
                continue;
            }
            for k in j + 1..loops.len() {
                if odd(&loops[i], &loops[k]) && odd(&loops[j], &loops[k]) {
                    return Some([loops[i].clone(), loops[j].clone(), loops[k].clone()]);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;
    use crate::chord::{z_odd, ChordDiagram};

    #[test]
    fn delta_battery() {
        let d = delta();
        assert!(!is_planar(&d).unwrap());
        assert!(genus_oracle(&d) >= 1);
        let w = find_delta_minor(&d).unwrap().unwrap();
        assert!(w.is_empty());
        let [x, y, z] = odd_transverse_triple(&d).unwrap();
        for (p, q) in [(&x, &y), (&x, &z), (&y, &z)] {
            assert_eq!(transverse_count(&d, p, q).unwrap(), 1);
        }
        let expect = [
            delta_loop(&[DeltaEdge::A, DeltaEdge::APrime]),
            delta_loop(&[DeltaEdge::B, DeltaEdge::BPrime]),
            delta_loop(&[DeltaEdge::C, DeltaEdge::CPrime]),
        ];
        assert_eq!([x, y, z], expect);
    }

    #[test]
    fn delta_loop_shapes() {
        let d = delta();
        let f1 = delta_loop(&[DeltaEdge::A, DeltaEdge::C, DeltaEdge::B]);
        f1.check(&d).unwrap();
        assert_eq!(f1.edge_count(), 3);
        assert_eq!(f1.vertices(&d).len(), 3);
        let f2 = delta_loop(&[DeltaEdge::APrime, DeltaEdge::CPrime, DeltaEdge::BPrime]);
        f2.check(&d).unwrap();
        assert_eq!(transverse_count(&d, &f1, &f2).unwrap(), 0);
    }

    #[test]
    fn small_genus_examples() {
        assert_eq!(genus_oracle(&FramedFourGraph::circles_only(1)), 0);
        assert!(odd_transverse_triple(&FramedFourGraph::circles_only(1)).is_none());
        let abab = ChordDiagram::new(vec![0, 1, 0, 1]).unwrap().realize();
        assert_eq!(genus_oracle(&abab), 0);
        let aabb = ChordDiagram::new(vec![0, 0, 1, 1]).unwrap().realize();
        assert_eq!(genus_oracle(&aabb), 0);
        assert!(is_planar(&aabb).unwrap());
        assert!(find_delta_minor(&aabb).unwrap().is_none());
    }

    #[test]
    fn z_family_is_nonplanar() {
        for n in 1..=3 {
            let z = z_odd(n).unwrap();
            assert!(!is_planar(&z).unwrap());
            let w = find_delta_minor(&z).unwrap().unwrap();
            assert_eq!(canonical_form(&w.replay(&z).unwrap()), canonical_form(&delta()));
        }
    }

    #[test]
    fn rejects_graphs_without_source_sink() {
        let h = crate::graph::HalfEdge;
        let g = FramedFourGraph::new([(VertexId(0), [h(0), h(1), h(2), h(3)])], [(h(0), h(2)), (h(1), h(3))], vec![])
            .unwrap();
        assert_eq!(is_planar(&g), Err(GraphError::NoSourceSink));
        assert_eq!(find_delta_minor(&g), Err(GraphError::NoSourceSink));
        // one vertex with two interleaved loops sits on the torus
        assert_eq!(genus_oracle(&g), 1);
    }
}
