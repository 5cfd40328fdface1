//! Embeddings in 3-space as planar diagrams with signed crossings.
//!
//! Every edge of the base graph is a curve running from its smaller
//! half-edge to its mate; every circle is a closed curve. A curve lists the
//! crossings it passes in order, each passage marked over or under. Signs are
//! stored relative to the curves' reference directions, right-handed = +1.
//! With both strands oriented, the sign also fixes the cyclic order of the
//! four arc ends at a crossing, so the projection is determined by the
//! vertex rotations, the curve lists and the signs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;

use crate::canon::find_isomorphism;
use crate::circuits::{compatible, RotatingLoop};
use crate::error::GraphError;
use crate::faces;
use crate::graph::{delta, Component, DeltaEdge, FramedFourGraph, HalfEdge, VertexId};
use crate::minor::{MinorWitness, Move};
use crate::planarity::{delta_loop, find_delta_minor, lift_loop, RotationSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Curve {
    /// Edge keyed by its smaller half-edge.
    Edge(HalfEdge),
    Circle(usize),
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Curve::Edge(h) => write!(f, "{h}"),
            Curve::Circle(i) => write!(f, "o{i}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Layer {
    Over,
    Under,
}

impl Layer {
    pub fn flip(self) -> Layer {
        match self {
            Layer::Over => Layer::Under,
            Layer::Under => Layer::Over,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Passage {
    pub crossing: usize,
    pub layer: Layer,
}

/// A point of a diagram that a switch can be asked for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagramPoint {
    Crossing(usize),
    Vertex(VertexId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpatialDiagram {
    base: FramedFourGraph,
    rotation: BTreeMap<VertexId, [HalfEdge; 4]>,
    curves: BTreeMap<Curve, Vec<Passage>>,
    signs: Vec<i8>,
}

/// Where one strand of a crossing sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Strand {
    pub curve: Curve,
    pub position: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkPair {
    pub first: RotatingLoop,
    pub second: RotatingLoop,
    /// Crossings between the two images with their signs relative to the
    /// loops' traversal directions.
    pub crossings: Vec<(usize, i8)>,
    pub linking_number: i64,
}

/// A loop's image: the curves it runs along, in order, with direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopImage {
    pub segments: Vec<(Curve, bool)>,
    pub vertices: Vec<VertexId>,
}

impl LoopImage {
    /// Crossings met along the image, in order.
    pub fn passages(&self, sd: &SpatialDiagram) -> Vec<Passage> {
        let mut out = Vec::new();
        for &(c, forward) in &self.segments {
            let ps = &sd.curves[&c];
            if forward {
                out.extend(ps.iter().copied());
            } else {
                out.extend(ps.iter().rev().copied());
            }
        }
        out
    }
}

/// Port kinds of the projection map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Port {
    End(HalfEdge),
    /// crossing, layer, leaving (true) or entering (false) in reference direction
    Cross(usize, Layer, bool),
}

/// The projection as a combinatorial map on arc ends.
pub(crate) struct Projection {
    ports: Vec<Port>,
    sigma: Vec<usize>,
    alpha: Vec<usize>,
    /// Dart leaving each port: curve, arc index, runs in reference direction.
    arc_of: Vec<(Curve, usize, bool)>,
    nodes: usize,
    arcs: usize,
}

impl Projection {
    pub fn genus(&self) -> usize {
        if self.ports.is_empty() {
            return 0;
        }
        let f = faces::count_faces(&self.sigma, &self.alpha);
        let c = faces::count_components(&self.sigma, &self.alpha);
        faces::genus(self.nodes, self.arcs, f, c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramViolation {
    Base(String),
    MissingCurve(Curve),
    UnknownCurve(Curve),
    BadCrossing(usize, String),
    BadRotation(VertexId, String),
    NotPlanar(usize),
}

impl fmt::Display for DiagramViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramViolation::Base(s) => write!(f, "base graph: {s}"),
            DiagramViolation::MissingCurve(c) => write!(f, "no arc list for {c}"),
            DiagramViolation::UnknownCurve(c) => write!(f, "arc list for unknown curve {c}"),
            DiagramViolation::BadCrossing(x, s) => write!(f, "crossing x{x}: {s}"),
            DiagramViolation::BadRotation(v, s) => write!(f, "rotation at {v}: {s}"),
            DiagramViolation::NotPlanar(g) => write!(f, "projection has genus {g}"),
        }
    }
}

fn diag_err(msg: impl Into<String>) -> GraphError {
    GraphError::Diagram(msg.into())
}

impl SpatialDiagram {
    pub fn from_parts_unchecked(
        base: FramedFourGraph,
        rotation: BTreeMap<VertexId, [HalfEdge; 4]>,
        curves: BTreeMap<Curve, Vec<Passage>>,
        signs: Vec<i8>,
    ) -> SpatialDiagram {
        SpatialDiagram { base, rotation, curves, signs }
    }

    pub fn new(
        base: FramedFourGraph,
        rotation: BTreeMap<VertexId, [HalfEdge; 4]>,
        curves: BTreeMap<Curve, Vec<Passage>>,
        signs: Vec<i8>,
    ) -> Result<SpatialDiagram, GraphError> {
        let sd = Self::from_parts_unchecked(base, rotation, curves, signs);
        let v = sd.validate();
        if v.is_empty() {
            Ok(sd)
        } else {
            Err(diag_err(v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")))
        }
    }

    /// Crossing-free diagram from a rotation system; planar iff it has genus 0.
    pub fn flat(base: &FramedFourGraph, rot: &RotationSystem) -> SpatialDiagram {
        let rotation = base.vertex_ids().map(|v| (v, rot.cyclic_order(base, v))).collect();
        let curves = curves_of(base).into_iter().map(|c| (c, Vec::new())).collect();
        SpatialDiagram { base: base.clone(), rotation, curves, signs: Vec::new() }
    }

    pub fn base(&self) -> &FramedFourGraph {
        &self.base
    }

    pub fn rotation(&self) -> &BTreeMap<VertexId, [HalfEdge; 4]> {
        &self.rotation
    }

    pub fn curves(&self) -> &BTreeMap<Curve, Vec<Passage>> {
        &self.curves
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    /// Over and under strands of every crossing.
    pub fn strands(&self) -> Vec<(Option<Strand>, Option<Strand>)> {
        let mut out = vec![(None, None); self.signs.len()];
        for (&curve, ps) in &self.curves {
            for (position, p) in ps.iter().enumerate() {
                if let Some(slot) = out.get_mut(p.crossing) {
                    let s = Some(Strand { curve, position });
                    match p.layer {
                        Layer::Over => slot.0 = s,
                        Layer::Under => slot.1 = s,
                    }
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Vec<DiagramViolation> {
        let mut out = Vec::new();
        for v in self.base.validate() {
            out.push(DiagramViolation::Base(v.to_string()));
        }
        if !out.is_empty() {
            return out;
        }
        let want: BTreeSet<Curve> = curves_of(&self.base).into_iter().collect();
        let have: BTreeSet<Curve> = self.curves.keys().copied().collect();
        out.extend(want.difference(&have).map(|&c| DiagramViolation::MissingCurve(c)));
        out.extend(have.difference(&want).map(|&c| DiagramViolation::UnknownCurve(c)));

        let mut count: BTreeMap<(usize, Layer), usize> = BTreeMap::new();
        for ps in self.curves.values() {
            for p in ps {
                *count.entry((p.crossing, p.layer)).or_default() += 1;
                if p.crossing >= self.signs.len() {
                    out.push(DiagramViolation::BadCrossing(p.crossing, "not declared".into()));
                }
            }
        }
        for (x, &s) in self.signs.iter().enumerate() {
            if s != 1 && s != -1 {
                out.push(DiagramViolation::BadCrossing(x, format!("sign {s}")));
            }
            for layer in [Layer::Over, Layer::Under] {
                let c = count.get(&(x, layer)).copied().unwrap_or(0);
                if c != 1 {
                    out.push(DiagramViolation::BadCrossing(x, format!("{c} {layer:?} strands")));
                }
            }
        }
        for (v, q) in self.base.vertices() {
            match self.rotation.get(&v) {
                None => out.push(DiagramViolation::BadRotation(v, "missing".into())),
                Some(r) => {
                    let mut a = *r;
                    let mut b = q;
                    a.sort();
                    b.sort();
                    if a != b {
                        out.push(DiagramViolation::BadRotation(v, "not the vertex's half-edges".into()));
                    } else if (0..4).any(|k| !self.base.are_adjacent(r[k], r[(k + 1) % 4])) {
                        out.push(DiagramViolation::BadRotation(
                            v,
                            "opposite half-edges are neighbours in the cyclic order".into(),
                        ));
                    }
                }
            }
        }
        for &v in self.rotation.keys() {
            if !self.base.has_vertex(v) {
                out.push(DiagramViolation::BadRotation(v, "unknown vertex".into()));
            }
        }
        if out.is_empty() {
            let g = self.projection().genus();
            if g != 0 {
                out.push(DiagramViolation::NotPlanar(g));
            }
        }
        out
    }

    pub(crate) fn projection(&self) -> Projection {
        let mut ports = Vec::new();
        let mut index = BTreeMap::new();
        let mut add = |p: Port, ports: &mut Vec<Port>| {
            index.insert(p, ports.len());
            ports.push(p);
        };
        for h in self.base.half_edges() {
            add(Port::End(h), &mut ports);
        }
        for x in 0..self.signs.len() {
            for layer in [Layer::Over, Layer::Under] {
                add(Port::Cross(x, layer, false), &mut ports);
                add(Port::Cross(x, layer, true), &mut ports);
            }
        }
        let n = ports.len();
        let mut alpha = vec![usize::MAX; n];
        let mut arc_of = vec![(Curve::Circle(usize::MAX), 0, true); n];
        let mut arcs = 0;
        for (&curve, ps) in &self.curves {
            let mut ends: Vec<Port> = Vec::new();
            match curve {
                Curve::Edge(h) => {
                    ends.push(Port::End(h));
                    for p in ps {
                        ends.push(Port::Cross(p.crossing, p.layer, false));
                        ends.push(Port::Cross(p.crossing, p.layer, true));
                    }
                    ends.push(Port::End(self.base.mate(h)));
                }
                Curve::Circle(_) => {
                    if ps.is_empty() {
                        continue;
                    }
                    // arc j runs from passage j-1 to passage j
                    let last = ps[ps.len() - 1];
                    ends.push(Port::Cross(last.crossing, last.layer, true));
                    for (k, p) in ps.iter().enumerate() {
                        ends.push(Port::Cross(p.crossing, p.layer, false));
                        if k + 1 < ps.len() {
                            ends.push(Port::Cross(p.crossing, p.layer, true));
                        }
                    }
                }
            }
            for (j, pair) in ends.chunks(2).enumerate() {
                let (a, b) = (index[&pair[0]], index[&pair[1]]);
                alpha[a] = b;
                alpha[b] = a;
                arc_of[a] = (curve, j, true);
                arc_of[b] = (curve, j, false);
                arcs += 1;
            }
        }
        let mut sigma = vec![usize::MAX; n];
        for order in self.rotation.values() {
            for k in 0..4 {
                sigma[index[&Port::End(order[k])]] = index[&Port::End(order[(k + 1) % 4])];
            }
        }
        for (x, &s) in self.signs.iter().enumerate() {
            let oi = Port::Cross(x, Layer::Over, false);
            let oo = Port::Cross(x, Layer::Over, true);
            let ui = Port::Cross(x, Layer::Under, false);
            let uo = Port::Cross(x, Layer::Under, true);
            let order = if s > 0 { [oi, ui, oo, uo] } else { [oi, uo, oo, ui] };
            for k in 0..4 {
                sigma[index[&order[k]]] = index[&order[(k + 1) % 4]];
            }
        }
        Projection { ports, sigma, alpha, arc_of, nodes: self.base.vertex_count() + self.signs.len(), arcs }
    }

    /// Swaps over and under at a crossing; the projection is unchanged.
    pub fn crossing_switch(&self, x: usize) -> Result<SpatialDiagram, GraphError> {
        if x >= self.signs.len() {
            return Err(diag_err(format!("no crossing x{x}")));
        }
        let mut sd = self.clone();
        sd.signs[x] = -sd.signs[x];
        for ps in sd.curves.values_mut() {
            for p in ps.iter_mut().filter(|p| p.crossing == x) {
                p.layer = p.layer.flip();
            }
        }
        Ok(sd)
    }

    pub fn switch_at(&self, point: DiagramPoint) -> Result<SpatialDiagram, GraphError> {
        match point {
            DiagramPoint::Crossing(x) => self.crossing_switch(x),
            DiagramPoint::Vertex(v) => Err(diag_err(format!("{v} is a graph vertex, not a crossing"))),
        }
    }

    /// Reference-direction signs of the loop on each curve it uses.
    fn directions(&self, l: &RotatingLoop) -> BTreeMap<Curve, i64> {
        match l {
            RotatingLoop::Circle(i) => BTreeMap::from([(Curve::Circle(*i), 1)]),
            RotatingLoop::Walk(_) => l
                .traversed_edges(&self.base)
                .map(|(from, to)| (Curve::Edge(from.min(to)), if from < to { 1 } else { -1 }))
                .collect(),
        }
    }

    pub fn loop_image(&self, l: &RotatingLoop) -> Result<LoopImage, GraphError> {
        l.check(&self.base)?;
        Ok(match l {
            RotatingLoop::Circle(i) => LoopImage { segments: vec![(Curve::Circle(*i), true)], vertices: Vec::new() },
            RotatingLoop::Walk(_) => LoopImage {
                segments: l.traversed_edges(&self.base).map(|(a, b)| (Curve::Edge(a.min(b)), a < b)).collect(),
                vertices: l.steps().map(|(i, _)| self.base.slot_of(i).unwrap().0).collect(),
            },
        })
    }

    /// Crossings between the images of two compatible loops, with signs
    /// relative to the loops' traversal directions.
    pub fn inter_crossings(&self, l1: &RotatingLoop, l2: &RotatingLoop) -> Result<Vec<(usize, i8)>, GraphError> {
        l1.check(&self.base)?;
        l2.check(&self.base)?;
        if !compatible(&self.base, l1, l2) {
            return Err(diag_err("loops share an edge or cross transversely"));
        }
        let (d1, d2) = (self.directions(l1), self.directions(l2));
        let mut out = Vec::new();
        for (x, (over, under)) in self.strands().into_iter().enumerate() {
            let (Some(o), Some(u)) = (over, under) else { continue };
            let eps = match (d1.get(&o.curve), d2.get(&u.curve), d2.get(&o.curve), d1.get(&u.curve)) {
                (Some(a), Some(b), _, _) => a * b,
                (_, _, Some(a), Some(b)) => a * b,
                _ => continue,
            };
            out.push((x, (self.signs[x] as i64 * eps) as i8));
        }
        Ok(out)
    }

    pub fn linking_number(&self, l1: &RotatingLoop, l2: &RotatingLoop) -> Result<i64, GraphError> {
        let sum: i64 = self.inter_crossings(l1, l2)?.iter().map(|&(_, s)| s as i64).sum();
        if sum % 2 != 0 {
            return Err(diag_err("odd signed crossing sum; diagram is inconsistent"));
        }
        Ok(sum / 2)
    }

    pub fn link_pair(&self, l1: &RotatingLoop, l2: &RotatingLoop) -> Result<LinkPair, GraphError> {
        let crossings = self.inter_crossings(l1, l2)?;
        let linking_number = self.linking_number(l1, l2)?;
        Ok(LinkPair { first: l1.clone(), second: l2.clone(), crossings, linking_number })
    }

    /// The four loop pairs of Δ carried to this diagram's base.
    pub fn delta_loop_pairs(&self) -> Result<Vec<(RotatingLoop, RotatingLoop)>, GraphError> {
        let iso = find_isomorphism(&delta(), &self.base).ok_or_else(|| diag_err("base is not isomorphic to Δ"))?;
        let map = |l: RotatingLoop| RotatingLoop::from_walk(l.passages().iter().map(|&h| iso.map(h)).collect());
        Ok(DELTA_PAIRS.iter().map(|(_, a, b)| (map(delta_loop(a)), map(delta_loop(b)))).collect())
    }

    /// `lk(F1,F2), lk(G1,G2), lk(H1,H2), lk(I1,I2)` for a diagram of Δ.
    pub fn delta_linking_numbers(&self) -> Result<[i64; 4], GraphError> {
        let pairs = self.delta_loop_pairs()?;
        let mut out = [0; 4];
        for (k, (a, b)) in pairs.iter().enumerate() {
            out[k] = self.linking_number(a, b)?;
        }
        Ok(out)
    }

    /// Parity of the sum of the four Δ linking numbers.
    pub fn delta_parity(&self) -> Result<u8, GraphError> {
        Ok((self.delta_linking_numbers()?.iter().sum::<i64>().rem_euclid(2)) as u8)
    }

    /// Smooths a vertex of the diagram. The two strands are pulled apart in
    /// the plane; no crossing is created.
    pub fn smooth(&self, v: VertexId, choice: crate::graph::Choice) -> Result<SpatialDiagram, GraphError> {
        let plan = self.base.smoothing_plan(v, choice)?;
        let base = self.base.apply_plan(&plan);
        let quad = self.base.quad(v).unwrap();
        let mut curves = self.curves.clone();
        for h in quad {
            curves.remove(&Curve::Edge(self.base.edge_key(h)));
        }
        let mut signs = self.signs.clone();
        let mut concat = |segments: &[HalfEdge], reverse_all: bool| -> Vec<Passage> {
            let mut ps = Vec::new();
            for &s in segments {
                let key = self.base.edge_key(s);
                let forward = s == key;
                let old = &self.curves[&Curve::Edge(key)];
                let flip = forward == reverse_all;
                let mut part: Vec<Passage> = old.clone();
                if !forward {
                    part.reverse();
                }
                for p in &part {
                    if flip {
                        signs[p.crossing] = -signs[p.crossing];
                    }
                }
                ps.extend(part);
            }
            if reverse_all {
                ps.reverse();
            }
            ps
        };
        for e in &plan.new_edges {
            let reverse_all = e.to < e.from;
            let ps = concat(&e.segments, reverse_all);
            curves.insert(Curve::Edge(e.from.min(e.to)), ps);
        }
        for (j, segs) in plan.new_circles.iter().enumerate() {
            let ps = concat(segs, false);
            curves.insert(Curve::Circle(self.base.circle_count() + j), ps);
        }
        let mut rotation = self.rotation.clone();
        rotation.remove(&v);
        Ok(SpatialDiagram { base, rotation, curves, signs })
    }

    /// Removes a component and every crossing it takes part in.
    pub fn delete_component(&self, index: usize) -> Result<SpatialDiagram, GraphError> {
        let comps = self.base.connected_components();
        let comp = comps.get(index).ok_or(GraphError::UnknownComponent(index))?;
        let base = self.base.delete_component(index)?;
        let mut drop = BTreeSet::new();
        let mut rotation = self.rotation.clone();
        match comp {
            Component::Circle(i) => {
                drop.insert(Curve::Circle(*i));
            }
            Component::Vertices(vs) => {
                for v in vs {
                    rotation.remove(v);
                    for h in self.base.quad(*v).unwrap() {
                        drop.insert(Curve::Edge(self.base.edge_key(h)));
                    }
                }
            }
        }
        let gone: BTreeSet<usize> =
            drop.iter().flat_map(|c| self.curves[c].iter().map(|p| p.crossing)).collect();
        let renumber: BTreeMap<usize, usize> =
            (0..self.signs.len()).filter(|x| !gone.contains(x)).enumerate().map(|(new, old)| (old, new)).collect();
        let signs = renumber.keys().map(|&x| self.signs[x]).collect();
        let mut curves = BTreeMap::new();
        for (&c, ps) in &self.curves {
            if drop.contains(&c) {
                continue;
            }
            let c = match (c, comp) {
                (Curve::Circle(j), Component::Circle(i)) if j > *i => Curve::Circle(j - 1),
                _ => c,
            };
            let kept = ps
                .iter()
                .filter_map(|p| renumber.get(&p.crossing).map(|&x| Passage { crossing: x, layer: p.layer }))
                .collect();
            curves.insert(c, kept);
        }
        Ok(SpatialDiagram { base, rotation, curves, signs })
    }

    pub fn replay(&self, w: &MinorWitness) -> Result<SpatialDiagram, GraphError> {
        let mut sd = self.clone();
        for m in &w.moves {
            sd = match *m {
                Move::Smooth(v, c) => sd.smooth(v, c)?,
                Move::DeleteComponent(i) => sd.delete_component(i)?,
            };
        }
        Ok(sd)
    }

    /// A pair of compatible loops of the base with odd linking number, found
    /// through a Δ minor: the witness is replayed on the diagram, the four Δ
    /// pairs are evaluated there, and an odd pair is lifted back to the base.
    /// `None` when the base has no Δ minor.
    pub fn find_odd_linking_pair(&self) -> Result<Option<LinkPair>, GraphError> {
        let w = match find_delta_minor(&self.base) {
            Ok(Some(w)) => w,
            Ok(None) => return Ok(None),
            Err(GraphError::NoSourceSink) => return Ok(None),
            Err(e) => return Err(e),
        };
        let reduced = self.replay(&w)?;
        for (a, b) in reduced.delta_loop_pairs()? {
            let lk = reduced.linking_number(&a, &b)?;
            if lk.rem_euclid(2) == 1 {
                let (la, lb) = (lift_loop(&self.base, &w, &a), lift_loop(&self.base, &w, &b));
                let pair = self.link_pair(&la, &lb)?;
                debug_assert_eq!(pair.linking_number.abs(), lk.abs());
                return Ok(Some(pair));
            }
        }
        Err(diag_err("Δ diagram with even linking parity"))
    }

    /// Every compatible pair of rotating loops has linking number zero.
    pub fn is_linkless_witnessed(&self) -> bool {
        self.first_linked_pair().is_none()
    }

    /// First compatible loop pair with nonzero linking number.
    pub fn first_linked_pair(&self) -> Option<LinkPair> {
        if self.signs.is_empty() {
            return None;
        }
        let loops = crate::circuits::enumerate_rotating_loops(&self.base);
        for i in 0..loops.len() {
            for j in i + 1..loops.len() {
                if !compatible(&self.base, &loops[i], &loops[j]) {
                    continue;
                }
                if let Ok(p) = self.link_pair(&loops[i], &loops[j]) {
                    if p.linking_number != 0 {
                        return Some(p);
                    }
                }
            }
        }
        None
    }

    /// Darts of the projection's faces: `(curve, arc index, runs forward)`.
    /// Each face lies to the right of its darts.
    pub fn faces(&self) -> Vec<Vec<(Curve, usize, bool)>> {
        let p = self.projection();
        faces::faces(&p.sigma, &p.alpha).into_iter().map(|f| f.into_iter().map(|d| p.arc_of[d]).collect()).collect()
    }

    fn insert_passages(&mut self, curve: Curve, arc: usize, forward: bool, mut new: Vec<Passage>) {
        if !forward {
            new.reverse();
        }
        let ps = self.curves.get_mut(&curve).unwrap();
        let at = if matches!(curve, Curve::Circle(_)) && ps.is_empty() { 0 } else { arc };
        ps.splice(at..at, new);
    }

    /// Adds a kink into the face on the right of the dart, creating one
    /// self-crossing. `first_over` chooses which passage goes over.
    pub fn reidemeister_one(&self, dart: (Curve, usize, bool), first_over: bool) -> SpatialDiagram {
        let mut sd = self.clone();
        let x = sd.signs.len();
        sd.signs.push(if first_over { 1 } else { -1 });
        let (l1, l2) = if first_over { (Layer::Over, Layer::Under) } else { (Layer::Under, Layer::Over) };
        let (curve, arc, forward) = dart;
        sd.insert_passages(curve, arc, forward, vec![Passage { crossing: x, layer: l1 }, Passage { crossing: x, layer: l2 }]);
        sd
    }

    /// Pushes a finger of the first dart's arc over the second dart's arc
    /// across the face both bound, creating two crossings of opposite sign.
    pub fn reidemeister_two(&self, over: (Curve, usize, bool), under: (Curve, usize, bool)) -> Result<SpatialDiagram, GraphError> {
        if (over.0, over.1) == (under.0, under.1) {
            return Err(diag_err("darts must lie on different arcs"));
        }
        let mut sd = self.clone();
        let (x1, x2) = (sd.signs.len(), sd.signs.len() + 1);
        let eps = |d: (Curve, usize, bool)| if d.2 { 1i8 } else { -1 };
        let e = eps(over) * eps(under);
        sd.signs.push(-e);
        sd.signs.push(e);
        let po = vec![Passage { crossing: x1, layer: Layer::Over }, Passage { crossing: x2, layer: Layer::Over }];
        let pu = vec![Passage { crossing: x2, layer: Layer::Under }, Passage { crossing: x1, layer: Layer::Under }];
        // insert at the higher arc index first when both darts share a curve
        if over.0 == under.0 && over.1 < under.1 {
            sd.insert_passages(under.0, under.1, under.2, pu);
            sd.insert_passages(over.0, over.1, over.2, po);
        } else {
            sd.insert_passages(over.0, over.1, over.2, po);
            sd.insert_passages(under.0, under.1, under.2, pu);
        }
        Ok(sd)
    }

    /// Random crossing switches and Reidemeister moves of the first two kinds.
    pub fn fuzz<R: Rng>(&self, rng: &mut R, moves: usize, max_crossings: usize) -> SpatialDiagram {
        let mut sd = self.clone();
        for _ in 0..moves {
            let kind = rng.gen_range(0..4);
            if kind >= 2 || sd.signs.len() + 2 > max_crossings {
                if !sd.signs.is_empty() {
                    let x = rng.gen_range(0..sd.signs.len());
                    sd = sd.crossing_switch(x).unwrap();
                }
                continue;
            }
            let faces = sd.faces();
            if faces.is_empty() {
                continue;
            }
            let f = &faces[rng.gen_range(0..faces.len())];
            if kind == 0 {
                sd = sd.reidemeister_one(f[rng.gen_range(0..f.len())], rng.gen_bool(0.5));
            } else if f.len() >= 2 {
                let i = rng.gen_range(0..f.len());
                let j = rng.gen_range(0..f.len());
                if let Ok(next) = sd.reidemeister_two(f[i], f[j]) {
                    sd = next;
                }
            }
        }
        sd
    }

    /// Random crossing switches only.
    pub fn random_switches<R: Rng>(&self, rng: &mut R, count: usize) -> SpatialDiagram {
        let mut sd = self.clone();
        if sd.signs.is_empty() {
            return sd;
        }
        for _ in 0..count {
            let x = rng.gen_range(0..sd.signs.len());
            sd = sd.crossing_switch(x).unwrap();
        }
        sd
    }
}

/// The four pairs of complementary triangles of Δ.
pub const DELTA_PAIRS: [(&str, [DeltaEdge; 3], [DeltaEdge; 3]); 4] = {
    use DeltaEdge::*;
    [
        ("F", [A, B, C], [APrime, BPrime, CPrime]),
        ("G", [A, B, CPrime], [APrime, BPrime, C]),
        ("H", [A, BPrime, C], [APrime, B, CPrime]),
        ("I", [APrime, B, C], [A, BPrime, CPrime]),
    ]
};

/// The three-crossing diagram of Δ shipped in `data/delta_immersion.sd`.
pub fn delta_immersion() -> SpatialDiagram {
    let base = include_str!("../data/delta.f4g");
    crate::text::parse_spatial(include_str!("../data/delta_immersion.sd"), |_| {
        crate::text::parse_graph(base).map_err(|e| e.to_string())
    })
    .expect("shipped diagram is valid")
}

fn curves_of(g: &FramedFourGraph) -> Vec<Curve> {
    let mut out: Vec<Curve> = g.edges().into_iter().map(|(a, _)| Curve::Edge(a)).collect();
    out.extend((0..g.circle_count()).map(Curve::Circle));
    out
}

/// A diagram of `realize(d)`: the core circle with each chord's two ends
/// pulled towards a meeting point inside the disk along thin wedges. Wedges
/// of interlaced chords cross in four points. `over` decides, for each
/// crossing in discovery order, whether the earlier-listed strand is on top.
pub fn diagram_of_chords(d: &crate::chord::ChordDiagram, mut over: impl FnMut(usize) -> bool) -> SpatialDiagram {
    use std::f64::consts::PI;
    let base = d.realize();
    let n = d.word().len();
    if n == 0 {
        return SpatialDiagram::flat(&base, &RotationSystem::forward(&base));
    }
    let jitter = |k: usize| ((k as f64 * 0.618_033_988_75).fract() - 0.5) * 0.3;
    let theta: Vec<f64> = (0..n).map(|k| 2.0 * PI * (k as f64 + jitter(k)) / n as f64).collect();
    let delta_angle = 0.08 * 2.0 * PI / n as f64;
    let on_circle = |t: f64| (t.cos(), t.sin());
    let ends = d.endpoints();
    let apex: BTreeMap<u32, (f64, f64)> = ends
        .iter()
        .map(|(&x, &(i, j))| {
            let t = 0.5 + 0.1 * ((x as f64 * 0.414_213_562).fract() - 0.5);
            let (a, b) = (on_circle(theta[i]), on_circle(theta[j]));
            (x, (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)))
        })
        .collect();
    let (ins, outs) = d.occurrence_half_edges();
    // wedge segments: (occurrence position, incoming?) -> (from, to) in core direction
    struct Seg {
        curve: Curve,
        forward: bool,
        param: f64,
        a: (f64, f64),
        b: (f64, f64),
        chord: u32,
    }
    let mut segs = Vec::new();
    for k in 0..n {
        let x = d.word()[k];
        let m = apex[&x];
        let q_in = on_circle(theta[k] - delta_angle);
        let q_out = on_circle(theta[k] + delta_angle);
        // edge leaving occurrence k runs out_k -> in_{k+1}
        let out_edge = (outs[k], ins[(k + 1) % n]);
        let in_edge = (outs[(k + n - 1) % n], ins[k]);
        let key = |e: (HalfEdge, HalfEdge)| (Curve::Edge(e.0.min(e.1)), e.0 < e.1);
        let (c_out, f_out) = key(out_edge);
        let (c_in, f_in) = key(in_edge);
        segs.push(Seg { curve: c_out, forward: f_out, param: 0.0, a: m, b: q_out, chord: x });
        segs.push(Seg { curve: c_in, forward: f_in, param: 2.0, a: q_in, b: m, chord: x });
    }
    // crossing points: (curve, position along reference direction, direction)
    let mut hits: BTreeMap<Curve, Vec<(f64, usize, (f64, f64))>> = BTreeMap::new();
    let mut count = 0;
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let (s, t) = (&segs[i], &segs[j]);
            if s.chord == t.chord {
                continue;
            }
            let r = (s.b.0 - s.a.0, s.b.1 - s.a.1);
            let q = (t.b.0 - t.a.0, t.b.1 - t.a.1);
            let den = r.0 * q.1 - r.1 * q.0;
            if den.abs() < 1e-12 {
                continue;
            }
            let w = (t.a.0 - s.a.0, t.a.1 - s.a.1);
            let u = (w.0 * q.1 - w.1 * q.0) / den;
            let v = (w.0 * r.1 - w.1 * r.0) / den;
            if !(0.0..=1.0).contains(&u) || !(0.0..=1.0).contains(&v) {
                continue;
            }
            let x = count;
            count += 1;
            let dir = |seg: &Seg, d: (f64, f64)| if seg.forward { d } else { (-d.0, -d.1) };
            let pos = |seg: &Seg, t: f64| {
                let p = seg.param + t;
                if seg.forward {
                    p
                } else {
                    -p
                }
            };
            hits.entry(s.curve).or_default().push((pos(s, u), x, dir(s, r)));
            hits.entry(t.curve).or_default().push((pos(t, v), x, dir(t, q)));
        }
    }
    let mut dirs: Vec<Vec<(Curve, (f64, f64))>> = vec![Vec::new(); count];
    let mut curves: BTreeMap<Curve, Vec<Passage>> = curves_of(&base).into_iter().map(|c| (c, Vec::new())).collect();
    let first_on_top: Vec<bool> = (0..count).map(&mut over).collect();
    for (c, mut hs) in hits {
        hs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        for (_, x, dv) in hs {
            dirs[x].push((c, dv));
            let layer = if (dirs[x].len() == 1) == first_on_top[x] { Layer::Over } else { Layer::Under };
            curves.get_mut(&c).unwrap().push(Passage { crossing: x, layer });
        }
    }
    let mut signs = vec![0i8; count];
    for x in 0..count {
        let (a, b) = (dirs[x][0].1, dirs[x][1].1);
        let (o, u) = if first_on_top[x] { (a, b) } else { (b, a) };
        signs[x] = if o.0 * u.1 - o.1 * u.0 > 0.0 { 1 } else { -1 };
    }
    let rotation = base
        .vertices()
        .map(|(v, q)| {
            let x = v.0;
            let (i, j) = ends[&x];
            let m = apex[&x];
            let dir_of = |k: usize, incoming: bool| {
                let p = on_circle(theta[k] + if incoming { -delta_angle } else { delta_angle });
                (p.1 - m.1).atan2(p.0 - m.0)
            };
            let mut hs =
                [(dir_of(i, true), q[0]), (dir_of(i, false), q[1]), (dir_of(j, true), q[2]), (dir_of(j, false), q[3])];
            hs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            (v, hs.map(|h| h.1))
        })
        .collect();
    SpatialDiagram { base, rotation, curves, signs }
}
