//! Framed 4-valent graphs with oriented circular components.
//!
//! A vertex stores its four half-edges as a quadruple `(h0, h1, h2, h3)`;
//! slots `{0, 2}` and `{1, 3}` are the two opposite pairs. Half-edge and
//! vertex ids are stable under smoothing and deletion, so a half-edge of a
//! minor is also a half-edge of the graph it came from.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::GraphError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfEdge(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl fmt::Display for HalfEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h{}", self.0)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// The two ways of smoothing a vertex. Both join adjacent half-edges.
///
/// `A` joins slots 0–1 and 2–3, `B` joins slots 0–3 and 1–2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Choice {
    A,
    B,
}

impl Choice {
    pub const BOTH: [Choice; 2] = [Choice::A, Choice::B];

    /// Slot joined to `slot` by this smoothing.
    pub fn partner(self, slot: usize) -> usize {
        match self {
            Choice::A => slot ^ 1,
            Choice::B => 3 - slot,
        }
    }

    pub fn other(self) -> Choice {
        match self {
            Choice::A => Choice::B,
            Choice::B => Choice::A,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Orientation {
    #[default]
    Positive,
    Negative,
}

/// Slot opposite to `slot` at the same vertex.
pub fn opposite_slot(slot: usize) -> usize {
    (slot + 2) % 4
}

/// Whether two distinct slots of one vertex are adjacent (not opposite).
pub fn adjacent_slots(a: usize, b: usize) -> bool {
    a != b && opposite_slot(a) != b
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A half-edge id appears in more than one vertex slot.
    DuplicateHalfEdge(HalfEdge),
    /// The pairing sends a half-edge to itself.
    FixedPoint(HalfEdge),
    /// `pairing(a) = b` but `pairing(b) != a`.
    NotInvolution(HalfEdge, HalfEdge),
    /// A half-edge in a vertex slot has no partner.
    Unpaired(HalfEdge),
    /// The pairing mentions a half-edge that is in no vertex slot.
    DanglingPair(HalfEdge),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateHalfEdge(h) => write!(f, "half-edge {h} occurs in more than one slot"),
            Violation::FixedPoint(h) => write!(f, "half-edge {h} is paired with itself"),
            Violation::NotInvolution(a, b) => write!(f, "{a} is paired with {b} but not conversely"),
            Violation::Unpaired(h) => write!(f, "half-edge {h} has no partner"),
            Violation::DanglingPair(h) => write!(f, "paired half-edge {h} belongs to no vertex"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Component {
    Vertices(Vec<VertexId>),
    Circle(usize),
}

/// A framed 4-graph: 4-valent vertices with their opposite pairs, an edge
/// pairing on half-edges and a list of oriented circular components.
#[derive(Clone, Debug, Default)]
pub struct FramedFourGraph {
    vertices: BTreeMap<VertexId, [HalfEdge; 4]>,
    pairing: BTreeMap<HalfEdge, HalfEdge>,
    circles: Vec<Orientation>,
    slot_of: BTreeMap<HalfEdge, (VertexId, usize)>,
}

impl PartialEq for FramedFourGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.pairing == other.pairing && self.circles == other.circles
    }
}

impl Eq for FramedFourGraph {}

/// What a smoothing does to the edges around the smoothed vertex.
///
/// Every new edge (and every new circle) is a concatenation of old edges;
/// each old edge is recorded by the half-edge it is traversed from.
#[derive(Clone, Debug)]
pub struct SmoothPlan {
    pub vertex: VertexId,
    pub new_edges: Vec<MergedEdge>,
    pub new_circles: Vec<Vec<HalfEdge>>,
}

#[derive(Clone, Debug)]
pub struct MergedEdge {
    pub from: HalfEdge,
    pub to: HalfEdge,
    pub segments: Vec<HalfEdge>,
}

impl FramedFourGraph {
    /// Builds a graph without checking invariants. Use [`validate`](Self::validate)
    /// or [`new`](Self::new) to reject malformed input.
    pub fn from_parts_unchecked(
        vertices: impl IntoIterator<Item = (VertexId, [HalfEdge; 4])>,
        edges: impl IntoIterator<Item = (HalfEdge, HalfEdge)>,
        circles: Vec<Orientation>,
    ) -> Self {
        let vertices: BTreeMap<_, _> = vertices.into_iter().collect();
        let mut pairing = BTreeMap::new();
        for (a, b) in edges {
            pairing.insert(a, b);
            pairing.entry(b).or_insert(a);
        }
        let mut g = FramedFourGraph { vertices, pairing, circles, slot_of: BTreeMap::new() };
        g.reindex();
        g
    }

    pub fn new(
        vertices: impl IntoIterator<Item = (VertexId, [HalfEdge; 4])>,
        edges: impl IntoIterator<Item = (HalfEdge, HalfEdge)>,
        circles: Vec<Orientation>,
    ) -> Result<Self, GraphError> {
        let g = Self::from_parts_unchecked(vertices, edges, circles);
        let violations = g.validate();
        if violations.is_empty() {
            Ok(g)
        } else {
            Err(GraphError::Invalid(violations))
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// `count` positively oriented circles and nothing else.
    pub fn circles_only(count: usize) -> Self {
        FramedFourGraph { circles: vec![Orientation::Positive; count], ..Self::default() }
    }

    fn reindex(&mut self) {
        self.slot_of.clear();
        for (&v, quad) in &self.vertices {
            for (s, &h) in quad.iter().enumerate() {
                self.slot_of.entry(h).or_insert((v, s));
            }
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        let mut reported = BTreeSet::new();
        for quad in self.vertices.values() {
            for &h in quad {
                if !seen.insert(h) && reported.insert(h) {
                    out.push(Violation::DuplicateHalfEdge(h));
                }
            }
        }
        for &h in &seen {
            match self.pairing.get(&h) {
                None => out.push(Violation::Unpaired(h)),
                Some(&m) if m == h => out.push(Violation::FixedPoint(h)),
                Some(&m) => {
                    if self.pairing.get(&m) != Some(&h) {
                        out.push(Violation::NotInvolution(h, m));
                    }
                }
            }
        }
        for (&a, &b) in &self.pairing {
            if !seen.contains(&a) {
                out.push(Violation::DanglingPair(a));
            } else if !seen.contains(&b) && a != b {
                out.push(Violation::DanglingPair(b));
            }
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Number of non-circular edges.
    pub fn edge_count(&self) -> usize {
        2 * self.vertices.len()
    }

    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    pub fn circles(&self) -> &[Orientation] {
        &self.circles
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.circles.is_empty()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.keys().copied()
    }

    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, [HalfEdge; 4])> + '_ {
        self.vertices.iter().map(|(&v, &q)| (v, q))
    }

    pub fn quad(&self, v: VertexId) -> Option<[HalfEdge; 4]> {
        self.vertices.get(&v).copied()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains_key(&v)
    }

    pub fn contains_half_edge(&self, h: HalfEdge) -> bool {
        self.slot_of.contains_key(&h)
    }

    /// Vertex and slot holding `h`.
    pub fn slot_of(&self, h: HalfEdge) -> Option<(VertexId, usize)> {
        self.slot_of.get(&h).copied()
    }

    pub fn half_edges(&self) -> impl Iterator<Item = HalfEdge> + '_ {
        self.slot_of.keys().copied()
    }

    /// Other end of the edge starting at `h`.
    ///
    /// Panics if `h` is not paired; valid graphs pair every half-edge.
    pub fn mate(&self, h: HalfEdge) -> HalfEdge {
        self.pairing[&h]
    }

    pub fn try_mate(&self, h: HalfEdge) -> Option<HalfEdge> {
        self.pairing.get(&h).copied()
    }

    pub fn opposite(&self, h: HalfEdge) -> HalfEdge {
        let (v, s) = self.slot_of[&h];
        self.vertices[&v][opposite_slot(s)]
    }

    pub fn are_opposite(&self, a: HalfEdge, b: HalfEdge) -> bool {
        match (self.slot_of(a), self.slot_of(b)) {
            (Some((v, s)), Some((w, t))) => v == w && opposite_slot(s) == t,
            _ => false,
        }
    }

    pub fn are_adjacent(&self, a: HalfEdge, b: HalfEdge) -> bool {
        match (self.slot_of(a), self.slot_of(b)) {
            (Some((v, s)), Some((w, t))) => v == w && adjacent_slots(s, t),
            _ => false,
        }
    }

    /// Edges as `(lower, higher)` half-edge pairs, ascending.
    pub fn edges(&self) -> Vec<(HalfEdge, HalfEdge)> {
        self.pairing.iter().filter(|(a, b)| a < b).map(|(&a, &b)| (a, b)).collect()
    }

    /// Reference half-edge of the edge through `h`: the smaller of the two ends.
    pub fn edge_key(&self, h: HalfEdge) -> HalfEdge {
        h.min(self.mate(h))
    }

    pub fn max_half_edge(&self) -> Option<HalfEdge> {
        self.slot_of.keys().next_back().copied()
    }

    pub fn max_vertex(&self) -> Option<VertexId> {
        self.vertices.keys().next_back().copied()
    }

    /// Connected components: vertex components ordered by smallest vertex id,
    /// then circles in index order.
    pub fn connected_components(&self) -> Vec<Component> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.vertices.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = vec![start];
            seen.insert(start);
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for h in self.vertices[&v] {
                    if let Some(m) = self.try_mate(h) {
                        if let Some((w, _)) = self.slot_of(m) {
                            if seen.insert(w) {
                                comp.push(w);
                            }
                        }
                    }
                }
            }
            comp.sort();
            out.push(Component::Vertices(comp));
        }
        out.extend((0..self.circles.len()).map(Component::Circle));
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// Subgraph consisting of one component.
    pub fn component_graph(&self, component: &Component) -> FramedFourGraph {
        match component {
            Component::Circle(i) => FramedFourGraph { circles: vec![self.circles[*i]], ..Self::default() },
            Component::Vertices(vs) => {
                let keep: BTreeSet<_> = vs.iter().copied().collect();
                self.restrict_vertices(&keep, Vec::new())
            }
        }
    }

    fn restrict_vertices(&self, keep: &BTreeSet<VertexId>, circles: Vec<Orientation>) -> FramedFourGraph {
        let vertices: Vec<_> = self.vertices.iter().filter(|(v, _)| keep.contains(v)).map(|(&v, &q)| (v, q)).collect();
        let hs: BTreeSet<HalfEdge> = vertices.iter().flat_map(|(_, q)| q.iter().copied()).collect();
        let edges: Vec<_> = self.pairing.iter().filter(|(a, _)| hs.contains(a)).map(|(&a, &b)| (a, b)).collect();
        Self::from_parts_unchecked(vertices, edges, circles)
    }

    pub fn delete_component(&self, index: usize) -> Result<FramedFourGraph, GraphError> {
        let comps = self.connected_components();
        let comp = comps.get(index).ok_or(GraphError::UnknownComponent(index))?;
        Ok(match comp {
            Component::Circle(i) => {
                let mut g = self.clone();
                g.circles.remove(*i);
                g
            }
            Component::Vertices(vs) => {
                let drop: BTreeSet<_> = vs.iter().copied().collect();
                let keep: BTreeSet<_> = self.vertices.keys().filter(|v| !drop.contains(v)).copied().collect();
                self.restrict_vertices(&keep, self.circles.clone())
            }
        })
    }

    /// Describes how smoothing `v` with `choice` reconnects the strands.
    pub fn smoothing_plan(&self, v: VertexId, choice: Choice) -> Result<SmoothPlan, GraphError> {
        let quad = self.quad(v).ok_or(GraphError::UnknownVertex(v))?;
        let at_v = |h: HalfEdge| quad.iter().position(|&q| q == h);
        let partner = |slot: usize| quad[choice.partner(slot)];
        let mut used = BTreeSet::new();
        let mut new_edges = Vec::new();
        for slot in 0..4 {
            let inner = quad[slot];
            let outer = self.mate(inner);
            if at_v(outer).is_some() || used.contains(&outer) {
                continue;
            }
            // walk from the outside end through v until leaving v again
            let mut segments = vec![outer];
            let mut cur = inner;
            let end = loop {
                used.insert(cur);
                let p = partner(at_v(cur).unwrap());
                used.insert(p);
                segments.push(p);
                let next = self.mate(p);
                if at_v(next).is_none() {
                    break next;
                }
                cur = next;
            };
            used.insert(outer);
            used.insert(end);
            new_edges.push(MergedEdge { from: outer, to: end, segments });
        }
        let mut new_circles = Vec::new();
        for &start in &quad {
            if used.contains(&start) {
                continue;
            }
            let mut segments = Vec::new();
            let mut cur = start;
            loop {
                used.insert(cur);
                let p = partner(at_v(cur).unwrap());
                used.insert(p);
                segments.push(p);
                let next = self.mate(p);
                if next == start {
                    break;
                }
                cur = next;
            }
            new_circles.push(segments);
        }
        Ok(SmoothPlan { vertex: v, new_edges, new_circles })
    }

    /// Removes `v`, joining its half-edges in adjacent pairs according to
    /// `choice`. Strands that close up entirely inside `v` become circles.
    pub fn smooth(&self, v: VertexId, choice: Choice) -> Result<FramedFourGraph, GraphError> {
        let plan = self.smoothing_plan(v, choice)?;
        Ok(self.apply_plan(&plan))
    }

    pub(crate) fn apply_plan(&self, plan: &SmoothPlan) -> FramedFourGraph {
        let mut g = self.clone();
        let quad = g.vertices.remove(&plan.vertex).expect("plan vertex");
        for h in quad {
            g.pairing.remove(&h);
            g.slot_of.remove(&h);
        }
        for e in &plan.new_edges {
            g.pairing.insert(e.from, e.to);
            g.pairing.insert(e.to, e.from);
        }
        g.circles.extend(plan.new_circles.iter().map(|_| Orientation::Positive));
        g
    }

    /// Disjoint union; `other` is shifted past this graph's ids.
    pub fn disjoint_union(&self, other: &FramedFourGraph) -> FramedFourGraph {
        let vshift = self.max_vertex().map_or(0, |v| v.0 + 1);
        let hshift = self.max_half_edge().map_or(0, |h| h.0 + 1);
        let moved = other.relabel(|v| VertexId(v.0 + vshift), |h| HalfEdge(h.0 + hshift));
        let mut g = self.clone();
        g.vertices.extend(moved.vertices);
        g.pairing.extend(moved.pairing);
        g.circles.extend(moved.circles);
        g.reindex();
        g
    }

    /// Renames vertices and half-edges. The maps must be injective.
    pub fn relabel(&self, vmap: impl Fn(VertexId) -> VertexId, hmap: impl Fn(HalfEdge) -> HalfEdge) -> FramedFourGraph {
        let vertices: Vec<_> = self.vertices.iter().map(|(&v, q)| (vmap(v), q.map(&hmap))).collect();
        let edges: Vec<_> = self.pairing.iter().map(|(&a, &b)| (hmap(a), hmap(b))).collect();
        Self::from_parts_unchecked(vertices, edges, self.circles.clone())
    }

    /// Same graph with a vertex's quadruple rotated or reflected; the
    /// framing (which slots are opposite) is unchanged.
    pub fn with_quad(&self, v: VertexId, quad: [HalfEdge; 4]) -> FramedFourGraph {
        let mut g = self.clone();
        g.vertices.insert(v, quad);
        g.reindex();
        g
    }
}

/// The three-vertex graph Δ.
///
/// Vertices `P = v0`, `Q = v1`, `R = v2`. Edge naming, used throughout the
/// crate and by [`DeltaEdge`]:
///
/// | edge | ends | half-edges |
/// |------|------|------------|
/// | a  | P–Q | h0 – h4  |
/// | a' | P–Q | h2 – h6  |
/// | b  | P–R | h1 – h8  |
/// | b' | P–R | h3 – h10 |
/// | c  | Q–R | h5 – h9  |
/// | c' | Q–R | h7 – h11 |
pub fn delta() -> FramedFourGraph {
    let h = HalfEdge;
    FramedFourGraph::new(
        [
            (VertexId(0), [h(0), h(1), h(2), h(3)]),
            (VertexId(1), [h(4), h(5), h(6), h(7)]),
            (VertexId(2), [h(8), h(9), h(10), h(11)]),
        ],
        DeltaEdge::ALL.map(|e| e.half_edges()),
        Vec::new(),
    )
    .expect("delta is valid")
}

/// The six edges of Δ as built by [`delta`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DeltaEdge {
    A,
    APrime,
    B,
    BPrime,
    C,
    CPrime,
}

impl DeltaEdge {
    pub const ALL: [DeltaEdge; 6] =
        [DeltaEdge::A, DeltaEdge::APrime, DeltaEdge::B, DeltaEdge::BPrime, DeltaEdge::C, DeltaEdge::CPrime];

    pub fn half_edges(self) -> (HalfEdge, HalfEdge) {
        let (a, b) = match self {
            DeltaEdge::A => (0, 4),
            DeltaEdge::APrime => (2, 6),
            DeltaEdge::B => (1, 8),
            DeltaEdge::BPrime => (3, 10),
            DeltaEdge::C => (5, 9),
            DeltaEdge::CPrime => (7, 11),
        };
        (HalfEdge(a), HalfEdge(b))
    }

    pub fn letter(self) -> char {
        match self {
            DeltaEdge::A | DeltaEdge::APrime => 'a',
            DeltaEdge::B | DeltaEdge::BPrime => 'b',
            DeltaEdge::C | DeltaEdge::CPrime => 'c',
        }
    }

    pub fn primed(self) -> bool {
        matches!(self, DeltaEdge::APrime | DeltaEdge::BPrime | DeltaEdge::CPrime)
    }

    pub fn name(self) -> &'static str {
        match self {
            DeltaEdge::A => "a",
            DeltaEdge::APrime => "a'",
            DeltaEdge::B => "b",
            DeltaEdge::BPrime => "b'",
            DeltaEdge::C => "c",
            DeltaEdge::CPrime => "c'",
        }
    }
}

/// One vertex with two loop edges joining adjacent slots: the plane
/// figure-eight curve.
pub fn figure_eight() -> FramedFourGraph {
    let h = HalfEdge;
    FramedFourGraph::new(
        [(VertexId(0), [h(0), h(1), h(2), h(3)])],
        [(h(1), h(2)), (h(3), h(0))],
        Vec::new(),
    )
    .expect("figure-eight is valid")
}
