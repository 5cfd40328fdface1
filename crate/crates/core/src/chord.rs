//! Chord diagrams of rotating circuits, their realizations and interlacement.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::circuits::{RotatingCircuit, RotatingLoop};
use crate::error::GraphError;
use crate::graph::{Component, FramedFourGraph, HalfEdge, Orientation, VertexId};

/// A double-occurrence word read along the oriented core circle.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ChordDiagram {
    word: Vec<u32>,
}

impl ChordDiagram {
    pub fn new(word: Vec<u32>) -> Result<ChordDiagram, GraphError> {
        let mut count: BTreeMap<u32, usize> = BTreeMap::new();
        for &x in &word {
            *count.entry(x).or_default() += 1;
        }
        if let Some((&x, _)) = count.iter().find(|(_, &c)| c != 2) {
            return Err(GraphError::Diagram(format!("label {} occurs {} times", label_name(x), count[&x])));
        }
        Ok(ChordDiagram { word })
    }

    pub fn empty() -> ChordDiagram {
        ChordDiagram::default()
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn chord_count(&self) -> usize {
        self.word.len() / 2
    }

    pub fn labels(&self) -> BTreeSet<u32> {
        self.word.iter().copied().collect()
    }

    /// Occurrence positions `(first, second)` of each label.
    pub fn endpoints(&self) -> BTreeMap<u32, (usize, usize)> {
        let mut first: BTreeMap<u32, usize> = BTreeMap::new();
        let mut out = BTreeMap::new();
        for (i, &x) in self.word.iter().enumerate() {
            match first.get(&x) {
                None => {
                    first.insert(x, i);
                }
                Some(&f) => {
                    out.insert(x, (f, i));
                }
            }
        }
        out
    }

    /// Relabels chords `0, 1, 2, ...` in order of first occurrence.
    pub fn normalized(&self) -> ChordDiagram {
        ChordDiagram { word: first_occurrence(&self.word) }
    }

    pub fn rotated(&self, by: usize) -> ChordDiagram {
        let n = self.word.len();
        ChordDiagram { word: (0..n).map(|k| self.word[(k + by) % n]).collect() }
    }

    /// Representative of the class under rotation and relabeling.
    pub fn canonical(&self) -> ChordDiagram {
        (0..self.word.len().max(1))
            .map(|r| if self.word.is_empty() { self.clone() } else { self.rotated(r).normalized() })
            .min()
            .unwrap()
    }

    /// Representative under rotation, relabeling and reversal of the core.
    pub fn canonical_with_reflection(&self) -> ChordDiagram {
        let rev = ChordDiagram { word: self.word.iter().rev().copied().collect() };
        self.canonical().min(rev.canonical())
    }

    pub fn subdiagram(&self, keep: &BTreeSet<u32>) -> Result<ChordDiagram, GraphError> {
        let labels = self.labels();
        if let Some(&x) = keep.iter().find(|x| !labels.contains(x)) {
            return Err(GraphError::UnknownLabel(x));
        }
        Ok(ChordDiagram { word: self.word.iter().copied().filter(|x| keep.contains(x)).collect() })
    }

    pub fn interlacement(&self) -> InterlacementGraph {
        let ends = self.endpoints();
        let mut adj: BTreeMap<u32, BTreeSet<u32>> = ends.keys().map(|&x| (x, BTreeSet::new())).collect();
        for (&x, &(a, b)) in &ends {
            for (&y, &(c, d)) in &ends {
                if x < y && ((a < c && c < b) != (a < d && d < b)) {
                    adj.get_mut(&x).unwrap().insert(y);
                    adj.get_mut(&y).unwrap().insert(x);
                }
            }
        }
        InterlacementGraph { adj }
    }

    /// The framed 4-graph obtained by pinching the two ends of every chord
    /// together. Chord `x` becomes vertex `v{x}` with half-edges
    /// `h{4x}..h{4x+3}` = `(in, out)` at the first occurrence followed by
    /// `(in, out)` at the second; the two incoming half-edges are opposite,
    /// so the core orientation is a source-sink structure.
    pub fn realize(&self) -> FramedFourGraph {
        if self.word.is_empty() {
            return FramedFourGraph::circles_only(1);
        }
        let (ins, outs) = self.occurrence_half_edges();
        let n = self.word.len();
        let vertices = self.labels().into_iter().map(|x| {
            let b = 4 * x;
            (VertexId(x), [HalfEdge(b), HalfEdge(b + 1), HalfEdge(b + 2), HalfEdge(b + 3)])
        });
        let edges: Vec<_> = (0..n).map(|p| (outs[p], ins[(p + 1) % n])).collect();
        FramedFourGraph::new(vertices, edges, Vec::<Orientation>::new()).expect("realization is valid")
    }

    /// In and out half-edges of [`realize`](Self::realize) at each word position.
    pub fn occurrence_half_edges(&self) -> (Vec<HalfEdge>, Vec<HalfEdge>) {
        let ends = self.endpoints();
        let mut ins = vec![HalfEdge(0); self.word.len()];
        let mut outs = ins.clone();
        for (&x, &(i, j)) in &ends {
            ins[i] = HalfEdge(4 * x);
            outs[i] = HalfEdge(4 * x + 1);
            ins[j] = HalfEdge(4 * x + 2);
            outs[j] = HalfEdge(4 * x + 3);
        }
        (ins, outs)
    }
}

fn first_occurrence(word: &[u32]) -> Vec<u32> {
    let mut map = BTreeMap::new();
    word.iter()
        .map(|x| {
            let next = map.len() as u32;
            *map.entry(*x).or_insert(next)
        })
        .collect()
}

/// Display name of a chord label: `a`..`z`, then `c26`, `c27`, ...
pub fn label_name(x: u32) -> String {
    if x < 26 {
        char::from(b'a' + x as u8).to_string()
    } else {
        format!("c{x}")
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.word.iter().map(|&x| label_name(x)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Simple graph on chord labels; `x ~ y` iff their endpoints alternate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterlacementGraph {
    pub adj: BTreeMap<u32, BTreeSet<u32>>,
}

impl InterlacementGraph {
    pub fn edges(&self) -> Vec<(u32, u32)> {
        self.adj.iter().flat_map(|(&x, ns)| ns.iter().filter(move |&&y| x < y).map(move |&y| (x, y))).collect()
    }

    pub fn is_bipartite(&self) -> bool {
        self.shortest_odd_cycle().is_none()
    }

    /// A shortest odd cycle, in cycle order. Roots are tried in increasing
    /// label order and the first cycle of minimum length wins.
    pub fn shortest_odd_cycle(&self) -> Option<Vec<u32>> {
        let mut best: Option<Vec<u32>> = None;
        for &root in self.adj.keys() {
            let mut dist: BTreeMap<u32, usize> = BTreeMap::from([(root, 0)]);
            let mut parent: BTreeMap<u32, u32> = BTreeMap::new();
            let mut queue = VecDeque::from([root]);
            let mut order = Vec::new();
            while let Some(u) = queue.pop_front() {
                order.push(u);
                for &w in &self.adj[&u] {
                    if !dist.contains_key(&w) {
                        dist.insert(w, dist[&u] + 1);
                        parent.insert(w, u);
                        queue.push_back(w);
                    }
                }
            }
            for &u in &order {
                for &w in &self.adj[&u] {
                    if u < w && dist[&u] == dist[&w] {
                        let len = 2 * dist[&u] + 1;
                        if best.as_ref().map_or(false, |b| b.len() <= len) {
                            continue;
                        }
                        let path = |mut x: u32| {
                            let mut p = vec![x];
                            while let Some(&y) = parent.get(&x) {
                                p.push(y);
                                x = y;
                            }
                            p
                        };
                        let (pu, pw) = (path(u), path(w));
                        // both paths end at root; a shared interior vertex
                        // means a shorter odd cycle exists through another root
                        let su: BTreeSet<_> = pu[..pu.len() - 1].iter().collect();
                        if pw[..pw.len() - 1].iter().any(|x| su.contains(x)) {
                            continue;
                        }
                        let mut cycle: Vec<u32> = pu.iter().rev().copied().collect();
                        cycle.extend(pw[..pw.len() - 1].iter());
                        best = Some(cycle);
                    }
                }
            }
        }
        best
    }
}

/// The chord diagram of a rotating circuit: vertex ids as labels, in the
/// order the circuit meets them. A circle gives the empty diagram.
pub fn chord_diagram_of(g: &FramedFourGraph, circuit: &RotatingCircuit) -> Result<ChordDiagram, GraphError> {
    let l = circuit.as_loop();
    if let RotatingLoop::Circle(_) = l {
        l.check(g)?;
        return Ok(ChordDiagram::empty());
    }
    l.check(g)?;
    let vs = l.vertices(g);
    let comp = g
        .connected_components()
        .into_iter()
        .find(|c| matches!(c, Component::Vertices(x) if x.first().map_or(false, |v| vs.contains(v))))
        .ok_or_else(|| GraphError::Loop("circuit is not on the graph".into()))?;
    let Component::Vertices(cv) = comp else { unreachable!() };
    if l.edge_count() != 2 * cv.len() || l.steps().any(|(i, o)| !g.are_adjacent(i, o)) {
        return Err(GraphError::Loop("not a rotating circuit of its component".into()));
    }
    ChordDiagram::new(l.steps().map(|(i, _)| g.slot_of(i).unwrap().0 .0).collect())
}

/// Chord diagram with `m` chords whose interlacement graph is the cycle
/// `C_m`: the word `(c2 c1)(c3 c2)...(c1 cm)`, relabeled by first occurrence.
pub fn polygon_diagram(m: usize) -> Result<ChordDiagram, GraphError> {
    if m < 3 || m % 2 == 0 {
        return Err(GraphError::Diagram(format!("polygon size must be odd and at least 3, got {m}")));
    }
    let word: Vec<u32> = (0..m).flat_map(|k| [((k + 1) % m) as u32, k as u32]).collect();
    Ok(ChordDiagram { word: first_occurrence(&word) })
}

/// `Z_{2n+1}`: the realization of the `(2n+1)`-gon diagram.
pub fn z_odd(n: usize) -> Result<FramedFourGraph, GraphError> {
    if n == 0 {
        return Err(GraphError::Diagram("z_odd needs n >= 1".into()));
    }
    Ok(polygon_diagram(2 * n + 1)?.realize())
}

/// Chord set of a shortest odd cycle of the interlacement graph.
pub fn find_odd_polygon(d: &ChordDiagram) -> Option<BTreeSet<u32>> {
    d.interlacement().shortest_odd_cycle().map(|c| c.into_iter().collect())
}

/// All chord diagrams with exactly `n` chords up to rotation and relabeling,
/// as canonical representatives in increasing order.
pub fn diagrams_with_chords(n: usize) -> Vec<ChordDiagram> {
    let mut out = BTreeSet::new();
    let mut word = vec![u32::MAX; 2 * n];
    fill(&mut word, 0, 0, &mut out);
    out.into_iter().collect()
}

fn fill(word: &mut Vec<u32>, pos: usize, next: u32, out: &mut BTreeSet<ChordDiagram>) {
    if pos == word.len() {
        out.insert(ChordDiagram { word: word.clone() }.canonical());
        return;
    }
    if word[pos] != u32::MAX {
        return fill(word, pos + 1, next, out);
    }
    // position pos opens chord `next`; choose where it closes
    word[pos] = next;
    for close in pos + 1..word.len() {
        if word[close] == u32::MAX {
            word[close] = next;
            fill(word, pos + 1, next + 1, out);
            word[close] = u32::MAX;
        }
    }
    word[pos] = u32::MAX;
}

/// All chord diagrams with at most `max` chords up to rotation and relabeling.
pub fn census(max: usize) -> Vec<ChordDiagram> {
    (0..=max).flat_map(diagrams_with_chords).collect()
}
