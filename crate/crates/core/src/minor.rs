//! Minors: sequences of smoothings and component deletions.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::canon::{canonical_form, component_codes};
use crate::error::GraphError;
use crate::graph::{Choice, FramedFourGraph, HalfEdge, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    Smooth(VertexId, Choice),
    /// Index into [`FramedFourGraph::connected_components`] of the current graph.
    DeleteComponent(usize),
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Smooth(v, c) => write!(f, "smooth {v} {c:?}"),
            Move::DeleteComponent(i) => write!(f, "delete component {i}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MinorWitness {
    pub moves: Vec<Move>,
}

impl MinorWitness {
    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn replay(&self, g: &FramedFourGraph) -> Result<FramedFourGraph, GraphError> {
        let mut cur = g.clone();
        for m in &self.moves {
            cur = match *m {
                Move::Smooth(v, c) => cur.smooth(v, c)?,
                Move::DeleteComponent(i) => cur.delete_component(i)?,
            };
        }
        Ok(cur)
    }

    /// Smoothing choices of the witness, in order.
    pub fn smoothings(&self) -> impl Iterator<Item = (VertexId, Choice)> + '_ {
        self.moves.iter().filter_map(|m| match *m {
            Move::Smooth(v, c) => Some((v, c)),
            Move::DeleteComponent(_) => None,
        })
    }
}

impl fmt::Display for MinorWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moves.is_empty() {
            return write!(f, "identity");
        }
        let parts: Vec<String> = self.moves.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Deletions that turn `g` into something isomorphic to `target`, if `target`
/// is a sub-collection of `g`'s components.
fn deletions_to(g: &FramedFourGraph, target_codes: &(Vec<Vec<u32>>, usize)) -> Option<Vec<Move>> {
    let (want, want_circles) = target_codes;
    if g.circle_count() < *want_circles {
        return None;
    }
    let comps = g.connected_components();
    let mut need: Vec<&Vec<u32>> = want.iter().collect();
    let mut delete = Vec::new();
    let mut circles_kept = 0;
    for (i, c) in comps.iter().enumerate() {
        match c {
            crate::graph::Component::Circle(_) => {
                if circles_kept < *want_circles {
                    circles_kept += 1;
                } else {
                    delete.push(i);
                }
            }
            crate::graph::Component::Vertices(_) => {
                let (code, _) = component_codes(&g.component_graph(c));
                match need.iter().position(|w| **w == code[0]) {
                    Some(p) => {
                        need.swap_remove(p);
                    }
                    None => delete.push(i),
                }
            }
        }
    }
    if !need.is_empty() {
        return None;
    }
    delete.reverse();
    Some(delete.into_iter().map(Move::DeleteComponent).collect())
}

/// Breadth-first search for `h` among the minors of `g`.
///
/// Level `k` holds the graphs reached by `k` smoothings, deduplicated by
/// canonical form. Smoothings at distinct vertices commute with each other
/// and with deleting components they do not touch, so deletions are only
/// tried as the final step of a witness.
pub fn is_minor(g: &FramedFourGraph, h: &FramedFourGraph) -> Option<MinorWitness> {
    let target = component_codes(h);
    if h.vertex_count() > g.vertex_count() {
        return None;
    }
    let mut seen = HashSet::new();
    seen.insert(canonical_form(g));
    let mut frontier: VecDeque<(FramedFourGraph, Vec<Move>)> = VecDeque::from([(g.clone(), Vec::new())]);
    while let Some((cur, path)) = frontier.pop_front() {
        if let Some(dels) = deletions_to(&cur, &target) {
            let mut moves = path;
            moves.extend(dels);
            return Some(MinorWitness { moves });
        }
        if cur.vertex_count() == h.vertex_count() {
            continue;
        }
        for v in cur.vertex_ids().collect::<Vec<_>>() {
            for c in Choice::BOTH {
                let next = cur.smooth(v, c).expect("vertex exists");
                if seen.insert(canonical_form(&next)) {
                    let mut p = path.clone();
                    p.push(Move::Smooth(v, c));
                    frontier.push_back((next, p));
                }
            }
        }
    }
    None
}

/// Lifts a half-edge walk of a minor back to the original graph.
///
/// Edges of the minor are concatenations of original edges through smoothed
/// vertices; `expand_edge` returns the sequence of original half-edges met
/// when walking from `from` (a half-edge of the minor) to its mate in the
/// minor, passing each smoothed vertex along its smoothing.
pub fn expand_edge(g: &FramedFourGraph, witness: &MinorWitness, from: HalfEdge) -> Vec<HalfEdge> {
    let smoothed: std::collections::BTreeMap<VertexId, Choice> = witness.smoothings().collect();
    let mut out = Vec::new();
    let mut cur = from;
    loop {
        let next = g.mate(cur);
        let (v, s) = g.slot_of(next).expect("half-edge of graph");
        match smoothed.get(&v) {
            Some(c) => {
                let quad = g.quad(v).unwrap();
                let p = quad[c.partner(s)];
                out.push(next);
                out.push(p);
                cur = p;
            }
            None => return out,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::graph::{delta, figure_eight};

    #[test]
    fn reflexive_with_empty_witness() {
        let d = delta();
        let w = is_minor(&d, &d).unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn minors_never_gain_vertices() {
        let d = delta();
        assert!(is_minor(&figure_eight(), &d).is_none());
    }

    #[test]
    fn circle_is_minor_of_figure_eight() {
        let f = figure_eight();
        let c = FramedFourGraph::circles_only(2);
        let w = is_minor(&f, &c).unwrap();
        assert!(is_isomorphic(&w.replay(&f).unwrap(), &c));
        assert!(is_minor(&f, &FramedFourGraph::circles_only(3)).is_none());
        let e = is_minor(&f, &FramedFourGraph::empty()).unwrap();
        assert!(e.replay(&f).unwrap().is_empty());
    }
}
