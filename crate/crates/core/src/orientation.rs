//! Source-sink structures.
//!
//! At every vertex one opposite pair is incoming and the other outgoing, so a
//! structure is fixed by one bit per vertex: whether slots `{0, 2}` are the
//! incoming pair. Each edge forces its two end bits to agree or differ, which
//! makes the search a 2-colouring problem per component.

use std::collections::BTreeMap;

use crate::canon::Dense;
use crate::graph::{FramedFourGraph, HalfEdge, Orientation};

/// Edge directions as `(tail, head)` half-edge pairs plus circle orientations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceSinkOrientation {
    /// Keyed by the edge's smaller half-edge.
    pub direction: BTreeMap<HalfEdge, (HalfEdge, HalfEdge)>,
    pub circles: Vec<Orientation>,
}

impl SourceSinkOrientation {
    pub fn is_incoming(&self, g: &FramedFourGraph, h: HalfEdge) -> bool {
        self.direction[&g.edge_key(h)].1 == h
    }

    /// Checks the in/out condition at every vertex.
    pub fn is_valid_for(&self, g: &FramedFourGraph) -> bool {
        if self.direction.len() != g.edge_count() || self.circles.len() != g.circle_count() {
            return false;
        }
        g.vertices().all(|(_, q)| {
            let inc = q.map(|h| self.is_incoming(g, h));
            inc[0] == inc[2] && inc[1] == inc[3] && inc[0] != inc[1]
        })
    }

    pub fn reversed(&self) -> SourceSinkOrientation {
        SourceSinkOrientation {
            direction: self.direction.iter().map(|(&k, &(t, h))| (k, (h, t))).collect(),
            circles: self
                .circles
                .iter()
                .map(|o| match o {
                    Orientation::Positive => Orientation::Negative,
                    Orientation::Negative => Orientation::Positive,
                })
                .collect(),
        }
    }
}

/// Per-component vertex bits, or `None` if some component is not 2-colourable.
fn solve(dense: &Dense) -> Option<Vec<Vec<(usize, bool)>>> {
    let n = dense.ids.len();
    let mut bit: Vec<Option<bool>> = vec![None; n];
    let mut comps = Vec::new();
    for start in 0..n {
        if bit[start].is_some() {
            continue;
        }
        bit[start] = Some(false);
        let mut comp = vec![(start, false)];
        let mut i = 0;
        while i < comp.len() {
            let (v, b) = comp[i];
            i += 1;
            for s in 0..4 {
                let m = dense.mate[4 * v + s];
                let (w, t) = (m / 4, m % 4);
                // incoming(h) = (slot even) xor bit; ends of an edge must differ
                let want = !(b ^ (s % 2 == 0) ^ (t % 2 == 0));
                match bit[w] {
                    Some(x) if x != want => return None,
                    Some(_) => {}
                    None => {
                        bit[w] = Some(want);
                        comp.push((w, want));
                    }
                }
            }
        }
        comps.push(comp);
    }
    Some(comps)
}

pub fn admits_source_sink(g: &FramedFourGraph) -> bool {
    solve(&Dense::new(g)).is_some()
}

/// One source-sink structure, if any exists.
pub fn source_sink(g: &FramedFourGraph) -> Option<SourceSinkOrientation> {
    let dense = Dense::new(g);
    let comps = solve(&dense)?;
    let bits: Vec<bool> = {
        let mut b = vec![false; dense.ids.len()];
        for (v, x) in comps.iter().flatten() {
            b[*v] = *x;
        }
        b
    };
    Some(build(g, &dense, &bits, vec![Orientation::Positive; g.circle_count()]))
}

fn build(g: &FramedFourGraph, dense: &Dense, bits: &[bool], circles: Vec<Orientation>) -> SourceSinkOrientation {
    let mut direction = BTreeMap::new();
    for d in 0..4 * dense.ids.len() {
        let incoming = (d % 4 % 2 == 0) ^ bits[d / 4];
        let h = dense.half_edge(d);
        if incoming {
            let t = g.mate(h);
            direction.insert(h.min(t), (t, h));
        }
    }
    SourceSinkOrientation { direction, circles }
}

/// All source-sink structures: two per non-circular component and two per
/// circle, combined independently. Empty if none exists.
pub fn find_source_sink(g: &FramedFourGraph) -> Vec<SourceSinkOrientation> {
    let dense = Dense::new(g);
    let Some(comps) = solve(&dense) else {
        return Vec::new();
    };
    let free = comps.len() + g.circle_count();
    let mut out = Vec::with_capacity(1 << free);
    for mask in 0u64..(1u64 << free) {
        let mut bits = vec![false; dense.ids.len()];
        for (ci, comp) in comps.iter().enumerate() {
            let flip = mask >> ci & 1 == 1;
            for &(v, b) in comp {
                bits[v] = b ^ flip;
            }
        }
        let circles = (0..g.circle_count())
            .map(|i| if mask >> (comps.len() + i) & 1 == 1 { Orientation::Negative } else { Orientation::Positive })
            .collect();
        out.push(build(g, &dense, &bits, circles));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{delta, figure_eight, VertexId};

    #[test]
    fn delta_has_exactly_two() {
        let all = find_source_sink(&delta());
        assert_eq!(all.len(), 2);
        assert!(all.iter().all(|o| o.is_valid_for(&delta())));
        assert_eq!(all[0].reversed(), all[1]);
    }

    #[test]
    fn circle_has_two() {
        assert_eq!(find_source_sink(&FramedFourGraph::circles_only(1)).len(), 2);
        assert_eq!(find_source_sink(&FramedFourGraph::empty()).len(), 1);
    }

    #[test]
    fn opposite_loops_have_none() {
        let h = HalfEdge;
        let g = FramedFourGraph::new([(VertexId(0), [h(0), h(1), h(2), h(3)])], [(h(0), h(2)), (h(1), h(3))], vec![])
            .unwrap();
        assert!(find_source_sink(&g).is_empty());
        assert!(!admits_source_sink(&g));
        assert_eq!(find_source_sink(&figure_eight()).len(), 2);
    }
}
