//! Exhaustive comparison of the planarity criteria over small chord diagrams.

use rayon::prelude::*;

use crate::canon::{canonical_form, is_isomorphic};
use crate::chord::{census, chord_diagram_of, ChordDiagram};
use crate::circuits::find_rotating_circuit;
use crate::graph::delta;
use crate::minor::is_minor;
use crate::orientation::find_source_sink;
use crate::planarity::{find_delta_minor, genus_oracle, is_planar};
use crate::text::{parse_graph, write_graph};

/// Verdicts of every criterion on one realized diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub diagram: ChordDiagram,
    pub interlacement_odd: bool,
    pub is_planar: bool,
    pub genus: usize,
    pub delta_minor: bool,
    pub delta_witness: bool,
    pub witness_replays: bool,
    pub source_sink_count: usize,
    pub round_trip: bool,
}

impl CensusRow {
    /// All planarity verdicts agree and every witness is sound.
    pub fn agrees(&self) -> bool {
        let np = self.interlacement_odd;
        np == !self.is_planar
            && np == (self.genus > 0)
            && np == self.delta_minor
            && np == self.delta_witness
            && self.witness_replays
    }
}

pub fn census_row(d: &ChordDiagram) -> CensusRow {
    let g = d.realize();
    let interlacement_odd = !d.interlacement().is_bipartite();
    let planar = is_planar(&g).expect("realized diagrams admit source-sink structures");
    let witness = find_delta_minor(&g).expect("realized diagrams admit source-sink structures");
    let witness_replays = match &witness {
        Some(w) => w.replay(&g).map(|m| canonical_form(&m) == canonical_form(&delta())).unwrap_or(false),
        None => true,
    };
    let round_trip = {
        let text = write_graph(&g);
        let parsed = parse_graph(&text);
        let circuit_ok = match g.connected_components().first() {
            Some(c) if g.vertex_count() > 0 => find_rotating_circuit(&g, c)
                .and_then(|rc| chord_diagram_of(&g, &rc))
                .map(|d2| is_isomorphic(&d2.realize(), &g))
                .unwrap_or(false),
            _ => true,
        };
        circuit_ok && parsed.map(|p| write_graph(&p) == text && canonical_form(&p) == canonical_form(&g)).unwrap_or(false)
    };
    CensusRow {
        diagram: d.clone(),
        interlacement_odd,
        is_planar: planar,
        genus: genus_oracle(&g),
        delta_minor: is_minor(&g, &delta()).is_some(),
        delta_witness: witness.is_some(),
        witness_replays,
        source_sink_count: find_source_sink(&g).len(),
        round_trip,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusSummary {
    pub diagrams: usize,
    pub non_planar: usize,
    pub disagreements: usize,
    pub bad_source_sink: usize,
    pub bad_round_trips: usize,
    pub first_disagreement: Option<ChordDiagram>,
}

/// Rows for every diagram with at most `max_chords` chords, in census order.
pub fn run_census(max_chords: usize) -> Vec<CensusRow> {
    census(max_chords).par_iter().map(census_row).collect()
}

pub fn summarize(rows: &[CensusRow]) -> CensusSummary {
    let mut s = CensusSummary { diagrams: rows.len(), ..Default::default() };
    for r in rows {
        s.non_planar += r.interlacement_odd as usize;
        if !r.agrees() {
            s.disagreements += 1;
            s.first_disagreement.get_or_insert_with(|| r.diagram.clone());
        }
        s.bad_source_sink += (r.source_sink_count != 2) as usize;
        s.bad_round_trips += (!r.round_trip) as usize;
    }
    s
}
