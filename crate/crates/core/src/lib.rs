//! Framed 4-valent graphs: minors, source-sink structures, rotating
//! circuits, chord diagrams, planarity and linking obstructions.
//!
//! Everything is built around [`FramedFourGraph`]. Planarity of graphs with
//! a source-sink structure is decided by the bipartite-interlacement test in
//! [`planarity`] and cross-checked by an exhaustive genus oracle and by
//! brute-force minor search against [`delta`]. Spatial embeddings live in
//! [`spatial`] as planar diagrams with signed crossings.

pub mod canon;
pub mod census;
pub mod chord;
pub mod circuits;
pub mod error;
pub mod faces;
pub mod graph;
pub mod minor;
pub mod orientation;
pub mod planarity;
pub mod spatial;
pub mod text;

pub use canon::{canonical_form, find_isomorphism, is_isomorphic, CanonicalForm, Isomorphism};
pub use chord::{chord_diagram_of, find_odd_polygon, polygon_diagram, z_odd, ChordDiagram, InterlacementGraph};
pub use circuits::{
    enumerate_rotating_loops, find_rotating_circuit, loops_transverse_at, transverse_count, RotatingCircuit,
    RotatingLoop,
};
pub use error::{GraphError, ParseError};
pub use graph::{delta, figure_eight, Choice, Component, DeltaEdge, FramedFourGraph, HalfEdge, VertexId, Violation};
pub use minor::{is_minor, MinorWitness, Move};
pub use orientation::{find_source_sink, SourceSinkOrientation};
pub use planarity::{find_delta_minor, genus_oracle, is_planar, odd_transverse_triple, RotationSystem};
pub use spatial::{delta_immersion, LinkPair, SpatialDiagram};
