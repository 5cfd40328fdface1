use std::collections::BTreeSet;
use std::sync::OnceLock;

use framed4::chord::{census, diagrams_with_chords};
use framed4::circuits::{compatible, edge_disjoint, enumerate_rotating_loops, transverse_count};
use framed4::orientation::admits_source_sink;
use framed4::planarity::planar_rotation;
use framed4::spatial::{delta_immersion, diagram_of_chords, SpatialDiagram};
use framed4::text::{parse_spatial, write_spatial};
use framed4::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small() -> &'static [ChordDiagram] {
    static C: OnceLock<Vec<ChordDiagram>> = OnceLock::new();
    C.get_or_init(|| census(6))
}

fn subsets(labels: &[u32]) -> impl Iterator<Item = BTreeSet<u32>> + '_ {
    (0..1u32 << labels.len()).map(move |m| labels.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &x)| x).collect())
}

fn fuzzed_delta(seed: u64) -> SpatialDiagram {
    delta_immersion().fuzz(&mut ChaCha8Rng::seed_from_u64(seed), 12, 20)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smoothing_keeps_invariants(idx in 0usize..1034, v in 0u32..6, b in any::<bool>()) {
        let g = small()[idx].realize();
        prop_assume!(g.has_vertex(VertexId(v)));
        let c = if b { Choice::A } else { Choice::B };
        let h = g.smooth(VertexId(v), c).unwrap();
        prop_assert!(h.validate().is_empty());
        prop_assert_eq!(h.vertex_count() + 1, g.vertex_count());
        prop_assert!(admits_source_sink(&h));
        let w = is_minor(&g, &h).unwrap();
        prop_assert!(is_isomorphic(&w.replay(&g).unwrap(), &h));
    }

    #[test]
    fn rotation_and_relabeling_give_isomorphic_graphs(idx in 0usize..1034, by in 0usize..12) {
        let d = &small()[idx];
        let r = d.rotated(by);
        prop_assert_eq!(canonical_form(&d.realize()), canonical_form(&r.realize()));
        prop_assert_eq!(canonical_form(&d.realize()), canonical_form(&r.normalized().realize()));
    }

    #[test]
    fn canonical_form_ignores_labels_and_frame_symmetries(idx in 0usize..1034, seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = small()[idx].realize();
        let mut vs: Vec<u32> = (0..g.vertex_count() as u32).collect();
        vs.shuffle(&mut rng);
        let mut hs: Vec<u32> = (0..4 * g.vertex_count() as u32).collect();
        hs.shuffle(&mut rng);
        let mut h = g.relabel(|v| VertexId(vs[v.0 as usize] + 7), |e| HalfEdge(hs[e.0 as usize] * 2 + 1));
        for v in h.vertex_ids().collect::<Vec<_>>() {
            let q = h.quad(v).unwrap();
            let (e, rev) = (rng.gen_range(0..4), rng.gen_bool(0.5));
            let nq = std::array::from_fn(|k| if rev { q[(e + 4 - k) % 4] } else { q[(e + k) % 4] });
            h = h.with_quad(v, nq);
        }
        prop_assert!(h.validate().is_empty());
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        let iso = find_isomorphism(&g, &h).unwrap();
        for (a, b) in g.edges() {
            prop_assert_eq!(h.mate(iso.map(a)), iso.map(b));
        }
    }

    #[test]
    fn linking_is_symmetric_and_reverses_sign(seed in any::<u64>()) {
        let sd = fuzzed_delta(seed);
        let loops = enumerate_rotating_loops(sd.base());
        for a in &loops {
            for b in &loops {
                if a == b || !compatible(sd.base(), a, b) {
                    continue;
                }
                let lk = sd.linking_number(a, b).unwrap();
                prop_assert_eq!(lk, sd.linking_number(b, a).unwrap());
                prop_assert_eq!(-lk, sd.linking_number(&a.reversed(), b).unwrap());
            }
        }
    }

    #[test]
    fn spatial_text_round_trips(seed in any::<u64>()) {
        let sd = fuzzed_delta(seed);
        let text = write_spatial(&sd, "delta.f4g");
        let back = parse_spatial(&text, |_| Ok(delta())).unwrap();
        prop_assert_eq!(&back, &sd);
        prop_assert_eq!(write_spatial(&back, "delta.f4g"), text);
    }

    #[test]
    fn reidemeister_moves_keep_linking_numbers(seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut sd = delta_immersion();
        let lk = sd.delta_linking_numbers().unwrap();
        for _ in 0..8 {
            let faces = sd.faces();
            let f = &faces[rng.gen_range(0..faces.len())];
            let (d1, d2) = (f[rng.gen_range(0..f.len())], f[rng.gen_range(0..f.len())]);
            sd = if rng.gen_bool(0.5) {
                sd.reidemeister_one(d1, rng.gen_bool(0.5))
            } else {
                sd.reidemeister_two(d1, d2).unwrap_or(sd)
            };
            prop_assert!(sd.validate().is_empty());
            prop_assert_eq!(sd.delta_linking_numbers().unwrap(), lk);
        }
    }

    #[test]
    fn switching_an_inter_loop_crossing_moves_lk_by_one(seed in any::<u64>()) {
        let sd = fuzzed_delta(seed);
        for (a, b) in sd.delta_loop_pairs().unwrap() {
            let lk = sd.linking_number(&a, &b).unwrap();
            for (x, _) in sd.inter_crossings(&a, &b).unwrap() {
                let after = sd.crossing_switch(x).unwrap().linking_number(&a, &b).unwrap();
                prop_assert_eq!((after - lk).abs(), 1);
                prop_assert_eq!(sd.crossing_switch(x).unwrap().crossing_switch(x).unwrap(), sd.clone());
            }
        }
    }

    #[test]
    fn diagram_minors_follow_graph_minors(seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p5 = polygon_diagram(5).unwrap();
        let sd = diagram_of_chords(&p5, |_| rng.gen_bool(0.5));
        let w = find_delta_minor(sd.base()).unwrap().unwrap();
        let reduced = sd.replay(&w).unwrap();
        prop_assert!(reduced.validate().is_empty());
        prop_assert_eq!(reduced.base(), &w.replay(sd.base()).unwrap());
        prop_assert_eq!(reduced.delta_parity().unwrap(), 1);
    }
}

#[test]
fn every_layer_choice_on_the_chord_diagram_of_delta_is_odd() {
    let d = ChordDiagram::new(vec![0, 1, 2, 0, 1, 2]).unwrap();
    let n = diagram_of_chords(&d, |_| true).crossing_count();
    assert_eq!(n, 12);
    for mask in 0..1u32 << n {
        let sd = diagram_of_chords(&d, |x| mask >> x & 1 == 1);
        assert_eq!(sd.delta_parity().unwrap(), 1, "mask {mask:b}");
    }
}

#[test]
fn single_switches_keep_golden_parity() {
    let sd = delta_immersion();
    for x in 0..sd.crossing_count() {
        assert_eq!(sd.crossing_switch(x).unwrap().delta_parity().unwrap(), 1);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    assert_eq!(sd.random_switches(&mut rng, 100).delta_parity().unwrap(), 1);
    assert!(!sd.is_linkless_witnessed());
}

#[test]
fn minors_are_reflexive_and_transitive() {
    for d in census(4) {
        let g = d.realize();
        assert!(is_minor(&g, &g).unwrap().is_empty());
        for v in g.vertex_ids() {
            for c in Choice::BOTH {
                let h = g.smooth(v, c).unwrap();
                for u in h.vertex_ids() {
                    for c2 in Choice::BOTH {
                        let k = h.smooth(u, c2).unwrap();
                        assert!(is_minor(&h, &k).is_some());
                        assert!(is_minor(&g, &k).is_some(), "{d}");
                    }
                }
            }
        }
    }
}

#[test]
fn subdiagrams_realize_minors() {
    for d in census(4) {
        let labels: Vec<u32> = d.labels().into_iter().collect();
        for s in subsets(&labels) {
            let sub = d.subdiagram(&s).unwrap();
            assert!(is_minor(&d.realize(), &sub.realize()).is_some(), "{d} {s:?}");
        }
        assert_eq!(d.subdiagram(&d.labels()).unwrap(), d);
    }
}

#[test]
fn odd_polygons_are_polygon_diagrams() {
    let mut checked = 0;
    for d in small() {
        let Some(s) = find_odd_polygon(d) else {
            assert!(d.interlacement().is_bipartite());
            continue;
        };
        let sub = d.subdiagram(&s).unwrap();
        assert_eq!(sub.canonical(), polygon_diagram(s.len()).unwrap().canonical(), "{d}");
        checked += 1;
    }
    assert_eq!(checked, 540);
}

#[test]
fn odd_polygon_is_a_shortest_odd_cycle() {
    for n in 0..=5 {
        for d in diagrams_with_chords(n) {
            if let Some(s) = find_odd_polygon(&d) {
                let labels: Vec<u32> = d.labels().into_iter().collect();
                let shorter = subsets(&labels)
                    .filter(|t| t.len() % 2 == 1 && t.len() >= 3 && t.len() < s.len())
                    .any(|t| d.subdiagram(&t).unwrap().canonical() == polygon_diagram(t.len()).unwrap().canonical());
                assert!(!shorter, "{d}");
            }
        }
    }
}

#[test]
fn planarity_is_closed_under_smoothing() {
    for d in small() {
        let g = d.realize();
        if !is_planar(&g).unwrap() {
            continue;
        }
        for v in g.vertex_ids() {
            for c in Choice::BOTH {
                assert!(is_planar(&g.smooth(v, c).unwrap()).unwrap(), "{d}");
            }
        }
    }
}

#[test]
fn planar_graphs_have_flat_linkless_diagrams() {
    for d in census(5) {
        let g = d.realize();
        if !is_planar(&g).unwrap() {
            assert!(planar_rotation(&g).is_none());
            continue;
        }
        let sd = SpatialDiagram::flat(&g, &planar_rotation(&g).unwrap());
        assert!(sd.validate().is_empty(), "{d}");
        assert!(sd.is_linkless_witnessed());
        assert_eq!(sd.find_odd_linking_pair().unwrap(), None);
    }
    let two = figure_eight().disjoint_union(&ChordDiagram::new(vec![0, 1, 1, 0]).unwrap().realize());
    let sd = SpatialDiagram::flat(&two, &planar_rotation(&two).unwrap());
    assert!(sd.validate().is_empty());
    assert!(sd.is_linkless_witnessed());
}

#[test]
fn non_planar_graphs_carry_transverse_triples() {
    for d in census(5) {
        let g = d.realize();
        let triple = odd_transverse_triple(&g);
        if is_planar(&g).unwrap() {
            continue;
        }
        let t = triple.unwrap_or_else(|| panic!("no certificate for {d}"));
        for i in 0..3 {
            t[i].check(&g).unwrap();
            for j in i + 1..3 {
                assert!(edge_disjoint(&g, &t[i], &t[j]));
                assert_eq!(transverse_count(&g, &t[i], &t[j]).unwrap() % 2, 1, "{d}");
            }
        }
    }
}
