use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use framed4::census::{run_census, summarize};
use framed4::circuits::{edge_disjoint, transverse_count};
use framed4::planarity::delta_loop;
use framed4::spatial::{delta_immersion, diagram_of_chords, Curve, SpatialDiagram, DELTA_PAIRS};
use framed4::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let t = Instant::now();
    let r = f()?;
    let dt = t.elapsed();
    check(dt < limit, format!("took {dt:?}, limit {limit:?}"))?;
    Ok(format!("{r} ({dt:.2?})"))
}

fn delta_battery() -> Outcome {
    let d = delta();
    check(!is_planar(&d).map_err(|e| e.to_string())?, "delta reported planar")?;
    let g = genus_oracle(&d);
    check(g >= 1, format!("genus {g}"))?;
    let w = find_delta_minor(&d).map_err(|e| e.to_string())?.ok_or("no witness")?;
    check(w.smoothings().count() == 0, format!("non-trivial witness {w}"))?;
    check(is_isomorphic(&w.replay(&d).map_err(|e| e.to_string())?, &d), "witness does not replay to delta")?;
    let triple = odd_transverse_triple(&d).ok_or("no transverse triple")?;
    let want = [
        delta_loop(&[DeltaEdge::A, DeltaEdge::APrime]),
        delta_loop(&[DeltaEdge::B, DeltaEdge::BPrime]),
        delta_loop(&[DeltaEdge::C, DeltaEdge::CPrime]),
    ];
    check(triple == want, format!("triple {triple:?}"))?;
    for i in 0..3 {
        for j in i + 1..3 {
            check(edge_disjoint(&d, &triple[i], &triple[j]), "loops share an edge")?;
            let t = transverse_count(&d, &triple[i], &triple[j]).map_err(|e| e.to_string())?;
            check(t == 1, format!("transverse count {t}"))?;
        }
    }
    Ok(format!("genus {g}, triple (a,a'),(b,b'),(c,c')"))
}

fn equivalence_census(rows: &[framed4::census::CensusRow]) -> Outcome {
    let s = summarize(rows);
    check(s.diagrams == 1034, format!("{} diagrams", s.diagrams))?;
    check(s.disagreements == 0, format!("{} disagreements, first {:?}", s.disagreements, s.first_disagreement))?;
    Ok(format!("{} diagrams, {} non-planar, 0 disagreements", s.diagrams, s.non_planar))
}

fn z_family() -> Outcome {
    let target = canonical_form(&delta());
    for n in 1..=4 {
        let z = z_odd(n).map_err(|e| e.to_string())?;
        check(!is_planar(&z).map_err(|e| e.to_string())?, format!("Z_{} planar", 2 * n + 1))?;
        let w = find_delta_minor(&z).map_err(|e| e.to_string())?.ok_or(format!("no witness for n={n}"))?;
        let m = w.replay(&z).map_err(|e| e.to_string())?;
        check(canonical_form(&m) == target, format!("n={n}: witness replays to a non-delta graph"))?;
    }
    Ok("n = 1..4".into())
}

fn source_sink_counts(rows: &[framed4::census::CensusRow]) -> Outcome {
    let bad: Vec<_> = rows.iter().filter(|r| r.source_sink_count != 2).collect();
    check(bad.is_empty(), format!("{} graphs without exactly two structures, e.g. {}", bad.len(), bad.first().map(|r| r.diagram.to_string()).unwrap_or_default()))?;
    Ok(format!("{} graphs, 2 structures each", rows.len()))
}

fn round_trips(rows: &[framed4::census::CensusRow]) -> Outcome {
    let bad = rows.iter().filter(|r| !r.round_trip).count();
    check(bad == 0, format!("{bad} failures"))?;
    let sd = delta_immersion();
    let text = text::write_spatial(&sd, "delta.f4g");
    let back = text::parse_spatial(&text, |_| Ok(delta())).map_err(|e| e.to_string())?;
    check(back == sd && text::write_spatial(&back, "delta.f4g") == text, "spatial diagram round trip")?;
    Ok(format!("{} graphs and the golden diagram", rows.len()))
}

fn parity_of(lk: [i64; 4]) -> [i64; 4] {
    lk.map(|l| l.rem_euclid(2))
}

fn linking_parity() -> Outcome {
    let golden = delta_immersion();
    let lk = golden.delta_linking_numbers().map_err(|e| e.to_string())?;
    check(parity_of(lk) == [0, 1, 1, 1], format!("golden linking numbers {lk:?}"))?;
    check(lk[0] == 0, format!("lk(F1,F2) = {}", lk[0]))?;
    let mut sequences = 0;
    for seed in 0..10u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..1000 {
            let start = if rng.gen_bool(0.5) { golden.clone() } else { golden.fuzz(&mut rng, 6, 12) };
            let len = rng.gen_range(1..40);
            let sd = start.random_switches(&mut rng, len);
            let p = sd.delta_parity().map_err(|e| e.to_string())?;
            check(p == 1, format!("seed {seed}: parity {p}"))?;
            sequences += 1;
        }
    }
    Ok(format!("golden lk {lk:?}, parity 1 over {sequences} switch sequences"))
}

fn edge_label(c: Curve) -> Option<DeltaEdge> {
    DeltaEdge::ALL.into_iter().find(|e| Curve::Edge(e.half_edges().0.min(e.half_edges().1)) == c)
}

/// Summands whose two loops separate edge `x` from edge `y`.
fn separating(x: DeltaEdge, y: DeltaEdge) -> usize {
    DELTA_PAIRS.iter().filter(|(_, a, b)| (a.contains(&x) && b.contains(&y)) || (a.contains(&y) && b.contains(&x))).count()
}

fn case_of(x: DeltaEdge, y: DeltaEdge) -> usize {
    if x == y {
        0
    } else if x.letter() == y.letter() {
        1
    } else {
        2
    }
}

fn switch_case_analysis() -> Outcome {
    let expected = [0, 4, 2];
    for x in DeltaEdge::ALL {
        for y in DeltaEdge::ALL {
            let n = separating(x, y);
            check(n == expected[case_of(x, y)], format!("{} / {}: {n} summands separate", x.name(), y.name()))?;
        }
    }
    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let sd: SpatialDiagram = delta_immersion().fuzz(&mut rng, 10, 24);
        let before = parity_of(sd.delta_linking_numbers().map_err(|e| e.to_string())?);
        for (x, (o, u)) in sd.strands().into_iter().enumerate() {
            let (o, u) = (o.ok_or("missing strand")?, u.ok_or("missing strand")?);
            let (ex, ey) = (edge_label(o.curve).ok_or("unknown curve")?, edge_label(u.curve).ok_or("unknown curve")?);
            let after = parity_of(sd.crossing_switch(x).map_err(|e| e.to_string())?.delta_linking_numbers().map_err(|e| e.to_string())?);
            let flipped = (0..4).filter(|&k| before[k] != after[k]).count();
            let case = case_of(ex, ey);
            check(flipped == expected[case], format!("switch on {} / {} flipped {flipped}", ex.name(), ey.name()))?;
            *seen.entry((case, flipped)).or_default() += 1;
        }
    }
    check(seen.len() == 3, format!("not every case occurred: {seen:?}"))?;
    let names = ["same edge", "primed partners", "other pairs"];
    let counts: Vec<String> = seen.iter().map(|((c, f), n)| format!("{} flip {f} ({n} switches)", names[*c])).collect();
    Ok(counts.join(", "))
}

fn odd_pair_everywhere(label: &str, base: SpatialDiagram, rng: &mut ChaCha8Rng, count: usize) -> Result<usize, String> {
    for k in 0..count {
        let sd = if k == 0 { base.clone() } else { base.fuzz(rng, 12, base.crossing_count() + 16) };
        let pair = sd.find_odd_linking_pair().map_err(|e| format!("{label}: {e}"))?.ok_or(format!("{label}: no pair"))?;
        let lk = sd.linking_number(&pair.first, &pair.second).map_err(|e| e.to_string())?;
        check(lk == pair.linking_number && lk.rem_euclid(2) == 1, format!("{label}: recomputed lk {lk}"))?;
    }
    Ok(count)
}

fn odd_linking_certificate() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let n1 = odd_pair_everywhere("delta", delta_immersion(), &mut rng, 300)?;
    let p5 = polygon_diagram(5).map_err(|e| e.to_string())?;
    let mut n2 = 0;
    for k in 0..30 {
        let layers: Vec<bool> = (0..64).map(|_| rng.gen_bool(0.5)).collect();
        let z = diagram_of_chords(&p5, |x| layers[x % 64]);
        check(z.validate().is_empty(), format!("z_odd(2) diagram {k} invalid"))?;
        n2 += odd_pair_everywhere("z_odd(2)", z, &mut rng, 10)?;
    }
    Ok(format!("{n1} diagrams of delta, {n2} of z_odd(2)"))
}

fn main() {
    let rows_start = Instant::now();
    let rows = run_census(6);
    let rows_time = rows_start.elapsed();
    let results: Vec<(&str, Outcome)> = vec![
        ("1 delta battery", timed(Duration::from_secs(1), delta_battery)),
        ("2 equivalence census", equivalence_census(&rows)),
        ("3 z family", timed(Duration::from_secs(10), z_family)),
        ("4 source-sink counting", source_sink_counts(&rows)),
        ("5 round trips", round_trips(&rows)),
        ("6 linking parity", timed(Duration::from_secs(10), linking_parity)),
        ("7 switch case analysis", switch_case_analysis()),
        ("8 odd linking pair", odd_linking_certificate()),
    ];
    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(msg) => println!("PASS criterion {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg}");
            }
        }
    }
    println!("census of {} diagrams built in {rows_time:.2?}", rows.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
