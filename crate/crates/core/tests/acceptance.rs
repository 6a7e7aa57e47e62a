//! Acceptance run: one PASS/FAIL line per criterion with its time limit.
//! Runs without the test harness; exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use minuscule::axioms::{is_d_complete, is_dominant_minuscule_heap, is_minuscule, Property};
use minuscule::catalog::{build, family_for_shape, indexed, instances, minuscule_indices, top_tree_y, FamilyId};
use minuscule::classify::classify;
use minuscule::coroots::{heap_to_word, highest_coroot, psi, Coroot};
use minuscule::dynkin::{finite_type_template, TypeLetter};
use minuscule::extension::{run_extension, BlockReason, ExtensionVerdict};
use minuscule::heapwindow::{cyclic_chain_window, verify_window, PeriodicWindow};
use minuscule::poset::{colored_isomorphism, ColoredPoset, YShape};
use minuscule::representation::{splits, verify_relations, RelationKind};
use rand::seq::SliceRandom;
use rand::Rng;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    /// `None` means no time limit.
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

const CRITERIA: [Criterion; 7] = [
    Criterion { id: 1, name: "catalog soundness", limit: Some(Duration::from_secs(5)), run: catalog_soundness },
    Criterion {
        id: 2,
        name: "extension reproduction",
        limit: Some(Duration::from_secs(5)),
        run: extension_reproduction,
    },
    Criterion { id: 3, name: "d-complete iff heap", limit: Some(Duration::from_secs(60)), run: equivalence_sweep },
    Criterion {
        id: 4,
        name: "representation relations",
        limit: Some(Duration::from_secs(30)),
        run: representation_relations,
    },
    Criterion { id: 5, name: "coroot realization", limit: Some(Duration::from_secs(10)), run: coroot_realization },
    Criterion { id: 6, name: "duality and decomposition", limit: None, run: duality_and_decomposition },
    Criterion { id: 7, name: "window demonstrator", limit: None, run: window_demonstrator },
];

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn catalog_soundness() -> Outcome {
    let families = instances(8);
    for &f in &families {
        let p = build(f).map_err(|e| format!("{f}: {e}"))?;
        let v = is_minuscule(&p);
        ensure(v.holds, || format!("{f} fails {:?}", v.failures().map(|r| r.property).collect::<Vec<_>>()))?;
    }
    for f in [FamilyId::E6, FamilyId::E7, FamilyId::DSpin(7), FamilyId::DSpin(8)] {
        ensure(families.contains(&f), || format!("{f} missing from the rank 8 catalog"))?;
    }
    Ok(format!("{} family instances", families.len()))
}

fn extension_reproduction() -> Outcome {
    let mut shapes = Vec::new();
    for j in 1..=4 {
        for k in j..=4 {
            shapes.push(YShape { i: 1, j, k });
        }
    }
    shapes.extend((1..=6).map(|i| YShape { i, j: 1, k: 1 }));
    shapes.extend((1..=5).map(|k| YShape { i: 2, j: 1, k }));
    shapes.push(YShape { i: 3, j: 1, k: 2 });
    shapes.push(YShape { i: 4, j: 1, k: 2 });
    shapes.sort_by_key(|s| (s.i, s.j, s.k));
    shapes.dedup();
    for &s in &shapes {
        let out = run_extension(&top_tree_y(s.i, s.j, s.k).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(out.verdict == ExtensionVerdict::Minuscule, || format!("{s:?} blocked: {:?}", out.reasons))?;
        let f = family_for_shape(s).ok_or_else(|| format!("{s:?} has no family"))?;
        let expected = build(f).map_err(|e| e.to_string())?;
        ensure(colored_isomorphism(&out.poset, &expected).is_some(), || format!("{s:?} is not {f}"))?;
    }
    // blocked shapes: census 3 at the splitting element's color, and the
    // assessment at which the process stops
    let blocked =
        [(YShape { i: 2, j: 2, k: 2 }, 3), (YShape { i: 3, j: 1, k: 3 }, 5), (YShape { i: 5, j: 1, k: 2 }, 9)];
    for (s, steps) in blocked {
        let seed = top_tree_y(s.i, s.j, s.k).map_err(|e| e.to_string())?;
        let splitting = seed.color(s.i - 1);
        let out = run_extension(&seed).map_err(|e| e.to_string())?;
        ensure(out.verdict == ExtensionVerdict::Blocked, || format!("{s:?} not blocked"))?;
        ensure(out.reasons.contains(&BlockReason::CensusExceeded { color: splitting, census: 3 }), || {
            format!("{s:?}: reasons {:?}, splitting color {splitting}", out.reasons)
        })?;
        ensure(out.assessments == steps, || {
            format!("{s:?}: stopped at assessment {}, expected {steps}", out.assessments)
        })?;
    }
    Ok(format!("{} minuscule shapes, 3 blocked shapes", shapes.len()))
}

fn equivalence_sweep() -> Outcome {
    const SAMPLES: usize = 10_000;
    let mut rng = common::rng();
    let pool = common::small_catalog(5, 10);
    let (mut yes, mut disagreements) = (0, Vec::new());
    for _ in 0..SAMPLES {
        let p = common::equivalence_sample(&mut rng, &pool, 8, 5);
        let d = is_d_complete(&p).holds;
        yes += d as usize;
        if d != is_dominant_minuscule_heap(&p).holds {
            disagreements.push(minuscule::io::poset_to_json(&p));
        }
    }
    ensure(disagreements.is_empty(), || format!("{} disagreements, first: {}", disagreements.len(), disagreements[0]))?;
    // a sweep with only one verdict would not test anything
    ensure(yes > 0 && yes < SAMPLES, || format!("{yes} of {SAMPLES} d-complete"))?;
    Ok(format!("{SAMPLES} posets, seed {:#x}, {yes} d-complete, 0 disagreements", common::seed()))
}

fn representation_relations() -> Outcome {
    let mut checked = 0;
    for f in instances(8) {
        let p = build(f).map_err(|e| e.to_string())?;
        if common::count_ideals(&p) > 60 {
            continue;
        }
        let r = verify_relations(&p).map_err(|e| e.to_string())?;
        for kind in RelationKind::ALL {
            ensure(r.passed(kind), || format!("{f}: {kind:?} fails"))?;
        }
        ensure(r.eigenvalue_violation.is_none(), || format!("{f}: {:?}", r.eigenvalue_violation))?;
        ensure(r.holds, || format!("{f}: relations fail"))?;
        checked += 1;
    }
    for n in 1..=6u64 {
        for j in 1..=n {
            let p = indexed(TypeLetter::A, n as usize, j as usize).map_err(|e| e.to_string())?;
            let (got, oracle, expected) =
                (splits(&p).len() as u64, common::count_ideals(&p), common::binomial(n + 1, j));
            ensure(got == expected && oracle == expected, || {
                format!("A{n}({j}): {got} splits, {oracle} ideals, expected {expected}")
            })?;
        }
    }
    let e7 = build(FamilyId::E7).map_err(|e| e.to_string())?;
    let (got, oracle) = (splits(&e7).len(), common::count_ideals(&e7));
    ensure(got == 56 && oracle == 56, || format!("E7: {got} splits, {oracle} ideals"))?;
    Ok(format!("{checked} instances with at most 60 splits, dimensions for A_n (n <= 6) and E7"))
}

fn coroot_realization() -> Outcome {
    // anchor: A4 with top color 2, at the minimal element
    let p = indexed(TypeLetter::A, 4, 2).map_err(|e| e.to_string())?;
    let x = p.minimal_elements()[0];
    let word = heap_to_word(&p, x).display(p.diagram());
    ensure(word == "s3 s4 s2 s3 s1 s2", || format!("word {word}"))?;
    let r = psi(&p).map_err(|e| e.to_string())?;
    ensure(r.images[x] == Coroot(vec![1, 1, 1, 1]), || format!("image {}", r.images[x]))?;

    let indices = minuscule_indices(7);
    for &(letter, n, j) in &indices {
        let p = indexed(letter, n, j).map_err(|e| e.to_string())?;
        let r = psi(&p).map_err(|e| format!("{letter}{n}({j}): {e}"))?;
        // recheck the realization from its parts
        ensure(r.top_color == j - 1 && r.filter.len() == p.len(), || format!("{letter}{n}({j}): filter size"))?;
        for x in 0..p.len() {
            let k = r
                .filter
                .iter()
                .position(|c| *c == r.images[x])
                .ok_or_else(|| format!("{letter}{n}({j}): image outside filter"))?;
            ensure(r.filter_colors[k] == p.color(x), || format!("{letter}{n}({j}): color of {x}"))?;
            for y in 0..p.len() {
                ensure(p.le(x, y) == r.images[y].le(&r.images[x]), || format!("{letter}{n}({j}): order at {x},{y}"))?;
            }
        }
        ensure(is_minuscule(&r.poset).holds, || format!("{letter}{n}({j}): coroot filter not minuscule"))?;
        ensure(colored_isomorphism(&r.poset, &p.order_dual()).is_some(), || format!("{letter}{n}({j}): not dual"))?;
    }

    let mut heights = 0;
    for letter in TypeLetter::ALL {
        for n in 1..=8i64 {
            let Some(d) = finite_type_template(letter, n as usize) else { continue };
            let expected = match letter {
                TypeLetter::A => n,
                TypeLetter::B | TypeLetter::C => 2 * n - 1,
                TypeLetter::D => 2 * n - 3,
                TypeLetter::E => [11, 17][n as usize - 6],
            };
            let h = highest_coroot(&d).map_err(|e| e.to_string())?.height();
            ensure(h == expected, || format!("{letter}{n}: height {h}, expected {expected}"))?;
            heights += 1;
        }
    }
    Ok(format!("anchor word and coroot, {} indices, {heights} heights", indices.len()))
}

fn canonical_multiset(fs: impl IntoIterator<Item = FamilyId>) -> BTreeMap<FamilyId, usize> {
    let mut m = BTreeMap::new();
    for f in fs {
        *m.entry(f.canonical()).or_insert(0) += 1;
    }
    m
}

fn duality_and_decomposition() -> Outcome {
    let families = instances(8);
    for &f in &families {
        let dual = build(f).map_err(|e| e.to_string())?.order_dual();
        ensure(is_minuscule(&dual).holds, || format!("dual of {f} is not minuscule"))?;
    }
    const UNIONS: usize = 300;
    let small: Vec<FamilyId> = instances(6);
    let mut rng = common::rng();
    for _ in 0..UNIONS {
        let count = rng.gen_range(1..=3);
        let picked: Vec<FamilyId> = (0..count).map(|_| *small.choose(&mut rng).unwrap()).collect();
        let parts: Vec<ColoredPoset> = picked.iter().map(|&f| build(f).unwrap()).collect();
        let refs: Vec<&ColoredPoset> = parts.iter().collect();
        let union = ColoredPoset::disjoint_union(&refs);
        let c = classify(&union);
        ensure(c.minuscule, || format!("union of {picked:?} not minuscule"))?;
        let (got, want) = (canonical_multiset(c.families()), canonical_multiset(picked.iter().copied()));
        ensure(got == want, || format!("union of {picked:?}: got {got:?}"))?;
    }
    Ok(format!("{} duals, {UNIONS} unions of up to 3 instances", families.len()))
}

fn window_demonstrator() -> Outcome {
    for n in 3..=6 {
        let v = verify_window(&cyclic_chain_window(n, 3).map_err(|e| e.to_string())?);
        ensure(v.holds, || format!("cyclic n={n}: {:?}", v.failures().map(|r| r.property).collect::<Vec<_>>()))?;
        ensure(v.reports.iter().any(|r| r.property == Property::G3Window), || "G3-window not checked".into())?;
    }
    let families = instances(8);
    for &f in &families {
        let w = PeriodicWindow::from_finite(build(f).map_err(|e| e.to_string())?);
        let v = verify_window(&w);
        ensure(v.failures().any(|r| r.property == Property::G3Window), || format!("{f} passes G3-window"))?;
    }
    Ok(format!("cyclic windows n = 3..6 over 3 periods, {} finite windows", families.len()))
}

fn main() {
    let mut failed = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let limit = c.limit.map_or("exact".to_string(), |l| format!("limit {} s", l.as_secs()));
        let late = c.limit.is_some_and(|l| elapsed > l);
        let line = match (&outcome, late) {
            (Ok(detail), false) => {
                format!("PASS {}: {} ({detail}; {:.2} s, {limit})", c.id, c.name, elapsed.as_secs_f64())
            }
            (Ok(detail), true) => {
                format!("FAIL {}: {} ({detail}; took {:.2} s, {limit})", c.id, c.name, elapsed.as_secs_f64())
            }
            (Err(why), _) => format!("FAIL {}: {} ({why}; {:.2} s, {limit})", c.id, c.name, elapsed.as_secs_f64()),
        };
        failed += line.starts_with("FAIL") as usize;
        println!("{line}");
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", CRITERIA.len());
        std::process::exit(1);
    }
}
