//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use itertools::Itertools;
use minuscule::catalog::{build, instances};
use minuscule::dynkin::{numbered_names, DynkinDiagram};
use minuscule::poset::ColoredPoset;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Seed from `MINUSCULE_SEED`, else a fixed default.
pub fn seed() -> u64 {
    std::env::var("MINUSCULE_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED)
}

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed())
}

/// Edge labels `(theta_ab, theta_ba)` used by the generators.
pub const LABELS: [(i64, i64); 3] = [(-1, -1), (-1, -2), (-2, -1)];

/// Random connected diagram: a random tree plus occasional extra edges.
pub fn random_diagram(rng: &mut impl Rng, k: usize) -> DynkinDiagram {
    let mut edges = Vec::new();
    for b in 1..k {
        let a = rng.gen_range(0..b);
        let (ab, ba) = if rng.gen_bool(0.8) { LABELS[0] } else { *LABELS.choose(rng).unwrap() };
        edges.push((a, b, ab, ba));
    }
    for a in 0..k {
        for b in a + 1..k {
            if !edges.iter().any(|e| (e.0, e.1) == (a, b)) && rng.gen_bool(0.08) {
                edges.push((a, b, -1, -1));
            }
        }
    }
    DynkinDiagram::from_edges(numbered_names(k), &edges).unwrap()
}

/// Heap of a word: letter positions ordered so that earlier letters sit
/// higher, generated by pairs of equal or adjacent colors.
pub fn heap_of_word(d: &DynkinDiagram, word: &[usize]) -> ColoredPoset {
    let mut rel = Vec::new();
    for p in 0..word.len() {
        for q in p + 1..word.len() {
            if word[p] == word[q] || d.adjacent(word[p], word[q]) {
                rel.push((q, p));
            }
        }
    }
    ColoredPoset::from_relations(d.clone(), word.to_vec(), &rel).unwrap()
}

/// Random DAG poset with a random coloring.
pub fn random_dag(rng: &mut impl Rng, d: &DynkinDiagram, n: usize) -> ColoredPoset {
    let p = rng.gen_range(0.2..0.7);
    let rel: Vec<(usize, usize)> = (0..n).tuple_combinations().filter(|_| rng.gen_bool(p)).collect();
    let coloring = (0..n).map(|_| rng.gen_range(0..d.len())).collect();
    ColoredPoset::from_relations(d.clone(), coloring, &rel).unwrap()
}

/// Up-closure of a random subset.
pub fn random_filter(rng: &mut impl Rng, p: &ColoredPoset) -> Vec<usize> {
    let mut member = vec![false; p.len()];
    for x in 0..p.len() {
        if rng.gen_bool(0.3) {
            for y in p.principal_filter(x) {
                member[y] = true;
            }
        }
    }
    if !member.iter().any(|&m| m) {
        for y in p.maximal_elements() {
            member[y] = true;
        }
    }
    (0..p.len()).filter(|&x| member[x]).collect()
}

/// Small change to a poset: recolor an element, or drop or add a relation.
pub fn perturb(rng: &mut impl Rng, p: &ColoredPoset) -> ColoredPoset {
    let n = p.len();
    let mut coloring = p.coloring().to_vec();
    let mut rel: Vec<(usize, usize)> = p.covers().to_vec();
    match rng.gen_range(0..3) {
        0 => coloring[rng.gen_range(0..n)] = rng.gen_range(0..p.diagram().len()),
        1 if !rel.is_empty() => {
            let k = rng.gen_range(0..rel.len());
            rel.remove(k);
        }
        _ => {
            let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if x != y && !p.lt(y, x) {
                rel.push((x, y));
            }
        }
    }
    ColoredPoset::from_relations(p.diagram().clone(), coloring, &rel).unwrap()
}

/// Surjective version over the used colors.
pub fn surjective(p: &ColoredPoset) -> ColoredPoset {
    let all: Vec<usize> = (0..p.len()).collect();
    p.induced_surjective(&all).0
}

/// Catalog posets with at most `max_len` elements and `max_rank` colors.
pub fn small_catalog(max_rank: usize, max_len: usize) -> Vec<ColoredPoset> {
    instances(max_rank).into_iter().filter(|f| f.size() <= max_len).map(|f| build(f).unwrap()).collect()
}

/// One sample for the equivalence sweep: at most `max_len` elements and
/// `max_colors` colors, drawn from a mix of sources so both verdicts occur.
pub fn equivalence_sample(
    rng: &mut impl Rng,
    pool: &[ColoredPoset],
    max_len: usize,
    max_colors: usize,
) -> ColoredPoset {
    loop {
        let p = match rng.gen_range(0..4) {
            0 => {
                let k = rng.gen_range(1..=max_colors);
                let d = random_diagram(rng, k);
                let n = rng.gen_range(1..=max_len);
                random_dag(rng, &d, n)
            }
            1 => {
                let k = rng.gen_range(1..=max_colors);
                let d = random_diagram(rng, k);
                let len = rng.gen_range(1..=max_len);
                let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..k)).collect();
                heap_of_word(&d, &word)
            }
            2 => {
                let base = pool.choose(rng).unwrap();
                let f = random_filter(rng, base);
                base.induced(&f)
            }
            _ => {
                let base = pool.choose(rng).unwrap();
                let f = random_filter(rng, base);
                perturb(rng, &base.induced(&f))
            }
        };
        let p = surjective(&p);
        if !p.is_empty() && p.len() <= max_len && p.diagram().len() <= max_colors {
            return p;
        }
    }
}

/// Colored isomorphism by trying every element permutation and every
/// color permutation. Only for tiny posets.
pub fn brute_isomorphic(p: &ColoredPoset, q: &ColoredPoset) -> bool {
    let (n, k) = (p.len(), p.diagram().len());
    if n != q.len() || k != q.diagram().len() || p.covers().len() != q.covers().len() {
        return false;
    }
    for gamma in (0..k).permutations(k) {
        let theta_ok = (0..k).all(|a| (0..k).all(|b| p.diagram().theta(a, b) == q.diagram().theta(gamma[a], gamma[b])));
        if !theta_ok {
            continue;
        }
        for sigma in (0..n).permutations(n) {
            if (0..n).all(|x| gamma[p.color(x)] == q.color(sigma[x]))
                && p.covers().iter().all(|&(x, y)| q.is_cover(sigma[x], sigma[y]))
            {
                return true;
            }
        }
    }
    false
}

/// Number of order ideals, by splitting on an element `m`: ideals without
/// `m` avoid its up-set, ideals with `m` contain its down-set.
pub fn count_ideals(p: &ColoredPoset) -> u64 {
    fn go(p: &ColoredPoset, alive: Vec<usize>) -> u64 {
        let Some(&m) = alive.first() else { return 1 };
        let without: Vec<usize> = alive.iter().copied().filter(|&x| !p.le(m, x)).collect();
        let with: Vec<usize> = alive.iter().copied().filter(|&x| !p.le(x, m)).collect();
        go(p, without) + go(p, with)
    }
    go(p, (0..p.len()).collect())
}

/// Linear extensions by testing every permutation.
pub fn brute_linear_extensions(p: &ColoredPoset) -> usize {
    let n = p.len();
    (0..n)
        .permutations(n)
        .filter(|perm| {
            let mut pos = vec![0; n];
            for (i, &x) in perm.iter().enumerate() {
                pos[x] = i;
            }
            p.covers().iter().all(|&(x, y)| pos[x] < pos[y])
        })
        .count()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
