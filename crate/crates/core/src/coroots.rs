//! Coroots of finite type diagrams and the realization of a connected
//! finite minuscule poset as a filter of positive coroots.
//!
//! Coroots are integer vectors over the simple coroots, indexed by color.
//! Weyl group elements are words of simple reflections; `s_a s_b` applies
//! `s_b` first.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::axioms::is_minuscule;
use crate::dynkin::{DynkinDiagram, TypeLetter};
use crate::poset::{colored_isomorphism, transitive_reduction, ColoredPoset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorootError {
    #[error("diagram is not of a recognized finite type")]
    NotFiniteType,
    #[error("color {0} is not in the diagram")]
    BadColor(usize),
    #[error("word is not reduced: letter {position} produces {produced}")]
    NotReduced { position: usize, produced: Coroot },
    #[error("input is not a connected finite minuscule poset")]
    NotMinusculeInput,
    #[error("realization check failed: {0}")]
    RealizationFailed(String),
}

/// Which index of the pairing table multiplies the coordinates in a
/// simple reflection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReflectionConvention {
    /// `s_i(b) = b - (sum_j theta[i][j] b_j) e_i`.
    Row,
    /// `s_i(b) = b - (sum_j theta[j][i] b_j) e_i`.
    Column,
}

/// The convention used throughout. The A4 word anchor cannot tell the two
/// apart; B2 can, and only `Row` realizes it.
pub const REFLECTION_CONVENTION: ReflectionConvention = ReflectionConvention::Row;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coroot(pub Vec<i64>);

impl Coroot {
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Coroot(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&c| c <= 0) && self.0.iter().any(|&c| c < 0)
    }

    /// `self <= other`: the difference is a non-negative combination.
    pub fn le(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for Coroot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Coroot {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

pub fn simple_reflection(d: &DynkinDiagram, i: usize, beta: &Coroot) -> Coroot {
    simple_reflection_with(REFLECTION_CONVENTION, d, i, beta)
}

pub fn simple_reflection_with(conv: ReflectionConvention, d: &DynkinDiagram, i: usize, beta: &Coroot) -> Coroot {
    let pairing: i64 = (0..d.len())
        .map(|j| {
            let t = match conv {
                ReflectionConvention::Row => d.theta(i, j),
                ReflectionConvention::Column => d.theta(j, i),
            };
            t * beta.0[j]
        })
        .sum();
    let mut out = beta.clone();
    out.0[i] -= pairing;
    out
}

/// Ascending height, then descending coordinates.
fn sort_coroots(v: &mut [Coroot]) {
    v.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.cmp(a)));
}

fn finite_letter(d: &DynkinDiagram) -> Result<(TypeLetter, usize), CorootError> {
    match d.recognize_finite_type() {
        Ok(Some(t)) => Ok((t.letter, t.rank)),
        _ => Err(CorootError::NotFiniteType),
    }
}

/// Number of positive roots of each recognized type.
pub fn positive_root_count(letter: TypeLetter, n: usize) -> usize {
    match letter {
        TypeLetter::A => n * (n + 1) / 2,
        TypeLetter::B | TypeLetter::C => n * n,
        TypeLetter::D => n * (n - 1),
        TypeLetter::E => match n {
            6 => 36,
            7 => 63,
            _ => 120,
        },
    }
}

pub fn positive_coroots(d: &DynkinDiagram) -> Result<Vec<Coroot>, CorootError> {
    positive_coroots_with(REFLECTION_CONVENTION, d)
}

fn positive_coroots_with(conv: ReflectionConvention, d: &DynkinDiagram) -> Result<Vec<Coroot>, CorootError> {
    let (letter, n) = finite_letter(d)?;
    let bound = positive_root_count(letter, n);
    let mut seen: HashSet<Coroot> = HashSet::new();
    let mut queue: VecDeque<Coroot> = (0..n).map(|i| Coroot::simple(n, i)).collect();
    seen.extend(queue.iter().cloned());
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            let next = simple_reflection_with(conv, d, i, &beta);
            if next.is_positive() && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        assert!(seen.len() <= bound, "closure exceeded {bound} positive coroots");
    }
    let mut out: Vec<Coroot> = seen.into_iter().collect();
    sort_coroots(&mut out);
    Ok(out)
}

pub fn highest_coroot(d: &DynkinDiagram) -> Result<Coroot, CorootError> {
    Ok(positive_coroots(d)?.pop().expect("nonempty diagram"))
}

/// Positive coroots at or above the simple coroot of `j`, in ascending
/// height.
pub fn coroot_filter(d: &DynkinDiagram, j: usize) -> Result<Vec<Coroot>, CorootError> {
    coroot_filter_with(REFLECTION_CONVENTION, d, j)
}

fn coroot_filter_with(conv: ReflectionConvention, d: &DynkinDiagram, j: usize) -> Result<Vec<Coroot>, CorootError> {
    if j >= d.len() {
        return Err(CorootError::BadColor(j));
    }
    let simple = Coroot::simple(d.len(), j);
    Ok(positive_coroots_with(conv, d)?.into_iter().filter(|b| simple.le(b)).collect())
}

/// A word of simple reflections, leftmost letter first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ReducedWord(pub Vec<usize>);

impl ReducedWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Applies the word to `beta`, rightmost letter first.
    pub fn act(&self, d: &DynkinDiagram, beta: &Coroot) -> Coroot {
        self.act_with(REFLECTION_CONVENTION, d, beta)
    }

    fn act_with(&self, conv: ReflectionConvention, d: &DynkinDiagram, beta: &Coroot) -> Coroot {
        self.0.iter().rev().fold(beta.clone(), |b, &i| simple_reflection_with(conv, d, i, &b))
    }

    /// Renders with node numbers, e.g. `s3 s4 s2`.
    pub fn display(&self, d: &DynkinDiagram) -> String {
        self.0.iter().map(|&i| format!("s{}", d.name(i))).collect::<Vec<_>>().join(" ")
    }
}

/// Word for the principal filter of `x`: its elements listed bottom-up,
/// each step taking the minimal remaining element of largest color.
pub fn heap_to_word(p: &ColoredPoset, x: usize) -> ReducedWord {
    let mut remaining: Vec<usize> = p.principal_filter(x);
    let mut word = Vec::with_capacity(remaining.len());
    while !remaining.is_empty() {
        let pick = *remaining
            .iter()
            .filter(|&&u| p.lower_covers(u).iter().all(|v| !remaining.contains(v)))
            .max_by_key(|&&u| (p.color(u), std::cmp::Reverse(u)))
            .expect("finite posets have minimal elements");
        remaining.retain(|&u| u != pick);
        word.push(p.color(pick));
    }
    ReducedWord(word)
}

/// For `w = s_{i_f} ... s_{i_1}`, the coroots
/// `a_{i_1}, s_{i_1}(a_{i_2}), ..., s_{i_1} ... s_{i_{f-1}}(a_{i_f})`.
pub fn inversion_sequence(d: &DynkinDiagram, word: &ReducedWord) -> Result<Vec<Coroot>, CorootError> {
    inversion_sequence_with(REFLECTION_CONVENTION, d, word)
}

fn inversion_sequence_with(
    conv: ReflectionConvention,
    d: &DynkinDiagram,
    word: &ReducedWord,
) -> Result<Vec<Coroot>, CorootError> {
    let n = d.len();
    if let Some(&bad) = word.0.iter().find(|&&i| i >= n) {
        return Err(CorootError::BadColor(bad));
    }
    let letters: Vec<usize> = word.0.iter().rev().copied().collect();
    let mut out: Vec<Coroot> = Vec::with_capacity(letters.len());
    let mut seen = HashSet::new();
    for (k, &i) in letters.iter().enumerate() {
        let beta = letters[..k].iter().rev().fold(Coroot::simple(n, i), |b, &l| simple_reflection_with(conv, d, l, &b));
        if !beta.is_positive() || !seen.insert(beta.clone()) {
            return Err(CorootError::NotReduced { position: k + 1, produced: beta });
        }
        out.push(beta);
    }
    Ok(out)
}

/// The realization of a connected finite minuscule poset.
#[derive(Debug, Clone)]
pub struct Realization {
    /// Color of the maximal element.
    pub top_color: usize,
    /// Word of each element's principal filter.
    pub words: Vec<ReducedWord>,
    /// Image of each element.
    pub images: Vec<Coroot>,
    /// The filter above the top color's simple coroot, ascending height.
    pub filter: Vec<Coroot>,
    /// Color induced on each filter entry.
    pub filter_colors: Vec<usize>,
    /// The filter as a colored poset, same indexing as `filter`.
    pub poset: ColoredPoset,
}

/// Sends each element to the last coroot of its filter's inversion sequence
/// and checks that this is a color-preserving dual isomorphism onto the
/// coroot filter of the top color.
pub fn psi(p: &ColoredPoset) -> Result<Realization, CorootError> {
    psi_with(REFLECTION_CONVENTION, p)
}

/// [`psi`] under an explicit reflection convention.
pub fn psi_with(conv: ReflectionConvention, p: &ColoredPoset) -> Result<Realization, CorootError> {
    let d = p.diagram();
    finite_letter(d)?;
    let maxima = p.maximal_elements();
    if !p.is_connected() || maxima.len() != 1 || !is_minuscule(p).holds {
        return Err(CorootError::NotMinusculeInput);
    }
    let j = p.color(maxima[0]);
    let fail = |msg: String| Err(CorootError::RealizationFailed(msg));
    let words: Vec<ReducedWord> = (0..p.len()).map(|x| heap_to_word(p, x)).collect();
    let mut images = Vec::with_capacity(p.len());
    for (x, w) in words.iter().enumerate() {
        let seq = match inversion_sequence_with(conv, d, w) {
            Ok(seq) => seq,
            Err(e) => return fail(format!("word of element {x}: {e}")),
        };
        images.push(seq.last().cloned().expect("filters are nonempty"));
    }
    let filter = coroot_filter_with(conv, d, j)?;
    let mut image_set: Vec<Coroot> = images.clone();
    image_set.sort();
    image_set.dedup();
    if image_set.len() != p.len() {
        return fail("two elements share an image".into());
    }
    let mut sorted_filter = filter.clone();
    sorted_filter.sort();
    if image_set != sorted_filter {
        return fail(format!("image has {} coroots, filter has {}", image_set.len(), filter.len()));
    }
    for x in 0..p.len() {
        for y in 0..p.len() {
            if p.le(x, y) != images[y].le(&images[x]) {
                return fail(format!("order not reversed between elements {x} and {y}"));
            }
        }
    }
    let position = |c: &Coroot| filter.iter().position(|f| f == c).expect("image equals filter");
    let mut filter_colors = vec![0; filter.len()];
    for (x, c) in images.iter().enumerate() {
        filter_colors[position(c)] = p.color(x);
    }
    let relations: Vec<(usize, usize)> = (0..filter.len())
        .flat_map(|a| (0..filter.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && filter[a].le(&filter[b]))
        .collect();
    let covers = transitive_reduction(filter.len(), &relations).expect("coordinate order is acyclic");
    let poset =
        ColoredPoset::with_partial_coloring(d.clone(), filter_colors.clone(), covers).expect("filter colors are valid");
    if !is_minuscule(&poset).holds {
        return fail("colored coroot filter is not minuscule".into());
    }
    if colored_isomorphism(&poset, &p.order_dual()).is_none() {
        return fail("colored coroot filter is not dual to the input".into());
    }
    Ok(Realization { top_color: j, words, images, filter, filter_colors, poset })
}

/// Whether `w` keeps every positive coroot outside the filter of `j`
/// positive. This certifies `w` as a minimal coset representative for the
/// parabolic subgroup generated by the other simple reflections.
pub fn is_minimal_coset_representative(d: &DynkinDiagram, w: &ReducedWord, j: usize) -> Result<bool, CorootError> {
    let positive = positive_coroots(d)?;
    Ok(positive.iter().filter(|b| b.coords()[j] == 0).all(|b| w.act(d, b).is_positive()))
}

/// Positive coroots sent negative by `w`, by direct action.
pub fn inversion_set(d: &DynkinDiagram, w: &ReducedWord) -> Result<Vec<Coroot>, CorootError> {
    let mut out: Vec<Coroot> = positive_coroots(d)?.into_iter().filter(|b| w.act(d, b).is_negative()).collect();
    sort_coroots(&mut out);
    Ok(out)
}

/// Hasse diagram of a realization with coordinates and colors as labels.
pub fn realization_to_dot(r: &Realization) -> String {
    let d = r.poset.diagram();
    let mut out = String::from("digraph coroots {\n  rankdir=BT;\n");
    for (k, c) in r.filter.iter().enumerate() {
        out.push_str(&format!("  {k} [label=\"{c}\\ncolor {}\"];\n", d.name(r.filter_colors[k])));
    }
    for &(x, y) in r.poset.covers() {
        out.push_str(&format!("  {x} -> {y};\n"));
    }
    out.push_str("}\n");
    out
}
