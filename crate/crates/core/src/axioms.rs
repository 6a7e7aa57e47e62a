//! Coloring axioms with full witness lists.
//!
//! Censuses: for a set `S` and color `a`, `census(S, a)` is the sum of
//! `-theta[kappa(z)][a]` over `z` in `S` whose color is adjacent to `a`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poset::ColoredPoset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomError {
    #[error("unknown property {0:?}")]
    UnknownProperty(String),
    #[error("poset is not d-complete")]
    NotDComplete,
    #[error("poset is not connected")]
    NotConnected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Property {
    /// Equal colors are comparable.
    EC,
    /// Neighbors have adjacent colors.
    NA,
    /// Adjacent colors are comparable.
    AC,
    /// Interval census between consecutive same-colored elements is 2.
    ICE2,
    /// Upper census at color maxima is at most `k`.
    UCB(u32),
    /// Lower census at color minima is at most `k`.
    LCB(u32),
    S1,
    S2,
    S3,
    S4,
    /// Windowed form of "every color class is a copy of the integers".
    G3Window,
}

impl Property {
    pub const D_COMPLETE: [Property; 5] = [Property::EC, Property::NA, Property::AC, Property::ICE2, Property::UCB(1)];
    pub const HEAP: [Property; 4] = [Property::S1, Property::S2, Property::S3, Property::S4];
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::EC => f.write_str("EC"),
            Property::NA => f.write_str("NA"),
            Property::AC => f.write_str("AC"),
            Property::ICE2 => f.write_str("ICE2"),
            Property::UCB(k) => write!(f, "UCB{k}"),
            Property::LCB(k) => write!(f, "LCB{k}"),
            Property::S1 => f.write_str("S1"),
            Property::S2 => f.write_str("S2"),
            Property::S3 => f.write_str("S3"),
            Property::S4 => f.write_str("S4"),
            Property::G3Window => f.write_str("G3-window"),
        }
    }
}

impl FromStr for Property {
    type Err = AxiomError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.trim().to_ascii_uppercase();
        let bound = |prefix: &str| upper.strip_prefix(prefix).and_then(|k| k.parse::<u32>().ok());
        Ok(match upper.as_str() {
            "EC" => Property::EC,
            "NA" => Property::NA,
            "AC" => Property::AC,
            "ICE2" => Property::ICE2,
            "S1" => Property::S1,
            "S2" => Property::S2,
            "S3" => Property::S3,
            "S4" => Property::S4,
            "G3" | "G3-WINDOW" | "G3WINDOW" => Property::G3Window,
            _ => {
                if let Some(k) = bound("UCB") {
                    Property::UCB(k)
                } else if let Some(k) = bound("LCB") {
                    Property::LCB(k)
                } else {
                    return Err(AxiomError::UnknownProperty(s.to_string()));
                }
            }
        })
    }
}

impl From<Property> for String {
    fn from(p: Property) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for Property {
    type Error = AxiomError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Which diagram the checks treat as ambient when the coloring is not
/// surjective. Only affects S4 and the window recurrence check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Ambient {
    /// The poset's whole diagram.
    #[default]
    Full,
    /// The subdiagram on the colors that actually occur.
    Induced,
}

/// One offending configuration. Every variant carries enough to be rechecked
/// from the poset alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Two incomparable elements whose colors should force comparability.
    IncomparablePair { x: usize, y: usize },
    /// A cover `lower -> upper` whose colors are not allowed to be neighbors.
    Cover { lower: usize, upper: usize },
    /// Consecutive same-colored elements and the census of the open interval.
    Interval { lower: usize, upper: usize, census: i64, members: Vec<usize> },
    /// A color extremum and the census of its upper or lower frontier.
    Frontier { element: usize, census: i64, members: Vec<usize> },
    /// A color maximum with a bad upper cover configuration.
    CoverUniqueness { element: usize, covers: Vec<usize> },
    /// A cycle in the diagram.
    Cycle { colors: Vec<usize> },
    /// A color class that cannot be a window of a copy of the integers.
    ColorClass { color: usize, elements: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub property: Property,
    pub passed: bool,
    pub witnesses: Vec<Witness>,
}

impl AxiomReport {
    pub(crate) fn from_witnesses(property: Property, witnesses: Vec<Witness>) -> Self {
        Self { property, passed: witnesses.is_empty(), witnesses }
    }
}

/// Verdict of a conjunction of properties together with every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub reports: Vec<AxiomReport>,
}

impl Verdict {
    pub(crate) fn of(reports: Vec<AxiomReport>) -> Self {
        Self { holds: reports.iter().all(|r| r.passed), reports }
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomReport> {
        self.reports.iter().filter(|r| !r.passed)
    }
}

/// Weighted count of `set` members whose color is adjacent to `a`.
pub fn census(p: &ColoredPoset, set: impl IntoIterator<Item = usize>, a: usize) -> (i64, Vec<usize>) {
    let d = p.diagram();
    let mut total = 0;
    let mut members = Vec::new();
    for z in set {
        let c = p.color(z);
        if d.adjacent(c, a) {
            total -= d.theta(c, a);
            members.push(z);
        }
    }
    (total, members)
}

/// `U(x)`: elements above `x` whose color is adjacent to that of `x`.
pub fn upper_frontier(p: &ColoredPoset, x: usize) -> (i64, Vec<usize>) {
    census(p, p.strict_up(x).ones(), p.color(x))
}

/// `L(x)`: elements below `x` whose color is adjacent to that of `x`.
pub fn lower_frontier(p: &ColoredPoset, x: usize) -> (i64, Vec<usize>) {
    census(p, p.strict_down(x).ones(), p.color(x))
}

/// Pairs `x < y` of color `a` with no color-`a` element strictly between.
pub fn consecutive_pairs(p: &ColoredPoset, a: usize) -> Vec<(usize, usize)> {
    let class = p.color_class(a);
    let mut out = Vec::new();
    for &x in &class {
        for &y in &class {
            if p.lt(x, y) && !class.iter().any(|&z| p.lt(x, z) && p.lt(z, y)) {
                out.push((x, y));
            }
        }
    }
    out
}

pub fn check(p: &ColoredPoset, property: Property) -> AxiomReport {
    check_with(p, property, Ambient::Full)
}

pub fn check_with(p: &ColoredPoset, property: Property, ambient: Ambient) -> AxiomReport {
    let w = match property {
        Property::EC => check_ec(p),
        Property::NA => check_na(p),
        Property::AC => check_ac(p),
        Property::ICE2 => check_ice2(p, &[]),
        Property::UCB(k) => check_ucb(p, k),
        Property::LCB(k) => check_ucb(&p.order_dual(), k),
        Property::S1 => check_s1(p),
        Property::S2 => check_s2(p),
        Property::S3 => check_s3(p),
        Property::S4 => check_s4(p, ambient),
        Property::G3Window => check_g3_window(p, &[], ambient),
    };
    AxiomReport::from_witnesses(property, w)
}

/// Parses and checks a property given by name.
pub fn check_named(p: &ColoredPoset, name: &str) -> Result<AxiomReport, AxiomError> {
    Ok(check(p, name.parse()?))
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |x| ((x + 1)..n).map(move |y| (x, y)))
}

fn check_ec(p: &ColoredPoset) -> Vec<Witness> {
    pairs(p.len())
        .filter(|&(x, y)| p.color(x) == p.color(y) && !p.comparable(x, y))
        .map(|(x, y)| Witness::IncomparablePair { x, y })
        .collect()
}

fn check_na(p: &ColoredPoset) -> Vec<Witness> {
    let d = p.diagram();
    p.covers()
        .iter()
        .filter(|&&(x, y)| !d.adjacent(p.color(x), p.color(y)))
        .map(|&(lower, upper)| Witness::Cover { lower, upper })
        .collect()
}

fn check_ac(p: &ColoredPoset) -> Vec<Witness> {
    let d = p.diagram();
    pairs(p.len())
        .filter(|&(x, y)| d.adjacent(p.color(x), p.color(y)) && !p.comparable(x, y))
        .map(|(x, y)| Witness::IncomparablePair { x, y })
        .collect()
}

/// ICE2 over consecutive pairs whose open interval avoids `boundary`.
pub(crate) fn check_ice2(p: &ColoredPoset, boundary: &[usize]) -> Vec<Witness> {
    let mut out = Vec::new();
    for a in 0..p.diagram().len() {
        for (x, y) in consecutive_pairs(p, a) {
            let interval = p.open_interval(x, y);
            if interval.iter().any(|z| boundary.contains(z)) {
                continue;
            }
            let (total, members) = census(p, interval, a);
            if total != 2 {
                out.push(Witness::Interval { lower: x, upper: y, census: total, members });
            }
        }
    }
    out
}

fn check_ucb(p: &ColoredPoset, k: u32) -> Vec<Witness> {
    let mut out = Vec::new();
    for a in 0..p.diagram().len() {
        for x in p.color_maxima(a) {
            let (total, members) = upper_frontier(p, x);
            if total > i64::from(k) {
                out.push(Witness::Frontier { element: x, census: total, members });
            }
        }
    }
    out
}

fn check_s1(p: &ColoredPoset) -> Vec<Witness> {
    let d = p.diagram();
    let mut out: Vec<Witness> = p
        .covers()
        .iter()
        .filter(|&&(x, y)| p.color(x) != p.color(y) && !d.adjacent(p.color(x), p.color(y)))
        .map(|&(lower, upper)| Witness::Cover { lower, upper })
        .collect();
    // Distant means theta = 0 between different colors.
    out.extend(
        pairs(p.len())
            .filter(|&(x, y)| !p.comparable(x, y) && (p.color(x) == p.color(y) || d.adjacent(p.color(x), p.color(y))))
            .map(|(x, y)| Witness::IncomparablePair { x, y }),
    );
    out
}

fn check_s2(p: &ColoredPoset) -> Vec<Witness> {
    let d = p.diagram();
    let mut out = Vec::new();
    for a in 0..d.len() {
        for (x, y) in consecutive_pairs(p, a) {
            let interval = p.open_interval(x, y);
            let (total, members) = census(p, interval.iter().copied(), a);
            let two_simple = members.len() == 2 && members.iter().all(|&z| d.theta(p.color(z), a) == -1);
            let one_double = interval.len() == 1 && d.theta(p.color(interval[0]), a) == -2;
            if !(two_simple || one_double) {
                out.push(Witness::Interval { lower: x, upper: y, census: total, members });
            }
        }
    }
    out
}

fn check_s3(p: &ColoredPoset) -> Vec<Witness> {
    let d = p.diagram();
    let mut out = Vec::new();
    for a in 0..d.len() {
        for x in p.color_maxima(a) {
            let covers = p.upper_covers(x).to_vec();
            let ok = match covers[..] {
                [] => true,
                [y] => {
                    let c = p.color(y);
                    d.theta(c, a) == -1 && p.color_maxima(c).contains(&y)
                }
                _ => false,
            };
            if !ok {
                out.push(Witness::CoverUniqueness { element: x, covers });
            }
        }
    }
    out
}

fn check_s4(p: &ColoredPoset, ambient: Ambient) -> Vec<Witness> {
    let cycle = match ambient {
        Ambient::Full => p.diagram().find_cycle(),
        Ambient::Induced => {
            let used = p.used_colors();
            p.diagram().restrict(&used).find_cycle().map(|c| c.into_iter().map(|i| used[i]).collect())
        }
    };
    cycle.map(|colors| Witness::Cycle { colors }).into_iter().collect()
}

/// Each color class is a chain that occurs at least twice and reaches a
/// boundary mark in both directions (it could continue past the window).
pub(crate) fn check_g3_window(p: &ColoredPoset, boundary: &[usize], ambient: Ambient) -> Vec<Witness> {
    let colors: Vec<usize> = match ambient {
        Ambient::Full => (0..p.diagram().len()).collect(),
        Ambient::Induced => p.used_colors(),
    };
    let mut out = Vec::new();
    for a in colors {
        let class = p.color_class(a);
        let is_chain = class.iter().all(|&x| class.iter().all(|&y| p.comparable(x, y)));
        let open_above = |x: usize| boundary.iter().any(|&b| p.le(x, b));
        let open_below = |x: usize| boundary.iter().any(|&b| p.le(b, x));
        let unbounded = is_chain
            && class.len() >= 2
            && p.maximal_in(&class).iter().all(|&x| open_above(x))
            && p.minimal_in(&class).iter().all(|&x| open_below(x));
        if !unbounded {
            out.push(Witness::ColorClass { color: a, elements: class });
        }
    }
    out
}

pub fn check_all(p: &ColoredPoset, properties: &[Property]) -> Verdict {
    Verdict::of(properties.iter().map(|&q| check(p, q)).collect())
}

/// EC, NA, AC, ICE2 and UCB1.
pub fn is_d_complete(p: &ColoredPoset) -> Verdict {
    check_all(p, &Property::D_COMPLETE)
}

/// d-complete and LCB1.
pub fn is_minuscule(p: &ColoredPoset) -> Verdict {
    let mut props = Property::D_COMPLETE.to_vec();
    props.push(Property::LCB(1));
    check_all(p, &props)
}

/// S1 through S4.
pub fn is_dominant_minuscule_heap(p: &ColoredPoset) -> Verdict {
    check_all(p, &Property::HEAP)
}

/// Connected, d-complete, and no top-tree cover `x -> y` has `y` alone in
/// its color class.
pub fn is_slant_irreducible(p: &ColoredPoset) -> Result<bool, AxiomError> {
    if !p.is_connected() {
        return Err(AxiomError::NotConnected);
    }
    if !is_d_complete(p).holds {
        return Err(AxiomError::NotDComplete);
    }
    let tree = p.top_tree();
    Ok(tree.covers.iter().all(|&(_, j)| {
        let y = tree.elements[j];
        p.color_class(p.color(y)).len() > 1
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::{finite_type_template, DynkinDiagram, TypeLetter};

    #[test]
    fn antichain_same_color_fails_ec() {
        let d = finite_type_template(TypeLetter::A, 1).unwrap();
        let p = ColoredPoset::new(d, vec![0, 0], vec![]).unwrap();
        let r = check(&p, Property::EC);
        assert!(!r.passed);
        assert_eq!(r.witnesses, vec![Witness::IncomparablePair { x: 0, y: 1 }]);
        assert!(!is_d_complete(&p).holds);
    }

    #[test]
    fn ucb_census_two() {
        // Minimum colored 0, covered by two elements of colors 1 and 2.
        let d = DynkinDiagram::simply_laced(3, &[(0, 1), (0, 2)]);
        let p = ColoredPoset::new(d, vec![0, 1, 2], vec![(0, 1), (0, 2)]).unwrap();
        let r = check(&p, Property::UCB(1));
        assert_eq!(r.witnesses, vec![Witness::Frontier { element: 0, census: 2, members: vec![1, 2] }]);
        assert!(check(&p, Property::UCB(2)).passed);
    }

    #[test]
    fn property_names_round_trip() {
        for name in ["EC", "NA", "AC", "ICE2", "UCB1", "LCB3", "S1", "S2", "S3", "S4", "G3-window"] {
            let p: Property = name.parse().unwrap();
            assert_eq!(p.to_string(), name);
        }
        assert!(matches!("XYZ".parse::<Property>(), Err(AxiomError::UnknownProperty(_))));
    }

    #[test]
    fn three_cycle_fails_s4() {
        let d = DynkinDiagram::simply_laced(3, &[(0, 1), (1, 2), (2, 0)]);
        let p = ColoredPoset::new(d, vec![0, 1, 2], vec![(0, 1), (1, 2)]).unwrap();
        assert!(!is_dominant_minuscule_heap(&p).holds);
        assert!(!check(&p, Property::S4).passed);
    }

    #[test]
    fn b2_chain_uses_double_edge() {
        // Chain 2 > 1 > 2 over B2 with theta[1][2] = -2 (node numbering).
        let d = finite_type_template(TypeLetter::B, 2).unwrap();
        let p = ColoredPoset::new(d, vec![1, 0, 1], vec![(1, 0), (2, 1)]).unwrap();
        assert!(check(&p, Property::ICE2).passed);
        assert!(check(&p, Property::S2).passed);
        assert!(is_minuscule(&p).holds);
        assert!(is_dominant_minuscule_heap(&p).holds);
    }

    #[test]
    fn ambient_flag_controls_s4() {
        let d = DynkinDiagram::simply_laced(3, &[(0, 1), (1, 2), (2, 0)]);
        let p = ColoredPoset::with_partial_coloring(d, vec![0, 1], vec![(0, 1)]).unwrap();
        assert!(!check_with(&p, Property::S4, Ambient::Full).passed);
        assert!(check_with(&p, Property::S4, Ambient::Induced).passed);
    }

    #[test]
    fn single_element_is_slant_irreducible() {
        let d = finite_type_template(TypeLetter::A, 1).unwrap();
        let p = ColoredPoset::new(d, vec![0], vec![]).unwrap();
        assert_eq!(is_slant_irreducible(&p), Ok(true));
    }
}
