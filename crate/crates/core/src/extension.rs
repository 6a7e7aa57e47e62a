//! Downward extension of a d-complete poset one rank at a time.
//!
//! Each round assesses every color's lower frontier census. Colors with
//! census 2 receive a new element below the current minimum of that color;
//! the process stops when every census is at most 1 (minuscule) or when a
//! census exceeds 2 or two adjacent colors both ask to be extended (blocked).

use serde::Serialize;
use thiserror::Error;

use crate::axioms::{census, is_d_complete};
use crate::poset::{ColoredPoset, PosetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("color {0:?} has no elements")]
    ColorAbsent(String),
    #[error("color {0:?} has more than one minimal element")]
    ColorClassNotChain(String),
    #[error("color {color:?} has lower frontier census {census}, extension needs 2")]
    NotExtendable { color: String, census: i64 },
    #[error("seed poset is not connected")]
    SeedNotConnected,
    #[error("seed poset is not d-complete")]
    SeedNotDComplete,
    #[error("extension did not terminate within {0} stages")]
    StageCapExceeded(usize),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Lower frontier of color `b`: its minimal element, the census, and the
/// adjacent-colored elements below it.
pub fn lower_frontier(p: &ColoredPoset, b: usize) -> Result<(usize, i64, Vec<usize>), ExtensionError> {
    let name = || p.diagram().name(b).to_string();
    let minima = p.color_minima(b);
    let y = match minima[..] {
        [] => return Err(ExtensionError::ColorAbsent(name())),
        [y] => y,
        _ => return Err(ExtensionError::ColorClassNotChain(name())),
    };
    let (total, members) = census(p, p.strict_down(y).ones(), b);
    Ok((y, total, members))
}

/// The lower frontier census of color `b`.
pub fn lower_frontier_census(p: &ColoredPoset, b: usize) -> Result<i64, ExtensionError> {
    lower_frontier(p, b).map(|(_, total, _)| total)
}

/// Adds one element of color `a` covered by exactly the minimal members of
/// the lower frontier of `a`. The new element gets id `p.len()`.
pub fn extend_by(p: &ColoredPoset, a: usize) -> Result<ColoredPoset, ExtensionError> {
    let (_, total, members) = lower_frontier(p, a)?;
    if total != 2 {
        return Err(ExtensionError::NotExtendable { color: p.diagram().name(a).to_string(), census: total });
    }
    let x = p.len();
    let mut coloring = p.coloring().to_vec();
    coloring.push(a);
    let mut covers = p.covers().to_vec();
    covers.extend(p.minimal_in(&members).into_iter().map(|u| (x, u)));
    Ok(ColoredPoset::with_partial_coloring(p.diagram().clone(), coloring, covers)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BlockReason {
    /// Some color's census exceeds 2.
    CensusExceeded { color: usize, census: i64 },
    /// Two adjacent colors both have census 2.
    AdjacentPair { first: usize, second: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Assessment {
    /// Every census is at most 1.
    Minuscule,
    /// Every blocking configuration found.
    Blocked(Vec<BlockReason>),
    /// Colors with census 2, in canonical order.
    Continue(Vec<usize>),
}

/// Assesses the censuses of every color that occurs.
pub fn assess(p: &ColoredPoset) -> Result<Assessment, ExtensionError> {
    let colors = p.used_colors();
    let mut censuses = Vec::with_capacity(colors.len());
    for &b in &colors {
        censuses.push((b, lower_frontier_census(p, b)?));
    }
    if censuses.iter().all(|&(_, c)| c <= 1) {
        return Ok(Assessment::Minuscule);
    }
    let mut reasons: Vec<BlockReason> = censuses
        .iter()
        .filter(|&&(_, c)| c > 2)
        .map(|&(color, census)| BlockReason::CensusExceeded { color, census })
        .collect();
    let twos: Vec<usize> = censuses.iter().filter(|&&(_, c)| c == 2).map(|&(b, _)| b).collect();
    for (i, &b) in twos.iter().enumerate() {
        for &c in &twos[i + 1..] {
            if p.diagram().adjacent(b, c) {
                reasons.push(BlockReason::AdjacentPair { first: b, second: c });
            }
        }
    }
    if reasons.is_empty() {
        Ok(Assessment::Continue(twos))
    } else {
        Ok(Assessment::Blocked(reasons))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtensionVerdict {
    Minuscule,
    Blocked,
}

/// One extension round.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stage {
    /// 1 for the first round of new elements.
    pub index: usize,
    /// Colors extended, in the order applied.
    pub colors: Vec<usize>,
    /// Ids of the new elements, parallel to `colors`.
    pub new_elements: Vec<usize>,
    /// Ranks of the new elements in the final poset.
    pub ranks: Vec<i64>,
}

#[derive(Debug, Clone)]
pub struct ExtensionOutcome {
    pub poset: ColoredPoset,
    pub verdict: ExtensionVerdict,
    pub reasons: Vec<BlockReason>,
    pub stages: Vec<Stage>,
    /// Number of assessments made, including the final one.
    pub assessments: usize,
    /// Set for multiply laced seeds, where the process is run by analogy.
    pub extrapolated: bool,
}

/// Runs the extension process from a connected d-complete seed, extending
/// each round's colors in canonical order.
pub fn run_extension(seed: &ColoredPoset) -> Result<ExtensionOutcome, ExtensionError> {
    run_extension_with(seed, |_| {})
}

/// Like [`run_extension`], with `reorder` applied to each round's colors
/// before they are extended.
pub fn run_extension_with(
    seed: &ColoredPoset,
    mut reorder: impl FnMut(&mut Vec<usize>),
) -> Result<ExtensionOutcome, ExtensionError> {
    if !seed.is_connected() || seed.is_empty() {
        return Err(ExtensionError::SeedNotConnected);
    }
    if !is_d_complete(seed).holds {
        return Err(ExtensionError::SeedNotDComplete);
    }
    let cap = seed.diagram().len() * 64;
    let mut p = seed.clone();
    let mut stages: Vec<Stage> = Vec::new();
    let mut assessments = 0;
    let (verdict, reasons) = loop {
        assessments += 1;
        match assess(&p)? {
            Assessment::Minuscule => break (ExtensionVerdict::Minuscule, Vec::new()),
            Assessment::Blocked(reasons) => break (ExtensionVerdict::Blocked, reasons),
            Assessment::Continue(mut colors) => {
                if stages.len() == cap {
                    return Err(ExtensionError::StageCapExceeded(cap));
                }
                reorder(&mut colors);
                let mut new_elements = Vec::with_capacity(colors.len());
                for &a in &colors {
                    new_elements.push(p.len());
                    p = extend_by(&p, a)?;
                }
                stages.push(Stage { index: stages.len() + 1, colors, new_elements, ranks: Vec::new() });
            }
        }
    };
    let rank = p.rank_function()?;
    for stage in &mut stages {
        stage.ranks = stage.new_elements.iter().map(|&x| rank[x]).collect();
    }
    Ok(ExtensionOutcome {
        extrapolated: !p.diagram().is_simply_laced(),
        poset: p,
        verdict,
        reasons,
        stages,
        assessments,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::is_minuscule;
    use crate::catalog::{build, top_tree_y, FamilyId};
    use crate::poset::colored_isomorphism;

    #[test]
    fn y_census_is_two_only_at_splitting_color() {
        let t = top_tree_y(2, 1, 3).unwrap();
        let s = t.top_tree().splitting_element().unwrap();
        for b in 0..t.diagram().len() {
            let c = lower_frontier_census(&t, b).unwrap();
            if b == t.color(s) {
                assert_eq!(c, 2);
            } else {
                assert!(c <= 1);
            }
        }
        assert_eq!(assess(&t).unwrap(), Assessment::Continue(vec![t.color(s)]));
    }

    #[test]
    fn chain_censuses() {
        // colors 1..4 top to bottom
        let p = build(FamilyId::AStandard(4)).unwrap();
        assert_eq!(lower_frontier_census(&p, 3).unwrap(), 0);
        assert_eq!(lower_frontier_census(&p, 1).unwrap(), 1);
        assert!(matches!(extend_by(&p, 1), Err(ExtensionError::NotExtendable { census: 1, .. })));
    }

    #[test]
    fn y111_extends_to_diamond() {
        let t = top_tree_y(1, 1, 1).unwrap();
        let d = extend_by(&t, 0).unwrap();
        assert_eq!(d.len(), 4);
        assert!(is_minuscule(&d).holds);
        assert!(colored_isomorphism(&d, &build(FamilyId::AExterior(3, 2)).unwrap()).is_some());
    }

    #[test]
    fn y222_blocks_at_third_assessment() {
        let t = top_tree_y(2, 2, 2).unwrap();
        let out = run_extension(&t).unwrap();
        assert_eq!(out.verdict, ExtensionVerdict::Blocked);
        assert_eq!(out.assessments, 3);
        let s = t.top_tree().splitting_element().unwrap();
        assert!(out.reasons.contains(&BlockReason::CensusExceeded { color: t.color(s), census: 3 }));
        for stage in &out.stages {
            assert!(stage.ranks.iter().all(|&r| r == stage.index as i64));
        }
    }

    #[test]
    fn blocked_shapes_stop_at_documented_steps() {
        for ((i, j, k), steps) in [((3, 1, 3), 5), ((5, 1, 2), 9)] {
            let t = top_tree_y(i, j, k).unwrap();
            let out = run_extension(&t).unwrap();
            assert_eq!(out.verdict, ExtensionVerdict::Blocked);
            assert_eq!(out.assessments, steps);
            let s = t.color(t.top_tree().splitting_element().unwrap());
            assert!(out.reasons.contains(&BlockReason::CensusExceeded { color: s, census: 3 }));
        }
    }

    #[test]
    fn y312_gives_e6() {
        let out = run_extension(&top_tree_y(3, 1, 2).unwrap()).unwrap();
        assert_eq!(out.verdict, ExtensionVerdict::Minuscule);
        assert!(!out.extrapolated);
        assert!(colored_isomorphism(&out.poset, &build(FamilyId::E6).unwrap()).is_some());
    }
}
