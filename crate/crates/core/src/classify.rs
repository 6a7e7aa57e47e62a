//! Naming the components of a colored poset against the catalog.

use serde::Serialize;

use crate::axioms::{is_minuscule, AxiomReport};
use crate::catalog::{build, FamilyId};
use crate::heapwindow::{verify_window, PeriodicWindow};
use crate::poset::{colored_isomorphism, ColoredPoset};

/// A catalog match for one component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyMatch {
    /// Smallest matching id.
    pub family: FamilyId,
    /// Every id whose build is colored-isomorphic to the component, sorted.
    pub matches: Vec<FamilyId>,
    /// Component element for each element of `build(family)`.
    pub elements: Vec<usize>,
    /// Component color for each color of `family.diagram()`.
    pub colors: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum ComponentResult {
    Match(FamilyMatch),
    NotMinuscule {
        failures: Vec<AxiomReport>,
    },
    /// Windows of infinite posets are not named; the window checks are
    /// attached instead.
    InfiniteOutOfScope {
        window: Vec<AxiomReport>,
    },
    /// The axioms and the catalog disagree. Never expected; reported rather
    /// than hidden so tests can catch it.
    Inconsistent {
        matches: Vec<FamilyId>,
        failures: Vec<AxiomReport>,
    },
}

impl ComponentResult {
    pub fn family(&self) -> Option<FamilyId> {
        match self {
            ComponentResult::Match(m) => Some(m.family),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentClassification {
    /// Element ids in the input poset.
    pub elements: Vec<usize>,
    /// Color ids in the input diagram.
    pub colors: Vec<usize>,
    #[serde(flatten)]
    pub result: ComponentResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub minuscule: bool,
    pub components: Vec<ComponentClassification>,
}

impl Classification {
    /// Matched families in component order.
    pub fn families(&self) -> Vec<FamilyId> {
        self.components.iter().filter_map(|c| c.result.family()).collect()
    }
}

fn class_sizes(p: &ColoredPoset) -> Vec<usize> {
    let mut sizes: Vec<usize> = (0..p.diagram().len()).map(|a| p.color_class(a).len()).collect();
    sizes.sort_unstable();
    sizes
}

/// Every catalog id whose build is colored-isomorphic to `p`, with the
/// witness for each. `p` must be colored surjectively.
fn catalog_matches(p: &ColoredPoset) -> Vec<(FamilyId, crate::poset::Isomorphism)> {
    let sizes = class_sizes(p);
    FamilyId::all_with_rank(p.diagram().len())
        .into_iter()
        .filter(|f| f.size() == p.len())
        .filter_map(|f| {
            let q = build(f).ok()?;
            if q.covers().len() != p.covers().len() || class_sizes(&q) != sizes {
                return None;
            }
            colored_isomorphism(&q, p).map(|iso| (f, iso))
        })
        .collect()
}

/// Classifies a connected poset. Colors the poset does not use are dropped
/// before matching, so the result refers to colors of the used subdiagram
/// only through the returned maps.
pub fn classify_connected(p: &ColoredPoset) -> ComponentResult {
    let all: Vec<usize> = (0..p.len()).collect();
    let (q, _) = p.induced_surjective(&all);
    classify_surjective(&q)
}

fn classify_surjective(p: &ColoredPoset) -> ComponentResult {
    let verdict = is_minuscule(p);
    let found = if p.is_connected() { catalog_matches(p) } else { Vec::new() };
    let failures: Vec<AxiomReport> = verdict.failures().cloned().collect();
    match (verdict.holds, found.is_empty()) {
        (true, false) => {
            let (family, iso) = found[0].clone();
            ComponentResult::Match(FamilyMatch {
                family,
                matches: found.iter().map(|(f, _)| *f).collect(),
                elements: iso.elements,
                colors: iso.colors,
            })
        }
        (false, true) => ComponentResult::NotMinuscule { failures },
        _ => ComponentResult::Inconsistent { matches: found.iter().map(|(f, _)| *f).collect(), failures },
    }
}

/// Splits `p` into connected components and classifies each one. The
/// element and color maps of each match are translated to ids of `p`.
pub fn classify(p: &ColoredPoset) -> Classification {
    let components: Vec<ComponentClassification> = p
        .connected_components()
        .into_iter()
        .map(|c| {
            let mut result = classify_surjective(&c.poset);
            if let ComponentResult::Match(m) = &mut result {
                m.elements = m.elements.iter().map(|&x| c.elements[x]).collect();
                m.colors = m.colors.iter().map(|&a| c.colors[a]).collect();
            }
            ComponentClassification { elements: c.elements, colors: c.colors, result }
        })
        .collect();
    let minuscule = components.iter().all(|c| matches!(c.result, ComponentResult::Match(_)));
    Classification { minuscule, components }
}

/// Windows are never named; the result carries the window checks.
pub fn classify_window(w: &PeriodicWindow) -> Classification {
    let verdict = verify_window(w);
    Classification {
        minuscule: false,
        components: vec![ComponentClassification {
            elements: (0..w.poset().len()).collect(),
            colors: w.poset().used_colors(),
            result: ComponentResult::InfiniteOutOfScope { window: verdict.reports },
        }],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::Property;
    use crate::catalog::{indexed, instances};
    use crate::dynkin::{finite_type_template, DynkinDiagram, TypeLetter};

    #[test]
    fn every_instance_round_trips() {
        for f in instances(7) {
            let c = classify(&build(f).unwrap());
            assert!(c.minuscule);
            assert_eq!(c.families(), vec![f.canonical()], "{f}");
        }
    }

    #[test]
    fn a42_matches_exterior() {
        let p = indexed(TypeLetter::A, 4, 2).unwrap();
        let r = classify_connected(&p);
        let m = match r {
            ComponentResult::Match(m) => m,
            other => panic!("{other:?}"),
        };
        assert_eq!(m.family, FamilyId::AExterior(4, 2));
        assert_eq!(m.matches, vec![FamilyId::AExterior(4, 2), FamilyId::AExterior(4, 3)]);
    }

    #[test]
    fn five_chain_over_c3() {
        // colors 1 2 3 2 1 read top down, the double bond at the middle
        let d = finite_type_template(TypeLetter::C, 3).unwrap();
        let chain = vec![(0, 1), (1, 2), (2, 3), (3, 4)];
        let p = ColoredPoset::new(d.clone(), vec![0, 1, 2, 1, 0], chain.clone()).unwrap();
        assert_eq!(classify_connected(&p).family(), Some(FamilyId::C(3)));
        // 3 2 1 2 3 leaves a census of 1 between the two 2s
        let q = ColoredPoset::new(d, vec![2, 1, 0, 1, 2], chain).unwrap();
        assert!(matches!(classify_connected(&q), ComponentResult::NotMinuscule { .. }));
    }

    #[test]
    fn single_element() {
        let p = ColoredPoset::new(DynkinDiagram::simply_laced(1, &[]), vec![0], vec![]).unwrap();
        assert_eq!(classify(&p).families(), vec![FamilyId::AStandard(1)]);
    }

    #[test]
    fn disjoint_union() {
        let a = build(FamilyId::AStandard(2)).unwrap();
        let b = build(FamilyId::B(2)).unwrap();
        let c = classify(&ColoredPoset::disjoint_union(&[&a, &b]));
        assert!(c.minuscule);
        assert_eq!(c.families(), vec![FamilyId::AStandard(2), FamilyId::B(2)]);
        assert_eq!(c.components[1].elements, vec![2, 3, 4]);
    }

    #[test]
    fn ec_failure_poisons_union() {
        let d = DynkinDiagram::simply_laced(1, &[]);
        let antichain = ColoredPoset::new(d, vec![0, 0], vec![]).unwrap();
        // connected components of an antichain are single elements, so glue
        // the two same-colored points under a common top of another color
        let d2 = DynkinDiagram::simply_laced(2, &[(0, 1)]);
        let vee = ColoredPoset::new(d2, vec![1, 0, 0], vec![(1, 0), (2, 0)]).unwrap();
        let c = classify(&vee);
        assert!(!c.minuscule);
        match &c.components[0].result {
            ComponentResult::NotMinuscule { failures } => assert!(failures.iter().any(|r| r.property == Property::EC)),
            other => panic!("{other:?}"),
        }
        assert!(classify(&antichain).minuscule);
    }

    #[test]
    fn blocked_extension_is_not_minuscule() {
        let out = crate::extension::run_extension(&crate::catalog::top_tree_y(2, 2, 2).unwrap()).unwrap();
        match classify_connected(&out.poset) {
            ComponentResult::NotMinuscule { failures } => {
                assert!(failures.iter().any(|r| r.property == Property::LCB(1)))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn windows_are_out_of_scope() {
        let w = crate::heapwindow::cyclic_chain_window(3, 3).unwrap();
        let c = classify_window(&w);
        assert!(!c.minuscule);
        assert!(matches!(c.components[0].result, ComponentResult::InfiniteOutOfScope { .. }));
    }
}
