//! Connected finite minuscule posets and Y-shaped top trees.
//!
//! Every family is built over the node-numbered template diagram of its type
//! (see [`finite_type_template`]), so color index `c` is node `c + 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dynkin::{finite_type_template, DynkinDiagram, TypeLetter};
use crate::poset::{ColoredPoset, YShape};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("{letter}_{n}({j}) is not a minuscule weight")]
    NotAMinusculeWeight { letter: TypeLetter, n: usize, j: usize },
}

/// The families of connected finite minuscule posets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FamilyId {
    /// Chain over `A_n`, top colored 1.
    AStandard(usize),
    /// `j x (n+1-j)` grid over `A_n`, top colored `j`, `2 <= j <= n-1`.
    AExterior(usize, usize),
    /// Shifted staircase over `B_n`, top colored `n`.
    B(usize),
    /// Chain of `2n-1` elements over `C_n`, top colored 1.
    C(usize),
    /// Chain with one diamond over `D_n`, top colored 1.
    DStandard(usize),
    /// Shifted staircase over `D_n`, top colored `n-1`.
    DSpin(usize),
    E6,
    E7,
}

impl FamilyId {
    pub fn validate(self) -> Result<Self, CatalogError> {
        let ok = match self {
            FamilyId::AStandard(n) => n >= 1,
            FamilyId::AExterior(n, j) => n >= 3 && (2..n).contains(&j),
            FamilyId::B(n) => n >= 2,
            FamilyId::C(n) => n >= 3,
            FamilyId::DStandard(n) | FamilyId::DSpin(n) => n >= 4,
            FamilyId::E6 | FamilyId::E7 => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(CatalogError::BadParameters(format!("{self} is outside the family's range")))
        }
    }

    pub fn letter(self) -> TypeLetter {
        match self {
            FamilyId::AStandard(_) | FamilyId::AExterior(..) => TypeLetter::A,
            FamilyId::B(_) => TypeLetter::B,
            FamilyId::C(_) => TypeLetter::C,
            FamilyId::DStandard(_) | FamilyId::DSpin(_) => TypeLetter::D,
            FamilyId::E6 | FamilyId::E7 => TypeLetter::E,
        }
    }

    pub fn rank(self) -> usize {
        match self {
            FamilyId::AStandard(n)
            | FamilyId::AExterior(n, _)
            | FamilyId::B(n)
            | FamilyId::C(n)
            | FamilyId::DStandard(n)
            | FamilyId::DSpin(n) => n,
            FamilyId::E6 => 6,
            FamilyId::E7 => 7,
        }
    }

    /// Node number of the color of the maximal element of [`build`].
    pub fn top_node(self) -> usize {
        match self {
            FamilyId::AStandard(_) | FamilyId::C(_) | FamilyId::DStandard(_) | FamilyId::E6 => 1,
            FamilyId::AExterior(_, j) => j,
            FamilyId::B(n) => n,
            FamilyId::DSpin(n) => n - 1,
            FamilyId::E7 => 6,
        }
    }

    /// Number of elements.
    pub fn size(self) -> usize {
        match self {
            FamilyId::AStandard(n) => n,
            FamilyId::AExterior(n, j) => j * (n + 1 - j),
            FamilyId::B(n) => n * (n + 1) / 2,
            FamilyId::C(n) => 2 * n - 1,
            FamilyId::DStandard(n) => 2 * n - 2,
            FamilyId::DSpin(n) => n * (n - 1) / 2,
            FamilyId::E6 => 16,
            FamilyId::E7 => 27,
        }
    }

    /// Smallest id among those whose builds are colored-isomorphic to this one.
    pub fn canonical(self) -> Self {
        match self {
            FamilyId::AExterior(n, j) => FamilyId::AExterior(n, j.min(n + 1 - j)),
            FamilyId::DSpin(4) => FamilyId::DStandard(4),
            other => other,
        }
    }

    /// Every valid id of rank `n`, sorted.
    pub fn all_with_rank(n: usize) -> Vec<Self> {
        let mut out = vec![FamilyId::AStandard(n)];
        out.extend((2..n).map(|j| FamilyId::AExterior(n, j)));
        out.extend([FamilyId::B(n), FamilyId::C(n), FamilyId::DStandard(n), FamilyId::DSpin(n)]);
        if n == 6 {
            out.push(FamilyId::E6);
        }
        if n == 7 {
            out.push(FamilyId::E7);
        }
        out.retain(|f| f.validate().is_ok());
        out.sort();
        out
    }

    /// Diagram the family is colored by.
    pub fn diagram(self) -> DynkinDiagram {
        finite_type_template(self.letter(), self.rank()).expect("family ranks have templates")
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyId::AStandard(n) => write!(f, "AStandard({n})"),
            FamilyId::AExterior(n, j) => write!(f, "AExterior({n},{j})"),
            FamilyId::B(n) => write!(f, "B({n})"),
            FamilyId::C(n) => write!(f, "C({n})"),
            FamilyId::DStandard(n) => write!(f, "DStandard({n})"),
            FamilyId::DSpin(n) => write!(f, "DSpin({n})"),
            FamilyId::E6 => f.write_str("E6"),
            FamilyId::E7 => f.write_str("E7"),
        }
    }
}

impl FromStr for FamilyId {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || {
            CatalogError::BadParameters(format!(
                "cannot parse family {s:?}; expected forms like B(3), AExterior(5,2), E7"
            ))
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_lowercase();
        let (name, args) = match compact.split_once('(') {
            Some((name, rest)) => {
                let inner = rest.strip_suffix(')').ok_or_else(bad)?;
                let args: Vec<usize> =
                    inner.split(',').map(|a| a.parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
                (name.to_string(), args)
            }
            None => (compact.clone(), Vec::new()),
        };
        let id = match (name.as_str(), &args[..]) {
            ("astandard", &[n]) => FamilyId::AStandard(n),
            ("aexterior", &[n, j]) => FamilyId::AExterior(n, j),
            ("b", &[n]) => FamilyId::B(n),
            ("c", &[n]) => FamilyId::C(n),
            ("dstandard", &[n]) => FamilyId::DStandard(n),
            ("dspin", &[n]) => FamilyId::DSpin(n),
            ("e6", &[]) => FamilyId::E6,
            ("e7", &[]) => FamilyId::E7,
            _ => return Err(bad()),
        };
        id.validate()
    }
}

impl From<FamilyId> for String {
    fn from(f: FamilyId) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for FamilyId {
    type Error = CatalogError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Every family instance of rank at most `max_rank`, sorted.
pub fn instances(max_rank: usize) -> Vec<FamilyId> {
    (1..=max_rank).flat_map(FamilyId::all_with_rank).collect()
}

/// Builds the poset of a family.
pub fn build(family: FamilyId) -> Result<ColoredPoset, CatalogError> {
    let family = family.validate()?;
    let diagram = family.diagram();
    let poset = match family {
        FamilyId::AStandard(n) => grid(diagram, n, 1),
        FamilyId::AExterior(n, j) => grid(diagram, n, j),
        FamilyId::B(n) => staircase(diagram, n, |x, _| n - 1 - x),
        FamilyId::C(n) => {
            let nodes: Vec<usize> = (0..n).chain((0..n - 1).rev()).collect();
            chain(diagram, &nodes)
        }
        FamilyId::DStandard(n) => d_standard(diagram, n),
        // Column 0 alternates between nodes n-1 and n going down.
        FamilyId::DSpin(n) => staircase(diagram, n - 1, |x, t| match x {
            0 if t % 2 == 0 => n - 2,
            0 => n - 1,
            _ => n - 2 - x,
        }),
        FamilyId::E6 => from_points(diagram, &E6_POINTS, |c| E6_NODES[(c - b'a') as usize]),
        FamilyId::E7 => from_points(diagram, &E7_POINTS, |c| E7_NODES[(c - b'a') as usize]),
    };
    Ok(poset)
}

/// Chain listed top-down by 0-based node index.
fn chain(diagram: DynkinDiagram, nodes: &[usize]) -> ColoredPoset {
    let covers = (1..nodes.len()).map(|i| (i, i - 1)).collect();
    ColoredPoset::new(diagram, nodes.to_vec(), covers).expect("chain is valid")
}

/// Grid with `w` rows and `n + 1 - w` columns. Cell `(r, c)` has node
/// `w - r + c` and is covered by `(r - 1, c)` and `(r, c - 1)`.
fn grid(diagram: DynkinDiagram, n: usize, w: usize) -> ColoredPoset {
    let cols = n + 1 - w;
    let id = |r: usize, c: usize| r * cols + c;
    let mut coloring = Vec::with_capacity(w * cols);
    let mut covers = Vec::new();
    for r in 0..w {
        for c in 0..cols {
            coloring.push(w - 1 - r + c);
            if r > 0 {
                covers.push((id(r, c), id(r - 1, c)));
            }
            if c > 0 {
                covers.push((id(r, c), id(r, c - 1)));
            }
        }
    }
    ColoredPoset::new(diagram, coloring, covers).expect("grid is valid")
}

/// Shifted staircase on columns `0..m`: column `x` holds `m - x` elements at
/// heights `-x, -x-2, ...`; `node(x, t)` colors the `t`-th element from the top.
fn staircase(diagram: DynkinDiagram, m: usize, node: impl Fn(usize, usize) -> usize) -> ColoredPoset {
    let mut points = Vec::new();
    for x in 0..m {
        for t in 0..(m - x) {
            points.push((x as i64, -(x as i64) - 2 * t as i64, node(x, t)));
        }
    }
    points_poset(diagram, &points)
}

/// Elements at lattice points; `p` is covered by `q` when `q` sits one step
/// up and one step left or right.
fn points_poset(diagram: DynkinDiagram, points: &[(i64, i64, usize)]) -> ColoredPoset {
    let mut covers = Vec::new();
    for (i, &(x, y, _)) in points.iter().enumerate() {
        for (j, &(u, v, _)) in points.iter().enumerate() {
            if v == y + 1 && (u - x).abs() == 1 {
                covers.push((i, j));
            }
        }
    }
    let coloring = points.iter().map(|p| p.2).collect();
    ColoredPoset::new(diagram, coloring, covers).expect("lattice points form a valid poset")
}

fn from_points(diagram: DynkinDiagram, table: &[(i64, i64, u8)], node: impl Fn(u8) -> usize) -> ColoredPoset {
    let points: Vec<_> = table.iter().map(|&(x, y, c)| (x, y, node(c) - 1)).collect();
    points_poset(diagram, &points)
}

fn d_standard(diagram: DynkinDiagram, n: usize) -> ColoredPoset {
    // Top chain: nodes 1..n-2 at ids 0..n-3; the pair n-1, n at ids n-2, n-1;
    // bottom chain: nodes n-2 down to 1 at ids n..2n-3.
    let mut coloring: Vec<usize> = (0..n - 2).collect();
    coloring.extend([n - 2, n - 1]);
    coloring.extend((0..n - 2).rev());
    let mut covers: Vec<(usize, usize)> = (1..n - 2).map(|i| (i, i - 1)).collect();
    covers.extend([(n - 2, n - 3), (n - 1, n - 3), (n, n - 2), (n, n - 1)]);
    covers.extend((n + 1..2 * n - 2).map(|i| (i, i - 1)));
    ColoredPoset::new(diagram, coloring, covers).expect("D standard is valid")
}

// Letters a..f along the E6 diagram a-b-c-d-e with f attached to c.
const E6_NODES: [usize; 6] = [1, 2, 3, 4, 5, 6];
const E6_POINTS: [(i64, i64, u8); 16] = [
    (-11, 17, b'a'),
    (-10, 16, b'b'),
    (-9, 15, b'c'),
    (-8, 14, b'd'),
    (-7, 13, b'e'),
    (-10, 14, b'f'),
    (-9, 13, b'c'),
    (-8, 12, b'd'),
    (-10, 12, b'b'),
    (-11, 11, b'a'),
    (-9, 11, b'c'),
    (-10, 10, b'b'),
    (-8, 10, b'f'),
    (-9, 9, b'c'),
    (-8, 8, b'd'),
    (-7, 7, b'e'),
];

// Letters a..g along the E7 diagram a-b-c-d-e-f with g attached to d.
const E7_NODES: [usize; 7] = [6, 5, 4, 3, 2, 1, 7];
const E7_POINTS: [(i64, i64, u8); 27] = [
    (0, 20, b'a'),
    (1, 19, b'b'),
    (2, 18, b'c'),
    (3, 17, b'd'),
    (4, 16, b'e'),
    (5, 15, b'f'),
    (2, 16, b'g'),
    (3, 15, b'd'),
    (4, 14, b'e'),
    (2, 14, b'c'),
    (1, 13, b'b'),
    (0, 12, b'a'),
    (3, 13, b'd'),
    (2, 12, b'c'),
    (1, 11, b'b'),
    (4, 12, b'g'),
    (3, 11, b'd'),
    (2, 10, b'c'),
    (4, 10, b'e'),
    (5, 9, b'f'),
    (3, 9, b'd'),
    (4, 8, b'e'),
    (2, 8, b'g'),
    (3, 7, b'd'),
    (2, 6, b'c'),
    (1, 5, b'b'),
    (0, 4, b'a'),
];

/// Whether `letter_n(j)` is a minuscule weight.
pub fn is_minuscule_index(letter: TypeLetter, n: usize, j: usize) -> bool {
    match letter {
        TypeLetter::A => n >= 1 && (1..=n).contains(&j),
        TypeLetter::B => n >= 2 && j == n,
        TypeLetter::C => n >= 3 && j == 1,
        TypeLetter::D => n >= 4 && (j == 1 || j == n - 1 || j == n),
        TypeLetter::E => (n == 6 && (j == 1 || j == 5)) || (n == 7 && j == 6),
    }
}

/// All minuscule indices `(letter, n, j)` with `n <= max_rank`.
pub fn minuscule_indices(max_rank: usize) -> Vec<(TypeLetter, usize, usize)> {
    let mut out = Vec::new();
    for letter in TypeLetter::ALL {
        for n in 1..=max_rank {
            for j in 1..=n {
                if is_minuscule_index(letter, n, j) {
                    out.push((letter, n, j));
                }
            }
        }
    }
    out
}

/// A family poset recolored through a diagram automorphism.
#[derive(Debug, Clone)]
pub struct IndexedPoset {
    pub base: FamilyId,
    pub automorphism: Vec<usize>,
    pub poset: ColoredPoset,
}

fn base_family(letter: TypeLetter, n: usize, j: usize) -> FamilyId {
    match letter {
        TypeLetter::A => match j.min(n + 1 - j) {
            1 => FamilyId::AStandard(n),
            w => FamilyId::AExterior(n, w),
        },
        TypeLetter::B => FamilyId::B(n),
        TypeLetter::C => FamilyId::C(n),
        TypeLetter::D if j == 1 => FamilyId::DStandard(n),
        TypeLetter::D => FamilyId::DSpin(n),
        TypeLetter::E if n == 6 => FamilyId::E6,
        TypeLetter::E => FamilyId::E7,
    }
}

/// Every recoloring of the base family whose top gets color `j`, one per
/// automorphism, in lexicographic automorphism order.
pub fn indexed_all(letter: TypeLetter, n: usize, j: usize) -> Result<Vec<IndexedPoset>, CatalogError> {
    if !is_minuscule_index(letter, n, j) {
        return Err(CatalogError::NotAMinusculeWeight { letter, n, j });
    }
    let base = base_family(letter, n, j);
    let poset = build(base)?;
    let top = base.top_node() - 1;
    Ok(poset
        .diagram()
        .automorphisms()
        .into_iter()
        .filter(|phi| phi[top] == j - 1)
        .map(|phi| IndexedPoset { base, poset: poset.recolored(&phi), automorphism: phi })
        .collect())
}

/// The minuscule poset whose maximal element has color `j`, over the
/// node-numbered diagram of `letter_n`. Uses the first automorphism of
/// [`indexed_all`].
pub fn indexed(letter: TypeLetter, n: usize, j: usize) -> Result<ColoredPoset, CatalogError> {
    let mut all = indexed_all(letter, n, j)?;
    Ok(all.swap_remove(0).poset)
}

/// The Y-shaped tree: a chain of `i` elements from the top down to the
/// splitting element, which covers chains of `j` and `k` elements. Colors
/// are named `1..=i+j+k` in element order and the diagram is the Hasse graph.
pub fn top_tree_y(i: usize, j: usize, k: usize) -> Result<ColoredPoset, CatalogError> {
    if i < 1 || j < 1 || k < j {
        return Err(CatalogError::BadParameters(format!("Y({i};{j},{k}) needs i >= 1 and k >= j >= 1")));
    }
    let n = i + j + k;
    let s = i - 1;
    let mut covers: Vec<(usize, usize)> = (1..i).map(|t| (t, t - 1)).collect();
    covers.push((i, s));
    covers.extend((i + 1..i + j).map(|t| (t, t - 1)));
    covers.push((i + j, s));
    covers.extend((i + j + 1..n).map(|t| (t, t - 1)));
    let diagram = DynkinDiagram::simply_laced(n, &covers);
    Ok(ColoredPoset::new(diagram, (0..n).collect(), covers).expect("tree is valid"))
}

/// The family whose top tree has the given simply laced shape, if that
/// shape supports a minuscule poset.
pub fn family_for_shape(shape: YShape) -> Option<FamilyId> {
    let YShape { i, j, k } = shape;
    match (i, j, k) {
        (1, j, k) => Some(FamilyId::AExterior(j + k + 1, j + 1)),
        (i, 1, 1) => Some(FamilyId::DStandard(i + 2)),
        (2, 1, k) => Some(FamilyId::DSpin(k + 3)),
        (3, 1, 2) => Some(FamilyId::E6),
        (4, 1, 2) => Some(FamilyId::E7),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::is_minuscule;

    #[test]
    fn family_sizes() {
        for f in instances(8) {
            let p = build(f).unwrap();
            assert_eq!(p.len(), f.size(), "{f}");
            assert!(p.is_connected(), "{f}");
            assert_eq!(p.maximal_elements().len(), 1, "{f}");
            assert_eq!(p.minimal_elements().len(), 1, "{f}");
            let top = p.maximal_elements()[0];
            assert_eq!(p.color(top) + 1, f.top_node(), "{f}");
        }
        assert_eq!(build(FamilyId::C(3)).unwrap().len(), 5);
        assert_eq!(build(FamilyId::E7).unwrap().len(), 27);
    }

    #[test]
    fn every_instance_and_dual_is_minuscule() {
        for f in instances(8) {
            let p = build(f).unwrap();
            assert!(is_minuscule(&p).holds, "{f}");
            assert!(is_minuscule(&p.order_dual()).holds, "dual of {f}");
        }
    }

    #[test]
    fn e_tables_are_minuscule() {
        assert!(is_minuscule(&build(FamilyId::E6).unwrap()).holds);
        assert!(is_minuscule(&build(FamilyId::E7).unwrap()).holds);
    }

    #[test]
    fn a4_2_has_max_colored_2() {
        let p = indexed(TypeLetter::A, 4, 2).unwrap();
        assert_eq!(p.len(), 6);
        assert_eq!(p.color(p.maximal_elements()[0]), 1);
        let q = indexed(TypeLetter::A, 4, 3).unwrap();
        assert_eq!(q.color(q.maximal_elements()[0]), 2);
    }

    #[test]
    fn a5_3_arises_twice() {
        let all = indexed_all(TypeLetter::A, 5, 3).unwrap();
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn rejects_non_minuscule_index() {
        assert_eq!(
            indexed(TypeLetter::B, 3, 1).unwrap_err(),
            CatalogError::NotAMinusculeWeight { letter: TypeLetter::B, n: 3, j: 1 }
        );
        assert!(build(FamilyId::C(2)).is_err());
        assert!(top_tree_y(1, 2, 1).is_err());
    }

    #[test]
    fn family_names_parse() {
        for f in instances(8) {
            assert_eq!(f.to_string().parse::<FamilyId>().unwrap(), f);
        }
        assert_eq!("aexterior(5, 2)".parse::<FamilyId>().unwrap(), FamilyId::AExterior(5, 2));
    }

    #[test]
    fn y_shapes() {
        let y = top_tree_y(1, 1, 1).unwrap();
        assert_eq!(y.len(), 3);
        assert_eq!(y.lower_covers(0).len(), 2);
        let e7 = top_tree_y(4, 1, 2).unwrap();
        assert_eq!(e7.len(), 7);
        let ft = e7.diagram().recognize_finite_type().unwrap().unwrap();
        assert_eq!((ft.letter, ft.rank), (TypeLetter::E, 7));
        assert_eq!(top_tree_y(2, 2, 2).unwrap().len(), 6);
    }
}
