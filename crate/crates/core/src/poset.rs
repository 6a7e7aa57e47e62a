//! Finite colored posets given by Hasse covers.
//!
//! Elements are `0..len()`. A cover `(x, y)` means `x` is covered by `y`
//! (`x -> y`, `x < y` with nothing in between). Reachability is computed once
//! at construction and stored as bitsets.

use std::collections::{BTreeSet, VecDeque};

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::dynkin::{quote, DynkinDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("element {element} has color index {color}, diagram has {colors} colors")]
    ColorOutOfRange { element: usize, color: usize, colors: usize },
    #[error("cover ({0}, {1}) refers to an element that does not exist")]
    UnknownElement(usize, usize),
    #[error("cover ({0}, {0}) relates an element to itself")]
    SelfCover(usize),
    #[error("cover ({0}, {1}) is listed twice")]
    DuplicateCover(usize, usize),
    #[error("covers contain a directed cycle through element {0}")]
    Cycle(usize),
    #[error("cover ({0}, {1}) is implied by a longer chain")]
    NotHasse(usize, usize),
    #[error("color {0:?} is not used by any element")]
    NotSurjective(String),
    #[error("no rank function: elements {0} and {1} would need conflicting ranks")]
    NotRanked(usize, usize),
}

/// A finite poset with a coloring into a Dynkin diagram.
#[derive(Debug, Clone)]
pub struct ColoredPoset {
    diagram: DynkinDiagram,
    coloring: Vec<usize>,
    covers: Vec<(usize, usize)>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    above: Vec<FixedBitSet>,
    below: Vec<FixedBitSet>,
}

impl PartialEq for ColoredPoset {
    fn eq(&self, other: &Self) -> bool {
        self.diagram == other.diagram && self.coloring == other.coloring && self.covers == other.covers
    }
}

impl Eq for ColoredPoset {}

impl ColoredPoset {
    /// Validates a colored poset whose coloring must be surjective.
    pub fn new(diagram: DynkinDiagram, coloring: Vec<usize>, covers: Vec<(usize, usize)>) -> Result<Self, PosetError> {
        let p = Self::with_partial_coloring(diagram, coloring, covers)?;
        if let Some(c) = (0..p.diagram.len()).find(|&c| !p.coloring.contains(&c)) {
            return Err(PosetError::NotSurjective(p.diagram.name(c).to_string()));
        }
        Ok(p)
    }

    /// Like [`ColoredPoset::new`] but allows colors with no elements, as
    /// happens for filters of a colored poset.
    pub fn with_partial_coloring(
        diagram: DynkinDiagram,
        coloring: Vec<usize>,
        mut covers: Vec<(usize, usize)>,
    ) -> Result<Self, PosetError> {
        let n = coloring.len();
        for (element, &color) in coloring.iter().enumerate() {
            if color >= diagram.len() {
                return Err(PosetError::ColorOutOfRange { element, color, colors: diagram.len() });
            }
        }
        covers.sort_unstable();
        for w in covers.windows(2) {
            if w[0] == w[1] {
                return Err(PosetError::DuplicateCover(w[0].0, w[0].1));
            }
        }
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for &(x, y) in &covers {
            if x >= n || y >= n {
                return Err(PosetError::UnknownElement(x, y));
            }
            if x == y {
                return Err(PosetError::SelfCover(x));
            }
            upper[x].push(y);
            lower[y].push(x);
        }
        let order = topological_order(&lower, &upper).map_err(PosetError::Cycle)?;
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for &y in &order {
            let mut set = FixedBitSet::with_capacity(n);
            for &x in &lower[y] {
                set.union_with(&below[x]);
                set.insert(x);
            }
            below[y] = set;
        }
        for &(x, y) in &covers {
            if lower[y].iter().any(|&z| z != x && below[z].contains(x)) {
                return Err(PosetError::NotHasse(x, y));
            }
        }
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (y, set) in below.iter().enumerate() {
            for x in set.ones() {
                above[x].insert(y);
            }
        }
        Ok(Self { diagram, coloring, covers, upper, lower, above, below })
    }

    /// Builds the poset generated by arbitrary relations `x < y`, keeping
    /// only the covers. Fails if the relations contain a cycle.
    pub fn from_relations(
        diagram: DynkinDiagram,
        coloring: Vec<usize>,
        relations: &[(usize, usize)],
    ) -> Result<Self, PosetError> {
        let n = coloring.len();
        let covers = transitive_reduction(n, relations)?;
        Self::with_partial_coloring(diagram, coloring, covers)
    }

    pub fn len(&self) -> usize {
        self.coloring.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coloring.is_empty()
    }

    pub fn diagram(&self) -> &DynkinDiagram {
        &self.diagram
    }

    pub fn color(&self, x: usize) -> usize {
        self.coloring[x]
    }

    pub fn coloring(&self) -> &[usize] {
        &self.coloring
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Elements covering `x`.
    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    /// Elements covered by `x`.
    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    pub fn is_cover(&self, x: usize, y: usize) -> bool {
        self.upper[x].contains(&y)
    }

    /// `x < y`.
    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.above[x].contains(y)
    }

    /// `x <= y`.
    pub fn le(&self, x: usize, y: usize) -> bool {
        x == y || self.lt(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.le(x, y) || self.le(y, x)
    }

    /// Strictly greater elements.
    pub fn strict_up(&self, x: usize) -> &FixedBitSet {
        &self.above[x]
    }

    /// Strictly smaller elements.
    pub fn strict_down(&self, x: usize) -> &FixedBitSet {
        &self.below[x]
    }

    /// Principal filter `{y : y >= x}`, sorted.
    pub fn principal_filter(&self, x: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.above[x].ones().collect();
        v.push(x);
        v.sort_unstable();
        v
    }

    /// Principal ideal `{y : y <= x}`, sorted.
    pub fn principal_ideal(&self, x: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.below[x].ones().collect();
        v.push(x);
        v.sort_unstable();
        v
    }

    /// Open interval `(x, y)`, sorted.
    pub fn open_interval(&self, x: usize, y: usize) -> Vec<usize> {
        let mut set = self.above[x].clone();
        set.intersect_with(&self.below[y]);
        set.ones().collect()
    }

    /// Elements of color `a`, sorted by id.
    pub fn color_class(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.coloring[x] == a).collect()
    }

    /// Colors that occur, in canonical order.
    pub fn used_colors(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.coloring.iter().copied().collect();
        set.into_iter().collect()
    }

    pub fn is_surjective(&self) -> bool {
        self.used_colors().len() == self.diagram.len()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.upper[x].is_empty()).collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.lower[x].is_empty()).collect()
    }

    /// Elements of `set` with nothing of `set` strictly above them.
    pub fn maximal_in(&self, set: &[usize]) -> Vec<usize> {
        set.iter().copied().filter(|&x| !set.iter().any(|&y| self.lt(x, y))).collect()
    }

    /// Elements of `set` with nothing of `set` strictly below them.
    pub fn minimal_in(&self, set: &[usize]) -> Vec<usize> {
        set.iter().copied().filter(|&x| !set.iter().any(|&y| self.lt(y, x))).collect()
    }

    /// Maximal elements of the color class of `a`.
    pub fn color_maxima(&self, a: usize) -> Vec<usize> {
        self.maximal_in(&self.color_class(a))
    }

    /// Minimal elements of the color class of `a`.
    pub fn color_minima(&self, a: usize) -> Vec<usize> {
        self.minimal_in(&self.color_class(a))
    }

    /// Whether `set` (given as membership flags) is upward closed.
    pub fn is_filter(&self, member: &[bool]) -> bool {
        self.covers.iter().all(|&(x, y)| !member[x] || member[y])
    }

    /// Whether `set` (given as membership flags) is downward closed.
    pub fn is_ideal(&self, member: &[bool]) -> bool {
        self.covers.iter().all(|&(x, y)| !member[y] || member[x])
    }

    /// Same elements and coloring with every cover reversed.
    pub fn order_dual(&self) -> Self {
        let covers = self.covers.iter().map(|&(x, y)| (y, x)).collect();
        Self::with_partial_coloring(self.diagram.clone(), self.coloring.clone(), covers)
            .expect("dual of a valid poset is valid")
    }

    /// Same order, colors moved through the permutation `perm` of the diagram.
    pub fn recolored(&self, perm: &[usize]) -> Self {
        let coloring = self.coloring.iter().map(|&c| perm[c]).collect();
        Self::with_partial_coloring(self.diagram.clone(), coloring, self.covers.clone())
            .expect("recoloring keeps the order valid")
    }

    /// Same order and coloring over a diagram with identical table but new names.
    pub fn with_diagram(&self, diagram: DynkinDiagram) -> Self {
        assert_eq!(diagram.table(), self.diagram.table(), "diagram table must match");
        Self { diagram, ..self.clone() }
    }

    /// The induced subposet on `elements` (in the order given), keeping the
    /// full diagram; the coloring may become non-surjective.
    pub fn induced(&self, elements: &[usize]) -> Self {
        let coloring = elements.iter().map(|&x| self.coloring[x]).collect();
        let mut relations = Vec::new();
        for (i, &x) in elements.iter().enumerate() {
            for (j, &y) in elements.iter().enumerate() {
                if self.lt(x, y) {
                    relations.push((i, j));
                }
            }
        }
        Self::from_relations(self.diagram.clone(), coloring, &relations).expect("induced order is acyclic")
    }

    /// The induced subposet on `elements` over the subdiagram of the colors
    /// it uses.
    pub fn induced_surjective(&self, elements: &[usize]) -> (Self, Vec<usize>) {
        let sub = self.induced(elements);
        let colors = sub.used_colors();
        let mut index = vec![usize::MAX; self.diagram.len()];
        for (i, &c) in colors.iter().enumerate() {
            index[c] = i;
        }
        let coloring = sub.coloring.iter().map(|&c| index[c]).collect();
        let p = Self::with_partial_coloring(self.diagram.restrict(&colors), coloring, sub.covers.clone())
            .expect("restriction is valid");
        (p, colors)
    }

    /// Disjoint union; diagrams are summed block-diagonally.
    pub fn disjoint_union(parts: &[&ColoredPoset]) -> Self {
        let diagrams: Vec<&DynkinDiagram> = parts.iter().map(|p| &p.diagram).collect();
        let diagram = DynkinDiagram::disjoint_union(&diagrams);
        let mut coloring = Vec::new();
        let mut covers = Vec::new();
        let (mut e_off, mut c_off) = (0, 0);
        for p in parts {
            coloring.extend(p.coloring.iter().map(|&c| c + c_off));
            covers.extend(p.covers.iter().map(|&(x, y)| (x + e_off, y + e_off)));
            e_off += p.len();
            c_off += p.diagram.len();
        }
        Self::with_partial_coloring(diagram, coloring, covers).expect("union of valid posets")
    }

    /// The top tree: maximal elements of each color class.
    pub fn top_tree(&self) -> TopTree {
        let mut elements: Vec<usize> = (0..self.diagram.len()).flat_map(|a| self.color_maxima(a)).collect();
        elements.sort_unstable();
        TopTree::from_elements(self, elements)
    }

    /// Elements whose principal filter is a chain.
    pub fn ch_set(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| {
                let up = self.principal_filter(x);
                up.iter().all(|&a| up.iter().all(|&b| self.comparable(a, b)))
            })
            .collect()
    }

    /// Linear extensions listed bottom-up, in lexicographic order.
    pub fn linear_extensions(&self) -> LinearExtensions<'_> {
        LinearExtensions::new(self)
    }

    /// Whether the Hasse diagram is connected (the empty poset counts as connected).
    pub fn is_connected(&self) -> bool {
        self.component_labels().iter().all(|&c| c == 0)
    }

    fn component_labels(&self) -> Vec<usize> {
        let n = self.len();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for root in 0..n {
            if label[root] != usize::MAX {
                continue;
            }
            label[root] = next;
            let mut stack = vec![root];
            while let Some(x) = stack.pop() {
                for &y in self.upper[x].iter().chain(&self.lower[x]) {
                    if label[y] == usize::MAX {
                        label[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Connected components, ordered by smallest element. Each component is
    /// colored surjectively by the subdiagram of the colors it uses.
    pub fn connected_components(&self) -> Vec<Component> {
        let label = self.component_labels();
        let count = label.iter().map(|&l| l + 1).max().unwrap_or(0);
        (0..count)
            .map(|c| {
                let elements: Vec<usize> = (0..self.len()).filter(|&x| label[x] == c).collect();
                let (poset, colors) = self.induced_surjective(&elements);
                Component { poset, elements, colors }
            })
            .collect()
    }

    /// Rank function with `x -> y` implying `rank(x) = rank(y) + 1`.
    ///
    /// Normalization per component: if the top tree has a splitting element
    /// it gets rank `-1`; otherwise the largest rank in the top tree is `0`.
    pub fn rank_function(&self) -> Result<Vec<i64>, PosetError> {
        let n = self.len();
        let mut rank: Vec<Option<i64>> = vec![None; n];
        for root in 0..n {
            if rank[root].is_some() {
                continue;
            }
            rank[root] = Some(0);
            let mut queue = VecDeque::from([root]);
            let mut members = vec![root];
            while let Some(x) = queue.pop_front() {
                let r = rank[x].expect("visited");
                let steps = self.upper[x].iter().map(|&y| (y, r - 1)).chain(self.lower[x].iter().map(|&y| (y, r + 1)));
                for (y, want) in steps {
                    match rank[y] {
                        Some(have) if have != want => return Err(PosetError::NotRanked(x, y)),
                        Some(_) => {}
                        None => {
                            rank[y] = Some(want);
                            members.push(y);
                            queue.push_back(y);
                        }
                    }
                }
            }
            members.sort_unstable();
            let sub = self.induced(&members);
            let tree = sub.top_tree();
            let shift = match tree.shape() {
                Some(shape) => -1 - rank[members[tree.elements[shape.splitting]]].expect("ranked"),
                None => -tree.elements.iter().map(|&t| rank[members[t]].expect("ranked")).max().unwrap_or(0),
            };
            for &m in &members {
                rank[m] = rank[m].map(|r| r + shift);
            }
        }
        Ok(rank.into_iter().map(|r| r.expect("all ranked")).collect())
    }

    /// Graphviz rendering of the Hasse diagram; boxes are labelled by color.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
        for x in 0..self.len() {
            out.push_str(&format!("  {x} [label={}];\n", quote(self.diagram.name(self.coloring[x]))));
        }
        for &(x, y) in &self.covers {
            out.push_str(&format!("  {x} -> {y};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// One connected component with its embedding into the parent poset.
#[derive(Debug, Clone)]
pub struct Component {
    pub poset: ColoredPoset,
    /// Parent element ids, indexed by component element.
    pub elements: Vec<usize>,
    /// Parent color ids, indexed by component color.
    pub colors: Vec<usize>,
}

fn topological_order(lower: &[Vec<usize>], upper: &[Vec<usize>]) -> Result<Vec<usize>, usize> {
    let n = lower.len();
    let mut indeg: Vec<usize> = lower.iter().map(Vec::len).collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for &y in &upper[x] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                queue.push_back(y);
            }
        }
    }
    if order.len() < n {
        let stuck = (0..n).find(|&x| indeg[x] > 0).expect("some element is on a cycle");
        return Err(stuck);
    }
    Ok(order)
}

/// Covers of the order generated by `relations` on `0..n`.
pub fn transitive_reduction(n: usize, relations: &[(usize, usize)]) -> Result<Vec<(usize, usize)>, PosetError> {
    let mut upper = vec![Vec::new(); n];
    let mut lower = vec![Vec::new(); n];
    for &(x, y) in relations {
        if x >= n || y >= n {
            return Err(PosetError::UnknownElement(x, y));
        }
        if x == y {
            return Err(PosetError::SelfCover(x));
        }
        upper[x].push(y);
        lower[y].push(x);
    }
    let order = topological_order(&lower, &upper).map_err(PosetError::Cycle)?;
    let mut below = vec![FixedBitSet::with_capacity(n); n];
    for &y in &order {
        let mut set = FixedBitSet::with_capacity(n);
        for &x in &lower[y] {
            set.union_with(&below[x]);
            set.insert(x);
        }
        below[y] = set;
    }
    let mut covers = Vec::new();
    for y in 0..n {
        for x in below[y].ones() {
            let skipped = below[y].ones().any(|z| z != x && below[z].contains(x));
            if !skipped {
                covers.push((x, y));
            }
        }
    }
    covers.sort_unstable();
    Ok(covers)
}

/// Shape `Y(i; j, k)`: a chain of `i` elements ending at the splitting
/// element, which covers the tops of two chains of lengths `j <= k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct YShape {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

/// A [`YShape`] located inside a top tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocatedShape {
    pub shape: YShape,
    /// Index into [`TopTree::elements`].
    pub splitting: usize,
}

impl std::ops::Deref for LocatedShape {
    type Target = YShape;
    fn deref(&self) -> &YShape {
        &self.shape
    }
}

/// The maximal elements of each color together with their induced order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopTree {
    /// Parent element ids, sorted.
    pub elements: Vec<usize>,
    /// Covers of the induced order, as indices into `elements`.
    pub covers: Vec<(usize, usize)>,
    /// Whether `elements` is upward closed in the parent.
    pub is_filter: bool,
}

impl TopTree {
    fn from_elements(p: &ColoredPoset, elements: Vec<usize>) -> Self {
        let mut relations = Vec::new();
        for (i, &x) in elements.iter().enumerate() {
            for (j, &y) in elements.iter().enumerate() {
                if p.lt(x, y) {
                    relations.push((i, j));
                }
            }
        }
        let covers = transitive_reduction(elements.len(), &relations).expect("subposet is acyclic");
        let mut member = vec![false; p.len()];
        for &x in &elements {
            member[x] = true;
        }
        let is_filter = p.is_filter(&member);
        Self { elements, covers, is_filter }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The `Y(i; j, k)` shape, if the top tree has exactly that form. Chains
    /// and other trees give `None`.
    pub fn shape(&self) -> Option<LocatedShape> {
        let m = self.len();
        let mut up = vec![Vec::new(); m];
        let mut down = vec![Vec::new(); m];
        for &(x, y) in &self.covers {
            up[x].push(y);
            down[y].push(x);
        }
        if up.iter().any(|u| u.len() > 1) || (0..m).filter(|&x| up[x].is_empty()).count() != 1 {
            return None;
        }
        let branching: Vec<usize> = (0..m).filter(|&x| down[x].len() >= 2).collect();
        let [s] = branching[..] else { return None };
        if down[s].len() != 2 {
            return None;
        }
        let mut i = 1;
        let mut x = s;
        while let Some(&y) = up[x].first() {
            i += 1;
            x = y;
        }
        let chain_len = |top: usize| {
            let mut len = 1;
            let mut x = top;
            while let Some(&y) = down[x].first() {
                len += 1;
                x = y;
            }
            len
        };
        let (a, b) = (chain_len(down[s][0]), chain_len(down[s][1]));
        if i + a + b != m {
            return None;
        }
        Some(LocatedShape { shape: YShape { i, j: a.min(b), k: a.max(b) }, splitting: s })
    }

    /// Parent id of the splitting element, if the tree has a `Y` shape.
    pub fn splitting_element(&self) -> Option<usize> {
        self.shape().map(|s| self.elements[s.splitting])
    }
}

/// Iterator over linear extensions, bottom-up, lexicographic by element id.
pub struct LinearExtensions<'a> {
    poset: &'a ColoredPoset,
    pending: Vec<usize>,
    placed: Vec<bool>,
    prefix: Vec<usize>,
    started: bool,
    done: bool,
}

impl<'a> LinearExtensions<'a> {
    fn new(poset: &'a ColoredPoset) -> Self {
        let pending = (0..poset.len()).map(|x| poset.lower[x].len()).collect();
        Self { poset, pending, placed: vec![false; poset.len()], prefix: Vec::new(), started: false, done: false }
    }

    fn available_from(&self, start: usize) -> Option<usize> {
        (start..self.poset.len()).find(|&x| !self.placed[x] && self.pending[x] == 0)
    }

    fn place(&mut self, x: usize) {
        self.placed[x] = true;
        self.prefix.push(x);
        for &y in &self.poset.upper[x] {
            self.pending[y] -= 1;
        }
    }

    fn unplace(&mut self) -> Option<usize> {
        let x = self.prefix.pop()?;
        self.placed[x] = false;
        for &y in &self.poset.upper[x] {
            self.pending[y] += 1;
        }
        Some(x)
    }

    fn fill(&mut self) {
        while let Some(x) = self.available_from(0) {
            self.place(x);
        }
    }
}

impl Iterator for LinearExtensions<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill();
            return Some(self.prefix.clone());
        }
        loop {
            let Some(last) = self.unplace() else {
                self.done = true;
                return None;
            };
            if let Some(x) = self.available_from(last + 1) {
                self.place(x);
                self.fill();
                return Some(self.prefix.clone());
            }
        }
    }
}

/// A colored isomorphism: an order isomorphism on elements together with a
/// pairing-preserving bijection of diagram colors compatible with colorings.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Isomorphism {
    pub elements: Vec<usize>,
    pub colors: Vec<usize>,
}

impl Isomorphism {
    pub fn inverse(&self) -> Self {
        let invert = |v: &[usize]| {
            let mut out = vec![0; v.len()];
            for (i, &j) in v.iter().enumerate() {
                out[j] = i;
            }
            out
        };
        Self { elements: invert(&self.elements), colors: invert(&self.colors) }
    }

    /// Checks the witness directly against both posets.
    pub fn verify(&self, p1: &ColoredPoset, p2: &ColoredPoset) -> bool {
        let n = p1.len();
        let m = p1.diagram.len();
        if p2.len() != n || p2.diagram.len() != m || self.elements.len() != n || self.colors.len() != m {
            return false;
        }
        let bijective = |v: &[usize], k: usize| {
            let mut seen = vec![false; k];
            v.iter().all(|&x| x < k && !std::mem::replace(&mut seen[x], true))
        };
        if !bijective(&self.elements, n) || !bijective(&self.colors, m) {
            return false;
        }
        let theta_ok =
            (0..m).all(|a| (0..m).all(|b| p1.diagram.theta(a, b) == p2.diagram.theta(self.colors[a], self.colors[b])));
        let color_ok = (0..n).all(|x| self.colors[p1.color(x)] == p2.color(self.elements[x]));
        let order_ok = p1.covers.len() == p2.covers.len()
            && p1.covers.iter().all(|&(x, y)| p2.is_cover(self.elements[x], self.elements[y]));
        theta_ok && color_ok && order_ok
    }
}

/// Finds a colored isomorphism `p1 -> p2`, if any. Deterministic: candidates
/// are tried in increasing id order.
pub fn colored_isomorphism(p1: &ColoredPoset, p2: &ColoredPoset) -> Option<Isomorphism> {
    let n = p1.len();
    if n != p2.len() || p1.diagram.len() != p2.diagram.len() || p1.covers.len() != p2.covers.len() {
        return None;
    }
    let sig1: Vec<_> = (0..n).map(|x| element_signature(p1, x)).collect();
    let sig2: Vec<_> = (0..n).map(|x| element_signature(p2, x)).collect();
    let mut sorted1 = sig1.clone();
    let mut sorted2 = sig2.clone();
    sorted1.sort();
    sorted2.sort();
    if sorted1 != sorted2 {
        return None;
    }
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in p1.upper[x].iter().chain(&p1.lower[x]) {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    let mut search = IsoSearch {
        p1,
        p2,
        sig1,
        sig2,
        order,
        emap: vec![None; n],
        eused: vec![false; n],
        cmap: vec![None; p1.diagram.len()],
        cinv: vec![None; p2.diagram.len()],
    };
    search.step(0)
}

type Signature = (usize, usize, usize, usize, usize, Vec<(i64, i64)>);

fn element_signature(p: &ColoredPoset, x: usize) -> Signature {
    let c = p.color(x);
    let mut row: Vec<(i64, i64)> =
        p.diagram.neighbors(c).map(|b| (p.diagram.theta(c, b), p.diagram.theta(b, c))).collect();
    row.sort_unstable();
    (
        p.upper[x].len(),
        p.lower[x].len(),
        p.above[x].count_ones(..),
        p.below[x].count_ones(..),
        p.coloring.iter().filter(|&&d| d == c).count(),
        row,
    )
}

struct IsoSearch<'a> {
    p1: &'a ColoredPoset,
    p2: &'a ColoredPoset,
    sig1: Vec<Signature>,
    sig2: Vec<Signature>,
    order: Vec<usize>,
    emap: Vec<Option<usize>>,
    eused: Vec<bool>,
    cmap: Vec<Option<usize>>,
    cinv: Vec<Option<usize>>,
}

impl IsoSearch<'_> {
    fn step(&mut self, depth: usize) -> Option<Isomorphism> {
        if depth == self.order.len() {
            let colors = self.p1.diagram.extend_isomorphism(&self.p2.diagram, &self.cmap)?;
            let elements = self.emap.iter().map(|m| m.expect("complete")).collect();
            return Some(Isomorphism { elements, colors });
        }
        let x = self.order[depth];
        let cx = self.p1.color(x);
        for y in 0..self.p2.len() {
            if self.eused[y] || self.sig1[x] != self.sig2[y] {
                continue;
            }
            let cy = self.p2.color(y);
            let fresh_color = match (self.cmap[cx], self.cinv[cy]) {
                (Some(c), _) if c != cy => continue,
                (Some(_), _) => false,
                (None, Some(_)) => continue,
                (None, None) => true,
            };
            if fresh_color && !self.colors_consistent(cx, cy) {
                continue;
            }
            if !self.covers_consistent(x, y) {
                continue;
            }
            self.emap[x] = Some(y);
            self.eused[y] = true;
            if fresh_color {
                self.cmap[cx] = Some(cy);
                self.cinv[cy] = Some(cx);
            }
            if let Some(found) = self.step(depth + 1) {
                return Some(found);
            }
            self.emap[x] = None;
            self.eused[y] = false;
            if fresh_color {
                self.cmap[cx] = None;
                self.cinv[cy] = None;
            }
        }
        None
    }

    fn colors_consistent(&self, cx: usize, cy: usize) -> bool {
        let (d1, d2) = (&self.p1.diagram, &self.p2.diagram);
        (0..d1.len()).all(|c| match self.cmap[c] {
            Some(e) => d1.theta(cx, c) == d2.theta(cy, e) && d1.theta(c, cx) == d2.theta(e, cy),
            None => true,
        })
    }

    fn covers_consistent(&self, x: usize, y: usize) -> bool {
        let (p1, p2) = (self.p1, self.p2);
        (0..p1.len()).all(|z| match self.emap[z] {
            Some(w) => {
                p1.is_cover(x, z) == p2.is_cover(y, w)
                    && p1.is_cover(z, x) == p2.is_cover(w, y)
                    && p1.lt(x, z) == p2.lt(y, w)
                    && p1.lt(z, x) == p2.lt(w, y)
            }
            None => true,
        })
    }
}
