//! The representation carried by filter/ideal splits.
//!
//! Basis vectors are the splits `(F, I)` of a poset. For each color `a`,
//! `X_a` moves the color-`a` minimal element of `F` into `I`, `Y_a` moves the
//! color-`a` maximal element of `I` back, and `H_a` is diagonal with entry
//! `[a colors a maximal element of I] - [a colors a minimal element of F]`.
//! Everything is exact integer arithmetic.

use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dynkin::DynkinDiagram;
use crate::poset::ColoredPoset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepresentationError {
    #[error("elements {x} and {y} share a color but are incomparable")]
    EcViolated { x: usize, y: usize },
}

/// Square integer matrix stored by rows, zero entries omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    dim: usize,
    rows: Vec<BTreeMap<usize, i64>>,
}

impl SparseMatrix {
    pub fn zero(dim: usize) -> Self {
        Self { dim, rows: vec![BTreeMap::new(); dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.add_entry(i, i, 1);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i].get(&j).copied().unwrap_or(0)
    }

    fn add_entry(&mut self, i: usize, j: usize, v: i64) {
        if v == 0 {
            return;
        }
        let e = self.rows[i].entry(j).or_insert(0);
        *e += v;
        if *e == 0 {
            self.rows[i].remove(&j);
        }
    }

    /// Nonzero entries as `(row, column, value)`, row-major.
    pub fn entries(&self) -> Vec<(usize, usize, i64)> {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(&j, &v)| (i, j, v))).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| r.keys().all(|&j| j == i))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zero(self.dim);
        for (i, row) in self.rows.iter().enumerate() {
            for (&k, &a) in row {
                for (&j, &b) in &other.rows[k] {
                    out.add_entry(i, j, a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    fn combine(&self, other: &Self, sign: i64) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (i, j, v) in other.entries() {
            out.add_entry(i, j, sign * v);
        }
        out
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero(self.dim);
        for (i, j, v) in self.entries() {
            out.add_entry(i, j, c * v);
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (i, j, v) in self.entries() {
            out.add_entry(j, i, v);
        }
        out
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Smallest column with a nonzero entry: a basis vector the matrix does
    /// not kill.
    pub fn first_nonzero_column(&self) -> Option<usize> {
        self.rows.iter().filter_map(|r| r.keys().next().copied()).min()
    }

    pub fn to_coo(&self) -> CooMatrix {
        CooMatrix { dim: self.dim, entries: self.entries() }
    }
}

/// Coordinate-list export of a [`SparseMatrix`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CooMatrix {
    pub dim: usize,
    pub entries: Vec<(usize, usize, i64)>,
}

/// A filter/ideal partition. Both sides are sorted element ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Split {
    pub filter: Vec<usize>,
    pub ideal: Vec<usize>,
}

/// Every split, ordered by ideal size and then lexicographically by ideal.
pub fn splits(p: &ColoredPoset) -> Vec<Split> {
    ideal_bitsets(p)
        .into_iter()
        .map(|ideal| Split {
            filter: (0..p.len()).filter(|&x| !ideal.contains(x)).collect(),
            ideal: ideal.ones().collect(),
        })
        .collect()
}

fn ideal_bitsets(p: &ColoredPoset) -> Vec<FixedBitSet> {
    // Bottom-up order so every lower cover is decided before its cover.
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&x| p.strict_down(x).count_ones(..));
    let mut out = Vec::new();
    let mut current = FixedBitSet::with_capacity(p.len());
    fn walk(p: &ColoredPoset, order: &[usize], k: usize, cur: &mut FixedBitSet, out: &mut Vec<FixedBitSet>) {
        let Some(&x) = order.get(k) else {
            out.push(cur.clone());
            return;
        };
        walk(p, order, k + 1, cur, out);
        if p.lower_covers(x).iter().all(|&u| cur.contains(u)) {
            cur.insert(x);
            walk(p, order, k + 1, cur, out);
            cur.set(x, false);
        }
    }
    walk(p, &order, 0, &mut current, &mut out);
    out.sort_by(|a, b| a.count_ones(..).cmp(&b.count_ones(..)).then_with(|| a.ones().cmp(b.ones())));
    out
}

/// `H` eigenvalues of a split, indexed by color.
pub fn weight_of_split(p: &ColoredPoset, s: &Split) -> Vec<i64> {
    let mut w = vec![0; p.diagram().len()];
    let in_ideal = |x: usize| s.ideal.binary_search(&x).is_ok();
    for &x in &s.ideal {
        if p.upper_covers(x).iter().all(|&y| !in_ideal(y)) {
            w[p.color(x)] += 1;
        }
    }
    for &x in &s.filter {
        if p.lower_covers(x).iter().all(|&y| in_ideal(y)) {
            w[p.color(x)] -= 1;
        }
    }
    w
}

/// Operators for every color of the diagram, on the canonical split basis.
#[derive(Debug, Clone)]
pub struct Representation {
    diagram: DynkinDiagram,
    splits: Vec<Split>,
    x: Vec<SparseMatrix>,
    y: Vec<SparseMatrix>,
    h: Vec<SparseMatrix>,
}

impl Representation {
    pub fn build(p: &ColoredPoset) -> Result<Self, RepresentationError> {
        for x in 0..p.len() {
            for y in x + 1..p.len() {
                if p.color(x) == p.color(y) && !p.comparable(x, y) {
                    return Err(RepresentationError::EcViolated { x, y });
                }
            }
        }
        let bits = ideal_bitsets(p);
        let index: HashMap<&FixedBitSet, usize> = bits.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let colors = p.diagram().len();
        let dim = bits.len();
        let mut x = vec![SparseMatrix::zero(dim); colors];
        let mut h = vec![SparseMatrix::zero(dim); colors];
        for (s, ideal) in bits.iter().enumerate() {
            for m in 0..p.len() {
                if ideal.contains(m) {
                    continue;
                }
                // m is minimal in the filter
                if p.lower_covers(m).iter().all(|&u| ideal.contains(u)) {
                    let mut next = ideal.clone();
                    next.insert(m);
                    x[p.color(m)].add_entry(index[&next], s, 1);
                }
            }
        }
        let splits: Vec<Split> = splits(p);
        for (s, split) in splits.iter().enumerate() {
            for (a, w) in weight_of_split(p, split).into_iter().enumerate() {
                h[a].add_entry(s, s, w);
            }
        }
        let y = x.iter().map(SparseMatrix::transpose).collect();
        Ok(Self { diagram: p.diagram().clone(), splits, x, y, h })
    }

    pub fn dimension(&self) -> usize {
        self.splits.len()
    }

    pub fn splits(&self) -> &[Split] {
        &self.splits
    }

    pub fn x(&self, a: usize) -> &SparseMatrix {
        &self.x[a]
    }

    pub fn y(&self, a: usize) -> &SparseMatrix {
        &self.y[a]
    }

    pub fn h(&self, a: usize) -> &SparseMatrix {
        &self.h[a]
    }

    /// Checks every generator relation. Without `full_sweep`, the Serre
    /// relations are checked for adjacent pairs and for one distant partner
    /// per color; distant pairs only assert that the generators commute.
    pub fn verify(&self, full_sweep: bool) -> RelationReport {
        let n = self.diagram.len();
        let mut checks = Vec::new();
        let mut push = |relation, a, b, m: SparseMatrix| {
            let offending_split = m.first_nonzero_column();
            checks.push(RelationCheck { relation, a, b, passed: offending_split.is_none(), offending_split });
        };
        for a in 0..n {
            let mut distant_checked = false;
            for b in 0..n {
                if a != b {
                    let distant = !self.diagram.adjacent(a, b);
                    if full_sweep || !distant || !distant_checked {
                        distant_checked |= distant;
                        let depth = 1 - self.diagram.theta(b, a);
                        push(RelationKind::XX, a, b, nested(&self.x[a], &self.x[b], depth));
                        push(RelationKind::YY, a, b, nested(&self.y[a], &self.y[b], depth));
                    }
                }
                push(RelationKind::HH, a, b, self.h[b].commutator(&self.h[a]));
                let t = self.diagram.theta(a, b);
                push(RelationKind::HX, a, b, self.h[b].commutator(&self.x[a]).sub(&self.x[a].scale(t)));
                push(RelationKind::HY, a, b, self.h[b].commutator(&self.y[a]).add(&self.y[a].scale(t)));
                let xy = self.x[a].commutator(&self.y[b]);
                push(RelationKind::XY, a, b, if a == b { xy.sub(&self.h[a]) } else { xy });
            }
        }
        let mut eigenvalue_violation = None;
        'outer: for (a, h) in self.h.iter().enumerate() {
            for (s, _, v) in h.entries() {
                if !(-1..=1).contains(&v) || !h.is_diagonal() {
                    eigenvalue_violation = Some(EigenvalueViolation { color: a, split: s, value: v });
                    break 'outer;
                }
            }
        }
        let holds = eigenvalue_violation.is_none() && checks.iter().all(|c| c.passed);
        RelationReport { dimension: self.dimension(), holds, checks, eigenvalue_violation }
    }
}

/// `[a, [a, ... [a, b]]]` with `depth` copies of `a`.
fn nested(a: &SparseMatrix, b: &SparseMatrix, depth: i64) -> SparseMatrix {
    let mut m = b.clone();
    for _ in 0..depth {
        m = a.commutator(&m);
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RelationKind {
    XX,
    YY,
    HH,
    HX,
    HY,
    XY,
}

impl RelationKind {
    pub const ALL: [RelationKind; 6] =
        [RelationKind::XX, RelationKind::YY, RelationKind::HH, RelationKind::HX, RelationKind::HY, RelationKind::XY];
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: RelationKind,
    pub a: usize,
    pub b: usize,
    pub passed: bool,
    /// A split on which the two sides differ.
    pub offending_split: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenvalueViolation {
    pub color: usize,
    pub split: usize,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub dimension: usize,
    pub holds: bool,
    pub checks: Vec<RelationCheck>,
    pub eigenvalue_violation: Option<EigenvalueViolation>,
}

impl RelationReport {
    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn passed(&self, kind: RelationKind) -> bool {
        self.checks.iter().filter(|c| c.relation == kind).all(|c| c.passed)
    }
}

/// Builds the operators and checks every relation with a full sweep.
pub fn verify_relations(p: &ColoredPoset) -> Result<RelationReport, RepresentationError> {
    Ok(Representation::build(p)?.verify(true))
}
