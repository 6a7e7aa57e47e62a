//! Dynkin diagrams as pairing tables.
//!
//! A diagram is a finite list of named colors together with integers
//! `theta[a][b]`. Colors are referred to by their index into that list; the
//! list order is the canonical order used for every deterministic output.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynkinError {
    #[error("pairing table has {rows} rows but {colors} colors")]
    NotSquare { rows: usize, colors: usize },
    #[error("row {row} of the pairing table has {len} entries, expected {colors}")]
    RaggedRow { row: usize, len: usize, colors: usize },
    #[error("color name {0:?} appears more than once")]
    DuplicateColor(String),
    #[error("diagonal entry theta[{color}][{color}] is {value}, expected 2")]
    DiagonalNotTwo { color: String, value: i64 },
    #[error("off-diagonal entry theta[{a}][{b}] is {value}, must be <= 0")]
    PositiveOffDiagonal { a: String, b: String, value: i64 },
    #[error("theta[{a}][{b}] is 0 but theta[{b}][{a}] is {reverse}")]
    AsymmetricZero { a: String, b: String, reverse: i64 },
    #[error("diagram is not connected")]
    NotConnected,
}

/// A validated pairing table: `theta[a][a] = 2`, off-diagonal entries are
/// non-positive, and zeros are symmetric.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DynkinDiagram {
    names: Vec<String>,
    theta: Vec<Vec<i64>>,
}

/// Serialized form of a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramDoc {
    pub colors: Vec<String>,
    pub theta: Vec<Vec<i64>>,
}

impl DynkinDiagram {
    /// Validates a raw pairing table.
    pub fn validate(names: Vec<String>, theta: Vec<Vec<i64>>) -> Result<Self, DynkinError> {
        let n = names.len();
        if theta.len() != n {
            return Err(DynkinError::NotSquare { rows: theta.len(), colors: n });
        }
        for (row, entries) in theta.iter().enumerate() {
            if entries.len() != n {
                return Err(DynkinError::RaggedRow { row, len: entries.len(), colors: n });
            }
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(DynkinError::DuplicateColor(name.clone()));
            }
        }
        for a in 0..n {
            if theta[a][a] != 2 {
                return Err(DynkinError::DiagonalNotTwo { color: names[a].clone(), value: theta[a][a] });
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && theta[a][b] > 0 {
                    return Err(DynkinError::PositiveOffDiagonal {
                        a: names[a].clone(),
                        b: names[b].clone(),
                        value: theta[a][b],
                    });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && theta[a][b] == 0 && theta[b][a] != 0 {
                    return Err(DynkinError::AsymmetricZero {
                        a: names[a].clone(),
                        b: names[b].clone(),
                        reverse: theta[b][a],
                    });
                }
            }
        }
        Ok(Self { names, theta })
    }

    /// Builds a diagram from edges `(a, b, theta_ab, theta_ba)`.
    pub fn from_edges(names: Vec<String>, edges: &[(usize, usize, i64, i64)]) -> Result<Self, DynkinError> {
        let n = names.len();
        let mut theta = vec![vec![0; n]; n];
        for (a, row) in theta.iter_mut().enumerate() {
            row[a] = 2;
        }
        for &(a, b, ab, ba) in edges {
            theta[a][b] = ab;
            theta[b][a] = ba;
        }
        Self::validate(names, theta)
    }

    /// Simply laced diagram on colors named `1..=n` with the given edges.
    pub fn simply_laced(n: usize, edges: &[(usize, usize)]) -> Self {
        let edges: Vec<_> = edges.iter().map(|&(a, b)| (a, b, -1, -1)).collect();
        Self::from_edges(numbered_names(n), &edges).expect("simply laced edges are valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, color: usize) -> &str {
        &self.names[color]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn theta(&self, a: usize, b: usize) -> i64 {
        self.theta[a][b]
    }

    pub fn table(&self) -> &[Vec<i64>] {
        &self.theta
    }

    /// `a ~ b`, i.e. `theta[a][b] < 0`. Never true for `a == b`.
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.theta[a][b] < 0
    }

    /// Colors adjacent to `a`, in canonical order.
    pub fn neighbors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&b| self.adjacent(a, b))
    }

    pub fn degree(&self, a: usize) -> usize {
        self.neighbors(a).count()
    }

    pub fn is_simply_laced(&self) -> bool {
        self.theta.iter().flatten().all(|&t| t == 2 || t == 0 || t == -1)
    }

    /// Whether the underlying simple graph is a forest.
    pub fn is_acyclic(&self) -> bool {
        self.find_cycle().is_none()
    }

    /// A cycle in the underlying simple graph, if one exists.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        let n = self.len();
        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(a) = queue.pop_front() {
                for b in self.neighbors(a) {
                    if parent[a] == Some(b) {
                        continue;
                    }
                    if seen[b] {
                        return Some(self.close_cycle(&parent, a, b));
                    }
                    seen[b] = true;
                    parent[b] = Some(a);
                    queue.push_back(b);
                }
            }
        }
        None
    }

    fn close_cycle(&self, parent: &[Option<usize>], a: usize, b: usize) -> Vec<usize> {
        let path = |mut v: usize| {
            let mut out = vec![v];
            while let Some(p) = parent[v] {
                out.push(p);
                v = p;
            }
            out
        };
        let pa = path(a);
        let pb = path(b);
        let meet = *pa.iter().find(|v| pb.contains(v)).expect("same BFS tree");
        let mut cycle: Vec<usize> = pa.iter().copied().take_while(|&v| v != meet).collect();
        cycle.push(meet);
        let tail: Vec<usize> = pb.iter().copied().take_while(|&v| v != meet).collect();
        cycle.extend(tail.into_iter().rev());
        cycle
    }

    /// Connected components of the underlying graph, each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for root in 0..n {
            if comp[root] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![root];
            comp[root] = id;
            let mut i = 0;
            while i < members.len() {
                let a = members[i];
                for b in self.neighbors(a) {
                    if comp[b] == usize::MAX {
                        comp[b] = id;
                        members.push(b);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// The full subdiagram on `colors`, in the order given.
    pub fn restrict(&self, colors: &[usize]) -> Self {
        let names = colors.iter().map(|&c| self.names[c].clone()).collect();
        let theta = colors.iter().map(|&a| colors.iter().map(|&b| self.theta[a][b]).collect()).collect();
        Self { names, theta }
    }

    /// Block-diagonal sum. Names are kept when they are globally distinct,
    /// otherwise every name is prefixed by its part index.
    pub fn disjoint_union(parts: &[&DynkinDiagram]) -> Self {
        let total: usize = parts.iter().map(|d| d.len()).sum();
        let mut all: Vec<&String> = parts.iter().flat_map(|d| d.names.iter()).collect();
        all.sort();
        all.dedup();
        let prefix = all.len() != total;
        let mut names = Vec::with_capacity(total);
        let mut theta = vec![vec![0; total]; total];
        let mut offset = 0;
        for (p, d) in parts.iter().enumerate() {
            for a in 0..d.len() {
                names.push(if prefix { format!("{p}:{}", d.names[a]) } else { d.names[a].clone() });
                for b in 0..d.len() {
                    theta[offset + a][offset + b] = d.theta[a][b];
                }
            }
            offset += d.len();
        }
        Self { names, theta }
    }

    /// Same pairing table under new names.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self, DynkinError> {
        Self::validate(names, self.theta.clone())
    }

    /// All bijections `phi` from this diagram's colors to `other`'s with
    /// `theta(a,b) = other.theta(phi[a], phi[b])`, sorted lexicographically.
    pub fn isomorphisms_to(&self, other: &DynkinDiagram) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.search_isomorphisms(other, &vec![None; self.len()], usize::MAX, &mut out);
        out.sort();
        out
    }

    /// First isomorphism extending `partial` (entries `Some(b)` are fixed).
    pub fn extend_isomorphism(&self, other: &DynkinDiagram, partial: &[Option<usize>]) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        self.search_isomorphisms(other, partial, 1, &mut out);
        out.pop()
    }

    /// Diagram automorphisms, lexicographically sorted; the identity is first.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        self.isomorphisms_to(self)
    }

    fn search_isomorphisms(
        &self,
        other: &DynkinDiagram,
        partial: &[Option<usize>],
        limit: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = self.len();
        if other.len() != n {
            return;
        }
        let sig_a: Vec<_> = (0..n).map(|a| self.signature(a)).collect();
        let sig_b: Vec<_> = (0..n).map(|b| other.signature(b)).collect();
        let mut map: Vec<Option<usize>> = partial.to_vec();
        let mut used = vec![false; n];
        for (a, m) in partial.iter().enumerate() {
            if let Some(b) = *m {
                if used[b] || sig_a[a] != sig_b[b] {
                    return;
                }
                used[b] = true;
            }
        }
        for a in 0..n {
            for c in 0..n {
                if let (Some(x), Some(y)) = (map[a], map[c]) {
                    if self.theta[a][c] != other.theta[x][y] {
                        return;
                    }
                }
            }
        }
        // BFS order keeps every new color next to an assigned one when possible.
        let mut order: Vec<usize> = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        let mut starts: Vec<usize> = (0..n).filter(|&a| map[a].is_some()).collect();
        starts.extend((0..n).filter(|&a| map[a].is_none()));
        for s in starts {
            if placed[s] {
                continue;
            }
            placed[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(a) = queue.pop_front() {
                order.push(a);
                for b in self.neighbors(a) {
                    if !placed[b] {
                        placed[b] = true;
                        queue.push_back(b);
                    }
                }
            }
        }
        let order: Vec<usize> = order.into_iter().filter(|&a| map[a].is_none()).collect();
        self.iso_step(other, &order, 0, &sig_a, &sig_b, &mut map, &mut used, limit, out);
    }

    #[allow(clippy::too_many_arguments)]
    fn iso_step(
        &self,
        other: &DynkinDiagram,
        order: &[usize],
        depth: usize,
        sig_a: &[Vec<(i64, i64)>],
        sig_b: &[Vec<(i64, i64)>],
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        limit: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if out.len() >= limit {
            return;
        }
        if depth == order.len() {
            out.push(map.iter().map(|m| m.expect("complete map")).collect());
            return;
        }
        let a = order[depth];
        for b in 0..other.len() {
            if used[b] || sig_a[a] != sig_b[b] {
                continue;
            }
            let consistent = (0..self.len()).all(|c| match map[c] {
                Some(y) => self.theta[a][c] == other.theta[b][y] && self.theta[c][a] == other.theta[y][b],
                None => true,
            });
            if !consistent {
                continue;
            }
            map[a] = Some(b);
            used[b] = true;
            self.iso_step(other, order, depth + 1, sig_a, sig_b, map, used, limit, out);
            map[a] = None;
            used[b] = false;
            if out.len() >= limit {
                return;
            }
        }
    }

    /// Sorted list of `(theta_ab, theta_ba)` over neighbors `b` of `a`.
    fn signature(&self, a: usize) -> Vec<(i64, i64)> {
        let mut s: Vec<_> = self.neighbors(a).map(|b| (self.theta[a][b], self.theta[b][a])).collect();
        s.sort_unstable();
        s
    }

    /// Graphviz rendering: single edges are undirected, multiple edges become
    /// a pair of arrows labelled with `-theta`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dynkin {\n  node [shape=circle];\n");
        for name in &self.names {
            out.push_str(&format!("  {};\n", quote(name)));
        }
        for a in 0..self.len() {
            for b in (a + 1)..self.len() {
                let (ab, ba) = (self.theta[a][b], self.theta[b][a]);
                if ab == 0 {
                    continue;
                }
                let (na, nb) = (quote(&self.names[a]), quote(&self.names[b]));
                if ab * ba == 1 {
                    out.push_str(&format!("  {na} -> {nb} [dir=none];\n"));
                } else {
                    out.push_str(&format!("  {na} -> {nb} [label=\"{}\"];\n", -ab));
                    out.push_str(&format!("  {nb} -> {na} [label=\"{}\"];\n", -ba));
                }
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_doc(&self) -> DiagramDoc {
        DiagramDoc { colors: self.names.clone(), theta: self.theta.clone() }
    }

    pub fn from_doc(doc: DiagramDoc) -> Result<Self, DynkinError> {
        Self::validate(doc.colors, doc.theta)
    }

    /// Recognizes the finite types that carry minuscule posets: `A_n`,
    /// `B_n`, `C_n`, `D_n`, `E_6`, `E_7`. Other finite types (`E_8`, `F_4`,
    /// `G_2`) are reported as unrecognized.
    ///
    /// When several numberings fit, the one agreeing with the color names
    /// (read as integers) is preferred, else the lexicographically first.
    pub fn recognize_finite_type(&self) -> Result<Option<FiniteType>, DynkinError> {
        if self.is_empty() || !self.is_connected() {
            return Err(DynkinError::NotConnected);
        }
        let n = self.len();
        for letter in TypeLetter::ALL {
            let Some(template) = finite_type_template(letter, n) else { continue };
            let isos = self.isomorphisms_to(&template);
            if isos.is_empty() {
                continue;
            }
            let by_name =
                isos.iter().find(|phi| phi.iter().enumerate().all(|(c, &k)| self.names[c] == (k + 1).to_string()));
            let phi = by_name.unwrap_or(&isos[0]);
            return Ok(Some(FiniteType {
                letter,
                rank: n,
                numbering: phi.iter().map(|&k| k + 1).collect(),
                automorphisms: self.automorphisms(),
            }));
        }
        Ok(None)
    }
}

impl fmt::Display for DynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names.join(" "))
    }
}

pub(crate) fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn numbered_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TypeLetter {
    A,
    B,
    C,
    D,
    E,
}

impl TypeLetter {
    pub const ALL: [TypeLetter; 5] = [TypeLetter::A, TypeLetter::B, TypeLetter::C, TypeLetter::D, TypeLetter::E];
}

impl fmt::Display for TypeLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeLetter::A => "A",
            TypeLetter::B => "B",
            TypeLetter::C => "C",
            TypeLetter::D => "D",
            TypeLetter::E => "E",
        };
        f.write_str(s)
    }
}

impl FromStr for TypeLetter {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(TypeLetter::A),
            "B" => Ok(TypeLetter::B),
            "C" => Ok(TypeLetter::C),
            "D" => Ok(TypeLetter::D),
            "E" => Ok(TypeLetter::E),
            other => Err(format!("unknown type letter {other:?}")),
        }
    }
}

/// A recognized finite type with its node numbering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteType {
    pub letter: TypeLetter,
    pub rank: usize,
    /// `numbering[color]` is the node number in `1..=rank`.
    pub numbering: Vec<usize>,
    /// Automorphisms of the recognized diagram, as color permutations.
    pub automorphisms: Vec<Vec<usize>>,
}

impl FiniteType {
    /// Color carrying node number `k`.
    pub fn color_of_node(&self, k: usize) -> Option<usize> {
        self.numbering.iter().position(|&m| m == k)
    }
}

/// The template diagram of a finite type on colors named `1..=n`.
///
/// Numbering:
/// - `A_n`: path `1 - 2 - ... - n`.
/// - `B_n`: path with a double edge between `n-1` and `n`, `n` short:
///   `theta[n-1][n] = -2`, `theta[n][n-1] = -1`.
/// - `C_n`: same path, `n` long: `theta[n][n-1] = -2`, `theta[n-1][n] = -1`.
/// - `D_n`: path `1 - ... - n-2`, with `n-1` and `n` both attached to `n-2`.
/// - `E_6`: path `1 - 2 - 3 - 4 - 5`, with `6` attached to `3`.
/// - `E_7`: path `1 - 2 - 3 - 4 - 5 - 6`, with `7` attached to `3`.
///
/// The pairing table is the transpose of the Cartan matrix `a_ij =
/// <alpha_i^vee, alpha_j>`, i.e. `theta[i][j] = a_ji`.
pub fn finite_type_template(letter: TypeLetter, n: usize) -> Option<DynkinDiagram> {
    let path = |len: usize| -> Vec<(usize, usize, i64, i64)> { (1..len).map(|k| (k - 1, k, -1, -1)).collect() };
    let edges = match letter {
        TypeLetter::A if n >= 1 => path(n),
        TypeLetter::B if n >= 2 => {
            let mut e = path(n - 1);
            e.push((n - 2, n - 1, -2, -1));
            e
        }
        TypeLetter::C if n >= 3 => {
            let mut e = path(n - 1);
            e.push((n - 2, n - 1, -1, -2));
            e
        }
        TypeLetter::D if n >= 4 => {
            let mut e = path(n - 2);
            e.push((n - 3, n - 2, -1, -1));
            e.push((n - 3, n - 1, -1, -1));
            e
        }
        TypeLetter::E if n == 6 => {
            let mut e = path(5);
            e.push((2, 5, -1, -1));
            e
        }
        TypeLetter::E if n == 7 => {
            let mut e = path(6);
            e.push((2, 6, -1, -1));
            e
        }
        _ => return None,
    };
    Some(DynkinDiagram::from_edges(numbered_names(n), &edges).expect("templates are valid"))
}

/// Cyclic diagram on `n >= 3` colors named `0..n`, single edges between
/// `m` and `m+1 mod n`.
pub fn cyclic_diagram(n: usize) -> Option<DynkinDiagram> {
    if n < 3 {
        return None;
    }
    let edges: Vec<_> = (0..n).map(|m| (m, (m + 1) % n, -1, -1)).collect();
    let names = (0..n).map(|m| m.to_string()).collect();
    Some(DynkinDiagram::from_edges(names, &edges).expect("cycle is valid"))
}
