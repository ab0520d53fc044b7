//! Coxeter graphs: generators, edge labels, the line-oriented text format and
//! the graph statistics used by the second-homology formula.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::unionfind::UnionFind;

/// Coxeter matrix entry `m(s, t)` for distinct generators.
///
/// `Finite(2)` is the implicit default (commuting generators) and is never
/// stored inside a [`CoxeterGraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Finite(u32),
    Infinity,
}

impl Label {
    /// True for labels drawn as an edge: `m >= 3` or `m = inf`.
    pub fn is_edge(self) -> bool {
        match self {
            Label::Finite(m) => m >= 3,
            Label::Infinity => true,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinity => None,
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Label::Finite(m) if m % 2 == 1)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("line {line}: unknown vertex `{name}`")]
    UnknownVertex { line: usize, name: String },
    #[error("line {line}: label {label} is out of range (labels must be >= 2 or `inf`)")]
    LabelOutOfRange { line: usize, label: i64 },
    #[error("line {line}: edge {u}-{v} redeclared with label {new}, previously {old}")]
    DuplicateEdge {
        line: usize,
        u: String,
        v: String,
        old: Label,
        new: Label,
    },
    #[error("line {line}: {message}")]
    SyntaxError { line: usize, message: String },
    #[error("generator index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("a generator cannot be paired with itself")]
    SelfPair,
}

/// A pair of distinct commuting generators (label exactly 2), stored with
/// the smaller index first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NonEdge(pub usize, pub usize);

/// Symmetric labeled graph over a finite ordered set of generators.
///
/// Generators are addressed by their declaration index. Only labels `>= 3`
/// and `inf` are stored; every other pair has label 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterGraph {
    names: Vec<String>,
    labels: BTreeMap<(usize, usize), Label>,
}

fn ordered(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

impl CoxeterGraph {
    /// Graph with the given generators and no edges.
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, GraphError> {
        let mut out: Vec<String> = Vec::new();
        for name in names {
            let name = name.into();
            if out.contains(&name) {
                return Err(GraphError::DuplicateVertex(name));
            }
            out.push(name);
        }
        Ok(CoxeterGraph {
            names: out,
            labels: BTreeMap::new(),
        })
    }

    /// Graph on generators `s1..sn` with no edges.
    pub fn with_rank(n: usize) -> Self {
        CoxeterGraph {
            names: (1..=n).map(|i| alloc::format!("s{i}")).collect(),
            labels: BTreeMap::new(),
        }
    }

    /// Sets `m(i, j)`. Label 2 clears the pair.
    pub fn set_label(&mut self, i: usize, j: usize, label: Label) -> Result<(), GraphError> {
        let n = self.names.len();
        if i >= n {
            return Err(GraphError::IndexOutOfRange(i));
        }
        if j >= n {
            return Err(GraphError::IndexOutOfRange(j));
        }
        if i == j {
            return Err(GraphError::SelfPair);
        }
        match label {
            Label::Finite(m) if m < 2 => {
                return Err(GraphError::LabelOutOfRange {
                    line: 0,
                    label: m as i64,
                })
            }
            l if l.is_edge() => {
                self.labels.insert(ordered(i, j), l);
            }
            _ => {
                self.labels.remove(&ordered(i, j));
            }
        }
        Ok(())
    }

    /// Builder form of [`set_label`](Self::set_label) that panics on bad input;
    /// intended for hard-coded templates.
    pub fn with_edge(mut self, i: usize, j: usize, label: Label) -> Self {
        self.set_label(i, j, label).expect("valid template edge");
        self
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

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `m(i, j)`; pairs without a stored label are 2. Undefined for `i == j`.
    pub fn label(&self, i: usize, j: usize) -> Label {
        self.labels
            .get(&ordered(i, j))
            .copied()
            .unwrap_or(Label::Finite(2))
    }

    /// Stored edges `(i, j, label)` with `i < j`, in index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Label)> + '_ {
        self.labels.iter().map(|(&(i, j), &l)| (i, j, l))
    }

    pub fn edge_count(&self) -> usize {
        self.labels.len()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&j| j != i && self.label(i, j).is_edge())
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).count()
    }

    /// Induced subgraph on `vertices`, keeping their relative order.
    pub fn induced(&self, vertices: &[usize]) -> CoxeterGraph {
        let names = vertices.iter().map(|&v| self.names[v].clone()).collect();
        let mut labels = BTreeMap::new();
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                let l = self.label(u, v);
                if l.is_edge() {
                    labels.insert((a, b), l);
                }
            }
        }
        CoxeterGraph { names, labels }
    }

    /// Disjoint union; generator names of `other` that clash get a `'` suffix.
    pub fn disjoint_union(&self, other: &CoxeterGraph) -> CoxeterGraph {
        let mut names = self.names.clone();
        for name in &other.names {
            let mut candidate = name.clone();
            while names.contains(&candidate) {
                candidate.push('\'');
            }
            names.push(candidate);
        }
        let offset = self.len();
        let mut labels = self.labels.clone();
        for (&(i, j), &l) in &other.labels {
            labels.insert((i + offset, j + offset), l);
        }
        CoxeterGraph { names, labels }
    }

    /// True iff every finite label is 2 or 3 and no label is `inf`.
    pub fn is_simply_laced(&self) -> bool {
        self.labels.values().all(|&l| l == Label::Finite(3))
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn component_indices(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut uf = UnionFind::new(n);
        for &(i, j) in self.labels.keys() {
            uf.union(i, j);
        }
        uf.classes()
    }

    pub fn connected_components(&self) -> Vec<CoxeterGraph> {
        self.component_indices()
            .iter()
            .map(|c| self.induced(c))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_indices().len() == 1
    }

    /// `|E| - |V| + #components`, counting edges with label `>= 3` or `inf`.
    pub fn first_betti_number(&self) -> usize {
        self.edge_count() + self.component_indices().len() - self.len()
    }

    /// All label-2 pairs in index order.
    pub fn non_edges(&self) -> Vec<NonEdge> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !self.label(i, j).is_edge() {
                    out.push(NonEdge(i, j));
                }
            }
        }
        out
    }

    /// Classes of non-edges under the transitive closure of
    /// `{i,k} ~ {j,k}` whenever `{i,j}` is an edge.
    ///
    /// Each class is sorted; classes are ordered by their smallest member.
    pub fn non_edge_classes(&self) -> Vec<Vec<NonEdge>> {
        let non_edges = self.non_edges();
        let position: BTreeMap<NonEdge, usize> = non_edges
            .iter()
            .enumerate()
            .map(|(p, &e)| (e, p))
            .collect();
        let key = |a: usize, b: usize| {
            let (a, b) = ordered(a, b);
            position.get(&NonEdge(a, b)).copied()
        };
        let mut uf = UnionFind::new(non_edges.len());
        for &(i, j) in self.labels.keys() {
            for k in 0..self.len() {
                if k == i || k == j {
                    continue;
                }
                if let (Some(a), Some(b)) = (key(i, k), key(j, k)) {
                    uf.union(a, b);
                }
            }
        }
        uf.classes()
            .into_iter()
            .map(|class| class.into_iter().map(|p| non_edges[p]).collect())
            .collect()
    }

    /// Parses the line-oriented graph format:
    ///
    /// ```text
    /// # comment
    /// vertices: a b c
    /// edge a b 3
    /// edge b c inf
    /// ```
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut graph: Option<CoxeterGraph> = None;
        let mut declared: BTreeMap<(usize, usize), Label> = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: &str| GraphError::SyntaxError {
                line: line_no,
                message: message.to_string(),
            };
            if let Some(rest) = line.strip_prefix("vertices:") {
                if graph.is_some() {
                    return Err(syntax("`vertices:` declared more than once"));
                }
                graph = Some(CoxeterGraph::new(rest.split_whitespace())?);
                continue;
            }
            let mut tokens = line.split_whitespace();
            match tokens.next() {
                Some("edge") => {}
                _ => return Err(syntax("expected `vertices:` or `edge u v LABEL`")),
            }
            let g = graph
                .as_mut()
                .ok_or_else(|| syntax("`edge` before `vertices:`"))?;
            let (u, v, lab) = match (tokens.next(), tokens.next(), tokens.next(), tokens.next()) {
                (Some(u), Some(v), Some(l), None) => (u, v, l),
                _ => return Err(syntax("expected `edge u v LABEL`")),
            };
            let lookup = |name: &str| {
                g.index_of(name).ok_or_else(|| GraphError::UnknownVertex {
                    line: line_no,
                    name: name.to_string(),
                })
            };
            let i = lookup(u)?;
            let j = lookup(v)?;
            if i == j {
                return Err(syntax("an edge needs two distinct vertices"));
            }
            let label = if lab == "inf" {
                Label::Infinity
            } else {
                let value: i64 = lab
                    .parse()
                    .map_err(|_| syntax("label must be an integer or `inf`"))?;
                if value < 2 {
                    return Err(GraphError::LabelOutOfRange {
                        line: line_no,
                        label: value,
                    });
                }
                let value = u32::try_from(value).map_err(|_| syntax("label too large"))?;
                Label::Finite(value)
            };
            if let Some(&old) = declared.get(&ordered(i, j)) {
                if old != label {
                    return Err(GraphError::DuplicateEdge {
                        line: line_no,
                        u: u.to_string(),
                        v: v.to_string(),
                        old,
                        new: label,
                    });
                }
            }
            declared.insert(ordered(i, j), label);
            g.set_label(i, j, label)?;
        }
        graph.ok_or(GraphError::SyntaxError {
            line: 0,
            message: "missing `vertices:` line".to_string(),
        })
    }

    /// Canonical text form accepted by [`parse`](Self::parse).
    pub fn to_text(&self) -> String {
        let mut out = String::from("vertices:");
        for name in &self.names {
            out.push(' ');
            out.push_str(name);
        }
        out.push('\n');
        for (i, j, l) in self.edges() {
            out.push_str(&alloc::format!(
                "edge {} {} {}\n",
                self.names[i],
                self.names[j],
                l
            ));
        }
        out
    }
}

impl fmt::Display for CoxeterGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> CoxeterGraph {
        let mut g = CoxeterGraph::with_rank(n);
        for i in 0..n {
            g.set_label(i, (i + 1) % n, Label::Finite(3)).unwrap();
        }
        g
    }

    #[test]
    fn parse_a2() {
        let g = CoxeterGraph::parse("vertices: a b\nedge a b 3").unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.label(0, 1), Label::Finite(3));
        assert_eq!(g.label(1, 0), Label::Finite(3));
    }

    #[test]
    fn parse_b3_and_inf() {
        let g = CoxeterGraph::parse("vertices: a b c\nedge a b 3\nedge b c 4").unwrap();
        assert_eq!(g.label(1, 2), Label::Finite(4));
        assert_eq!(g.label(0, 2), Label::Finite(2));
        let g = CoxeterGraph::parse("# affine\nvertices: a b\nedge a b inf # comment").unwrap();
        assert_eq!(g.label(0, 1), Label::Infinity);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            CoxeterGraph::parse("vertices: a a"),
            Err(GraphError::DuplicateVertex("a".into()))
        );
        assert!(matches!(
            CoxeterGraph::parse("vertices: a b\nedge a c 3"),
            Err(GraphError::UnknownVertex { line: 2, .. })
        ));
        assert!(matches!(
            CoxeterGraph::parse("vertices: a b\nedge a b 1"),
            Err(GraphError::LabelOutOfRange { line: 2, label: 1 })
        ));
        assert!(matches!(
            CoxeterGraph::parse("vertices: a b\nedge a b 3\nedge b a 4"),
            Err(GraphError::DuplicateEdge { line: 3, .. })
        ));
        // Restating the same label is fine.
        assert!(CoxeterGraph::parse("vertices: a b\nedge a b 3\nedge b a 3").is_ok());
        assert!(matches!(
            CoxeterGraph::parse("edge a b 3\nvertices: a b"),
            Err(GraphError::SyntaxError { line: 1, .. })
        ));
        assert!(matches!(
            CoxeterGraph::parse("vertices: a b\nedge a b"),
            Err(GraphError::SyntaxError { line: 2, .. })
        ));
        assert!(matches!(
            CoxeterGraph::parse("vertices: a b\nvertices: c"),
            Err(GraphError::SyntaxError { line: 2, .. })
        ));
        assert!(matches!(
            CoxeterGraph::parse("vertices: a b\nedge a b three"),
            Err(GraphError::SyntaxError { line: 2, .. })
        ));
        assert!(matches!(
            CoxeterGraph::parse(""),
            Err(GraphError::SyntaxError { .. })
        ));
    }

    #[test]
    fn label_two_is_not_stored() {
        let g = CoxeterGraph::parse("vertices: a b\nedge a b 2").unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.to_text(), "vertices: a b\n");
    }

    #[test]
    fn components() {
        let g = CoxeterGraph::parse("vertices: a b\nedge a b 3").unwrap();
        assert_eq!(g.connected_components().len(), 1);

        let g = CoxeterGraph::parse("vertices: c a b\nedge a b 3").unwrap();
        let comps = g.connected_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].names(), &["c".to_string()]);
        assert_eq!(comps[1].names(), &["a".to_string(), "b".to_string()]);
        assert_eq!(comps[1].label(0, 1), Label::Finite(3));

        let g = CoxeterGraph::parse("vertices: a b c d\nedge a b 3").unwrap();
        assert_eq!(g.connected_components().len(), 3);
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(cycle(5).first_betti_number(), 1);
        let e7 = CoxeterGraph::with_rank(7)
            .with_edge(0, 2, Label::Finite(3))
            .with_edge(2, 3, Label::Finite(3))
            .with_edge(3, 4, Label::Finite(3))
            .with_edge(4, 5, Label::Finite(3))
            .with_edge(5, 6, Label::Finite(3))
            .with_edge(1, 3, Label::Finite(3));
        assert_eq!(e7.first_betti_number(), 0);
        let two_triangles = cycle(3).disjoint_union(&cycle(3));
        assert_eq!(two_triangles.first_betti_number(), 2);
    }

    #[test]
    fn non_edge_classes_of_affine_examples() {
        // Four-cycle: {s1,s3} and {s2,s4} stay apart.
        assert_eq!(cycle(4).non_edge_classes().len(), 2);
        // Five-cycle: a single class.
        assert_eq!(cycle(5).non_edge_classes().len(), 1);
        // Triangle has no non-edges.
        assert!(cycle(3).non_edge_classes().is_empty());
        // Star with four leaves: every pair of leaves is its own class.
        let mut star = CoxeterGraph::with_rank(5);
        for leaf in [0, 1, 3, 4] {
            star.set_label(2, leaf, Label::Finite(3)).unwrap();
        }
        assert_eq!(star.non_edge_classes().len(), 6);
    }

    #[test]
    fn complete_graph_has_no_non_edges() {
        for n in 2..7 {
            let mut g = CoxeterGraph::with_rank(n);
            for i in 0..n {
                for j in i + 1..n {
                    g.set_label(i, j, Label::Finite(3)).unwrap();
                }
            }
            assert!(g.non_edge_classes().is_empty());
        }
    }

    #[test]
    fn set_label_rejects_bad_pairs() {
        let mut g = CoxeterGraph::with_rank(2);
        assert_eq!(g.set_label(0, 0, Label::Finite(3)), Err(GraphError::SelfPair));
        assert_eq!(
            g.set_label(0, 5, Label::Finite(3)),
            Err(GraphError::IndexOutOfRange(5))
        );
        assert!(g.set_label(0, 1, Label::Finite(1)).is_err());
    }
}
