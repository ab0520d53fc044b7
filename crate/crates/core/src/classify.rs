//! Recognition of irreducible Coxeter graphs against the spherical catalog
//! (`A`, `B`, `D`, `E`, `F`, `H`, `I2`) and the simply laced affine catalog
//! (`~A`, `~D`, `~E`), plus decomposition of arbitrary graphs into typed
//! irreducible components.
//!
//! Matching is labeled-graph isomorphism against parametric templates. A
//! cheap fingerprint (vertex count, label multiset, degree sequence) rules
//! out most templates before the backtracking search runs.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::graph::{CoxeterGraph, Label};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    D,
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    I2,
    AffA,
    AffD,
    AffE6,
    AffE7,
    AffE8,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("the graph has no generators")]
    EmptyGraph,
    #[error("the graph is not connected")]
    DisconnectedGraph,
    #[error("invalid Coxeter type: {0}")]
    InvalidType(String),
    #[error("cannot parse preset `{0}`")]
    PresetSyntax(String),
}

/// Canonical label of an irreducible Coxeter graph.
///
/// `rank` is the subscript: for affine families the graph has `rank + 1`
/// vertices. `dihedral_label` is set only for `I2(m)` and for `~A1`, whose
/// single edge carries `inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoxeterType {
    pub family: Family,
    pub rank: usize,
    pub dihedral_label: Option<Label>,
}

impl CoxeterType {
    /// Validating constructor. Coincident dihedral labels are canonicalized:
    /// `I2(3)` is `A2`, `I2(4)` is `B2`.
    pub fn new(family: Family, rank: usize, dihedral_label: Option<Label>) -> Result<Self, ClassifyError> {
        use Family::*;
        let bad = |msg: &str| Err(ClassifyError::InvalidType(msg.to_string()));
        let plain = |family, rank| {
            Ok(CoxeterType {
                family,
                rank,
                dihedral_label: None,
            })
        };
        match family {
            A if rank >= 1 => plain(A, rank),
            B if rank >= 2 => plain(B, rank),
            D if rank >= 4 => plain(D, rank),
            E6 | AffE6 if rank == 6 => plain(family, rank),
            E7 | AffE7 if rank == 7 => plain(family, rank),
            E8 | AffE8 if rank == 8 => plain(family, rank),
            F4 | H4 if rank == 4 => plain(family, rank),
            H3 if rank == 3 => plain(family, rank),
            I2 => match dihedral_label {
                Some(Label::Finite(3)) => plain(A, 2),
                Some(Label::Finite(4)) => plain(B, 2),
                Some(Label::Finite(m)) if m >= 5 => Ok(CoxeterType {
                    family: I2,
                    rank: 2,
                    dihedral_label: Some(Label::Finite(m)),
                }),
                Some(Label::Infinity) => Ok(Self::affine_a(1)),
                _ => bad("I2(m) needs m >= 3"),
            },
            AffA if rank == 1 => Ok(Self::affine_a(1)),
            AffA if rank >= 2 => plain(AffA, rank),
            AffD if rank >= 4 => plain(AffD, rank),
            Unknown => plain(Unknown, rank),
            _ => bad(&format!("{family:?} does not exist in rank {rank}")),
        }
    }

    pub fn a(n: usize) -> Self {
        Self::new(Family::A, n, None).expect("A_n needs n >= 1")
    }

    pub fn b(n: usize) -> Self {
        Self::new(Family::B, n, None).expect("B_n needs n >= 2")
    }

    pub fn d(n: usize) -> Self {
        Self::new(Family::D, n, None).expect("D_n needs n >= 4")
    }

    pub fn exceptional(family: Family) -> Self {
        let rank = match family {
            Family::E6 | Family::AffE6 => 6,
            Family::E7 | Family::AffE7 => 7,
            Family::E8 | Family::AffE8 => 8,
            Family::F4 | Family::H4 => 4,
            Family::H3 => 3,
            _ => panic!("{family:?} is not an exceptional family"),
        };
        Self::new(family, rank, None).expect("fixed-rank family")
    }

    /// Rank-2 type with label `m`, canonicalized.
    pub fn dihedral(m: u32) -> Self {
        Self::new(Family::I2, 2, Some(Label::Finite(m))).expect("I2(m) needs m >= 3")
    }

    pub fn affine_a(n: usize) -> Self {
        assert!(n >= 1, "~A_n needs n >= 1");
        CoxeterType {
            family: Family::AffA,
            rank: n,
            dihedral_label: if n == 1 { Some(Label::Infinity) } else { None },
        }
    }

    pub fn affine_d(n: usize) -> Self {
        Self::new(Family::AffD, n, None).expect("~D_n needs n >= 4")
    }

    pub fn unknown(vertices: usize) -> Self {
        CoxeterType {
            family: Family::Unknown,
            rank: vertices,
            dihedral_label: None,
        }
    }

    /// Label `m` of an `I2(m)` type.
    pub fn dihedral_m(&self) -> Option<u32> {
        match (self.family, self.dihedral_label) {
            (Family::I2, Some(Label::Finite(m))) => Some(m),
            _ => None,
        }
    }

    pub fn is_spherical(&self) -> bool {
        !matches!(
            self.family,
            Family::AffA | Family::AffD | Family::AffE6 | Family::AffE7 | Family::AffE8 | Family::Unknown
        )
    }

    /// `~A`, `~D` or `~E` (including `~A1`).
    pub fn is_affine(&self) -> bool {
        matches!(
            self.family,
            Family::AffA | Family::AffD | Family::AffE6 | Family::AffE7 | Family::AffE8
        )
    }

    pub fn is_affine_simply_laced(&self) -> bool {
        self.is_affine() && !(self.family == Family::AffA && self.rank == 1)
    }

    /// Number of generators of the corresponding graph.
    pub fn vertex_count(&self) -> usize {
        if self.is_affine() {
            self.rank + 1
        } else {
            self.rank
        }
    }

    /// The catalog graph on generators `s1..sn`, numbered as in the usual
    /// drawings. `None` for `Unknown`.
    pub fn template(&self) -> Option<CoxeterGraph> {
        use Family::*;
        let three = Label::Finite(3);
        let n = self.vertex_count();
        let path = |n: usize| {
            let mut g = CoxeterGraph::with_rank(n);
            for i in 1..n {
                g.set_label(i - 1, i, three).unwrap();
            }
            g
        };
        // Path s1 - ... with a leaf attached to the vertex at `branch` (0-based),
        // leaf being the last generator.
        let branched = |path_len: usize, branch: usize| {
            let mut g = CoxeterGraph::with_rank(path_len + 1);
            for i in 1..path_len {
                g.set_label(i - 1, i, three).unwrap();
            }
            g.set_label(branch, path_len, three).unwrap();
            g
        };
        let g = match self.family {
            A => path(n),
            B => path(n).with_edge(0, 1, Label::Finite(4)),
            D => {
                // s1 - s3, s2 - s3, s3 - s4 - ... - sn
                let mut g = CoxeterGraph::with_rank(n);
                g.set_label(0, 2, three).unwrap();
                g.set_label(1, 2, three).unwrap();
                for i in 3..n {
                    g.set_label(i - 1, i, three).unwrap();
                }
                g
            }
            E6 | E7 | E8 => branched(n - 1, 2),
            F4 => path(4).with_edge(1, 2, Label::Finite(4)),
            H3 => path(3).with_edge(0, 1, Label::Finite(5)),
            H4 => path(4).with_edge(0, 1, Label::Finite(5)),
            I2 => path(2).with_edge(0, 1, self.dihedral_label?),
            AffA if self.rank == 1 => path(2).with_edge(0, 1, Label::Infinity),
            AffA => path(n).with_edge(0, n - 1, three),
            AffD => {
                // s1, s2 hang off s3; s_n, s_{n+1} hang off s_{n-1}.
                let rank = self.rank;
                let mut g = CoxeterGraph::with_rank(n);
                g.set_label(0, 2, three).unwrap();
                g.set_label(1, 2, three).unwrap();
                for i in 3..rank - 1 {
                    g.set_label(i - 1, i, three).unwrap();
                }
                g.set_label(rank - 2, rank - 1, three).unwrap();
                g.set_label(rank - 2, rank, three).unwrap();
                g
            }
            // s1 - s2 - s3 - s6 - s7 with s3 - s4 - s5
            AffE6 => CoxeterGraph::with_rank(7)
                .with_edge(0, 1, three)
                .with_edge(1, 2, three)
                .with_edge(2, 5, three)
                .with_edge(5, 6, three)
                .with_edge(2, 3, three)
                .with_edge(3, 4, three),
            // s1 - s2 - s3 - s4 - s6 - s7 - s8 with s4 - s5
            AffE7 => CoxeterGraph::with_rank(8)
                .with_edge(0, 1, three)
                .with_edge(1, 2, three)
                .with_edge(2, 3, three)
                .with_edge(3, 5, three)
                .with_edge(5, 6, three)
                .with_edge(6, 7, three)
                .with_edge(3, 4, three),
            // s1 - s2 - s3 - s5 - ... - s9 with s3 - s4
            AffE8 => CoxeterGraph::with_rank(9)
                .with_edge(0, 1, three)
                .with_edge(1, 2, three)
                .with_edge(2, 4, three)
                .with_edge(4, 5, three)
                .with_edge(5, 6, three)
                .with_edge(6, 7, three)
                .with_edge(7, 8, three)
                .with_edge(2, 3, three),
            Unknown => return None,
        };
        Some(g)
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Family::*;
        match self.family {
            A => write!(f, "A{}", self.rank),
            B => write!(f, "B{}", self.rank),
            D => write!(f, "D{}", self.rank),
            E6 | E7 | E8 => write!(f, "E{}", self.rank),
            F4 => f.write_str("F4"),
            H3 => f.write_str("H3"),
            H4 => f.write_str("H4"),
            I2 => match self.dihedral_label {
                Some(l) => write!(f, "I2({l})"),
                None => f.write_str("I2(?)"),
            },
            AffA => write!(f, "~A{}", self.rank),
            AffD => write!(f, "~D{}", self.rank),
            AffE6 | AffE7 | AffE8 => write!(f, "~E{}", self.rank),
            Unknown => write!(f, "Unknown({})", self.rank),
        }
    }
}

impl FromStr for CoxeterType {
    type Err = ClassifyError;

    /// Parses a single preset term such as `A5`, `I2(7)` or `~E6`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ClassifyError::PresetSyntax(s.to_string());
        let term = s.trim();
        let (affine, body) = match term.strip_prefix('~') {
            Some(rest) => (true, rest),
            None => (false, term),
        };
        if let Some(inner) = body.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            if affine {
                return Err(err());
            }
            let label = if inner == "inf" {
                Label::Infinity
            } else {
                Label::Finite(inner.parse().map_err(|_| err())?)
            };
            return CoxeterType::new(Family::I2, 2, Some(label));
        }
        let mut chars = body.chars();
        let letter = chars.next().ok_or_else(err)?;
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let rank: usize = digits.parse().map_err(|_| err())?;
        let family = match (affine, letter, rank) {
            (false, 'A', _) => Family::A,
            (false, 'B', _) => Family::B,
            (false, 'D', _) => Family::D,
            (false, 'E', 6) => Family::E6,
            (false, 'E', 7) => Family::E7,
            (false, 'E', 8) => Family::E8,
            (false, 'F', _) => Family::F4,
            (false, 'H', 3) => Family::H3,
            (false, 'H', _) => Family::H4,
            (true, 'A', _) => Family::AffA,
            (true, 'D', _) => Family::AffD,
            (true, 'E', 6) => Family::AffE6,
            (true, 'E', 7) => Family::AffE7,
            (true, 'E', 8) => Family::AffE8,
            _ => return Err(ClassifyError::InvalidType(term.to_string())),
        };
        CoxeterType::new(family, rank, None)
    }
}

/// Resolves a preset such as `A2+B3+I2(5)` to its component types.
pub fn parse_preset_types(preset: &str) -> Result<Vec<CoxeterType>, ClassifyError> {
    if preset.trim().is_empty() {
        return Err(ClassifyError::PresetSyntax(preset.to_string()));
    }
    preset.split('+').map(str::parse).collect()
}

/// Resolves a preset to a graph on generators `s1..sN`, components laid out
/// in the order written.
pub fn preset_graph(preset: &str) -> Result<CoxeterGraph, ClassifyError> {
    let types = parse_preset_types(preset)?;
    let templates: Vec<CoxeterGraph> = types
        .iter()
        .map(|t| t.template().ok_or_else(|| ClassifyError::InvalidType(t.to_string())))
        .collect::<Result<_, _>>()?;
    let total = templates.iter().map(CoxeterGraph::len).sum();
    let mut g = CoxeterGraph::with_rank(total);
    let mut offset = 0;
    for t in &templates {
        for (i, j, l) in t.edges() {
            g.set_label(i + offset, j + offset, l).expect("template edge");
        }
        offset += t.len();
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Fingerprint {
    vertices: usize,
    labels: Vec<Label>,
    degrees: Vec<usize>,
}

fn fingerprint(g: &CoxeterGraph) -> Fingerprint {
    let mut labels: Vec<Label> = g.edges().map(|(_, _, l)| l).collect();
    labels.sort();
    let mut degrees: Vec<usize> = (0..g.len()).map(|v| g.degree(v)).collect();
    degrees.sort();
    Fingerprint {
        vertices: g.len(),
        labels,
        degrees,
    }
}

/// Sorted labels on the edges at `v`; a local isomorphism invariant.
fn local_signature(g: &CoxeterGraph, v: usize) -> Vec<Label> {
    let mut s: Vec<Label> = g.neighbors(v).map(|w| g.label(v, w)).collect();
    s.sort();
    s
}

/// Labeled-graph isomorphism by backtracking.
///
/// Vertices of `g` are placed in breadth-first order so every new vertex has
/// an already placed neighbour, which keeps the search tight on the sparse
/// graphs of the catalogs.
pub fn labeled_isomorphic(g: &CoxeterGraph, h: &CoxeterGraph) -> bool {
    if fingerprint(g) != fingerprint(h) {
        return false;
    }
    let n = g.len();
    if n == 0 {
        return true;
    }
    let order = search_order(g);
    let sig_g: Vec<Vec<Label>> = (0..n).map(|v| local_signature(g, v)).collect();
    let sig_h: Vec<Vec<Label>> = (0..n).map(|v| local_signature(h, v)).collect();
    let mut image = alloc::vec![usize::MAX; n];
    let mut used = alloc::vec![false; n];
    extend(g, h, &order, 0, &sig_g, &sig_h, &mut image, &mut used)
}

fn search_order(g: &CoxeterGraph) -> Vec<usize> {
    let n = g.len();
    let mut seen = alloc::vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        // Start each component at a vertex of maximal degree.
        let start = (0..n)
            .filter(|&v| !seen[v])
            .max_by_key(|&v| (g.degree(v), core::cmp::Reverse(v)))
            .expect("unvisited vertex");
        seen[start] = true;
        let mut head = order.len();
        order.push(start);
        while head < order.len() {
            let v = order[head];
            head += 1;
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &CoxeterGraph,
    h: &CoxeterGraph,
    order: &[usize],
    depth: usize,
    sig_g: &[Vec<Label>],
    sig_h: &[Vec<Label>],
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..h.len() {
        if used[w] || sig_g[v] != sig_h[w] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| g.label(u, v) == h.label(image[u], w));
        if !consistent {
            continue;
        }
        image[v] = w;
        used[w] = true;
        if extend(g, h, order, depth + 1, sig_g, sig_h, image, used) {
            return true;
        }
        used[w] = false;
        image[v] = usize::MAX;
    }
    false
}

/// Catalog types whose graphs have exactly `vertices` generators.
fn candidates(vertices: usize) -> Vec<CoxeterType> {
    use Family::*;
    let n = vertices;
    let mut out = Vec::new();
    if n >= 1 {
        out.push(CoxeterType::a(n));
    }
    if n >= 3 {
        out.push(CoxeterType::b(n));
        out.push(CoxeterType::affine_a(n - 1));
    }
    if n >= 4 {
        out.push(CoxeterType::d(n));
    }
    if n >= 5 {
        out.push(CoxeterType::affine_d(n - 1));
    }
    match n {
        3 => out.push(CoxeterType::exceptional(H3)),
        4 => {
            out.push(CoxeterType::exceptional(F4));
            out.push(CoxeterType::exceptional(H4));
        }
        6 => out.push(CoxeterType::exceptional(E6)),
        7 => {
            out.push(CoxeterType::exceptional(E7));
            out.push(CoxeterType::exceptional(AffE6));
        }
        8 => {
            out.push(CoxeterType::exceptional(E8));
            out.push(CoxeterType::exceptional(AffE7));
        }
        9 => out.push(CoxeterType::exceptional(AffE8)),
        _ => {}
    }
    out
}

/// Canonical type of a connected, nonempty graph; `Unknown` when the graph
/// is in neither catalog.
pub fn recognize_irreducible(g: &CoxeterGraph) -> Result<CoxeterType, ClassifyError> {
    if g.is_empty() {
        return Err(ClassifyError::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(ClassifyError::DisconnectedGraph);
    }
    match g.len() {
        1 => return Ok(CoxeterType::a(1)),
        2 => {
            let ty = match g.label(0, 1) {
                Label::Infinity => CoxeterType::affine_a(1),
                Label::Finite(m) => CoxeterType::dihedral(m),
            };
            return Ok(ty);
        }
        _ => {}
    }
    let fp = fingerprint(g);
    for ty in candidates(g.len()) {
        let template = ty.template().expect("catalog template");
        if fingerprint(&template) == fp && labeled_isomorphic(g, &template) {
            return Ok(ty);
        }
    }
    Ok(CoxeterType::unknown(g.len()))
}

/// One irreducible component: its type and the generator indices it spans.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Component {
    pub ty: CoxeterType,
    pub generators: Vec<usize>,
}

/// Multiset of typed irreducible components, sorted by type then generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub components: Vec<Component>,
}

impl Decomposition {
    /// Component types in canonical order (the multiset).
    pub fn types(&self) -> Vec<CoxeterType> {
        self.components.iter().map(|c| c.ty).collect()
    }

    pub fn is_spherical(&self) -> bool {
        self.components.iter().all(|c| c.ty.is_spherical())
    }

    pub fn is_affine_simply_laced(&self) -> bool {
        !self.components.is_empty() && self.components.iter().all(|c| c.ty.is_affine_simply_laced())
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("trivial");
        }
        for (k, c) in self.components.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}", c.ty)?;
        }
        Ok(())
    }
}

pub fn classify(g: &CoxeterGraph) -> Decomposition {
    let mut components: Vec<Component> = g
        .component_indices()
        .into_iter()
        .map(|generators| {
            let ty = recognize_irreducible(&g.induced(&generators)).expect("connected component");
            Component { ty, generators }
        })
        .collect();
    components.sort();
    Decomposition { components }
}

pub fn is_spherical(g: &CoxeterGraph) -> bool {
    if g.edges().any(|(_, _, l)| l == Label::Infinity) {
        return false;
    }
    classify(g).is_spherical()
}

pub fn is_simply_laced(g: &CoxeterGraph) -> bool {
    g.is_simply_laced()
}

pub fn is_affine_simply_laced(g: &CoxeterGraph) -> bool {
    g.is_simply_laced() && classify(g).is_affine_simply_laced()
}

/// All generator subsets of size at most `max_size` spanning a spherical
/// parabolic subgroup, the empty set included. Ordered by size, then
/// lexicographically by index. The result is closed under taking subsets.
pub fn spherical_subsets(g: &CoxeterGraph, max_size: usize) -> Vec<Vec<usize>> {
    let max_size = max_size.min(g.len());
    let mut out: Vec<Vec<usize>> = alloc::vec![Vec::new()];
    let mut level: Vec<Vec<usize>> = alloc::vec![Vec::new()];
    for size in 1..=max_size {
        let previous: BTreeSet<&[usize]> = level.iter().map(Vec::as_slice).collect();
        let mut next = Vec::new();
        for base in &level {
            let start = base.last().map_or(0, |&v| v + 1);
            for v in start..g.len() {
                let mut candidate = base.clone();
                candidate.push(v);
                // Every face must already be spherical.
                let faces_ok = (0..size).all(|skip| {
                    let face: Vec<usize> = candidate
                        .iter()
                        .enumerate()
                        .filter(|&(p, _)| p != skip)
                        .map(|(_, &x)| x)
                        .collect();
                    previous.contains(face.as_slice())
                });
                if faces_ok && is_spherical(&g.induced(&candidate)) {
                    next.push(candidate);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}
