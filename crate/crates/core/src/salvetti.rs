//! The algebraic chain complex of the Salvetti complex with trivial integer
//! coefficients.
//!
//! `C_k` has one basis element `e_sigma` for each spherical subset `sigma`
//! of size `k`, and
//!
//! ```text
//! d(e_sigma) = sum over faces tau of [sigma : tau] * (W_sigma / W_tau)(-1) * e_tau
//! ```
//!
//! where `W` is the Poincaré polynomial of the parabolic subgroup and the
//! incidence sign is `(-1)^j` for the `j`-th generator (0-based, index
//! order) removed from `sigma`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::classify::{classify, spherical_subsets};
use crate::graph::CoxeterGraph;
use crate::matrix::IntMatrix;
use crate::poincare::{poincare_of_subset, quotient_at_minus_one, IntPolynomial, PoincareError};

/// Truncated chain complex `C_0 <- C_1 <- ... <- C_{max_degree + 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    graph: CoxeterGraph,
    max_degree: usize,
    /// `bases[k]`: spherical subsets of size `k`, each sorted by index.
    bases: Vec<Vec<Vec<usize>>>,
    /// `boundaries[k]`: `d_k : C_k -> C_{k-1}` as a `|C_{k-1}| x |C_k|`
    /// matrix; `boundaries[0]` is the `0 x |C_0|` map to the zero module.
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    /// Highest degree whose homology this complex determines.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Highest degree with a stored basis (`max_degree + 1`).
    pub fn top_degree(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn basis(&self, k: usize) -> &[Vec<usize>] {
        self.bases.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn rank(&self, k: usize) -> usize {
        self.basis(k).len()
    }

    /// `d_k`; `None` above the top degree.
    pub fn boundary(&self, k: usize) -> Option<&IntMatrix> {
        self.boundaries.get(k)
    }

    /// Degrees `k` (with `k - 1 >= 1`) where `d_{k-1} d_k` is nonzero.
    pub fn composition_defects(&self) -> Vec<usize> {
        (2..=self.top_degree())
            .filter(|&k| {
                let d_k = &self.boundaries[k];
                let d_km1 = &self.boundaries[k - 1];
                d_km1.ncols() > 0 && d_k.ncols() > 0 && !(d_km1 * d_k).is_zero()
            })
            .collect()
    }

    pub fn is_chain_complex(&self) -> bool {
        self.composition_defects().is_empty()
    }

    /// Machine-readable listing of bases (generator names) and boundaries.
    pub fn dump(&self) -> ComplexDump {
        let degrees = (0..=self.top_degree())
            .map(|k| DegreeDump {
                k,
                basis: self.bases[k]
                    .iter()
                    .map(|s| s.iter().map(|&v| String::from(self.graph.name(v))).collect())
                    .collect(),
                boundary: self.boundaries[k].to_rows(),
            })
            .collect();
        ComplexDump { degrees }
    }
}

/// One degree of a [`ComplexDump`]. `boundary` is `d_k` with rows indexed by
/// the basis of degree `k - 1` and columns by `basis`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeDump {
    pub k: usize,
    pub basis: Vec<Vec<String>>,
    pub boundary: Vec<Vec<BigInt>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexDump {
    pub degrees: Vec<DegreeDump>,
}

/// Builds `C_0 .. C_{max_degree + 1}` so homology is available up to
/// `max_degree`.
///
/// Only fails if a Poincaré quotient is not an exact polynomial division,
/// which would indicate a defect in the polynomial tables.
pub fn build_complex(g: &CoxeterGraph, max_degree: usize) -> Result<ChainComplex, PoincareError> {
    let top = max_degree + 1;
    let subsets = spherical_subsets(g, top);
    let mut bases: Vec<Vec<Vec<usize>>> = alloc::vec![Vec::new(); top + 1];
    for s in subsets {
        let k = s.len();
        bases[k].push(s);
    }

    let mut poincare: BTreeMap<Vec<usize>, IntPolynomial> = BTreeMap::new();
    for basis in &bases {
        for s in basis {
            poincare.insert(s.clone(), poincare_of_subset(g, s)?);
        }
    }

    let mut boundaries = Vec::with_capacity(top + 1);
    boundaries.push(IntMatrix::zeros(0, bases[0].len()));
    for k in 1..=top {
        let row_of: BTreeMap<&[usize], usize> = bases[k - 1]
            .iter()
            .enumerate()
            .map(|(r, s)| (s.as_slice(), r))
            .collect();
        let mut d = IntMatrix::zeros(bases[k - 1].len(), bases[k].len());
        for (col, sigma) in bases[k].iter().enumerate() {
            let w_sigma = &poincare[sigma];
            for j in 0..sigma.len() {
                let mut tau = sigma.clone();
                tau.remove(j);
                let row = row_of[tau.as_slice()];
                let c = quotient_at_minus_one(w_sigma, &poincare[&tau])?;
                if c.is_zero() {
                    continue;
                }
                d[(row, col)] = if j % 2 == 0 { c } else { -c };
            }
        }
        boundaries.push(d);
    }

    Ok(ChainComplex {
        graph: g.clone(),
        max_degree,
        bases,
        boundaries,
    })
}

/// True when the Salvetti complex is known to compute the group homology:
/// every irreducible component is spherical or simply laced affine (or
/// `~A1`). Otherwise results are conditional on the `K(pi, 1)` conjecture.
pub fn homology_is_unconditional(g: &CoxeterGraph) -> bool {
    classify(g)
        .components
        .iter()
        .all(|c| c.ty.is_spherical() || c.ty.is_affine())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::preset_graph;
    use alloc::vec;

    fn entries(m: &IntMatrix) -> Vec<Vec<i64>> {
        m.to_rows()
            .iter()
            .map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect()
    }

    #[test]
    fn a2_complex() {
        let c = build_complex(&preset_graph("A2").unwrap(), 1).unwrap();
        assert_eq!(c.rank(0), 1);
        assert_eq!(c.rank(1), 2);
        assert_eq!(c.rank(2), 1);
        assert!(c.boundary(1).unwrap().is_zero());
        // d e_{12} = e_2 - e_1 with the (-1)^j convention: removing s1 (j=0)
        // leaves e_2 with +1, removing s2 (j=1) leaves e_1 with -1.
        assert_eq!(entries(c.boundary(2).unwrap()), vec![vec![-1], vec![1]]);
    }

    #[test]
    fn a3_top_cell_hits_the_commuting_pair_twice() {
        let c = build_complex(&preset_graph("A3").unwrap(), 2).unwrap();
        assert_eq!(c.basis(3), &[vec![0, 1, 2]]);
        let d3 = entries(c.boundary(3).unwrap());
        // Faces in order {0,1}, {0,2}, {1,2}; only the A1+A1 face {0,2} survives.
        let pos = c.basis(2).iter().position(|s| s == &vec![0, 2]).unwrap();
        for (row, v) in d3.iter().enumerate() {
            assert_eq!(v[0], if row == pos { -2 } else { 0 });
        }
        assert!(c.is_chain_complex());
    }

    #[test]
    fn affine_a1_has_no_two_cells() {
        let c = build_complex(&preset_graph("~A1").unwrap(), 3).unwrap();
        assert_eq!(c.rank(2), 0);
        assert_eq!(c.rank(1), 2);
    }

    #[test]
    fn dumps() {
        let c = build_complex(&preset_graph("A1").unwrap(), 1).unwrap();
        let dump = c.dump();
        assert_eq!(dump.degrees[1].basis, vec![vec![String::from("s1")]]);
        assert_eq!(dump.degrees[1].boundary, vec![vec![BigInt::zero()]]);

        let c = build_complex(&preset_graph("~A2").unwrap(), 2).unwrap();
        let dump = c.dump();
        assert_eq!(dump.degrees[2].basis.len(), 3);
        assert_eq!(dump.degrees[3].basis.len(), 0);
    }

    #[test]
    fn conditional_labelling() {
        assert!(homology_is_unconditional(&preset_graph("~D5+A3").unwrap()));
        let g = CoxeterGraph::with_rank(3)
            .with_edge(0, 1, crate::graph::Label::Finite(4))
            .with_edge(1, 2, crate::graph::Label::Finite(4))
            .with_edge(0, 2, crate::graph::Label::Finite(4));
        assert!(!homology_is_unconditional(&g));
    }
}
