//! Finitely generated abelian groups, integral homology of chain complexes,
//! and the closed forms for `H_1` and `H_2` of Artin groups.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::CoxeterGraph;
use crate::matrix::{smith_normal_form, smith_normal_form_with_transforms, IntMatrix};
use crate::salvetti::ChainComplex;
use crate::unionfind::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("degree {degree} is above the truncation bound {max_degree}")]
    DegreeOutOfRange { degree: usize, max_degree: usize },
    #[error("boundary maps do not compose to zero at degree {0}")]
    NotAComplex(usize),
    #[error("the graph is not simply laced")]
    NotSimplyLaced,
    #[error("the graph is not connected")]
    Disconnected,
    #[error("torsion {0} is not a power of 2")]
    UnsupportedTorsion(String),
    #[error("cannot parse abelian group `{0}`")]
    Parse(String),
}

/// `Z^free_rank + Z/d_1 + ... + Z/d_k` with `d_1 | d_2 | ... | d_k`, all `d_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<BigUint>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/n`; `n = 0` gives `Z` and `n = 1` the trivial group.
    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_factors(0, [BigUint::from(n)])
    }

    /// Direct sum of `Z^free_rank` and cyclic groups of the given orders
    /// (order 0 meaning `Z`), brought into invariant-factor form.
    pub fn from_cyclic_factors(free_rank: usize, orders: impl IntoIterator<Item = BigUint>) -> Self {
        let orders: Vec<BigUint> = orders.into_iter().collect();
        let n = orders.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, d) in orders.into_iter().enumerate() {
            m[(i, i)] = BigInt::from_biguint(Sign::Plus, d);
        }
        let snf = smith_normal_form(&m);
        let zero_orders = n - snf.rank();
        Self::from_invariant_factors(free_rank + zero_orders, &snf.invariant_factors)
    }

    fn from_invariant_factors(free_rank: usize, factors: &[BigInt]) -> Self {
        let torsion = factors
            .iter()
            .filter(|d| !d.is_one())
            .map(|d| d.magnitude().clone())
            .collect();
        AbelianGroup { free_rank, torsion }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of elements, `None` if infinite.
    pub fn order(&self) -> Option<BigUint> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    fn two_adic_profile(&self) -> Result<Vec<u64>, HomologyError> {
        self.torsion
            .iter()
            .map(|d| {
                let v = d.trailing_zeros().unwrap_or(0);
                if (d >> v).is_one() {
                    Ok(v)
                } else {
                    Err(HomologyError::UnsupportedTorsion(d.to_string()))
                }
            })
            .collect()
    }
}

impl fmt::Display for AbelianGroup {
    /// `Z^2 + (Z/2)^3 + Z/4`; the trivial group is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(alloc::format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|&x| x == d).count();
            parts.push(if run == 1 {
                alloc::format!("Z/{d}")
            } else {
                alloc::format!("(Z/{d})^{run}")
            });
            i += run;
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl FromStr for AbelianGroup {
    type Err = HomologyError;

    /// Accepts the [`Display`](fmt::Display) form, with or without grouped
    /// powers and in any order.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || HomologyError::Parse(s.to_string());
        let mut free = 0usize;
        let mut orders: Vec<BigUint> = Vec::new();
        for raw in s.split('+') {
            let term: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
            if term == "0" {
                continue;
            }
            let (base, power) = if let Some(rest) = term.strip_prefix('(') {
                let (inner, tail) = rest.split_once(')').ok_or_else(err)?;
                let power = match tail {
                    "" => 1,
                    t => t.strip_prefix('^').ok_or_else(err)?.parse().map_err(|_| err())?,
                };
                (String::from(inner), power)
            } else if let Some((b, p)) = term.split_once('^') {
                (String::from(b), p.parse::<usize>().map_err(|_| err())?)
            } else {
                (term.clone(), 1)
            };
            if base == "Z" {
                free += power;
            } else if let Some(d) = base.strip_prefix("Z/") {
                let d: BigUint = d.parse().map_err(|_| err())?;
                if d.is_zero() {
                    return Err(err());
                }
                orders.extend(core::iter::repeat_n(d, power));
            } else {
                return Err(err());
            }
        }
        Ok(AbelianGroup::from_cyclic_factors(free, orders))
    }
}

/// `H_k = ker d_k / im d_{k+1}`.
///
/// The kernel is read off the column transform of a Smith form of `d_k`;
/// `d_{k+1}` is rewritten in that kernel basis and its own Smith form gives
/// the free rank and torsion of the quotient.
pub fn homology_at(c: &ChainComplex, k: usize) -> Result<AbelianGroup, HomologyError> {
    if k > c.max_degree() {
        return Err(HomologyError::DegreeOutOfRange {
            degree: k,
            max_degree: c.max_degree(),
        });
    }
    let dim = c.rank(k);
    let d_k = c.boundary(k).expect("boundary below top degree");
    let d_next = c.boundary(k + 1).expect("boundary at or below top degree");

    let snf = smith_normal_form_with_transforms(d_k);
    let r = snf.rank();
    let t = snf.transforms.expect("requested transforms");
    let coords = &t.q_inv * d_next;
    if !coords.row_range(0, r).is_zero() {
        return Err(HomologyError::NotAComplex(k + 1));
    }
    let in_kernel = coords.row_range(r, dim);
    let image = smith_normal_form(&in_kernel);
    Ok(AbelianGroup::from_invariant_factors(
        (dim - r) - image.rank(),
        &image.invariant_factors,
    ))
}

/// Closed form for `H_2` of a connected simply laced Artin group:
/// `Z^b + (Z/2)^c` with `b` the first Betti number of the graph and `c` the
/// number of non-edge classes.
pub fn h2_fast(g: &CoxeterGraph) -> Result<AbelianGroup, HomologyError> {
    if !g.is_simply_laced() {
        return Err(HomologyError::NotSimplyLaced);
    }
    if !g.is_connected() {
        return Err(HomologyError::Disconnected);
    }
    let c = g.non_edge_classes().len();
    Ok(AbelianGroup {
        free_rank: g.first_betti_number(),
        torsion: alloc::vec![BigUint::from(2u32); c],
    })
}

/// `H_1` of an Artin group: free abelian on the classes of generators
/// linked by odd finite labels.
pub fn h1_of_artin(g: &CoxeterGraph) -> AbelianGroup {
    let mut uf = UnionFind::new(g.len());
    for (i, j, l) in g.edges() {
        if l.is_odd() {
            uf.union(i, j);
        }
    }
    AbelianGroup::free(uf.classes().len())
}

/// Whether `small` is isomorphic to a subgroup of `big`, for groups whose
/// torsion is 2-primary. Compares free ranks and, for each `k >= 1`, the
/// number of cyclic factors of order divisible by `2^k`.
pub fn embeds(small: &AbelianGroup, big: &AbelianGroup) -> Result<bool, HomologyError> {
    let vs = small.two_adic_profile()?;
    let vb = big.two_adic_profile()?;
    if small.free_rank > big.free_rank {
        return Ok(false);
    }
    let top = vs.iter().copied().max().unwrap_or(0);
    Ok((1..=top).all(|k| {
        vs.iter().filter(|&&v| v >= k).count() <= vb.iter().filter(|&&v| v >= k).count()
    }))
}

/// Graph statistic used by [`h1_of_artin`]: number of odd-label classes.
pub fn odd_label_classes(g: &CoxeterGraph) -> usize {
    h1_of_artin(g).free_rank
}
