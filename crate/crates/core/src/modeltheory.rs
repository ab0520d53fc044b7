//! Computable invariants that separate Artin groups up to elementary and
//! existential equivalence: torsion orders of central quotients, center
//! data, abelianizations of central quotients, dihedral quotients, and
//! homological retract obstructions for simply laced affine types.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::classify::{classify, CoxeterType, Family};
use crate::graph::CoxeterGraph;
use crate::homology::{embeds, h1_of_artin, h2_fast, homology_at, AbelianGroup, HomologyError};
use crate::poincare::coxeter_number;
use crate::salvetti::build_complex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("type {0} is not spherical")]
    NotSpherical(String),
    #[error("operation not supported for type {0}")]
    UnsupportedType(String),
    #[error("not applicable to rank-one type {0}")]
    NotApplicable(String),
    #[error("label {0} is out of range (need m >= 3)")]
    LabelOutOfRange(u32),
    #[error("no implemented invariant separates {0} and {1}")]
    Undistinguished(String, String),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

fn require_spherical(t: &CoxeterType) -> Result<(), ModelError> {
    if t.is_spherical() {
        Ok(())
    } else {
        Err(ModelError::NotSpherical(t.to_string()))
    }
}

/// Orders of nontrivial torsion elements of `A / Z(A)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TorsionProfile {
    pub orders: BTreeSet<u64>,
}

impl TorsionProfile {
    /// All divisors `>= 2` of each of `maxima`.
    fn divisors_of(maxima: &[u64]) -> Self {
        let orders = maxima
            .iter()
            .flat_map(|&k| (2..=k).filter(move |d| k % d == 0))
            .collect();
        TorsionProfile { orders }
    }

    fn listed(orders: &[u64]) -> Self {
        TorsionProfile {
            orders: orders.iter().copied().collect(),
        }
    }

    pub fn contains(&self, order: u64) -> bool {
        self.orders.contains(&order)
    }
}

impl fmt::Display for TorsionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, o) in self.orders.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{o}")?;
        }
        f.write_str("}")
    }
}

/// Orders of nontrivial torsion elements of the central quotient of an
/// irreducible spherical Artin group. `A1` has trivial central quotient.
pub fn torsion_profile(t: &CoxeterType) -> Result<TorsionProfile, ModelError> {
    require_spherical(t)?;
    let n = t.rank as u64;
    let p = match t.family {
        Family::A if n == 1 => TorsionProfile::default(),
        Family::A => TorsionProfile::divisors_of(&[n, n + 1]),
        Family::B => TorsionProfile::divisors_of(&[n]),
        Family::D if n.is_multiple_of(2) => TorsionProfile::divisors_of(&[n - 1, n / 2]),
        Family::D => TorsionProfile::divisors_of(&[2 * n - 2, n]),
        Family::E6 => TorsionProfile::listed(&[2, 3, 4, 6, 8, 9, 12]),
        Family::E7 => TorsionProfile::listed(&[3, 7, 9]),
        Family::E8 => TorsionProfile::listed(&[2, 3, 4, 5, 6, 10, 12, 15]),
        Family::F4 => TorsionProfile::listed(&[2, 3, 4, 6]),
        Family::H3 => TorsionProfile::listed(&[3, 5]),
        Family::H4 => TorsionProfile::listed(&[2, 3, 5, 6, 10, 15]),
        Family::I2 => {
            let m = u64::from(t.dihedral_m().expect("I2 carries its label"));
            if m % 2 == 0 {
                TorsionProfile::divisors_of(&[m / 2])
            } else {
                TorsionProfile::divisors_of(&[2, m])
            }
        }
        _ => unreachable!("spherical families are covered"),
    };
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CenterGenerator {
    Delta,
    DeltaSquared,
}

/// Generator of `Z(A)` and its image in the abelianization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CenterFact {
    pub generator_kind: CenterGenerator,
    /// Length of the Garside element: `N = n h / 2`.
    pub reflection_count: u64,
    /// `N` for `Delta`, `2N` for `Delta^2`.
    pub central_exponent: u64,
}

pub fn center_fact(t: &CoxeterType) -> Result<CenterFact, ModelError> {
    require_spherical(t)?;
    let n = t.rank as u64;
    let h = coxeter_number(t).map_err(|_| ModelError::NotSpherical(t.to_string()))?;
    let reflection_count = n * h / 2;
    let squared = match t.family {
        Family::A => n >= 2,
        Family::D => n % 2 == 1,
        Family::E6 => true,
        Family::I2 => t.dihedral_m().is_some_and(|m| m % 2 == 1),
        _ => false,
    };
    let (generator_kind, central_exponent) = if squared {
        (CenterGenerator::DeltaSquared, 2 * reflection_count)
    } else {
        (CenterGenerator::Delta, reflection_count)
    };
    Ok(CenterFact {
        generator_kind,
        reflection_count,
        central_exponent,
    })
}

/// Abelianization of `A / Z(A)` for types whose labels are all odd, where
/// every generator maps to the same element `t` and the center imposes
/// `t^exponent = 1`.
pub fn central_quotient_abelianization(t: &CoxeterType) -> Result<AbelianGroup, ModelError> {
    require_spherical(t)?;
    let template = t.template().expect("spherical types have templates");
    if template.edges().any(|(_, _, l)| !l.is_odd()) {
        return Err(ModelError::UnsupportedType(t.to_string()));
    }
    let fact = center_fact(t)?;
    Ok(AbelianGroup::cyclic(fact.central_exponent))
}

/// Whether `A / Z(A)` is hyperbolic: rank-two quotients are non virtually
/// abelian free products of cyclic groups; from rank three on, two
/// commuting standard generators give a `Z^2`.
pub fn central_quotient_hyperbolic(t: &CoxeterType) -> Result<bool, ModelError> {
    require_spherical(t)?;
    match t.rank {
        1 => Err(ModelError::NotApplicable(t.to_string())),
        2 => Ok(true),
        _ => Ok(false),
    }
}

/// Free product of cyclic groups; `0` stands for an infinite cyclic factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeProductShape {
    pub factors: Vec<u64>,
}

impl FreeProductShape {
    /// A free product of two nontrivial cyclic groups is virtually abelian
    /// only for `C2 * C2`; more factors, or any trivial factor aside, never.
    pub fn is_virtually_abelian(&self) -> bool {
        let nontrivial: Vec<u64> = self.factors.iter().copied().filter(|&f| f != 1).collect();
        nontrivial.len() < 2 || nontrivial == [2, 2]
    }
}

impl fmt::Display for FreeProductShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &k) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            if k == 0 {
                f.write_str("Z")?;
            } else {
                write!(f, "C{k}")?;
            }
        }
        Ok(())
    }
}

/// Central quotient of the rank-two Artin group with label `m`:
/// `C_{m/2} * Z` for even `m`, `C_2 * C_m` for odd `m`.
pub fn dihedral_quotient_shape(m: u32) -> Result<FreeProductShape, ModelError> {
    if m < 3 {
        return Err(ModelError::LabelOutOfRange(m));
    }
    let m = u64::from(m);
    let factors = if m % 2 == 0 {
        alloc::vec![m / 2, 0]
    } else {
        alloc::vec![2, m]
    };
    Ok(FreeProductShape { factors })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Isomorphic,
    Distinguished,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    TorsionOrders,
    Hyperbolicity,
    Abelianization,
    ComponentMultiset,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Witness {
    None,
    /// An order admissible in exactly one of the two central quotients.
    TorsionOrder(u64),
    /// Which side has a hyperbolic central quotient (`true` = first).
    Hyperbolic { first: bool, second: bool },
    /// Orders of the two cyclic abelianizations.
    CyclicOrders(u64, u64),
    /// A component type with its multiplicity on each side.
    Component {
        ty: CoxeterType,
        first: usize,
        second: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DistinguishCertificate {
    pub verdict: Verdict,
    pub method: Option<Method>,
    pub witness: Witness,
}

impl DistinguishCertificate {
    fn isomorphic() -> Self {
        DistinguishCertificate {
            verdict: Verdict::Isomorphic,
            method: None,
            witness: Witness::None,
        }
    }

    fn distinguished(method: Method, witness: Witness) -> Self {
        DistinguishCertificate {
            verdict: Verdict::Distinguished,
            method: Some(method),
            witness,
        }
    }
}

/// Separates two irreducible spherical types by first-order invariants of
/// their central quotients: torsion orders, then hyperbolicity, then the
/// abelianization.
pub fn distinguish_irreducible(s: &CoxeterType, t: &CoxeterType) -> Result<DistinguishCertificate, ModelError> {
    require_spherical(s)?;
    require_spherical(t)?;
    if s == t {
        return Ok(DistinguishCertificate::isomorphic());
    }
    let ps = torsion_profile(s)?;
    let pt = torsion_profile(t)?;
    if let Some(&order) = ps.orders.symmetric_difference(&pt.orders).next() {
        return Ok(DistinguishCertificate::distinguished(
            Method::TorsionOrders,
            Witness::TorsionOrder(order),
        ));
    }
    if let (Ok(hs), Ok(ht)) = (central_quotient_hyperbolic(s), central_quotient_hyperbolic(t)) {
        if hs != ht {
            return Ok(DistinguishCertificate::distinguished(
                Method::Hyperbolicity,
                Witness::Hyperbolic { first: hs, second: ht },
            ));
        }
    }
    if let (Ok(a), Ok(b)) = (central_quotient_abelianization(s), central_quotient_abelianization(t)) {
        if a != b {
            let order = |g: &AbelianGroup| {
                g.order()
                    .and_then(|o| u64::try_from(o).ok())
                    .expect("cyclic quotient of small order")
            };
            return Ok(DistinguishCertificate::distinguished(
                Method::Abelianization,
                Witness::CyclicOrders(order(&a), order(&b)),
            ));
        }
    }
    Err(ModelError::Undistinguished(s.to_string(), t.to_string()))
}

/// Elementary equivalence of spherical Artin groups, which coincides with
/// isomorphism: compares the multisets of irreducible component types. On
/// failure the certificate names a type with different multiplicities,
/// preferring one that is absent from one side.
pub fn elementary_equivalent_spherical(
    g: &CoxeterGraph,
    h: &CoxeterGraph,
) -> Result<(bool, DistinguishCertificate), ModelError> {
    let count = |graph: &CoxeterGraph| -> Result<BTreeMap<CoxeterType, usize>, ModelError> {
        let mut m = BTreeMap::new();
        for ty in classify(graph).types() {
            require_spherical(&ty)?;
            *m.entry(ty).or_insert(0) += 1;
        }
        Ok(m)
    };
    let cg = count(g)?;
    let ch = count(h)?;
    if cg == ch {
        return Ok((true, DistinguishCertificate::isomorphic()));
    }
    let all: BTreeSet<CoxeterType> = cg.keys().chain(ch.keys()).copied().collect();
    let diffs: Vec<(CoxeterType, usize, usize)> = all
        .into_iter()
        .map(|ty| (ty, cg.get(&ty).copied().unwrap_or(0), ch.get(&ty).copied().unwrap_or(0)))
        .filter(|(_, a, b)| a != b)
        .collect();
    let (ty, first, second) = diffs
        .iter()
        .copied()
        .find(|&(_, a, b)| a == 0 || b == 0)
        .unwrap_or(diffs[0]);
    Ok((
        false,
        DistinguishCertificate::distinguished(Method::ComponentMultiset, Witness::Component { ty, first, second }),
    ))
}

fn require_affine(t: &CoxeterType) -> Result<(), ModelError> {
    if t.is_affine() {
        Ok(())
    } else {
        Err(ModelError::UnsupportedType(t.to_string()))
    }
}

/// `H_1` and `H_2` of the Artin group of an affine catalog type. `H_2` uses
/// the closed form where it applies (simply laced) and the Salvetti complex
/// for `~A1`.
pub fn affine_homology(t: &CoxeterType) -> Result<(AbelianGroup, AbelianGroup), ModelError> {
    require_affine(t)?;
    let g = t.template().expect("affine types have templates");
    let h1 = h1_of_artin(&g);
    let h2 = if g.is_simply_laced() {
        h2_fast(&g)?
    } else {
        let c = build_complex(&g, 2).map_err(|_| ModelError::UnsupportedType(t.to_string()))?;
        homology_at(&c, 2)?
    };
    Ok((h1, h2))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RetractOutcome {
    /// `H_degree(source)` does not embed in `H_degree(target)`, so `target`
    /// cannot retract onto a copy of `source`.
    Obstructed {
        degree: usize,
        source: AbelianGroup,
        target: AbelianGroup,
    },
    NoObstructionFound,
}

/// Checks whether the homology of `source` in degrees 1 and 2 embeds in
/// that of `target`; a retraction would induce such an embedding.
pub fn retract_obstruction(target: &CoxeterType, source: &CoxeterType) -> Result<RetractOutcome, ModelError> {
    let (t1, t2) = affine_homology(target)?;
    let (s1, s2) = affine_homology(source)?;
    for (degree, s, t) in [(1, s1, t1), (2, s2, t2)] {
        if !embeds(&s, &t)? {
            return Ok(RetractOutcome::Obstructed {
                degree,
                source: s,
                target: t,
            });
        }
    }
    Ok(RetractOutcome::NoObstructionFound)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EqeCertificate {
    /// The non-`~A` side (target) does not retract onto the `~A_n` side.
    Retract {
        target: CoxeterType,
        source: CoxeterType,
        outcome: RetractOutcome,
    },
    /// `~A_n` and `~A_m` with `n != m`.
    RankMismatch(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Decision {
    Equivalent,
    NotEquivalent(EqeCertificate),
    /// Neither side is `~A_n` with `n >= 4`.
    OutOfTheoremScope,
}

/// Existential equivalence between simply laced affine Artin groups when
/// one side is `~A_n`, `n >= 4`.
pub fn existentially_equivalent_affine(s: &CoxeterType, t: &CoxeterType) -> Result<Decision, ModelError> {
    require_affine(s)?;
    require_affine(t)?;
    if s == t {
        return Ok(Decision::Equivalent);
    }
    let big_a = |x: &CoxeterType| x.family == Family::AffA && x.rank >= 4;
    let (a, other) = if big_a(s) {
        (s, t)
    } else if big_a(t) {
        (t, s)
    } else {
        return Ok(Decision::OutOfTheoremScope);
    };
    let outcome = retract_obstruction(other, a)?;
    if matches!(outcome, RetractOutcome::Obstructed { .. }) {
        return Ok(Decision::NotEquivalent(EqeCertificate::Retract {
            target: *other,
            source: *a,
            outcome,
        }));
    }
    if other.family == Family::AffA {
        return Ok(Decision::NotEquivalent(EqeCertificate::RankMismatch(s.rank, t.rank)));
    }
    Ok(Decision::OutOfTheoremScope)
}
