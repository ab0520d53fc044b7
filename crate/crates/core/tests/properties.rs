mod common;

use std::collections::BTreeSet;

use artin_core::classify::{labeled_isomorphic, preset_graph, CoxeterType, Family};
use artin_core::homology::{embeds, h1_of_artin, h2_fast, homology_at, AbelianGroup};
use artin_core::matrix::{smith_normal_form, smith_normal_form_with_transforms, IntMatrix};
use artin_core::modeltheory::{
    center_fact, central_quotient_abelianization, distinguish_irreducible, retract_obstruction,
    torsion_profile, RetractOutcome, Verdict,
};
use artin_core::poincare::poincare_of_subset;
use artin_core::{build_complex, classify, recognize_irreducible, spherical_subsets, CoxeterGraph, Label};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn label_strategy() -> impl Strategy<Value = Label> {
    prop_oneof![
        4 => Just(Label::Finite(2)),
        3 => Just(Label::Finite(3)),
        1 => Just(Label::Finite(4)),
        1 => Just(Label::Finite(5)),
        1 => Just(Label::Finite(6)),
        1 => Just(Label::Infinity),
    ]
}

fn graph_strategy(max_vertices: usize) -> impl Strategy<Value = CoxeterGraph> {
    (1..=max_vertices).prop_flat_map(|n| {
        proptest::collection::vec(label_strategy(), n * (n - 1) / 2).prop_map(move |labels| {
            let mut g = CoxeterGraph::with_rank(n);
            let mut it = labels.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    g.set_label(i, j, it.next().unwrap()).unwrap();
                }
            }
            g
        })
    })
}

fn simply_laced_strategy(max_vertices: usize) -> impl Strategy<Value = CoxeterGraph> {
    graph_strategy(max_vertices).prop_map(|g| {
        let mut h = CoxeterGraph::with_rank(g.len());
        for (i, j, _) in g.edges() {
            h.set_label(i, j, Label::Finite(3)).unwrap();
        }
        h
    })
}

fn permuted(g: &CoxeterGraph, perm: &[usize]) -> CoxeterGraph {
    let mut h = CoxeterGraph::with_rank(g.len());
    for (i, j, l) in g.edges() {
        h.set_label(perm[i], perm[j], l).unwrap();
    }
    h
}

fn graph_with_perm(max_vertices: usize) -> impl Strategy<Value = (CoxeterGraph, Vec<usize>)> {
    graph_strategy(max_vertices).prop_flat_map(|g| {
        let n = g.len();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn catalog_up_to(max_rank: usize) -> Vec<CoxeterType> {
    let mut types = Vec::new();
    for n in 1..=max_rank {
        types.push(CoxeterType::a(n));
    }
    for n in 2..=max_rank {
        types.push(CoxeterType::b(n));
    }
    for n in 4..=max_rank {
        types.push(CoxeterType::d(n));
    }
    for f in [Family::E6, Family::E7, Family::E8, Family::F4, Family::H3, Family::H4] {
        types.push(CoxeterType::exceptional(f));
    }
    for m in 5..=12 {
        types.push(CoxeterType::dihedral(m));
    }
    types.push(CoxeterType::affine_a(1));
    for n in 2..max_rank {
        types.push(CoxeterType::affine_a(n));
    }
    for n in 4..max_rank {
        types.push(CoxeterType::affine_d(n));
    }
    for f in [Family::AffE6, Family::AffE7, Family::AffE8] {
        types.push(CoxeterType::exceptional(f));
    }
    types
}

fn spherical_sweep() -> Vec<CoxeterType> {
    let mut types = Vec::new();
    for n in 1..=10 {
        types.push(CoxeterType::a(n));
    }
    for n in 2..=10 {
        types.push(CoxeterType::b(n));
    }
    for n in 4..=10 {
        types.push(CoxeterType::d(n));
    }
    for f in [Family::E6, Family::E7, Family::E8, Family::F4, Family::H3, Family::H4] {
        types.push(CoxeterType::exceptional(f));
    }
    for m in 5..=30 {
        types.push(CoxeterType::dihedral(m));
    }
    types
}

fn det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
            .collect();
        let term = BigInt::from(m[0][j]) * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// gcd of all `k x k` minors.
fn minor_gcd(m: &[Vec<i64>], k: usize) -> BigInt {
    let rows = m.len();
    let cols = m[0].len();
    let mut g = BigInt::zero();
    for rs in combinations(rows, k) {
        for cs in combinations(cols, k) {
            let sub: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

fn two_primary_group() -> impl Strategy<Value = AbelianGroup> {
    (0usize..3, proptest::collection::vec(1u32..4, 0..4)).prop_map(|(r, exps)| {
        AbelianGroup::from_cyclic_factors(r, exps.into_iter().map(|e| BigUint::from(1u32 << e)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classification_is_invariant_under_relabeling((g, perm) in graph_with_perm(7)) {
        let h = permuted(&g, &perm);
        prop_assert!(labeled_isomorphic(&g, &h));
        prop_assert_eq!(classify(&g).types(), classify(&h).types());
        prop_assert_eq!(h1_of_artin(&g), h1_of_artin(&h));
    }

    #[test]
    fn homology_is_invariant_under_relabeling((g, perm) in graph_with_perm(6)) {
        let h = permuted(&g, &perm);
        let cg = build_complex(&g, 2).unwrap();
        let ch = build_complex(&h, 2).unwrap();
        for k in 0..=2 {
            prop_assert_eq!(homology_at(&cg, k).unwrap(), homology_at(&ch, k).unwrap());
        }
    }

    #[test]
    fn catalog_templates_are_recognized_after_shuffling(idx in 0usize..200, seed in any::<u64>()) {
        let types = catalog_up_to(12);
        let t = types[idx % types.len()];
        let g = t.template().unwrap();
        let mut perm: Vec<usize> = (0..g.len()).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(recognize_irreducible(&permuted(&g, &perm)).unwrap(), t);
    }

    #[test]
    fn classify_of_disjoint_union_is_multiset_union(g in graph_strategy(5), h in graph_strategy(5)) {
        let mut expected = classify(&g).types();
        expected.extend(classify(&h).types());
        expected.sort();
        prop_assert_eq!(classify(&g.disjoint_union(&h)).types(), expected);
    }

    #[test]
    fn spherical_subsets_form_a_simplicial_complex(g in graph_strategy(7)) {
        let subsets = spherical_subsets(&g, g.len());
        let set: BTreeSet<Vec<usize>> = subsets.iter().cloned().collect();
        prop_assert!(set.contains(&Vec::new()));
        for s in &subsets {
            for j in 0..s.len() {
                let mut face = s.clone();
                face.remove(j);
                prop_assert!(set.contains(&face), "missing face {:?} of {:?}", face, s);
            }
        }
    }

    #[test]
    fn poincare_quotients_divide_exactly(g in graph_strategy(6)) {
        for s in spherical_subsets(&g, 4) {
            let w = poincare_of_subset(&g, &s).unwrap();
            for j in 0..s.len() {
                let mut tau = s.clone();
                tau.remove(j);
                let (_, r) = w.div_rem(&poincare_of_subset(&g, &tau).unwrap()).unwrap();
                prop_assert!(r.is_zero());
            }
        }
    }

    #[test]
    fn boundary_squares_to_zero(g in graph_strategy(7)) {
        prop_assert!(build_complex(&g, 3).unwrap().is_chain_complex());
    }

    #[test]
    fn zeroth_homology_is_z(g in graph_strategy(7)) {
        let c = build_complex(&g, 0).unwrap();
        prop_assert_eq!(homology_at(&c, 0).unwrap(), AbelianGroup::free(1));
    }

    #[test]
    fn closed_form_h2_matches_complex(g in simply_laced_strategy(7)) {
        prop_assume!(g.is_connected());
        let slow = homology_at(&build_complex(&g, 2).unwrap(), 2).unwrap();
        prop_assert_eq!(h2_fast(&g).unwrap(), slow);
    }

    #[test]
    fn smith_form_matches_minor_gcds(
        rows in 1usize..4,
        cols in 1usize..4,
        entries in proptest::collection::vec(-9i64..10, 9),
    ) {
        let m: Vec<Vec<i64>> = (0..rows).map(|i| entries[i * 3..i * 3 + cols].to_vec()).collect();
        let snf = smith_normal_form_with_transforms(&IntMatrix::from_rows(&m));
        let mut prefix = BigInt::one();
        for k in 1..=rows.min(cols) {
            let expected = minor_gcd(&m, k);
            if k <= snf.rank() {
                prefix *= &snf.invariant_factors[k - 1];
                prop_assert_eq!(&prefix, &expected);
            } else {
                prop_assert!(expected.is_zero());
            }
        }
        for w in snf.invariant_factors.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        let t = snf.transforms.as_ref().unwrap();
        let mm = IntMatrix::from_rows(&m);
        prop_assert_eq!(&(&t.p * &mm) * &t.q, snf.diagonal_matrix());
        prop_assert_eq!(&t.p * &t.p_inv, IntMatrix::identity(rows));
        prop_assert_eq!(&t.q_inv * &t.q, IntMatrix::identity(cols));
        prop_assert_eq!(smith_normal_form(&mm).invariant_factors, snf.invariant_factors.clone());
    }

    #[test]
    fn embedding_is_reflexive_and_transitive(
        a in two_primary_group(),
        b in two_primary_group(),
        c in two_primary_group(),
    ) {
        prop_assert!(embeds(&a, &a).unwrap());
        if embeds(&a, &b).unwrap() && embeds(&b, &c).unwrap() {
            prop_assert!(embeds(&a, &c).unwrap());
        }
        if embeds(&a, &b).unwrap() && embeds(&b, &a).unwrap() {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn abelian_group_text_round_trips(g in two_primary_group()) {
        let back: AbelianGroup = g.to_string().parse().unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn graph_text_round_trips(g in graph_strategy(8)) {
        let back = CoxeterGraph::parse(&g.to_text()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn betti_number_and_h1_are_additive(g in graph_strategy(5), h in graph_strategy(5)) {
        let u = g.disjoint_union(&h);
        prop_assert_eq!(u.first_betti_number(), g.first_betti_number() + h.first_betti_number());
        prop_assert_eq!(
            h1_of_artin(&u).free_rank(),
            h1_of_artin(&g).free_rank() + h1_of_artin(&h).free_rank()
        );
    }
}

#[test]
fn every_catalog_template_up_to_rank_12_is_recognized() {
    for t in catalog_up_to(12) {
        let g = t.template().unwrap();
        assert_eq!(recognize_irreducible(&g).unwrap(), t, "template of {t}");
        assert_eq!(preset_graph(&t.to_string()).unwrap(), g, "preset of {t}");
    }
}

#[test]
fn distinguishing_never_claims_isomorphism_for_distinct_types() {
    let types = spherical_sweep();
    for (i, s) in types.iter().enumerate() {
        for t in &types[i + 1..] {
            let cert = distinguish_irreducible(s, t).unwrap();
            assert_eq!(cert.verdict, Verdict::Distinguished, "{s} vs {t}");
            assert!(cert.method.is_some());
        }
        assert_eq!(distinguish_irreducible(s, s).unwrap().verdict, Verdict::Isomorphic);
    }
}

#[test]
fn central_quotient_abelianization_order_matches_center_exponent() {
    let mut checked = 0;
    for t in spherical_sweep() {
        if let Ok(ab) = central_quotient_abelianization(&t) {
            let fact = center_fact(&t).unwrap();
            assert_eq!(ab.order(), Some(BigUint::from(fact.central_exponent)), "{t}");
            checked += 1;
        }
    }
    assert!(checked > 10);
}

#[test]
fn torsion_profiles_are_closed_under_divisors() {
    for t in spherical_sweep() {
        let profile = torsion_profile(&t).unwrap();
        for &o in &profile.orders {
            assert!(o >= 2);
            for d in 2..o {
                if o % d == 0 {
                    assert!(profile.contains(d), "{t}: {d} divides {o}");
                }
            }
        }
    }
}

#[test]
fn affine_retract_obstructions_up_to_rank_10() {
    let mut targets: Vec<CoxeterType> = (4..=10).map(CoxeterType::affine_d).collect();
    targets.extend([Family::AffE6, Family::AffE7, Family::AffE8].map(CoxeterType::exceptional));
    for t in &targets {
        for n in 1..=10 {
            let outcome = retract_obstruction(t, &CoxeterType::affine_a(n)).unwrap();
            assert!(matches!(outcome, RetractOutcome::Obstructed { .. }), "{t} vs ~A{n}");
        }
    }
}
