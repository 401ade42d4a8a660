use num_bigint::BigInt;
use orbichar::bundle::{generalized_chi, CharacterBundle};
use orbichar::descriptor::{build_fgr, fgr_descriptor, from_json, gset_descriptor, build_gset, FgrTerm};
use orbichar::euler::{chi_k_recursive, chi_k_tuples, verify_induction_invariance};
use orbichar::grp::{find_embedding, named_group, subgroup_generated, Elem, FiniteGroup};
use orbichar::gset::GSet;
use orbichar::k0::{class_of, FgrClass, GroupClassId, PRESET_NAMES};
use orbichar::lpoly::{LPoly, Q};
use orbichar::power::{power_standard, power_via_lambda, ZetaInt};
use orbichar::series::Series;
use proptest::prelude::*;

const NAMES: [&str; 7] = ["trivial", "C2", "C3", "C4", "V4", "S3", "D4"];

/// A G-set as a disjoint union of coset spaces `G/⟨s⟩` with cell dimensions.
fn arb_gset() -> impl Strategy<Value = GSet> {
    (0..NAMES.len(), prop::collection::vec((any::<prop::sample::Index>(), 0u32..3), 1..4)).prop_map(|(gi, parts)| {
        let g = named_group(NAMES[gi]).unwrap();
        let mut x = GSet::empty(&g);
        for (pick, dim) in parts {
            let s = g.elem(pick.index(g.order())).unwrap();
            let h = subgroup_generated(&g, &[s]);
            let orbit = GSet::cosets(&g, &h).unwrap();
            let cells = orbit.len();
            let orbit = GSet::from_action(&g, vec![dim; cells], |e, c| orbit.act(e, c)).unwrap();
            x = x.disjoint_union(&orbit).unwrap();
        }
        x
    })
}

fn arb_class() -> impl Strategy<Value = FgrClass> {
    prop::collection::vec((0..PRESET_NAMES.len() as u32, 0u32..3, -4i64..5), 0..4).prop_map(|terms| {
        terms.into_iter().fold(FgrClass::zero(), |acc, (g, d, c)| {
            acc.add(&FgrClass::term(GroupClassId::from_index(g).unwrap(), d, c))
        })
    })
}

fn arb_int_series(n: usize) -> impl Strategy<Value = Series<BigInt>> {
    prop::collection::vec(-4i64..5, n).prop_map(move |v| {
        let mut c = vec![BigInt::from(1)];
        c.extend(v.into_iter().map(BigInt::from));
        Series::new(c, n)
    })
}

fn arb_lpoly() -> impl Strategy<Value = LPoly> {
    prop::collection::vec((0i64..5, -3i64..4), 0..4)
        .prop_map(|t| LPoly::from_terms(t.into_iter().map(|(q, c)| (Q::new(q, 2), BigInt::from(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn chi_definitions_agree(x in arb_gset(), k in 0usize..4) {
        prop_assert_eq!(chi_k_tuples(&x, k).unwrap(), chi_k_recursive(&x, k));
    }

    #[test]
    fn chi_is_additive(x in arb_gset(), k in 0usize..4) {
        let doubled = x.disjoint_union(&x).unwrap();
        prop_assert_eq!(chi_k_recursive(&doubled, k), 2 * chi_k_recursive(&x, k));
    }

    #[test]
    fn class_chi_matches_the_set(x in arb_gset(), k in 0usize..4) {
        prop_assert_eq!(class_of(&x).unwrap().chi_k(k), chi_k_recursive(&x, k));
    }

    #[test]
    fn classes_form_a_commutative_ring(a in arb_class(), b in arb_class(), c in arb_class()) {
        let ab = a.try_mul(&b).unwrap();
        prop_assert_eq!(&ab, &b.try_mul(&a).unwrap());
        prop_assert_eq!(a.try_mul(&b.add(&c)).unwrap(), ab.add(&a.try_mul(&c).unwrap()));
        prop_assert_eq!(a.try_mul(&FgrClass::one()).unwrap(), a.clone());
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn chi_is_a_ring_homomorphism(a in arb_class(), b in arb_class(), k in 0usize..4) {
        let ab = a.try_mul(&b).unwrap();
        prop_assert_eq!(ab.chi_k(k), a.chi_k(k) * b.chi_k(k));
        prop_assert_eq!(a.add(&b).chi_k(k), a.chi_k(k) + b.chi_k(k));
    }

    #[test]
    fn class_descriptors_round_trip(a in arb_class()) {
        let text = serde_json::to_string(&fgr_descriptor(&a)).unwrap();
        prop_assert_eq!(build_fgr(&from_json::<Vec<FgrTerm>>(&text).unwrap()).unwrap(), a);
    }

    #[test]
    fn gset_descriptors_round_trip(x in arb_gset()) {
        let text = serde_json::to_string(&gset_descriptor(&x)).unwrap();
        let y = build_gset(&from_json(&text).unwrap()).unwrap();
        prop_assert_eq!(class_of(&y).unwrap(), class_of(&x).unwrap());
        prop_assert_eq!(serde_json::to_string(&gset_descriptor(&y)).unwrap(), text);
    }

    #[test]
    fn lpoly_ring_laws(a in arb_lpoly(), b in arb_lpoly(), c in arb_lpoly()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).at_one(), a.at_one() * b.at_one());
    }

    #[test]
    fn series_inverse(a in arb_int_series(6)) {
        prop_assert_eq!(a.mul(&a.inverse().unwrap()).unwrap(), Series::one(6));
    }

    #[test]
    fn integer_powers_add_in_the_exponent(a in arb_int_series(5), m in -3i64..4, n in -3i64..4) {
        let (m, n) = (BigInt::from(m), BigInt::from(n));
        let lhs = power_standard(&a, &(&m + &n));
        let rhs = power_standard(&a, &m).mul(&power_standard(&a, &n)).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(power_via_lambda(&a, &(&m + &n), &ZetaInt).unwrap(), lhs);
    }

    #[test]
    fn rank_zero_generalized_chi_specializes_to_chi(x in arb_gset(), k in 0usize..3) {
        let b = CharacterBundle::zero(&x);
        let v = generalized_chi(&b, k, &[Q::from_integer(1); 2]).unwrap();
        prop_assert_eq!(v.at_one(), chi_k_recursive(&x, k));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn induction_preserves_chi(parts in prop::collection::vec((any::<prop::sample::Index>(), 0u32..2), 1..3)) {
        let (h, g) = (named_group("C2").unwrap(), named_group("D4").unwrap());
        let emb = find_embedding(&h, &g).unwrap().unwrap();
        let mut z = GSet::empty(&h);
        for (pick, dim) in parts {
            let part = if pick.index(2) == 0 { GSet::regular(&h) } else { GSet::trivial(&h, vec![dim]) };
            z = z.disjoint_union(&part).unwrap();
        }
        let r = verify_induction_invariance(&z, &emb, 3).unwrap();
        prop_assert!(r.passed(), "{:?}", r);
    }
}

#[test]
fn trivial_group_generators_are_empty() {
    assert!(FiniteGroup::trivial().generators().is_empty());
    assert_eq!(FiniteGroup::trivial().identity(), Elem::IDENTITY);
}
