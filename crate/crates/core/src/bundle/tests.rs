use super::*;
use crate::euler::{chi_k_recursive, verify_tamanoi};
use crate::grp::{find_embedding, named_group};
use num_bigint::BigInt;

fn g(name: &str) -> FiniteGroup {
    named_group(name).unwrap()
}

fn q(p: i64, d: i64) -> Q {
    Q::new(p, d)
}

fn sign() -> CharacterBundle {
    CharacterBundle::sign_on_point(&g("C2")).unwrap()
}

fn c2_of(b: &CharacterBundle) -> FiniteGroup {
    b.base().group().clone()
}

fn l(p: i64, d: i64) -> LPoly {
    LPoly::l_pow(q(p, d))
}

fn generator(c: &FiniteGroup) -> Elem {
    c.generators()[0]
}

#[test]
fn ages_of_characters() {
    let b = sign();
    let s = generator(&g("C2"));
    assert_eq!(b.age(0, Elem::IDENTITY).unwrap(), q(0, 1));
    assert_eq!(b.age(0, s).unwrap(), q(1, 2));
    let c3 = g("C3");
    let a = generator(&c3);
    let b = CharacterBundle::on_point(&c3, vec![vec![(a, q(1, 3))], vec![(a, q(1, 3))]]).unwrap();
    assert_eq!(b.age(0, a).unwrap(), q(2, 3));
    assert_eq!(b.age(0, c3.mul(a, a)).unwrap(), q(4, 3));
}

#[test]
fn characters_are_validated() {
    let c3 = g("C3");
    let a = generator(&c3);
    assert!(matches!(CharacterBundle::on_point(&c3, vec![vec![(a, q(1, 2))]]), Err(Error::BadBundle(_))));
    let a2 = c3.mul(a, a);
    assert!(CharacterBundle::on_point(&c3, vec![vec![(a, q(1, 3)), (a2, q(1, 3))]]).is_err());
    assert!(CharacterBundle::on_point(&c3, vec![vec![(a, q(1, 3)), (a2, q(2, 3))]]).is_ok());
    let v4 = g("V4");
    let x = generator(&v4);
    assert!(CharacterBundle::on_point(&v4, vec![vec![(x, q(1, 2))]]).is_err());
    let s3 = g("S3");
    let z = GSet::point(&s3);
    let ts: Vec<Elem> = s3.elements().filter(|&e| s3.elem_order(e) == 2).collect();
    let one = OrbitSpec { basepoint: 0, characters: vec![vec![(ts[0], q(1, 2))]] };
    assert!(CharacterBundle::new(&z, &[one]).is_err());
    let spec = OrbitSpec { basepoint: 0, characters: vec![ts.iter().map(|&t| (t, q(1, 2))).collect()] };
    let b = CharacterBundle::new(&z, &[spec]).unwrap();
    let r = s3.elements().find(|&e| s3.elem_order(e) == 3).unwrap();
    assert_eq!(b.age(0, r).unwrap(), q(0, 1));
    assert_eq!(b.age(0, ts[1]).unwrap(), q(1, 2));
}

#[test]
fn ages_need_a_fixed_point() {
    let c2 = g("C2");
    let b = CharacterBundle::zero(&GSet::regular(&c2));
    assert_eq!(b.age(0, generator(&c2)), Err(Error::NotFixed { cell: 0 }));
}

#[test]
fn ages_are_independent_of_transport() {
    let s3 = g("S3");
    let c2 = crate::grp::subgroup_generated(&s3, &[s3.elements().find(|&e| s3.elem_order(e) == 2).unwrap()]);
    let z = GSet::cosets(&s3, &c2).unwrap();
    let t = c2.members().nth(1).unwrap();
    let b = CharacterBundle::new(&z, &[OrbitSpec { basepoint: 0, characters: vec![vec![(t, q(1, 2))]] }]).unwrap();
    for x in 0..z.len() {
        for h in s3.elements().filter(|&h| z.act(h, x) == x) {
            let expected = if h == Elem::IDENTITY { q(0, 1) } else { q(1, 2) };
            assert_eq!(b.age(x, h).unwrap(), expected);
        }
    }
}

#[test]
fn wreath_ages() {
    let c2 = g("C2");
    let s = generator(&c2);
    let w = WreathPowerBundle::new(&sign(), 2).unwrap();
    let grp = w.base().group().clone();
    let swap = grp.find_wreath(&[Elem::IDENTITY, Elem::IDENTITY], &[1, 0]).unwrap();
    assert_eq!(age_wreath(&w, 0, swap).unwrap(), q(1, 2));
    let twisted = grp.find_wreath(&[s, Elem::IDENTITY], &[1, 0]).unwrap();
    assert_eq!(age_wreath(&w, 0, twisted).unwrap(), q(1, 1));
    let diag = grp.find_wreath(&[s, Elem::IDENTITY], &[0, 1]).unwrap();
    assert_eq!(age_wreath(&w, 0, diag).unwrap(), q(1, 2));
    for e in [swap, twisted, diag] {
        let exact = w.phases(0, e).unwrap();
        assert!(eigenphase_oracle(&w, 0, e).unwrap().agrees_with(&exact, 1e-9));
    }
}

#[test]
fn strata() {
    let b = sign();
    let c2 = c2_of(&b);
    let s = generator(&c2);
    let m = age_stratify(&b, s).unwrap();
    assert_eq!(m.keys().copied().collect::<Vec<_>>(), vec![q(1, 2)]);
    let m = age_stratify(&b, Elem::IDENTITY).unwrap();
    assert_eq!(m.keys().copied().collect::<Vec<_>>(), vec![q(0, 1)]);
    let mixed = CharacterBundle::zero(&GSet::regular(&c2)).disjoint_union(&b).unwrap();
    let r = mixed.rank_stratify().unwrap();
    assert_eq!(r.keys().copied().collect::<Vec<_>>(), vec![0, 1]);
    assert_eq!(r.values().map(|b| b.base().len()).sum::<usize>(), 3);
}

#[test]
fn generalized_chi_examples() {
    let b = sign();
    assert_eq!(generalized_chi(&b, 1, &[q(1, 1)]).unwrap(), LPoly::one().add(&l(1, 2)));
    let sq = LPoly::one().add(&l(1, 2));
    assert_eq!(generalized_chi(&b, 2, &[q(1, 1), q(1, 1)]).unwrap(), sq.mul(&sq));
    assert_eq!(generalized_chi(&b, 0, &[]).unwrap(), LPoly::one());
    assert_eq!(generalized_chi(&b, 2, &[q(1, 1)]), Err(Error::WeightsTooShort { len: 1, k: 2 }));
    for (name, k) in [("S3", 1), ("D4", 2), ("C4", 3)] {
        let z = GSet::regular(&g(name)).product(&GSet::point(&g("C2"))).unwrap();
        let zero = CharacterBundle::zero(&z);
        let v = generalized_chi(&zero, k, &[q(1, 1); 3]).unwrap();
        assert_eq!(v.as_integer(), Some(chi_k_recursive(&z, k)));
    }
}

#[test]
fn zero_weights_give_integer_chi() {
    let c4 = g("C4");
    let a = generator(&c4);
    let b = CharacterBundle::on_point(&c4, vec![vec![(a, q(1, 4))], vec![(a, q(1, 2))]]).unwrap();
    for k in 0..=3 {
        let v = generalized_chi(&b, k, &[q(0, 1); 3]).unwrap();
        assert_eq!(v.as_integer(), Some(chi_k_recursive(b.base(), k)));
    }
}

#[test]
fn phi_values() {
    assert_eq!(phi_k(&[2, 3], &[q(1, 1), q(1, 1)]).unwrap(), q(5, 1));
    assert_eq!(phi_k(&[1, 1, 1], &[q(3, 1), q(1, 2), q(7, 1)]).unwrap(), q(0, 1));
    assert_eq!(phi_k(&[4], &[q(1, 2)]).unwrap(), q(3, 2));
    assert!(phi_k(&[2, 2], &[q(1, 1)]).is_err());
}

#[test]
fn wreath_bundle_theorem_for_the_sign_character() {
    for phi in [q(0, 1), q(1, 1)] {
        let r = verify_wreath_bundle_theorem(&sign(), 1, &[phi], 3).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.exponents[&1], LPoly::one().add(&LPoly::l_pow(phi / 2)));
    }
}

#[test]
fn rank_zero_theorem_is_tamanoi() {
    let z = GSet::point(&g("C2"));
    let r = verify_wreath_bundle_theorem(&CharacterBundle::zero(&z), 1, &[q(1, 1)], 3).unwrap();
    assert!(r.passed());
    let t = verify_tamanoi(&z, 1, 3).unwrap();
    assert_eq!(r.lhs, t.lhs.iter().map(|c| LPoly::constant(c.clone())).collect::<Vec<_>>());
}

#[test]
fn induction_and_products_preserve_generalized_chi() {
    let b = sign();
    let (c2, s3) = (c2_of(&b), g("S3"));
    let emb = find_embedding(&c2, &s3).unwrap().unwrap();
    let ind = b.induced(&emb).unwrap();
    assert_eq!(ind.base().len(), 3);
    let c3 = g("C3");
    let a = generator(&c3);
    let other = CharacterBundle::on_point(&c3, vec![vec![(a, q(1, 3))]]).unwrap();
    let prod = b.product(&other).unwrap();
    for (k, phi) in [(1, vec![q(1, 1)]), (2, vec![q(1, 1), q(1, 1)]), (2, vec![q(1, 1), q(2, 1)])] {
        assert_eq!(generalized_chi(&b, k, &phi).unwrap(), generalized_chi(&ind, k, &phi).unwrap());
        let lhs = generalized_chi(&prod, k, &phi).unwrap();
        let rhs = generalized_chi(&b, k, &phi).unwrap().mul(&generalized_chi(&other, k, &phi).unwrap());
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn bundle_classes() {
    let b = sign();
    let (c2, s3) = (c2_of(&b), g("S3"));
    let emb = find_embedding(&c2, &s3).unwrap().unwrap();
    let class = class_of_vect(&b).unwrap();
    assert_eq!(class_of_vect(&b.induced(&emb).unwrap()).unwrap(), class);
    let trivial_char = CharacterBundle::on_point(&c2, vec![vec![(generator(&c2), q(0, 1))]]).unwrap();
    assert_ne!(class_of_vect(&trivial_char).unwrap(), class);
    let z = GSet::trivial(&c2, vec![0, 1]);
    assert_eq!(
        class_of_vect(&CharacterBundle::zero(&z)).unwrap(),
        VectClass::from_fgr(&crate::k0::class_of(&z).unwrap())
    );
    assert_eq!(class.forget(), crate::k0::class_of(b.base()).unwrap());
    let phi = [q(1, 1), q(1, 2)];
    for k in 0..=2 {
        assert_eq!(class.generalized_chi(k, &phi).unwrap(), generalized_chi(&b, k, &phi).unwrap());
    }
}

#[test]
fn automorphic_characters_give_one_class() {
    let c3 = g("C3");
    let a = generator(&c3);
    let b1 = CharacterBundle::on_point(&c3, vec![vec![(a, q(1, 3))]]).unwrap();
    let b2 = CharacterBundle::on_point(&c3, vec![vec![(a, q(2, 3))]]).unwrap();
    assert_eq!(class_of_vect(&b1).unwrap(), class_of_vect(&b2).unwrap());
    let both = CharacterBundle::on_point(&c3, vec![vec![(a, q(1, 3))], vec![(a, q(2, 3))]]).unwrap();
    let twice = CharacterBundle::on_point(&c3, vec![vec![(a, q(1, 3))], vec![(a, q(1, 3))]]).unwrap();
    assert_ne!(class_of_vect(&both).unwrap(), class_of_vect(&twice).unwrap());
}

#[test]
fn product_of_classes_is_the_class_of_the_product() {
    let b = sign();
    let c2 = c2_of(&b);
    let c = CharacterBundle::zero(&GSet::regular(&c2)).disjoint_union(&b).unwrap();
    let lhs = class_of_vect(&b.product(&c).unwrap()).unwrap();
    let rhs = class_of_vect(&b).unwrap().try_mul(&class_of_vect(&c).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn vect_series() {
    let b = sign();
    let (c2, s3) = (c2_of(&b), g("S3"));
    let emb = find_embedding(&c2, &s3).unwrap().unwrap();
    let ind = b.induced(&emb).unwrap();
    assert_eq!(zeta_vect_series(&b, 2).unwrap(), zeta_vect_series(&ind, 2).unwrap());
    assert_eq!(lambda_vect_series(&b, 2).unwrap(), lambda_vect_series(&ind, 2).unwrap());

    let other = CharacterBundle::zero(&GSet::regular(&c2));
    let u = b.disjoint_union(&other).unwrap();
    let lhs = zeta_vect_series(&u, 2).unwrap();
    let rhs = zeta_vect_series(&b, 2).unwrap().mul(&zeta_vect_series(&other, 2).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
    let lhs = lambda_vect_series(&u, 2).unwrap();
    let rhs = lambda_vect_series(&b, 2).unwrap().mul(&lambda_vect_series(&other, 2).unwrap()).unwrap();
    assert_eq!(lhs, rhs);

    let zero = CharacterBundle::zero(&GSet::point(&c2));
    let z = zeta_vect_series(&zero, 2).unwrap();
    let plain = crate::zeta::kapranov_zeta_model(zero.base(), 2).unwrap();
    assert_eq!(z.coeffs().iter().map(VectClass::forget).collect::<Vec<_>>(), plain.coeffs());
    assert_eq!(z.coeffs().iter().map(|c| VectClass::from_fgr(&c.forget())).collect::<Vec<_>>(), z.coeffs());
}

#[test]
fn order_two_weights_break_the_product_formula() {
    let b = sign();
    let r = verify_wreath_bundle_theorem(&b, 2, &[q(0, 1), q(0, 1)], 3).unwrap();
    assert!(r.passed());
    // t² worked by hand: five classes of commuting pairs in C2 ≀ S2 on the
    // left; (1−t)^{−e}(1−L^{1/2}t²)^{−3e} with e = (1+L^{1/2})² on the right.
    let r = verify_wreath_bundle_theorem(&b, 2, &[q(1, 1), q(1, 1)], 2).unwrap();
    let lhs = LPoly::from_terms([(q(0, 1), 1), (q(1, 2), 4), (q(1, 1), 8), (q(3, 2), 4), (q(2, 1), 5)].map(|(a, c)| (a, BigInt::from(c))));
    let rhs = LPoly::from_terms([(q(0, 1), 1), (q(1, 2), 5), (q(1, 1), 10), (q(3, 2), 5), (q(2, 1), 1)].map(|(a, c)| (a, BigInt::from(c))));
    assert_eq!((r.lhs[2].clone(), r.rhs[2].clone()), (lhs, rhs));
    assert_eq!(r.lhs[2].at_one(), r.rhs[2].at_one());
}
