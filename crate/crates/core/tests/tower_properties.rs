use artin_tower::tower::{self, AffineElement, BElement, Floor};
use artin_tower::{Alphabet, GenWord};
use proptest::prelude::*;

const N: u32 = 3;

fn word(alphabet: Alphabet, lo: u32, hi: u32, max_len: usize) -> impl Strategy<Value = GenWord> {
    proptest::collection::vec((lo..=hi, prop_oneof![Just(1), Just(-1)]), 0..=max_len)
        .prop_map(move |v| GenWord::from_letters(alphabet, v))
}

fn affine() -> impl Strategy<Value = AffineElement> {
    word(Alphabet::T, 0, N, 6).prop_map(|w| tower::iota_affine(N, &w).unwrap())
}

fn b_element() -> impl Strategy<Value = BElement> {
    word(Alphabet::R, 1, N + 1, 10).prop_map(|w| tower::iota_b(N, &w).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn affine_membership_is_closed(u in affine(), v in affine()) {
        prop_assert!(tower::membership(u.mul(&v).ambient(), Floor::Affine).unwrap());
        prop_assert!(tower::membership(u.inverse().ambient(), Floor::Affine).unwrap());
    }

    #[test]
    fn ay_membership_implies_affine(w in word(Alphabet::A, 1, N + 1, 12)) {
        let b = tower::embed(N, &w).unwrap();
        if tower::membership(&b, Floor::AY).unwrap() {
            prop_assert!(tower::membership(&b, Floor::Affine).unwrap());
        }
    }

    #[test]
    fn z_is_a_homomorphism(u in b_element(), v in b_element()) {
        let z = |x: &BElement| tower::z_value(x).unwrap();
        prop_assert_eq!(z(&u.mul(&v)), z(&u) + z(&v));
        prop_assert_eq!(z(&u.inverse()), -z(&u));
    }

    #[test]
    fn z_counts_the_last_generator(w in word(Alphabet::R, 1, N + 1, 10)) {
        let expected: i64 = w.letters().iter().filter(|&&(g, _)| g == N + 1).map(|&(_, e)| e as i64).sum();
        prop_assert_eq!(tower::z_value(&tower::iota_b(N, &w).unwrap()).unwrap(), expected);
    }

    #[test]
    fn splitting_is_exact_and_unique(w in b_element(), k in -2i64..=2) {
        let rho = tower::rho_b(N).unwrap();
        let (m, g1) = tower::split_b_element(&w).unwrap();
        prop_assert!(BElement::from(g1.clone()).mul(&rho.pow(m)).equals(&w));
        let (m2, g2) = tower::split_b_element(&BElement::from(g1.clone()).mul(&rho.pow(k))).unwrap();
        prop_assert_eq!(m2, k);
        prop_assert!(g2.equals(&g1));
    }

    #[test]
    fn rho_b_conjugation_rotates_generators(i in 0..=N) {
        let rho = tower::rho_b(N).unwrap();
        let t = BElement::from(AffineElement::generator(N, i).unwrap());
        let next = BElement::from(AffineElement::generator(N, (i + 1) % (N + 1)).unwrap());
        prop_assert!(t.conjugated_by(&rho).equals(&next));
    }
}
