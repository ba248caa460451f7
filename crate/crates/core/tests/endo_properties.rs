use artin_tower::endo::{self, AmbientFamily, AmbientParams, AutStar, CertCase, Certificate, GenImageHom};
use artin_tower::tower::{self, AffineElement};
use artin_tower::{Alphabet, BraidWord, GenWord};
use proptest::prelude::*;

const N: u32 = 4;

fn tword(max_len: usize) -> impl Strategy<Value = AffineElement> {
    proptest::collection::vec((0..=N, prop_oneof![Just(1), Just(-1)]), 0..=max_len)
        .prop_map(|v| tower::iota_affine(N, &GenWord::from_letters(Alphabet::T, v)).unwrap())
}

fn autstar() -> impl Strategy<Value = AutStar> {
    (0..=N as i64, any::<bool>(), any::<bool>()).prop_map(|(z, e, m)| AutStar::new(N, z, e, m).unwrap())
}

#[derive(Debug, Clone)]
enum Built {
    Cyclic(AffineElement),
    Autstar,
    Alpha(i64),
    Beta(i64),
}

impl Built {
    fn case(&self) -> CertCase {
        match self {
            Built::Cyclic(_) => CertCase::Cyclic,
            Built::Autstar => CertCase::Autstar,
            Built::Alpha(_) => CertCase::Alpha,
            Built::Beta(_) => CertCase::Beta,
        }
    }

    fn core(&self, psi: &AutStar) -> GenImageHom {
        let psi_hom = psi.hom().unwrap();
        match self {
            Built::Cyclic(t) => endo::compose_hom(&psi_hom, &GenImageHom::cyclic(t)).unwrap(),
            Built::Autstar => psi_hom,
            Built::Alpha(p) => endo::compose_hom(&psi_hom, &endo::alpha(*p, N).unwrap()).unwrap(),
            Built::Beta(p) => endo::compose_hom(&psi_hom, &endo::beta(*p, N).unwrap()).unwrap(),
        }
    }
}

fn built() -> impl Strategy<Value = Built> {
    prop_oneof![
        tword(3).prop_filter("non-trivial target", |t| !t.ambient().is_empty()).prop_map(Built::Cyclic),
        Just(Built::Autstar),
        (-2i64..=2).prop_map(Built::Alpha),
        (-2i64..=2).prop_map(Built::Beta),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn functoriality(g in tword(4), g2 in tword(4), psi in autstar(), p in -1i64..=1, case in 0usize..3) {
        let h = endo::conjugate_hom(&g2, &endo::alpha(p, N).unwrap()).unwrap();
        let cert_for = |conj: AffineElement| match case {
            0 => Certificate::alpha(conj, psi, p),
            1 => Certificate::beta(conj, psi, p),
            _ => Certificate::autstar(conj, psi),
        };
        let moved = endo::conjugate_hom(&g, &h).unwrap();
        prop_assert_eq!(
            endo::certificate_check(&moved, &cert_for(g.mul(&g2))).unwrap(),
            endo::certificate_check(&h, &cert_for(g2.clone())).unwrap()
        );
    }

    #[test]
    fn x_is_a_conjugation_invariant(g in tword(6), psi in autstar(), b in built()) {
        let core = b.core(&psi);
        let moved = endo::conjugate_hom(&g, &core).unwrap();
        for i in 0..=N {
            prop_assert_eq!(moved.image(i).exponent_sum(), core.image(i).exponent_sum());
        }
        let screen = endo::invariant_screen(&moved).unwrap();
        prop_assert_eq!(&screen.x_values, &endo::invariant_screen(&core).unwrap().x_values);
    }

    #[test]
    fn screen_contains_the_true_case(g in tword(4), psi in autstar(), b in built()) {
        let h = endo::conjugate_hom(&g, &b.core(&psi)).unwrap();
        let screen = endo::invariant_screen(&h).unwrap();
        prop_assert!(screen.candidate_cases.contains(&b.case()));
        prop_assert_eq!(screen.is_cyclic, matches!(b, Built::Cyclic(_)));
        if let Built::Alpha(p) | Built::Beta(p) = b {
            prop_assert_eq!(screen.candidate_p, Some(p));
        }
    }

    #[test]
    fn certificate_json_round_trips(g in tword(5), psi in autstar(), p in -3i64..=3, t in tword(3)) {
        for cert in [
            Certificate::alpha(g.clone(), psi, p),
            Certificate::beta(g.clone(), psi, p),
            Certificate::autstar(g.clone(), psi),
            Certificate::cyclic(g.clone(), t.clone()),
        ] {
            let text = serde_json::to_string(&cert.to_json()).unwrap();
            let back = Certificate::parse_json(N, &text).unwrap();
            prop_assert!(back.conjugator.equals(&cert.conjugator));
            prop_assert_eq!(back.to_json(), cert.to_json());
        }
    }
}

#[test]
fn families_verify_at_rank_three() {
    let n = 3;
    for psi in AutStar::all(n).unwrap() {
        assert!(psi.hom().unwrap().failed_relation().is_none());
    }
    for p in -3..=3 {
        assert!(endo::alpha(p, n).unwrap().failed_relation().is_none());
        assert!(endo::beta(p, n).unwrap().failed_relation().is_none());
    }
    let m = tower::ambient_strands(n);
    for g in [BraidWord::identity(m), tower::t0_ambient(n)] {
        for family in [AmbientFamily::U, AmbientFamily::V] {
            for k in [0, 1] {
                for eps in [1, -1] {
                    let p = if family == AmbientFamily::V { 1 } else { 0 };
                    let params = AmbientParams { family, k, eps, p, q: -1, g: g.clone() };
                    assert!(endo::ambient_family_hom(n, &params).unwrap().is_verified());
                }
            }
        }
    }
}

#[test]
fn cyclic_flag_matches_image_equality() {
    let n = N;
    let t1 = AffineElement::generator(n, 1).unwrap();
    assert!(endo::invariant_screen(&GenImageHom::cyclic(&t1)).unwrap().is_cyclic);
    for psi in AutStar::all(n).unwrap() {
        assert!(!endo::invariant_screen(&psi.hom().unwrap()).unwrap().is_cyclic);
    }
}
