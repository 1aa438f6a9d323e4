use std::collections::BTreeSet;

use arcs_core::chord::{crossing_word, decode, rotations};
use arcs_core::code::{canonical_key, Anchor, Token};
use arcs_core::{are_homotopic, enumerate_codes, is_simple_and_essential, make_disc_model, reduce_code, ArcCode, EndpointFilter};
use proptest::prelude::*;

fn keys(m: usize, l: usize) -> BTreeSet<ArcCode> {
    let d = make_disc_model(m).unwrap();
    enumerate_codes(&d, EndpointFilter::All, l).iter().map(|c| canonical_key(&d, c)).collect()
}

#[test]
fn decode_then_recompute_word() {
    for m in 2..=4 {
        let d = make_disc_model(m).unwrap();
        for c in enumerate_codes(&d, EndpointFilter::All, 3) {
            let pl = decode(&c, &d);
            pl.validate(&d).unwrap();
            let back = reduce_code(&d, c.start, c.end, &crossing_word(&pl, &d));
            assert_eq!(back, c);
        }
    }
}

#[test]
fn enumeration_grows_with_length() {
    for l in 0..4 {
        assert!(keys(3, l).is_subset(&keys(3, l + 1)), "L = {l}");
    }
}

#[test]
fn enumerated_classes_are_distinct() {
    let d = make_disc_model(3).unwrap();
    let u = enumerate_codes(&d, EndpointFilter::All, 3);
    for (i, a) in u.iter().enumerate() {
        assert_eq!(is_simple_and_essential(&d, a), (true, true));
        for b in &u[i + 1..] {
            assert!(!are_homotopic(a, b, &d), "{a} ~ {b}");
        }
    }
}

#[test]
fn reversal_is_already_listed() {
    let d = make_disc_model(3).unwrap();
    let u = enumerate_codes(&d, EndpointFilter::All, 4);
    let ks: BTreeSet<ArcCode> = u.iter().map(|c| canonical_key(&d, c)).collect();
    for c in &u {
        assert!(ks.contains(&canonical_key(&d, &c.reversed())), "{c}");
    }
}

#[test]
fn homotopy_survives_rewriting() {
    let d = make_disc_model(3).unwrap();
    for c in enumerate_codes(&d, EndpointFilter::All, 3) {
        assert!(are_homotopic(&c, &c, &d));
        assert!(are_homotopic(&c, &c.reversed(), &d));
        for r in rotations(3, &c, 2) {
            let r = reduce_code(&d, r.start, r.end, &r.word);
            assert!(are_homotopic(&c, &r, &d), "{c} vs {r}");
        }
    }
}

#[test]
fn redundant_pair_is_same_class() {
    let d = make_disc_model(3).unwrap();
    let a = ArcCode::new(&d, Anchor::Puncture(1), Anchor::Boundary, vec![2]).unwrap();
    let b = ArcCode::new(&d, Anchor::Puncture(1), Anchor::Boundary, vec![3, -3, 2]).unwrap();
    assert!(are_homotopic(&a, &b, &d));
}

#[test]
fn q_to_p_class_count() {
    // regression value, first computed by exhaustive enumeration
    let d = make_disc_model(3).unwrap();
    let n = enumerate_codes(&d, EndpointFilter::PunctureToBoundary, 4).len();
    let dedup: BTreeSet<ArcCode> =
        enumerate_codes(&d, EndpointFilter::PunctureToBoundary, 4).iter().map(|c| canonical_key(&d, c)).collect();
    assert_eq!(n, dedup.len());
    assert_eq!(n, 32);
}

#[test]
fn m2_puncture_arcs() {
    let d = make_disc_model(2).unwrap();
    let u = enumerate_codes(&d, EndpointFilter::PunctureToBoundary, 0);
    assert!(u.len() >= 2);
    let pq = enumerate_codes(&d, EndpointFilter::All, 0);
    assert!(pq.iter().filter(|c| !c.start.is_boundary() && !c.end.is_boundary()).all(|c| c.word.is_empty()));
}

fn word(m: usize) -> impl Strategy<Value = Vec<Token>> {
    let m = m as Token;
    prop::collection::vec((1..=m, any::<bool>()).prop_map(|(j, s)| if s { j } else { -j }), 0..8)
}

fn anchor(m: usize) -> impl Strategy<Value = Anchor> {
    prop_oneof![Just(Anchor::Boundary), (1..=m).prop_map(Anchor::Puncture)]
}

proptest! {
    #[test]
    fn reduction_is_idempotent(w in word(3), s in anchor(3), e in anchor(3)) {
        let d = make_disc_model(3).unwrap();
        let c = reduce_code(&d, s, e, &w);
        prop_assert_eq!(reduce_code(&d, c.start, c.end, &c.word), c);
    }

    #[test]
    fn key_is_rotation_invariant(w in word(3), e in anchor(3)) {
        let d = make_disc_model(3).unwrap();
        let c = reduce_code(&d, Anchor::Boundary, e, &w);
        let k = canonical_key(&d, &c);
        for r in rotations(3, &c, 1) {
            prop_assert_eq!(canonical_key(&d, &reduce_code(&d, r.start, r.end, &r.word)), k.clone());
        }
        prop_assert_eq!(canonical_key(&d, &c.reversed()), k);
    }
}
