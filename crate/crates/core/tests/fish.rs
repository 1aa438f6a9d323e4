mod common;

use std::collections::BTreeSet;

use arcs_core::code::{Anchor, Token};
use arcs_core::{
    audit_inequalities, consecutive_d, find_fish, joint_realization, make_disc_model, search, tail_equivalence,
    thm1_construction, ArcCode, Error, RealizedFamily, Variant,
};
use rand::SeedableRng;

fn family(m: usize, arcs: &[(usize, &[Token])]) -> RealizedFamily {
    let d = make_disc_model(m).unwrap();
    let codes: Vec<ArcCode> =
        arcs.iter().map(|(r, w)| ArcCode::new(&d, Anchor::Puncture(*r), Anchor::Boundary, w.to_vec()).unwrap()).collect();
    joint_realization(&codes, &d).unwrap()
}

/// Three arcs from q2 in counterclockwise order, as in the picture of a
/// minimal fish next to a non-minimal one.
fn three_from_q2() -> RealizedFamily {
    family(4, &[(2, &[-1]), (2, &[-4, -2, -1]), (2, &[-4, -3, -2])])
}

#[test]
fn star_family_has_no_fish() {
    let d = make_disc_model(4).unwrap();
    let fam = joint_realization(&thm1_construction(&d), &d).unwrap();
    assert!(find_fish(&fam).unwrap().is_empty());
    let rep = audit_inequalities(&fam).unwrap();
    assert!(rep.passed());
    for q in 1..=4 {
        assert_eq!(rep.classes[&q].c_q, 3);
        assert!(rep.minimal_q_fish.get(&q).map_or(true, |v| v.is_empty()));
        assert_eq!(consecutive_d(&fam, q).unwrap(), vec![1, 1, 1]);
    }
}

#[test]
fn minimal_and_non_minimal_fish() {
    let fam = three_from_q2();
    let order: Vec<usize> = fam.at_nose(2).iter().map(|x| x.0).collect();
    assert!([[0, 1, 2], [1, 2, 0], [2, 0, 1]].iter().any(|o| o[..] == order[..]), "{order:?}");
    let fish = find_fish(&fam).unwrap();
    let beta_gamma = fish.iter().find(|f| f.arcs == (1, 2)).unwrap();
    let alpha_gamma = fish.iter().find(|f| f.arcs == (0, 2)).unwrap();
    assert!(beta_gamma.minimal);
    assert!(!alpha_gamma.minimal);
    assert_eq!(beta_gamma.head_punctures, BTreeSet::from([3]));
    for f in &fish {
        assert!(!f.head_punctures.is_empty() && !f.tail_punctures.is_empty());
    }
}

#[test]
fn one_in_head_one_in_tail_gives_zero() {
    let fam = three_from_q2();
    let d = consecutive_d(&fam, 2).unwrap();
    // the consecutive pair (beta, gamma) is the minimal fish with |h| = |t| = 1
    assert!(d.contains(&0), "{d:?}");
    assert_eq!(d.iter().sum::<i64>(), 3);
}

#[test]
fn head_puncture_joins_nose_class() {
    let fam = family(4, &[(3, &[1, 2, -1, 3]), (3, &[1, 3])]);
    let f = &find_fish(&fam).unwrap()[0];
    assert!(f.is_q_fish(1));
    let eq = tail_equivalence(&fam, 1).unwrap();
    assert!(eq.classes.iter().any(|c| c.contains(&3) && c.contains(&2)));
    assert_eq!(eq.c_q, 2);
}

#[test]
fn two_head_punctures_join_one_class() {
    let fam = three_from_q2();
    let big = find_fish(&fam).unwrap().into_iter().find(|f| f.head_punctures.len() == 2).unwrap();
    let q = *big.tail_punctures.iter().next().unwrap();
    let eq = tail_equivalence(&fam, q).unwrap();
    let mut want: Vec<usize> = big.head_punctures.iter().copied().collect();
    want.push(big.nose);
    want.sort();
    assert!(eq.classes.iter().any(|c| want.iter().all(|s| c.contains(s))));
}

#[test]
fn no_fish_means_singletons() {
    let fam = family(3, &[(1, &[]), (2, &[])]);
    for q in 1..=3 {
        let eq = tail_equivalence(&fam, q).unwrap();
        assert_eq!(eq.c_q, 2);
        assert!(eq.classes.iter().all(|c| c.len() == 1));
    }
}

#[test]
fn three_punctured_sphere_has_no_fish() {
    let u = common::q_to_p_universe(2);
    for i in 0..u.codes.len() {
        for j in i + 1..u.codes.len() {
            if u.graph.adjacent(i, j) {
                let f = joint_realization(&[u.codes[i].clone(), u.codes[j].clone()], &u.model).unwrap();
                assert!(find_fish(&f).unwrap().is_empty());
            }
        }
    }
}

#[test]
fn maximum_family_at_three_punctures_passes_every_audit() {
    let res = search(3, Variant::Thm1, 3, None).unwrap();
    assert_eq!(res.size, 6);
    let d = make_disc_model(3).unwrap();
    let fam = joint_realization(&res.clique, &d).unwrap();
    let rep = audit_inequalities(&fam).unwrap();
    assert!(rep.passed(), "{:?}", rep.verdicts);
    for (r, ds) in &rep.d {
        assert_eq!(ds.iter().sum::<i64>(), 2, "nose {r}");
    }
}

#[test]
fn audit_refuses_double_crossings_and_loose_ends() {
    let fam = family(3, &[(2, &[]), (1, &[-3, -1])]);
    assert!(matches!(audit_inequalities(&fam), Err(Error::Hypothesis(_))));
    let d = make_disc_model(3).unwrap();
    let pp = ArcCode::new(&d, Anchor::Boundary, Anchor::Boundary, vec![-2]).unwrap();
    let fam = joint_realization(&[pp], &d).unwrap();
    assert!(matches!(audit_inequalities(&fam), Err(Error::Hypothesis(_))));
}

#[test]
fn random_families_satisfy_everything() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for m in [3, 4] {
        let u = common::q_to_p_universe(m);
        for _ in 0..25 {
            let codes = common::random_family(&u, &mut rng);
            let fam = joint_realization(&codes, &u.model).unwrap();
            let bad = common::fish_violations(&fam);
            assert!(bad.is_empty(), "{codes:?}: {bad:?}");
            let bad = common::removal_violations(&fam);
            assert!(bad.is_empty(), "{codes:?}: {bad:?}");
        }
    }
}
