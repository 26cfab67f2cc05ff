use super::*;
use proptest::prelude::*;

fn ci(degrees: &[u32], dim: u64, m: u32) -> Certificate {
    certify_ci(&CiQuery { degrees: degrees.to_vec(), dim, m, characteristic: 0 }).unwrap()
}

// Independent oracle: enumerate subsets and count by weight.
fn budget_oracle(n: u32, m: u32) -> u64 {
    (0u64..(1 << n)).filter(|j| j.count_ones() < n).map(|j| (j.count_ones() / m) as u64).sum()
}

#[test]
fn budget_matches_subset_enumeration() {
    for n in 0..=14 {
        for m in 1..=6 {
            assert_eq!(budget(n, m), BigInt::from(budget_oracle(n, m)), "n={n} m={m}");
        }
    }
}

#[test]
fn bound_values() {
    assert_eq!(bound_b(2, 2), BigInt::from(2));
    assert_eq!(bound_b(4, 2), BigInt::from(24));
    for n in 2..10 {
        for m in n..n + 4 {
            assert_eq!(bound_b(n, m), (BigInt::one() << n) - BigInt::from(m));
        }
    }
    let got: Vec<BigInt> = (4..=8).map(|d| closed_form_2bound(d).unwrap()).collect();
    let want: Vec<BigInt> = [2, 9, 24, 60, 139].iter().map(|&v| BigInt::from(v)).collect();
    assert_eq!(got, want);
    assert!(closed_form_2bound(3).is_err());
}

#[test]
fn fano_and_rojtman() {
    assert_eq!(fano_index(&[4], 4), 2);
    assert_eq!(fano_index(&[4], 5), 3);
    assert_eq!(fano_index(&[2, 3], 4), 2);
    assert_eq!(rojtman_upper_bound(&[2, 3]).unwrap(), BigInt::from(12));
    assert_eq!(rojtman_upper_bound(&[1]).unwrap(), BigInt::from(1));
    assert_eq!(rojtman_upper_bound(&[4]).unwrap(), BigInt::from(24));
}

#[test]
fn ci_examples() {
    let c = ci(&[4], 4, 2);
    assert!(c.certified);
    assert_eq!(c.theorem, Theorem::CiLowIndex);
    assert!(c.caveats.iter().any(|s| s == VERY_GENERAL));

    let c = ci(&[4], 5, 2);
    assert!(!c.certified);
    assert_eq!(c.theorem, Theorem::None);
    assert_eq!(c.witness_n, None);
    assert!(c.caveats.iter().any(|s| s == NOT_BY_THESE));

    // r = 24 at the edge of the n = 4 bound, r = 25 just past it.
    let c = ci(&[6], 6 + 24 - 2, 2);
    assert_eq!(c.fano_index, 24);
    assert!(c.certified);
    assert_eq!(c.theorem, Theorem::CiMain);
    assert_eq!(c.witness_n, Some(4));
    assert_eq!(c.upper_bound.as_deref(), Some("720"));
    assert!(!ci(&[6], 6 + 25 - 2, 2).certified);

    let c = ci(&[4], 3, 2);
    assert!(c.certified);
    assert_eq!(c.theorem, Theorem::CiLog);

    assert!(!ci(&[4], 4, 1).certified);
}

#[test]
fn ci_rejects_bad_input() {
    let bad = [
        CiQuery { degrees: vec![], dim: 4, m: 2, characteristic: 0 },
        CiQuery { degrees: vec![0], dim: 4, m: 2, characteristic: 0 },
        CiQuery { degrees: vec![4], dim: 0, m: 2, characteristic: 0 },
        CiQuery { degrees: vec![4], dim: 4, m: 0, characteristic: 0 },
        CiQuery { degrees: vec![4], dim: 4, m: 2, characteristic: 4 },
    ];
    for q in bad {
        assert!(certify_ci(&q).is_err(), "{q:?}");
    }
}

#[test]
fn characteristic_dividing_m() {
    let q = CiQuery { degrees: vec![6], dim: 10, m: 3, characteristic: 3 };
    assert!(!certify_ci(&q).unwrap().certified);
    let q = CiQuery { degrees: vec![4], dim: 4, m: 2, characteristic: 2 };
    assert!(!certify_ci(&q).unwrap().certified);
}

#[test]
fn product_examples() {
    let c = certify_product(&[4, 2], &[4, 3], 2, 0).unwrap();
    assert!(c.certified);
    assert_eq!(c.theorem, Theorem::Product);
    assert_eq!(c.witness_n, Some(2));
    assert!(!certify_product(&[3, 2], &[4, 3], 2, 0).unwrap().certified);
    assert!(!certify_product(&[4, 3], &[4, 3], 2, 0).unwrap().certified);
    assert!(certify_product(&[4], &[4, 3], 2, 0).is_err());
}

#[test]
fn grassmannian_examples() {
    let c = certify_grassmannian(2, 4, 4, 2, 0).unwrap();
    assert!(c.certified);
    assert_eq!(c.theorem, Theorem::Grass);
    assert!(c.caveats.iter().any(|s| s.contains("complex")));
    assert!(!certify_grassmannian(2, 5, 4, 2, 0).unwrap().certified);
    assert!(!certify_grassmannian(2, 4, 3, 2, 0).unwrap().certified);
    assert!(!certify_grassmannian(1, 3, 6, 2, 0).unwrap().certified);
    assert!(certify_grassmannian(3, 2, 4, 2, 0).is_err());
}

#[test]
fn identities_hold() {
    let rep = identity_suite(20, 6).unwrap();
    assert!(rep.passed(), "{:?}", rep.failures);
    assert!(rep.checked > 50);
}

#[test]
fn certificate_json_shape() {
    let v = serde_json::to_value(ci(&[4], 5, 2)).unwrap();
    assert_eq!(v["theorem"], "NONE");
    assert!(v["witness_n"].is_null());
    assert!(v["upper_bound"].is_string());
    let v = serde_json::to_value(ci(&[6], 28, 2)).unwrap();
    assert_eq!(v["theorem"], "CI_MAIN");
    assert_eq!(v["witness_n"], 4);
    assert_eq!(serde_json::to_value(Theorem::Ci2TorsionClosed).unwrap(), "CI_2TORSION_CLOSED");
}

proptest! {
    #[test]
    fn bound_monotone(n in 2u32..20, m in 2u32..8) {
        prop_assert!(bound_b(n, m) <= bound_b(n + 1, m));
        prop_assert!(bound_b(n, m + 1) <= bound_b(n, m));
    }

    #[test]
    fn log_implies_main(degrees in prop::collection::vec(1u32..12, 1..4), extra in 0u64..40, m in 2u32..4) {
        let base: u64 = degrees.iter().map(|&d| d as u64).sum::<u64>() - degrees.len() as u64;
        let dim = (base + extra).max(4);
        let q = CiQuery { degrees: degrees.clone(), dim, m, characteristic: 0 };
        let r = fano_index(&degrees, dim);
        if log_applies(&q, r) {
            let c = certify_ci(&q).unwrap();
            prop_assert!(c.certified);
            let n = main_witness(&q, r);
            prop_assert!(n.is_some());
            let k = (64 - ((r as u64 + m as u64 - 1).leading_zeros())).max(2);
            prop_assert!(n.unwrap() <= k);
        }
    }

    #[test]
    fn ci_permutation_invariant(mut degrees in prop::collection::vec(1u32..9, 1..5), dim in 1u64..40, m in 1u32..4, rot in 0usize..5) {
        let a = certify_ci(&CiQuery { degrees: degrees.clone(), dim, m, characteristic: 0 }).unwrap();
        let k = rot % degrees.len();
        degrees.rotate_left(k);
        degrees.reverse();
        let b = certify_ci(&CiQuery { degrees, dim, m, characteristic: 0 }).unwrap();
        prop_assert_eq!(a, b);
    }
}
