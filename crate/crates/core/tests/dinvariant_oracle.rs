use num_integer::gcd;
use proptest::prelude::*;
use ratgenus::dinvariant::{d_lens_all, CorrectionTerms};
use ratgenus::homology::{LensSpace, Manifold, SpincIndex};
use ratgenus::lattice::plumbing_d_multiset;
use ratgenus::rational::Q;

fn sorted(mut v: Vec<Q>) -> Vec<Q> {
    v.sort();
    v
}

#[test]
fn recursion_matches_lattice_for_framed_unknots() {
    for p in 1..=20u64 {
        let l = LensSpace::new(p, 1).unwrap();
        assert_eq!(sorted(d_lens_all(&l)), plumbing_d_multiset(p as i64, 1).unwrap(), "p = {p}");
    }
}

#[test]
fn recursion_matches_lattice_for_every_q_up_to_11() {
    for p in 2..=11u64 {
        for q in LensSpace::valid_q(p) {
            let l = LensSpace::new(p, q as i64).unwrap();
            let oracle = plumbing_d_multiset(p as i64, q as i64).unwrap();
            assert_eq!(sorted(d_lens_all(&l)), oracle, "L({p},{q})");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d_is_additive(p1 in 2u64..9, q1 in 1i64..9, p2 in 2u64..9, q2 in 1i64..9) {
        prop_assume!(gcd(p1 as i64, q1) == 1 && gcd(p2 as i64, q2) == 1);
        let a = LensSpace::new(p1, q1).unwrap();
        let b = LensSpace::new(p2, q2).unwrap();
        let y = Manifold::new(vec![a, b]);
        let ct = CorrectionTerms::new(&y);
        let (da, db) = (d_lens_all(&a), d_lens_all(&b));
        for i in 0..p1 {
            for j in 0..p2 {
                prop_assert_eq!(ct.d(&SpincIndex(vec![i, j])).unwrap(), da[i as usize] + db[j as usize]);
            }
        }
    }
}
