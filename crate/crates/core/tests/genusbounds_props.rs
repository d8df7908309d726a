use proptest::prelude::*;
use ratgenus::homology::{KnotClass, LensSpace, Manifold};
use ratgenus::genusbounds::{genus_conversions, lens_bound_rows, morse_reduce, slam_dunk};
use ratgenus::rational::q;

proptest! {
    #[test]
    fn slam_dunk_is_division_with_remainder(pp in 1u64..=50, qq in -100i64..=100) {
        match slam_dunk(pp, qq) {
            Ok((m, n)) => prop_assert!(pp as i64 * m - n == qq && 0 <= n && n < pp as i64),
            Err(_) => prop_assert!(pp > 1 && num_integer::gcd(qq.unsigned_abs(), pp) != 1),
        }
    }

    #[test]
    fn conversions_match_euler_characteristic(g in 0u64..20, d in 1u64..=30, k in 1u64..=10) {
        let p = d * k;
        let c = genus_conversions(g, p, d).unwrap();
        let k = k as i64;
        prop_assert_eq!(c.general, q(2 * g as i64 - 2 + k, 2 * p as i64) + q(1, 2));
    }
}

#[test]
fn morse_reduction_preserves_order() {
    for p in 2..=12u64 {
        for qq in LensSpace::valid_q(p) {
            let y = Manifold::lens(p, qq as i64).unwrap();
            for a in y.classes() {
                let order = y.order_of_class(&a).unwrap();
                for pp in (1..=order).filter(|d| order % d == 0) {
                    for qp in -7i64..=7 {
                        let Ok(k) = KnotClass::new(y.clone(), a.clone(), pp, qp) else { continue };
                        let r = morse_reduce(&k).unwrap();
                        assert_eq!(r.order_p, order);
                        assert_eq!(r.shift, q(pp as i64 - 1, 2 * pp as i64));
                    }
                }
            }
        }
    }
}

#[test]
fn bound_chain_on_small_lens_spaces() {
    for p in 2..=15u64 {
        for qq in LensSpace::valid_q(p) {
            for row in lens_bound_rows(p, qq).unwrap() {
                assert!(row.seifert_equality && row.slice_equality && row.nu_equality);
                assert_eq!(row.nu * 2, row.d_gap);
            }
        }
    }
}
