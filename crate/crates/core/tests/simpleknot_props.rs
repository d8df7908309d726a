use ratgenus::dinvariant::CorrectionTerms;
use ratgenus::homology::{LensSpace, Manifold};
use ratgenus::rational::{int, q};
use ratgenus::simpleknot::{
    floer_simple_profile, gradings_via_d, seifert_genus, theta_table, u_knot_class, u_knot_gradings, SimpleKnot,
};

#[test]
fn u_knot_anchor_up_to_30() {
    for pp in 1..=30u64 {
        for n in LensSpace::valid_q(pp) {
            let m = u_knot_class(pp, n as i64).unwrap();
            let k = SimpleKnot::in_lens(pp, n as i64, if pp == 1 { 0 } else { m.class }).unwrap();
            let g = gradings_via_d(&k);
            assert_eq!(g.sorted(), u_knot_gradings(pp, n as i64).unwrap().sorted());
            assert_eq!(g.a_max(), q(pp as i64 - 1, 2 * pp as i64));
        }
    }
}

#[test]
fn genus_matches_d_gap_on_sums() {
    let y = Manifold::new(vec![LensSpace::new(3, 1).unwrap(), LensSpace::new(4, 1).unwrap()]);
    for row in theta_table(&y).unwrap() {
        assert!(row.symmetry_ok && row.parity_ok, "{row:?}");
    }
}

#[test]
fn middle_grading_of_simple_profiles_is_the_d_difference() {
    for (p, qq) in [(5, 2), (7, 3), (8, 3), (12, 5)] {
        let y = Manifold::lens(p, qq).unwrap();
        let ct = CorrectionTerms::new(&y);
        for a in y.classes() {
            let k = SimpleKnot::new(y.clone(), a.clone()).unwrap();
            let prof = floer_simple_profile(&k, 2);
            prof.validate().unwrap();
            for col in &prof.columns {
                let mid = prof.middle_structure(&col.base).unwrap();
                let shifted = y.translate(&col.base, &a).unwrap();
                let expect = (ct.d(&col.base).unwrap() - ct.d(&shifted).unwrap()) / int(2);
                assert_eq!(prof.grading(&mid).unwrap(), expect);
            }
            let g = gradings_via_d(&k);
            assert_eq!(prof.nu_plus_overall().unwrap().0, g.a_max());
            assert_eq!(int(2) * seifert_genus(&g) + int(1), ct.d_gap(&a).unwrap());
        }
    }
}
