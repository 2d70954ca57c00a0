//! Property tests for invariants that cut across modules. They live in the
//! library so they still run when the acceptance target reports a failure.

use proptest::prelude::*;

use crate::complexes::{build_c, build_e, verify_chain_equivalence};
use crate::geometry::{
    geometry_field, in_tetrahedron_window, mat_mul, mat_vec, translate, verify_facet, FacetLabel, OrbitPolytope,
    Representation,
};
use crate::group_ring::GroupRingElement;
use crate::torsion::{normalize_ell, tau_closed_form, tau_u, torsion_field};
use crate::{GroupElement, GroupParams};

fn p2() -> GroupParams {
    GroupParams::new(2).unwrap()
}

fn elem(s: u32) -> impl Strategy<Value = GroupElement> {
    let p = GroupParams::new(s).unwrap();
    (0..p.order()).prop_map(move |i| GroupElement::from_index(p, i))
}

fn unit(t: i64) -> impl Strategy<Value = i64> {
    (1..t).prop_filter("prime to 3", |l| l % 3 != 0)
}

fn ring_elem() -> impl Strategy<Value = GroupRingElement> {
    proptest::collection::vec((elem(2), -4i64..=4), 0..6).prop_map(|terms| GroupRingElement::from_terms(p2(), terms))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_ring_is_associative_and_augmented(a in ring_elem(), b in ring_elem(), c in ring_elem()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b).augmentation(), a.augmentation() * b.augmentation());
        let field = torsion_field(p2()).unwrap();
        prop_assert_eq!(a.mul(&b).chi_zeta(&field), a.chi_zeta(&field).mul(&b.chi_zeta(&field)));
    }

    #[test]
    fn representation_is_multiplicative(g in elem(2), h in elem(2), ell in unit(9)) {
        let p = p2();
        let field = geometry_field(p).unwrap();
        let rep = Representation::new(p, ell, &field).unwrap();
        prop_assert_eq!(mat_mul(rep.mat(&g), rep.mat(&h)), rep.mat(&(g * h)).clone());
    }

    #[test]
    fn orbit_points_are_equivariant(g in elem(2), h in elem(2)) {
        let p = p2();
        let poly = OrbitPolytope::base(p).unwrap();
        let moved = mat_vec(poly.rep.mat(&poly.psi.apply(&g)), poly.point(&h));
        prop_assert_eq!(&moved, poly.point(&(g * h)));
    }

    #[test]
    fn translated_tetrahedra_certify(g in elem(2), h in 0i64..18, d in 4i64..6) {
        let p = p2();
        prop_assume!(in_tetrahedron_window(p, h, h + d));
        let poly = OrbitPolytope::base(p).unwrap();
        let label = FacetLabel::Tetrahedron { g, g2: g * p.p(), h, k: h + d };
        let expected = translate(&g, &FacetLabel::t(p, h, h + d).vertex_set(p));
        prop_assert_eq!(label.vertex_set(p), expected);
        let cert = verify_facet(&poly, &label).unwrap();
        prop_assert!(cert.ok);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn complexes_square_to_zero(ells in proptest::collection::vec(unit(9), 1..3)) {
        let p = p2();
        prop_assert!(build_c(p, &ells).unwrap().is_complex());
        prop_assert!(build_e(p, &ells).unwrap().is_complex());
    }

    #[test]
    fn chain_equivalence_for_random_lists(ells in proptest::collection::vec(unit(9), 1..3)) {
        prop_assert!(verify_chain_equivalence(p2(), &ells).unwrap().ok());
    }

    #[test]
    fn torsion_is_multiplicative_and_sign_blind(a in proptest::collection::vec(unit(9), 1..3), b in proptest::collection::vec(unit(9), 1..3)) {
        let p = p2();
        let joined: Vec<i64> = a.iter().chain(&b).copied().collect();
        let product = tau_closed_form(p, &a).unwrap().mul(&tau_closed_form(p, &b).unwrap());
        prop_assert!(tau_closed_form(p, &joined).unwrap().eq_mod_gamma(&product));
        let flipped: Vec<i64> = a.iter().map(|l| 9 - l).collect();
        prop_assert!(tau_closed_form(p, &a).unwrap().eq_mod_gamma(&tau_closed_form(p, &flipped).unwrap()));
        let normalized: Vec<i64> = a.iter().map(|&l| normalize_ell(p, l)).collect();
        prop_assert!(tau_u(p, &a).unwrap().torsion.eq_mod_gamma(&tau_closed_form(p, &normalized).unwrap()));
    }
}
