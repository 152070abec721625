//! Milnor <-> admissible conversion at development sizes.

use motivic_steenrod::cartan::{enumerate_admissible, AdmissibleSequence};
use motivic_steenrod::dual::enumerate_monomials;
use motivic_steenrod::scalar::{Bidegree, HScalar};
use motivic_steenrod::steenrod::{q, MilnorMonomial, SteenrodElement};
use motivic_steenrod::Algebra;

#[test]
fn conversion_round_trips_on_all_small_monomials() {
    let alg = Algebra::default();
    for p in 0..=20i32 {
        for qd in 0..=p {
            for (m, a, b) in enumerate_monomials(Bidegree::new(p, qd), 8) {
                let x = SteenrodElement::from_monomial(MilnorMonomial::from_dual(m))
                    .scale(&HScalar::monomial(a, b));
                let c = alg.milnor_to_cartan(&x).unwrap();
                let back = alg.cartan_to_milnor(&c).unwrap();
                assert_eq!(back, x, "round trip in bidegree ({p}, {qd})");
            }
        }
    }
}

#[test]
fn known_counts_for_the_first_primitives() {
    let alg = Algebra::default();
    for (n, expected) in [(0u32, 1usize), (1, 2), (2, 5), (3, 14)] {
        assert_eq!(
            alg.cartan_term_count(&q(n).unwrap()).unwrap(),
            expected,
            "count of Q_{n}"
        );
    }
}

#[test]
fn admissible_slice_sizes_match_the_milnor_slices() {
    // both are bases of the same free module, slice by slice
    for p in 0..=14i32 {
        for qd in 0..=p {
            let target = Bidegree::new(p, qd);
            let monomials = enumerate_monomials(target, 16).len();
            let admissible = enumerate_admissible(target).len();
            assert_eq!(monomials, admissible, "slice ({p}, {qd})");
        }
    }
}

#[test]
fn conversion_of_inhomogeneous_elements_splits() {
    let alg = Algebra::default();
    let x = q(0).unwrap().add(&q(1).unwrap());
    let c = alg.milnor_to_cartan(&x).unwrap();
    assert_eq!(c.term_count(), 3); // Sq1, Sq3, Sq2*Sq1
    assert_eq!(alg.cartan_to_milnor(&c).unwrap(), x);
}

#[test]
fn mixed_coefficient_conversion() {
    // tau and rho multiples convert linearly
    let alg = Algebra::default();
    let x = q(2)
        .unwrap()
        .scale(&HScalar::tau())
        .add(&q(1).unwrap().scale(&HScalar::rho()));
    let c = alg.milnor_to_cartan(&x).unwrap();
    assert_eq!(alg.cartan_to_milnor(&c).unwrap(), x);
}

#[test]
fn admissible_display_and_order() {
    let alg = Algebra::default();
    let c = alg.milnor_to_cartan(&q(1).unwrap()).unwrap();
    // lexicographic term order puts Sq2*Sq1 before Sq3
    assert_eq!(c.to_string(), "Sq2*Sq1 + Sq3");
    let unit = AdmissibleSequence::unit();
    assert_eq!(unit.to_string(), "1");
}
