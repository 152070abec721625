//! Structural laws of the Hopf algebroid at development sizes.
//!
//! The acceptance suite re-runs these at the full degree bounds; the sweeps
//! here are sized for the edit-test loop but exercise every law.

use std::collections::BTreeMap;

use motivic_steenrod::coalgebra::{
    coproduct_element, counit_collapse_left, counit_collapse_right, eta_r, pair, tensor_multiply,
    Caps, TensorElement,
};
use motivic_steenrod::dual::{
    enumerate_monomials, multiply_elements, multiply_monomials, DualElement, DualMonomial,
};
use motivic_steenrod::scalar::{Bidegree, HScalar};
use motivic_steenrod::steenrod::MilnorMonomial;
use motivic_steenrod::Algebra;

/// Every coefficient-free monomial of topological degree at most `max_p`.
fn monomials_up_to(max_p: i32, max_index: u32) -> Vec<DualMonomial> {
    let mut out = Vec::new();
    for p in 0..=max_p {
        for q in 0..=p {
            for (m, a, b) in enumerate_monomials(Bidegree::new(p, q), max_index) {
                if a == 0 && b == 0 {
                    out.push(m);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[test]
fn coproduct_is_multiplicative() {
    let alg = Algebra::default();
    let monomials = monomials_up_to(7, 8);
    for m1 in &monomials {
        for m2 in &monomials {
            if m1.degree().p + m2.degree().p > 10 {
                continue;
            }
            let product = multiply_monomials(m1, m2).unwrap();
            let lhs = coproduct_element(&product).unwrap();
            let rhs = tensor_multiply(&alg.coproduct(m1).unwrap(), &alg.coproduct(m2).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs, "Delta({m1} * {m2})");
        }
    }
}

/// Triple-tensor normal form with all scalars on the leftmost factor.
type Triple = BTreeMap<(DualMonomial, DualMonomial, DualMonomial), HScalar>;

fn add_triple(acc: &mut Triple, a: DualMonomial, b: DualMonomial, c: DualMonomial, h: HScalar) {
    use std::collections::btree_map::Entry;
    if h.is_zero() {
        return;
    }
    match acc.entry((a, b, c)) {
        Entry::Vacant(v) => {
            v.insert(h);
        }
        Entry::Occupied(mut o) => {
            let sum = o.get().add(&h);
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

/// `(Delta (x) id) Delta(m)`: expand the left factor of each term.
fn delta_then_left(alg: &Algebra, t: &TensorElement) -> Triple {
    let mut out = Triple::new();
    for ((a, b), h) in t.terms() {
        for ((c, d), g) in alg.coproduct(a).unwrap().terms() {
            add_triple(&mut out, c.clone(), d.clone(), b.clone(), h.mul(g));
        }
    }
    out
}

/// `(id (x) Delta) Delta(m)`: expand the right factor; scalars created in the
/// middle cross to the leftmost factor through `eta_R`.
fn delta_then_right(alg: &Algebra, t: &TensorElement) -> Triple {
    let mut out = Triple::new();
    for ((a, b), h) in t.terms() {
        for ((c, d), g) in alg.coproduct(b).unwrap().terms() {
            let carried = multiply_elements(
                &DualElement::from_monomial(a.clone()),
                &eta_r(g).unwrap(),
            )
            .unwrap();
            for (a2, f) in carried.terms() {
                add_triple(&mut out, a2.clone(), c.clone(), d.clone(), h.mul(f));
            }
        }
    }
    out
}

#[test]
fn coproduct_is_coassociative() {
    let alg = Algebra::default();
    for m in monomials_up_to(9, 8) {
        let d = alg.coproduct(&m).unwrap();
        let left = delta_then_left(&alg, &d);
        let right = delta_then_right(&alg, &d);
        assert_eq!(left, right, "coassociativity at {m}");
    }
}

#[test]
fn counit_laws() {
    let alg = Algebra::default();
    for m in monomials_up_to(10, 8) {
        let d = alg.coproduct(&m).unwrap();
        let embedded = DualElement::from_monomial(m.clone());
        assert_eq!(counit_collapse_left(&d), embedded, "left counit at {m}");
        assert_eq!(counit_collapse_right(&d), embedded, "right counit at {m}");
    }
}

#[test]
fn duality_pairing_matrix_is_the_identity() {
    let alg = Algebra::default();
    let _ = &alg;
    let monomials = monomials_up_to(10, 8);
    for m in &monomials {
        for n in &monomials {
            if m.degree() != n.degree() {
                continue;
            }
            let value = pair(
                &DualElement::from_monomial(m.clone()),
                &MilnorMonomial::from_dual(n.clone()),
            );
            if m == n {
                assert!(value.is_one(), "<{m}, dual {n}> should be 1");
            } else {
                assert!(value.is_zero(), "<{m}, dual {n}> should be 0");
            }
        }
    }
}

#[test]
fn pruned_coproduct_with_no_caps_is_the_coproduct() {
    let alg = Algebra::default();
    for m in monomials_up_to(20, 8) {
        let full = alg.coproduct(&m).unwrap();
        let pruned = alg
            .pruned_coproduct(&m, Bidegree::new(i32::MAX, i32::MAX), Bidegree::new(i32::MAX, i32::MAX))
            .unwrap();
        assert_eq!(*full, pruned, "pruned({m}, inf, inf)");
        // and a genuine restriction really restricts
        let cap = Bidegree::new(m.degree().p / 2, m.degree().q);
        let restricted = alg.pruned_coproduct(&m, cap, Bidegree::new(i32::MAX, i32::MAX)).unwrap();
        assert_eq!(restricted, full.pruned(Caps::new(cap, Bidegree::new(i32::MAX, i32::MAX))));
    }
}

#[test]
fn coproduct_terms_balance_degrees() {
    let alg = Algebra::default();
    for m in monomials_up_to(12, 8) {
        let d = m.degree();
        for ((l, r), h) in alg.coproduct(&m).unwrap().terms() {
            let hd = h.homogeneous_degree().expect("monomial coefficients");
            assert_eq!(l.degree() + r.degree() - hd, d, "term of Delta({m})");
        }
    }
}

#[test]
fn eta_r_is_a_ring_map_into_the_dual() {
    // eta_R(xy) = eta_R(x) eta_R(y) on a small scalar sample
    let scalars = [
        HScalar::one(),
        HScalar::tau(),
        HScalar::rho(),
        HScalar::monomial(2, 0),
        HScalar::monomial(1, 1),
        HScalar::tau().add(&HScalar::rho()),
    ];
    for x in &scalars {
        for y in &scalars {
            let lhs = eta_r(&x.mul(y)).unwrap();
            let rhs = multiply_elements(&eta_r(x).unwrap(), &eta_r(y).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "eta_R({x} * {y})");
        }
    }
}
