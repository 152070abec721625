//! The identity suite at small parameters, plus the recursions.
//!
//! The full acceptance ranges run in the CLI crate's acceptance tests; here
//! every identity is exercised far enough to catch sign, indexing and
//! twisting mistakes quickly.

use motivic_steenrod::scalar::{HScalar, Subst};
use motivic_steenrod::steenrod::{milnor_basis, p_n, q, sq, Identity};
use motivic_steenrod::Algebra;

fn check(alg: &Algebra, id: Identity, n: u32, i: Option<u32>) {
    let (lhs, rhs) = alg.identity_sides(id, n, i).expect("sides build");
    assert_eq!(
        lhs,
        rhs,
        "{} fails at n={n}, i={i:?}\nlhs = {lhs}\nrhs = {rhs}\ndiff = {}",
        id.name(),
        lhs.add(&rhs)
    );
}

#[test]
fn theorem_main_low() {
    let alg = Algebra::default();
    for n in 0..=2 {
        check(&alg, Identity::TheoremMain, n, None);
    }
}

#[test]
fn theorem_main_n0_sides() {
    // Sq^2 Q_0 = Q(1) + Q(0)P(1)
    let alg = Algebra::default();
    let (lhs, rhs) = alg.identity_sides(Identity::TheoremMain, 0, None).unwrap();
    let expected = q(1).unwrap().add(&milnor_basis(&[0], &[1]).unwrap());
    assert_eq!(rhs, expected);
    assert_eq!(lhs, expected);
}

#[test]
fn corollary_low() {
    let alg = Algebra::default();
    for n in 0..=2 {
        check(&alg, Identity::Corollary, n, None);
    }
}

#[test]
fn remark_family_low() {
    let alg = Algebra::default();
    for n in 1..=2 {
        for i in 0..n {
            check(&alg, Identity::RemarkLow, n, Some(i));
        }
    }
    for n in 0..=2 {
        check(&alg, Identity::RemarkEq, n, None);
        check(&alg, Identity::RemarkAlt, n, None);
    }
    for n in 0..=1 {
        for i in n + 1..=n + 2 {
            check(&alg, Identity::RemarkHigh, n, Some(i));
        }
    }
}

#[test]
fn section3_family_low() {
    let alg = Algebra::default();
    for n in 1..=2 {
        check(&alg, Identity::TheoremMain2, n, None);
        check(&alg, Identity::EqQn, n, None);
        check(&alg, Identity::LemQsq, n, None);
    }
}

#[test]
fn voevodsky_low() {
    let alg = Algebra::default();
    for n in 1..=2 {
        check(&alg, Identity::Voevodsky136, n, None);
    }
}

#[test]
fn lemma_1_1_products() {
    let alg = Algebra::default();
    for i in 0..=3 {
        check(&alg, Identity::QSquare, i, None);
        for j in 0..i {
            check(&alg, Identity::QCommute, i, Some(j));
        }
    }
    // [Q_0, P^n] = Q_n builds Q(E) products: Q(E) = prod Q_i
    let q01 = alg.product(&q(0).unwrap(), &q(1).unwrap()).unwrap();
    assert_eq!(q01, milnor_basis(&[0, 1], &[]).unwrap());
    // dual(tau(E) xi(R)) = Q(E) P^R
    let qep = alg
        .product(&q01, &sq(4).unwrap())
        .unwrap();
    assert_eq!(qep, milnor_basis(&[0, 1], &[2]).unwrap());
}

#[test]
fn sq_odd_is_the_computed_product() {
    // Sq^1 Sq^{2i} = Sq^{2i+1} validates the odd-square convention
    let alg = Algebra::default();
    for i in 1..=5u32 {
        let lhs = alg.product(&sq(1).unwrap(), &sq(2 * i).unwrap()).unwrap();
        assert_eq!(lhs, sq(2 * i + 1).unwrap(), "i = {i}");
    }
}

#[test]
fn q_recursion_matches_constructors() {
    let alg = Algebra::default();
    for n in 0..=2 {
        assert_eq!(alg.milnor_q_recursive(n).unwrap(), q(n).unwrap(), "n = {n}");
    }
}

#[test]
fn q2_termwise_form() {
    // Q_2 = [Q_1, Sq^4] + rho Q_1 Q_0 Sq^2, checked termwise
    let alg = Algebra::default();
    let bracket = alg.commutator(&q(1).unwrap(), &sq(4).unwrap()).unwrap();
    let chain = alg
        .product(
            &q(1).unwrap(),
            &alg.product(&q(0).unwrap(), &sq(2).unwrap()).unwrap(),
        )
        .unwrap();
    let rhs = bracket.add(&chain.scale(&HScalar::rho()));
    assert_eq!(rhs, q(2).unwrap());
}

#[test]
fn p_recursion_matches_constructors() {
    let alg = Algebra::default();
    for n in 1..=3 {
        assert_eq!(alg.milnor_p_recursive(n).unwrap(), p_n(n).unwrap(), "n = {n}");
    }
}

#[test]
fn rho_degeneration_of_the_corollary() {
    // at rho = 0 both sides collapse to the classical recursion
    let alg = Algebra::default();
    for n in 0..=2 {
        let (lhs, rhs) = alg.identity_sides(Identity::Corollary, n, None).unwrap();
        let lhs0 = lhs.specialize(Subst::Keep, Subst::Zero);
        let rhs0 = rhs.specialize(Subst::Keep, Subst::Zero);
        assert_eq!(lhs0, rhs0);
        // and the rho-term itself dies, leaving the plain bracket
        let bracket = alg
            .commutator(&q(n).unwrap(), &sq(1 << (n + 1)).unwrap())
            .unwrap()
            .specialize(Subst::Keep, Subst::Zero);
        assert_eq!(bracket, rhs0);
    }
}

#[test]
fn product_is_bidegree_additive() {
    let alg = Algebra::default();
    let cases = [
        (sq(2).unwrap(), sq(1).unwrap()),
        (q(1).unwrap(), sq(4).unwrap()),
        (sq(3).unwrap(), sq(5).unwrap()),
    ];
    for (x, y) in cases {
        let p = alg.product(&x, &y).unwrap();
        if !p.is_zero() {
            assert_eq!(
                p.homogeneous_degree().unwrap(),
                x.homogeneous_degree().unwrap() + y.homogeneous_degree().unwrap()
            );
        }
    }
}

#[test]
fn product_is_associative_on_small_triples() {
    let alg = Algebra::default();
    let gens = [sq(1).unwrap(), sq(2).unwrap(), sq(3).unwrap(), q(1).unwrap()];
    for x in &gens {
        for y in &gens {
            for z in &gens {
                let left = alg.product(&alg.product(x, y).unwrap(), z).unwrap();
                let right = alg.product(x, &alg.product(y, z).unwrap()).unwrap();
                assert_eq!(left, right, "associativity of {x}, {y}, {z}");
            }
        }
    }
}

#[test]
fn product_is_associative_on_random_homogeneous_triples() {
    use motivic_steenrod::sampling::{random_homogeneous_element, Rng};
    let alg = Algebra::default();
    let mut rng = Rng::new(31337);
    let mut tried = 0;
    while tried < 40 {
        let x = random_homogeneous_element(&alg, &mut rng, 8);
        let y = random_homogeneous_element(&alg, &mut rng, 7);
        let z = random_homogeneous_element(&alg, &mut rng, 5);
        let total = x.homogeneous_degree().unwrap().p
            + y.homogeneous_degree().unwrap().p
            + z.homogeneous_degree().unwrap().p;
        if total > 20 {
            continue;
        }
        tried += 1;
        let left = alg.product(&alg.product(&x, &y).unwrap(), &z).unwrap();
        let right = alg.product(&x, &alg.product(&y, &z).unwrap()).unwrap();
        assert_eq!(left, right, "associativity of {x}, {y}, {z}");
    }
}
