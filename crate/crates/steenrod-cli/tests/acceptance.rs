//! Acceptance suite. One test per criterion; each prints a PASS line when it
//! completes (anything else fails the assertions first). Equality everywhere
//! is exact, coefficients in F2[tau, rho].
//!
//! Run with `cargo test -p motivic-steenrod-cli --test acceptance`; the
//! workspace profile keeps the algebra optimized, so the stated time budgets
//! are enforced as written. The Q_6 stretch goal is `--ignored`.

use std::process::Command;
use std::time::Instant;

use motivic_steenrod::cartan::enumerate_admissible;
use motivic_steenrod::classical::{
    classical_to_admissible, ClassicalElement, ClassicalMonomial,
};
use motivic_steenrod::coalgebra::{
    counit_collapse_left, counit_collapse_right, pair, tensor_multiply,
};
use motivic_steenrod::dual::{enumerate_monomials, multiply_monomials, DualElement, DualMonomial};
use motivic_steenrod::proof::{
    hypothesis_sequences, lemma_decreasing_check, reduced_coproduct, section2_ideal_i,
    section2_ideal_j, section3_ideal_i, section3_ideal_j, LemmaVariant,
};
use motivic_steenrod::sampling::{random_homogeneous_element, Rng};
use motivic_steenrod::scalar::{Bidegree, HScalar, Subst};
use motivic_steenrod::steenrod::{q, sq, Identity, MilnorMonomial, SteenrodElement};
use motivic_steenrod::Algebra;
use steenrod_cli::verify::{acceptance_plan, run_classical_check, run_identity};

fn monomials_up_to(max_p: i32, max_index: u32) -> Vec<DualMonomial> {
    let mut out = Vec::new();
    for p in 0..=max_p {
        for qd in 0..=p {
            for (m, a, b) in enumerate_monomials(Bidegree::new(p, qd), max_index) {
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

/// Criterion 1: the identity suite at the stated ranges, under 120 s.
#[test]
fn criterion_1_identity_suite() {
    let alg = Algebra::default();
    let start = Instant::now();
    let mut cases = 0usize;
    for (id, n_range) in acceptance_plan() {
        let report = run_identity(&alg, id, n_range, None, 1).expect("sides build");
        for case in &report.cases {
            assert!(
                case.pass,
                "{} fails at n={} i={:?}: diff {}",
                id.name(),
                case.n,
                case.i,
                case.diff.as_ref().unwrap()
            );
        }
        cases += report.cases.len();
    }
    // the plan covers every identity family
    assert!(cases >= 50, "only {cases} cases ran");
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 120.0,
        "identity suite took {elapsed:?}, budget 120 s"
    );
    // the CLI front end agrees
    let out = Command::new(env!("CARGO_BIN_EXE_motivic"))
        .args(["verify", "theorem-main", "--n", "0..3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    println!("[PASS] criterion 1: identity suite, {cases} cases in {elapsed:?} (budget 120 s)");
}

/// Criterion 2: the known term counts 1, 2, 5, 14, 47 under 60 s and
/// 213 under 10 min. (1427 is the ignored stretch test below.)
#[test]
fn criterion_2_cartan_counts() {
    let alg = Algebra::default();
    let start = Instant::now();
    for (n, expected) in [(0u32, 1usize), (1, 2), (2, 5), (3, 14), (4, 47)] {
        let count = alg.cartan_term_count(&q(n).unwrap()).unwrap();
        assert_eq!(count, expected, "count of Q_{n}");
    }
    let low = start.elapsed();
    assert!(low.as_secs_f64() < 60.0, "Q_0..Q_4 took {low:?}, budget 60 s");
    let start = Instant::now();
    let count5 = alg.cartan_term_count(&q(5).unwrap()).unwrap();
    assert_eq!(count5, 213, "count of Q_5");
    let q5 = start.elapsed();
    assert!(q5.as_secs_f64() < 600.0, "Q_5 took {q5:?}, budget 10 min");
    println!(
        "[PASS] criterion 2: counts 1,2,5,14,47 in {low:?} (budget 60 s); 213 in {q5:?} (budget 10 min)"
    );
}

/// Stretch goal: Q_6 has 1427 admissible terms. No time budget; the runtime
/// is reported. Run with `cargo test --release -p motivic-steenrod-cli --test
/// acceptance -- --ignored`.
#[test]
#[ignore = "stretch goal: several minutes of compute"]
fn criterion_2_stretch_q6() {
    let alg = Algebra::default();
    let start = Instant::now();
    let count = alg.cartan_term_count(&q(6).unwrap()).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(count, 1427, "count of Q_6");
    println!("[PASS] criterion 2 (stretch): Q_6 has 1427 terms, computed in {elapsed:?}");
}

/// Criterion 3: specialization homomorphism on all monomial pairs of total
/// degree <= 14 and 100 seeded random pairs of degree <= 24, plus the
/// classical recursion for n <= 4.
#[test]
fn criterion_3_classical_oracle() {
    let alg = Algebra::default();
    let start = Instant::now();
    let cases = run_classical_check(&alg, 14, 100, 24, 4, 20240817).unwrap();
    assert!(cases.len() >= 6);
    for case in &cases {
        assert!(case.pass, "oracle case failed: {}", case.label);
    }
    assert!(steenrod_cli::verify::specialization_degree_compatible(&alg, 14));
    println!(
        "[PASS] criterion 3: classical-oracle equivalence, {} case groups in {:?}",
        cases.len(),
        start.elapsed()
    );
}

/// Criterion 4: Hopf-structure property suite at the stated degrees, zero
/// failures.
#[test]
fn criterion_4_hopf_structure() {
    let alg = Algebra::default();
    let start = Instant::now();

    // coproduct multiplicativity for monomial pairs of total degree <= 24
    let monomials = monomials_up_to(23, 16);
    let mut mult_pairs = 0usize;
    for m1 in &monomials {
        for m2 in &monomials {
            if m1 > m2 || m1.degree().p + m2.degree().p > 24 {
                continue; // commutative, so unordered pairs suffice
            }
            let product = multiply_monomials(m1, m2).unwrap();
            let mut lhs = motivic_steenrod::coalgebra::TensorElement::zero();
            for (m, h) in product.terms() {
                lhs = lhs.add(&alg.coproduct(m).unwrap().scale(h));
            }
            let rhs =
                tensor_multiply(&alg.coproduct(m1).unwrap(), &alg.coproduct(m2).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "multiplicativity at {m1} * {m2}");
            mult_pairs += 1;
        }
    }

    // coassociativity and counit laws for monomials of degree <= 16
    let small = monomials_up_to(16, 16);
    for m in &small {
        let d = alg.coproduct(m).unwrap();
        let embedded = DualElement::from_monomial(m.clone());
        assert_eq!(counit_collapse_left(&d), embedded, "left counit at {m}");
        assert_eq!(counit_collapse_right(&d), embedded, "right counit at {m}");
        coassociativity(&alg, m);
    }

    // duality pairing matrix is the identity in degree <= 16
    for m in &small {
        for n in &small {
            if m.degree() != n.degree() {
                continue;
            }
            let value = pair(
                &DualElement::from_monomial(m.clone()),
                &MilnorMonomial::from_dual(n.clone()),
            );
            assert_eq!(value.is_one(), m == n, "<{m}, dual {n}>");
            assert_eq!(value.is_zero(), m != n, "<{m}, dual {n}>");
        }
    }
    println!(
        "[PASS] criterion 4: Hopf suite ({mult_pairs} multiplicativity pairs, {} monomials) in {:?}",
        small.len(),
        start.elapsed()
    );
}

fn coassociativity(alg: &Algebra, m: &DualMonomial) {
    use motivic_steenrod::coalgebra::eta_r;
    use motivic_steenrod::dual::multiply_elements;
    use std::collections::BTreeMap;
    type Triple = BTreeMap<(DualMonomial, DualMonomial, DualMonomial), HScalar>;
    fn add(acc: &mut Triple, key: (DualMonomial, DualMonomial, DualMonomial), h: HScalar) {
        use std::collections::btree_map::Entry;
        if h.is_zero() {
            return;
        }
        match acc.entry(key) {
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
    let d = alg.coproduct(m).unwrap();
    let mut left = Triple::new();
    let mut right = Triple::new();
    for ((a, b), h) in d.terms() {
        for ((c, e), g) in alg.coproduct(a).unwrap().terms() {
            add(&mut left, (c.clone(), e.clone(), b.clone()), h.mul(g));
        }
        for ((c, e), g) in alg.coproduct(b).unwrap().terms() {
            let carried =
                multiply_elements(&DualElement::from_monomial(a.clone()), &eta_r(g).unwrap())
                    .unwrap();
            for (a2, f) in carried.terms() {
                add(&mut right, (a2.clone(), c.clone(), e.clone()), h.mul(f));
            }
        }
    }
    assert_eq!(left, right, "coassociativity at {m}");
}

/// Criterion 5: both sides of the bracket recursion collapse at rho = 0 onto
/// the classical recursion shape for n <= 4.
#[test]
fn criterion_5_rho_degeneration() {
    let alg = Algebra::default();
    for n in 0..=4u32 {
        let (lhs, rhs) = alg.identity_sides(Identity::Corollary, n, None).unwrap();
        let lhs0 = lhs.specialize(Subst::Keep, Subst::Zero);
        let rhs0 = rhs.specialize(Subst::Keep, Subst::Zero);
        assert_eq!(lhs0, rhs0, "corollary at rho = 0, n = {n}");
        // the rho-term dies, leaving exactly Q_{n+1} = [Q_n, Sq^{2^{n+1}}]
        let bracket = alg
            .commutator(&q(n).unwrap(), &sq(1 << (n + 1)).unwrap())
            .unwrap()
            .specialize(Subst::Keep, Subst::Zero);
        assert_eq!(bracket, lhs0, "bracket-only form at n = {n}");
        assert_eq!(rhs0, q(n + 1).unwrap(), "right side is Q_{}", n + 1);
    }
    println!("[PASS] criterion 5: rho-degeneration onto the classical recursion, n <= 4");
}

/// Criterion 6: reduced-coproduct formulas for n <= 4 and the lemma sweep
/// (n <= 6, length <= 5, both variants) with zero mismatches.
#[test]
fn criterion_6_proof_tools() {
    let start = Instant::now();
    let xi = |i: u32, e: u32| DualMonomial::xi_gen(i, e).unwrap();
    let tau = |i: u32| DualMonomial::tau_gen(i).unwrap();
    for n in 1..=4u32 {
        let i2 = section2_ideal_i(n, 12).unwrap();
        let j2 = section2_ideal_j(n, 12).unwrap();
        for k in 1..=n {
            let t = reduced_coproduct(&tau(k), &i2, &j2).unwrap();
            let mut expected = motivic_steenrod::coalgebra::TensorElement::zero();
            expected.add_term(DualMonomial::one(), tau(k), HScalar::one());
            expected.add_term(xi(1, 1 << (k - 1)), tau(k - 1), HScalar::one());
            assert_eq!(t, expected, "reduced Delta(tau_{k}), n={n}");
        }
        let t = reduced_coproduct(&tau(n + 1), &i2, &j2).unwrap();
        let mut expected = motivic_steenrod::coalgebra::TensorElement::zero();
        expected.add_term(xi(1, 1 << n), tau(n), HScalar::one());
        assert_eq!(t, expected, "reduced Delta(tau_(n+1)), n={n}");

        let i3 = section3_ideal_i(n, 12).unwrap();
        let j3 = section3_ideal_j(n, 12).unwrap();
        for k in 2..=7u32 {
            let t = reduced_coproduct(&xi(k, 1), &i3, &j3).unwrap();
            match k {
                _ if k == n => {
                    let mut expected = motivic_steenrod::coalgebra::TensorElement::zero();
                    expected.add_term(DualMonomial::one(), xi(n, 1), HScalar::one());
                    assert_eq!(t, expected);
                }
                _ if k == n + 1 => {
                    let mut expected = motivic_steenrod::coalgebra::TensorElement::zero();
                    expected.add_term(xi(1, 1 << n), xi(n, 1), HScalar::one());
                    assert_eq!(t, expected);
                }
                _ => assert!(t.is_zero(), "reduced Delta(xi_{k}) should vanish, n={n}"),
            }
        }
    }
    let mut sequences = 0usize;
    for n in 1..=6u32 {
        for variant in [LemmaVariant::Section2, LemmaVariant::Section3] {
            for js in hypothesis_sequences(n, 5) {
                let check = lemma_decreasing_check(&js, n, variant, 12).unwrap();
                assert!(
                    check.matches(),
                    "lemma {variant} mismatch at n={n}, js={js:?}"
                );
                sequences += 1;
            }
        }
    }
    println!(
        "[PASS] criterion 6: proof tools, {sequences} lemma cases, 0 mismatches in {:?}",
        start.elapsed()
    );
}

/// Criterion 7: parse/format round trip on 200 seeded elements, exit codes,
/// byte-stable JSON.
#[test]
fn criterion_7_cli_surface() {
    use steenrod_cli::parser::{eval, parse};
    let alg = Algebra::default();
    let mut rng = Rng::new(123456789);
    for _ in 0..200 {
        let x = random_homogeneous_element(&alg, &mut rng, 12);
        let text = x.to_string();
        let v = eval(&alg, &parse(&text).unwrap()).unwrap();
        assert_eq!(v.into_milnor().unwrap(), x, "round trip of `{text}`");
    }

    let bin = env!("CARGO_BIN_EXE_motivic");
    let run = |args: &[&str]| {
        let out = Command::new(bin).args(args).output().unwrap();
        (
            out.status.code().unwrap_or(-1),
            String::from_utf8_lossy(&out.stdout).into_owned(),
        )
    };
    // exit 0 verified
    assert_eq!(run(&["verify", "remark-eq", "--n", "0..2"]).0, 0);
    // exit 2 parse error
    assert_eq!(run(&["product", "Sq2*", "Sq1"]).0, 2);
    // exit 3 guard exceeded
    assert_eq!(run(&["--degree-guard", "8", "product", "Sq8", "Sq8"]).0, 3);
    // byte stability
    for args in [
        ["--format", "json", "product", "Sq2*Sq2", "Sq1"].as_slice(),
        ["--format", "json", "qn", "3", "--basis", "cartan"].as_slice(),
        ["--format", "json", "cartan-count", "3"].as_slice(),
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a, b, "unstable output for {args:?}");
        assert_eq!(a.0, 0);
    }
    println!("[PASS] criterion 7: CLI round trips, exit codes, byte-stable JSON");
}

/// Spot checks of pinned values alongside the criteria.
#[test]
fn acceptance_spot_checks() {
    let alg = Algebra::default();
    // Q_1 = Sq^2 Sq^1 + Sq^3 in the admissible basis
    let c = alg.milnor_to_cartan(&q(1).unwrap()).unwrap();
    assert_eq!(c.to_string(), "Sq2*Sq1 + Sq3");
    // the recursion builds the constructors' elements exactly, n <= 4
    for n in 0..=4u32 {
        assert_eq!(
            alg.milnor_q_recursive(n).unwrap(),
            q(n).unwrap(),
            "recursion at n = {n}"
        );
    }
    // classically Q_2 = Sq^7 + Sq^6 Sq^1 + Sq^5 Sq^2 + Sq^4 Sq^2 Sq^1: four
    // terms; the fifth motivic term carries a rho and dies at rho = 0
    let q2 = ClassicalElement::from_monomial(ClassicalMonomial::q(2));
    let words = classical_to_admissible(&q2).unwrap();
    assert_eq!(
        words,
        vec![vec![4, 2, 1], vec![5, 2], vec![6, 1], vec![7]]
    );
    let motivic5 = alg.milnor_to_cartan(&q(2).unwrap()).unwrap();
    assert_eq!(motivic5.term_count(), 5);
    let survivors = motivic5
        .terms()
        .filter(|(_, h)| !h.specialize(Subst::One, Subst::Zero).is_zero())
        .count();
    assert_eq!(survivors, words.len());
    // admissible slices are genuine bases: sizes match the Milnor slices
    for p in 0..=16i32 {
        for qd in 0..=p {
            let t = Bidegree::new(p, qd);
            assert_eq!(
                enumerate_admissible(t).len(),
                enumerate_monomials(t, 16).len(),
                "slice {t}"
            );
        }
    }
    // a nonzero difference is reported on a (deliberately) unequal pair
    let lhs = sq(4).unwrap();
    let rhs = sq(2).unwrap();
    let diff = lhs.add(&rhs);
    assert!(!diff.is_zero());
    let _ = SteenrodElement::zero();
    println!("[PASS] acceptance spot checks");
}
