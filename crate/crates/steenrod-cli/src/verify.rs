//! Identity verification, oracle comparison and lemma sweeps, with reports.

use std::time::{Duration, Instant};

use motivic_steenrod::classical::{
    classical_commutator, classical_product, enumerate_classical_monomials, specialize_motivic,
    ClassicalElement, ClassicalMonomial,
};
use motivic_steenrod::proof::{hypothesis_sequences, lemma_decreasing_check, LemmaCheck, LemmaVariant};
use motivic_steenrod::sampling::{random_homogeneous_element, Rng};
use motivic_steenrod::steenrod::{Identity, SteenrodElement};
use motivic_steenrod::{Algebra, AlgebraError};

/// One verified case of an identity.
#[derive(Debug, Clone)]
pub struct VerifyCase {
    pub n: u32,
    pub i: Option<u32>,
    pub pass: bool,
    pub wall: Duration,
    /// The nonzero difference, present exactly when the case fails.
    pub diff: Option<SteenrodElement>,
}

/// Report for one identity over a parameter range.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub identity: Identity,
    pub cases: Vec<VerifyCase>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }
}

/// Inclusive parameter range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Range {
    pub lo: u32,
    pub hi: u32,
}

impl Range {
    pub fn single(v: u32) -> Self {
        Range { lo: v, hi: v }
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> {
        self.lo..=self.hi
    }

    /// Parse `a..b` (inclusive) or a single number.
    pub fn parse(s: &str) -> Option<Range> {
        if let Some((a, b)) = s.split_once("..") {
            let lo = a.trim().parse().ok()?;
            let hi = b.trim().parse().ok()?;
            (lo <= hi).then_some(Range { lo, hi })
        } else {
            s.trim().parse().ok().map(Range::single)
        }
    }
}

/// The `(n, i)` cases an identity runs over given the requested ranges.
/// Identities with an `i` parameter default to the range their hypothesis
/// allows; explicit ranges are intersected with it.
pub fn cases_for(id: Identity, n_range: Range, i_range: Option<Range>) -> Vec<(u32, Option<u32>)> {
    let mut cases = Vec::new();
    for n in n_range.iter() {
        if n < id.min_n() {
            continue;
        }
        match id {
            Identity::RemarkLow | Identity::QCommute => {
                if n == 0 {
                    continue;
                }
                let r = i_range.unwrap_or(Range { lo: 0, hi: n - 1 });
                for i in r.iter().filter(|&i| i < n) {
                    cases.push((n, Some(i)));
                }
            }
            Identity::RemarkHigh => {
                let r = i_range.unwrap_or(Range {
                    lo: n + 1,
                    hi: n + 2,
                });
                for i in r.iter().filter(|&i| i > n) {
                    cases.push((n, Some(i)));
                }
            }
            _ => cases.push((n, None)),
        }
    }
    cases
}

/// Run one identity over its cases, optionally across threads. Results come
/// back in case order regardless of scheduling.
pub fn run_identity(
    alg: &Algebra,
    id: Identity,
    n_range: Range,
    i_range: Option<Range>,
    threads: usize,
) -> Result<VerifyReport, AlgebraError> {
    let cases = cases_for(id, n_range, i_range);
    let run_one = |&(n, i): &(u32, Option<u32>)| -> Result<VerifyCase, AlgebraError> {
        let start = Instant::now();
        let (lhs, rhs) = alg.identity_sides(id, n, i)?;
        let diff = lhs.add(&rhs);
        let pass = diff.is_zero();
        Ok(VerifyCase {
            n,
            i,
            pass,
            wall: start.elapsed(),
            diff: (!pass).then_some(diff),
        })
    };
    let results = run_cases(&cases, threads, run_one)?;
    Ok(VerifyReport {
        identity: id,
        cases: results,
    })
}

/// The acceptance ranges of every identity, as `(identity, n range)`.
pub fn acceptance_plan() -> Vec<(Identity, Range)> {
    vec![
        (Identity::TheoremMain, Range { lo: 0, hi: 4 }),
        (Identity::Corollary, Range { lo: 0, hi: 4 }),
        (Identity::RemarkLow, Range { lo: 1, hi: 4 }),
        (Identity::RemarkEq, Range { lo: 0, hi: 4 }),
        (Identity::RemarkHigh, Range { lo: 0, hi: 3 }),
        (Identity::RemarkAlt, Range { lo: 0, hi: 4 }),
        (Identity::Voevodsky136, Range { lo: 1, hi: 5 }),
        (Identity::TheoremMain2, Range { lo: 1, hi: 4 }),
        (Identity::EqQn, Range { lo: 1, hi: 4 }),
        (Identity::LemQsq, Range { lo: 1, hi: 4 }),
        (Identity::QSquare, Range { lo: 0, hi: 5 }),
        (Identity::QCommute, Range { lo: 1, hi: 5 }),
    ]
}

/// Generic deterministic fan-out over a case list.
fn run_cases<C: Sync, T: Send>(
    cases: &[C],
    threads: usize,
    f: impl Fn(&C) -> Result<T, AlgebraError> + Sync,
) -> Result<Vec<T>, AlgebraError> {
    if threads <= 1 || cases.len() <= 1 {
        return cases.iter().map(&f).collect();
    }
    let mut slots: Vec<Option<Result<T, AlgebraError>>> = Vec::new();
    slots.resize_with(cases.len(), || None);
    std::thread::scope(|scope| {
        let chunk = cases.len().div_ceil(threads);
        let mut rest: &mut [Option<Result<T, AlgebraError>>] = &mut slots;
        let mut offset = 0;
        let mut handles = Vec::new();
        while !rest.is_empty() {
            let take = chunk.min(rest.len());
            let (head, tail) = rest.split_at_mut(take);
            rest = tail;
            let base = offset;
            offset += take;
            let f = &f;
            handles.push(scope.spawn(move || {
                for (k, slot) in head.iter_mut().enumerate() {
                    *slot = Some(f(&cases[base + k]));
                }
            }));
        }
        for h in handles {
            h.join().expect("verification worker panicked");
        }
    });
    slots
        .into_iter()
        .map(|s| s.expect("every slot filled"))
        .collect()
}

/// One case of the classical-oracle comparison.
#[derive(Debug, Clone)]
pub struct OracleCase {
    pub label: String,
    pub pass: bool,
}

/// Specialization homomorphism test: exhaustively on monomial pairs up to
/// `exhaustive_degree`, then on seeded random homogeneous pairs up to
/// `random_degree`, then the classical recursion.
pub fn run_classical_check(
    alg: &Algebra,
    exhaustive_degree: i32,
    samples: usize,
    random_degree: i32,
    recursion_max: u32,
    seed: u64,
) -> Result<Vec<OracleCase>, AlgebraError> {
    let mut out = Vec::new();
    // all Milnor-monomial pairs of total degree <= exhaustive_degree
    let mut monomials = Vec::new();
    for p in 0..=exhaustive_degree {
        for q in 0..=p {
            for (m, a, b) in motivic_steenrod::dual::enumerate_monomials(
                motivic_steenrod::scalar::Bidegree::new(p, q),
                alg.max_index(),
            ) {
                if a == 0 && b == 0 {
                    monomials.push(m);
                }
            }
        }
    }
    monomials.sort();
    monomials.dedup();
    let mut pairs_pass = true;
    let mut pairs_total = 0usize;
    for x in &monomials {
        for y in &monomials {
            if x.degree().p + y.degree().p > exhaustive_degree {
                continue;
            }
            pairs_total += 1;
            let xe = SteenrodElement::from_monomial(
                motivic_steenrod::steenrod::MilnorMonomial::from_dual(x.clone()),
            );
            let ye = SteenrodElement::from_monomial(
                motivic_steenrod::steenrod::MilnorMonomial::from_dual(y.clone()),
            );
            if !homomorphism_holds(alg, &xe, &ye)? {
                pairs_pass = false;
            }
        }
    }
    out.push(OracleCase {
        label: format!("exhaustive monomial pairs, degree <= {exhaustive_degree} ({pairs_total} pairs)"),
        pass: pairs_pass,
    });

    let mut rng = Rng::new(seed);
    let mut random_pass = true;
    for _ in 0..samples {
        let x = random_homogeneous_element(alg, &mut rng, random_degree / 2);
        let y = random_homogeneous_element(alg, &mut rng, random_degree - x.homogeneous_degree().unwrap().p);
        if !homomorphism_holds(alg, &x, &y)? {
            random_pass = false;
        }
    }
    out.push(OracleCase {
        label: format!("{samples} seeded random homogeneous pairs, degree <= {random_degree}"),
        pass: random_pass,
    });

    for n in 0..=recursion_max.saturating_sub(1) {
        let q_n = ClassicalElement::from_monomial(ClassicalMonomial::q(n));
        let sq_pow = ClassicalElement::from_monomial(ClassicalMonomial::sq(1 << (n + 1)));
        let bracket = classical_commutator(&q_n, &sq_pow);
        let pass = bracket == ClassicalElement::from_monomial(ClassicalMonomial::q(n + 1));
        out.push(OracleCase {
            label: format!("classical recursion Q_{} = [Q_{n}, Sq^{}]", n + 1, 1 << (n + 1)),
            pass,
        });
    }
    Ok(out)
}

fn homomorphism_holds(
    alg: &Algebra,
    x: &SteenrodElement,
    y: &SteenrodElement,
) -> Result<bool, AlgebraError> {
    let motivic = alg.product(x, y)?;
    let lhs = specialize_motivic(&motivic);
    let rhs = classical_product(&specialize_motivic(x), &specialize_motivic(y));
    Ok(lhs == rhs)
}

/// Degree compatibility of the specialization on a set of monomials.
pub fn specialization_degree_compatible(alg: &Algebra, max_degree: i32) -> bool {
    for p in 0..=max_degree {
        for q in 0..=p {
            for (m, a, b) in motivic_steenrod::dual::enumerate_monomials(
                motivic_steenrod::scalar::Bidegree::new(p, q),
                alg.max_index(),
            ) {
                if a != 0 || b != 0 {
                    continue;
                }
                let x = SteenrodElement::from_monomial(
                    motivic_steenrod::steenrod::MilnorMonomial::from_dual(m.clone()),
                );
                let image = specialize_motivic(&x);
                for cm in image.terms() {
                    if cm.degree() != m.degree().p as u64 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Sweep the collapsing lemma over every hypothesis-satisfying sequence.
pub fn run_lemma_sweep(
    variant: LemmaVariant,
    n_range: Range,
    max_len: usize,
    max_index: u32,
    threads: usize,
) -> Result<Vec<LemmaCheck>, AlgebraError> {
    let mut cases = Vec::new();
    for n in n_range.iter() {
        for js in hypothesis_sequences(n, max_len) {
            cases.push((js, n));
        }
    }
    run_cases(&cases, threads, |(js, n)| {
        lemma_decreasing_check(js, *n, variant, max_index)
    })
}

/// Count classical admissible terms of the classical `Q_n`.
pub fn classical_q_term_count(n: u32) -> Result<usize, String> {
    let q_n = ClassicalElement::from_monomial(ClassicalMonomial::q(n));
    Ok(motivic_steenrod::classical::classical_to_admissible(&q_n)?.len())
}

/// Sanity helper used by tests: the classical basis of a degree.
pub fn classical_basis_size(degree: u64) -> usize {
    let max_index = (0..).find(|&i| (1u64 << (i + 1)) - 1 > degree).unwrap_or(60);
    enumerate_classical_monomials(degree, max_index).len()
}
