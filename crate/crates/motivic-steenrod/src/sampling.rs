//! Deterministic sampling for randomized suites.
//!
//! A fixed SplitMix64 keeps seeded runs reproducible across platforms and
//! releases, which the byte-stable output guarantees depend on.

use crate::dual::{self, DualMonomial};
use crate::engine::Algebra;
use crate::scalar::{Bidegree, HScalar};
use crate::steenrod::{MilnorMonomial, SteenrodElement};

/// SplitMix64.
#[derive(Debug, Clone)]
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n` (`n > 0`).
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }
}

/// A random scalar with bounded exponents; zero is possible.
pub fn random_scalar(rng: &mut Rng, max_exp: u32, max_terms: usize) -> HScalar {
    let mut h = HScalar::zero();
    for _ in 0..rng.below(max_terms as u64 + 1) {
        h.toggle(
            rng.below(max_exp as u64 + 1) as u32,
            rng.below(max_exp as u64 + 1) as u32,
        );
    }
    h
}

/// A random dual monomial of topological degree at most `max_p`.
pub fn random_dual_monomial(rng: &mut Rng, max_p: i32) -> DualMonomial {
    let mut taus: Vec<u32> = Vec::new();
    let mut xis = vec![0u32; 8];
    let mut budget = rng.below(max_p as u64 + 1) as i32;
    loop {
        // alternate between adding a tau and an xi power, degree permitting
        let pick = rng.below(8) as u32;
        let added = if pick < 3 {
            let i = rng.below(5) as u32;
            let d = dual::tau_degree(i);
            if d.p <= budget && !taus.contains(&i) {
                taus.push(i);
                d.p
            } else {
                0
            }
        } else {
            let i = rng.below(4) as u32 + 1;
            let d = dual::xi_degree(i);
            if d.p <= budget {
                xis[(i - 1) as usize] += 1;
                d.p
            } else {
                0
            }
        };
        if added == 0 {
            break;
        }
        budget -= added;
        if rng.below(4) == 0 {
            break;
        }
    }
    taus.sort_unstable();
    DualMonomial::new(&taus, &xis).expect("indices in range")
}

/// A random homogeneous Steenrod element of topological degree at most
/// `max_p`: a random nonempty F2-combination over one bidegree slice.
pub fn random_homogeneous_element(
    alg: &Algebra,
    rng: &mut Rng,
    max_p: i32,
) -> SteenrodElement {
    loop {
        let seed = random_dual_monomial(rng, max_p);
        let degree = seed.degree() + Bidegree::of_coefficient(rng.below(2) as u32, 0);
        if degree.p > max_p || degree == Bidegree::ZERO {
            continue;
        }
        let slice = alg.enumerate_monomials(degree);
        if slice.is_empty() {
            continue;
        }
        let mut out = SteenrodElement::zero();
        for (m, a, b) in slice.iter() {
            if rng.coin() {
                out.add_term(
                    MilnorMonomial::from_dual(m.clone()),
                    HScalar::monomial(*a, *b),
                );
            }
        }
        if !out.is_zero() {
            return out;
        }
    }
}
