//! The dual motivic Steenrod algebra as an algebra.
//!
//! Monomials are `tau(E) xi(R) = prod tau_i^{eps_i} prod xi_i^{r_i}` with `E`
//! a square-free index set and `R` a finite exponent sequence. Multiplication
//! concatenates exponents and then rewrites every square
//!
//! ```text
//! tau_i^2 -> tau*xi_{i+1} + rho*tau_{i+1} + rho*tau_0*xi_{i+1}
//! ```
//!
//! until all monomials are square-free in the `tau`'s. Rewrites are applied
//! lowest index first; each step strictly decreases the number of `tau`
//! factors, so the process terminates. Confluence is tested against a
//! fixpoint rewriter that picks rewrite positions in the opposite order.
//!
//! Degree bookkeeping: `tau_i` has degree `(2^{i+1} - 1, 2^i - 1)` and `xi_i`
//! has degree `(2^{i+1} - 2, 2^i - 1)`. A coefficient `tau^a rho^b` attached
//! to a dual monomial contributes `-(b, a+b)` to the stored degree; the same
//! coefficient on the Steenrod side contributes `+(b, a+b)`, which is what
//! makes the evaluation pairing degree-balanced.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::AlgebraError;
use crate::scalar::{Bidegree, HScalar};
use crate::MAX_GENERATOR_INDEX;

pub(crate) type XiExponents = SmallVec<[u32; 8]>;

/// Sum formatting for element-like maps: `coeff*mono + ...`, eliding unit
/// coefficients and the unit monomial, parenthesising multi-term scalars.
macro_rules! fmt_element_impl {
    () => {
        fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
            if self.terms.is_empty() {
                return write!(f, "0");
            }
            for (n, (m, h)) in self.terms.iter().enumerate() {
                if n > 0 {
                    write!(f, " + ")?;
                }
                let coeff = if h.is_one() {
                    None
                } else if h.term_count() > 1 {
                    Some(format!("({h})"))
                } else {
                    Some(h.to_string())
                };
                match (coeff, m.is_one()) {
                    (None, _) => write!(f, "{m}")?,
                    (Some(c), true) => write!(f, "{c}")?,
                    (Some(c), false) => write!(f, "{c}*{m}")?,
                }
            }
            Ok(())
        }
    };
}
pub(crate) use fmt_element_impl;

fn clamp_degree(p: i128, q: i128) -> Bidegree {
    Bidegree::new(
        p.min(i32::MAX as i128) as i32,
        q.min(i32::MAX as i128) as i32,
    )
}

/// Degree of `tau_i`; saturates at `i32::MAX` for indices near the bit-set cap.
pub fn tau_degree(i: u32) -> Bidegree {
    clamp_degree((1i128 << (i + 1)) - 1, (1i128 << i) - 1)
}

/// Degree of `xi_i` (`i >= 1`); saturates like [`tau_degree`].
pub fn xi_degree(i: u32) -> Bidegree {
    clamp_degree((1i128 << (i + 1)) - 2, (1i128 << i) - 1)
}

/// A basis monomial `tau(E) xi(R)` of the dual algebra.
///
/// `E` is kept as a 64-entry bit set, `R` positionally from `xi_1` with
/// trailing zeros trimmed, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DualMonomial {
    tau: u64,
    xi: XiExponents,
}

impl DualMonomial {
    pub fn one() -> Self {
        DualMonomial::default()
    }

    /// The generator `tau_i`.
    pub fn tau_gen(i: u32) -> Result<Self, AlgebraError> {
        check_index(i)?;
        Ok(DualMonomial {
            tau: 1u64 << i,
            xi: XiExponents::new(),
        })
    }

    /// The generator power `xi_i^e`, `i >= 1`.
    pub fn xi_gen(i: u32, e: u32) -> Result<Self, AlgebraError> {
        assert!(i >= 1, "xi indices start at 1");
        check_index(i)?;
        let mut xi = XiExponents::new();
        if e > 0 {
            xi.resize(i as usize, 0);
            xi[(i - 1) as usize] = e;
        }
        Ok(DualMonomial { tau: 0, xi })
    }

    /// Build from an explicit index set and exponent sequence.
    pub fn new(tau_indices: &[u32], xi_exponents: &[u32]) -> Result<Self, AlgebraError> {
        let mut tau = 0u64;
        for &i in tau_indices {
            check_index(i)?;
            assert!(tau & (1 << i) == 0, "duplicate tau index {i}");
            tau |= 1 << i;
        }
        if xi_exponents.len() as u32 > MAX_GENERATOR_INDEX {
            return Err(AlgebraError::IndexOverflow {
                index: xi_exponents.len() as u32,
                max: MAX_GENERATOR_INDEX,
            });
        }
        let xi: XiExponents = xi_exponents.iter().copied().collect();
        Ok(DualMonomial { tau, xi }.normalized())
    }

    fn normalized(mut self) -> Self {
        while self.xi.last() == Some(&0) {
            self.xi.pop();
        }
        self
    }

    pub fn is_one(&self) -> bool {
        self.tau == 0 && self.xi.is_empty()
    }

    /// Indices `i` with `tau_i` present, ascending.
    pub fn tau_indices(&self) -> impl Iterator<Item = u32> + '_ {
        let bits = self.tau;
        (0..64).filter(move |&i| bits & (1 << i) != 0)
    }

    pub fn has_tau(&self, i: u32) -> bool {
        i < 64 && self.tau & (1 << i) != 0
    }

    pub(crate) fn tau_bits(&self) -> u64 {
        self.tau
    }

    /// Number of `tau` factors; equals `p - 2q` of the degree.
    pub fn tau_count(&self) -> u32 {
        self.tau.count_ones()
    }

    /// Exponents of `xi_1, xi_2, ...` (trailing zeros trimmed).
    pub fn xi_exponents(&self) -> &[u32] {
        &self.xi
    }

    pub fn xi_exponent(&self, i: u32) -> u32 {
        assert!(i >= 1);
        self.xi.get((i - 1) as usize).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Bidegree {
        let (mut p, mut q) = (0i128, 0i128);
        for i in self.tau_indices() {
            let d = tau_degree(i);
            p += d.p as i128;
            q += d.q as i128;
        }
        for (k, &e) in self.xi.iter().enumerate() {
            let g = xi_degree(k as u32 + 1);
            p += g.p as i128 * e as i128;
            q += g.q as i128 * e as i128;
        }
        clamp_degree(p, q)
    }

    /// Divisibility of basis monomials: `E` containment and pointwise `R`.
    pub fn divides(&self, other: &DualMonomial) -> bool {
        if self.tau & !other.tau != 0 {
            return false;
        }
        if self.xi.len() > other.xi.len() {
            return false;
        }
        self.xi.iter().zip(other.xi.iter()).all(|(a, b)| a <= b)
    }

    /// Raw exponent concatenation into the rewriting workspace.
    fn counts(&self, other: &DualMonomial) -> ([u8; 64], XiExponents) {
        let mut counts = [0u8; 64];
        for i in self.tau_indices().chain(other.tau_indices()) {
            counts[i as usize] += 1;
        }
        let mut xi = self.xi.clone();
        if other.xi.len() > xi.len() {
            xi.resize(other.xi.len(), 0);
        }
        for (k, &e) in other.xi.iter().enumerate() {
            xi[k] += e;
        }
        (counts, xi)
    }

    pub(crate) fn from_parts(tau: u64, xi: XiExponents) -> Self {
        DualMonomial { tau, xi }.normalized()
    }
}

fn check_index(i: u32) -> Result<(), AlgebraError> {
    if i > MAX_GENERATOR_INDEX {
        Err(AlgebraError::IndexOverflow {
            index: i,
            max: MAX_GENERATOR_INDEX,
        })
    } else {
        Ok(())
    }
}

impl fmt::Display for DualMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let taus: Vec<String> = self.tau_indices().map(|i| i.to_string()).collect();
        let mut parts = Vec::new();
        if !taus.is_empty() {
            parts.push(format!("tau({})", taus.join(",")));
        }
        if !self.xi.is_empty() {
            let xs: Vec<String> = self.xi.iter().map(|e| e.to_string()).collect();
            parts.push(format!("xi({})", xs.join(",")));
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// A finite `HScalar`-combination of dual monomials, canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DualElement {
    terms: BTreeMap<DualMonomial, HScalar>,
}

impl DualElement {
    pub fn zero() -> Self {
        DualElement::default()
    }

    pub fn one() -> Self {
        DualElement::from_monomial(DualMonomial::one())
    }

    pub fn from_monomial(m: DualMonomial) -> Self {
        let mut x = DualElement::zero();
        x.add_term(m, HScalar::one());
        x
    }

    pub fn scalar(h: HScalar) -> Self {
        let mut x = DualElement::zero();
        x.add_term(DualMonomial::one(), h);
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DualMonomial, &HScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &DualMonomial) -> HScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Add `h * m`, cancelling mod 2 and dropping zero coefficients.
    pub fn add_term(&mut self, m: DualMonomial, h: HScalar) {
        if h.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn add(&self, other: &DualElement) -> DualElement {
        let mut out = self.clone();
        for (m, h) in other.terms() {
            out.add_term(m.clone(), h.clone());
        }
        out
    }

    pub fn scale(&self, h: &HScalar) -> DualElement {
        let mut out = DualElement::zero();
        for (m, c) in self.terms() {
            out.add_term(m.clone(), c.mul(h));
        }
        out
    }

    /// Stored degree of a homogeneous element: `deg(m) - deg(h)` constant
    /// across terms. `None` for zero or inhomogeneous elements.
    pub fn homogeneous_degree(&self) -> Option<Bidegree> {
        let mut degree = None;
        for (m, h) in self.terms() {
            let hd = h.homogeneous_degree()?;
            let d = m.degree() - hd;
            match degree {
                None => degree = Some(d),
                Some(prev) if prev == d => {}
                Some(_) => return None,
            }
        }
        degree
    }
}

impl fmt::Display for DualElement {
    fmt_element_impl!();
}

/// Multiply two basis monomials, rewriting every `tau` square away.
pub fn multiply_monomials(
    m1: &DualMonomial,
    m2: &DualMonomial,
) -> Result<DualElement, AlgebraError> {
    let (counts, xi) = m1.counts(m2);
    let mut out = DualElement::zero();
    rewrite(counts, xi, 0, 0, &mut out)?;
    Ok(out)
}

/// Recursively eliminate the lowest-index `tau` square. The three summands of
/// the relation branch; each branch removes two `tau_i` and adds at most one
/// `tau`, so the total `tau` count strictly decreases and recursion ends.
fn rewrite(
    counts: [u8; 64],
    xi: XiExponents,
    coeff_a: u32,
    coeff_b: u32,
    out: &mut DualElement,
) -> Result<(), AlgebraError> {
    let Some(i) = (0..64usize).find(|&i| counts[i] >= 2) else {
        let mut tau = 0u64;
        for (i, &c) in counts.iter().enumerate() {
            debug_assert!(c <= 1);
            if c == 1 {
                tau |= 1 << i;
            }
        }
        let m = DualMonomial { tau, xi }.normalized();
        out.add_term(m, HScalar::monomial(coeff_a, coeff_b));
        return Ok(());
    };
    let next = i as u32 + 1;
    check_index(next)?;

    // tau * xi_{i+1}
    {
        let mut counts = counts;
        counts[i] -= 2;
        let mut xi = xi.clone();
        bump_xi(&mut xi, next);
        rewrite(counts, xi, coeff_a + 1, coeff_b, out)?;
    }
    // rho * tau_{i+1}
    {
        let mut counts = counts;
        counts[i] -= 2;
        counts[next as usize] += 1;
        debug_assert!(counts[next as usize] <= 3);
        rewrite(counts, xi.clone(), coeff_a, coeff_b + 1, out)?;
    }
    // rho * tau_0 * xi_{i+1}
    {
        let mut counts = counts;
        counts[i] -= 2;
        counts[0] += 1;
        debug_assert!(counts[0] <= 3);
        let mut xi = xi;
        bump_xi(&mut xi, next);
        rewrite(counts, xi, coeff_a, coeff_b + 1, out)?;
    }
    Ok(())
}

fn bump_xi(xi: &mut XiExponents, index: u32) {
    if xi.len() < index as usize {
        xi.resize(index as usize, 0);
    }
    xi[(index - 1) as usize] += 1;
}

/// Bilinear extension of [`multiply_monomials`].
pub fn multiply_elements(x: &DualElement, y: &DualElement) -> Result<DualElement, AlgebraError> {
    let mut out = DualElement::zero();
    for (m1, h1) in x.terms() {
        for (m2, h2) in y.terms() {
            let prod = multiply_monomials(m1, m2)?;
            let h = h1.mul(h2);
            for (m, c) in prod.terms() {
                out.add_term(m.clone(), c.mul(&h));
            }
        }
    }
    Ok(out)
}

/// All `(monomial, a, b)` such that `tau^a rho^b * dual(monomial)` lies in
/// Milnor-basis bidegree `target`, i.e. `deg(monomial) + (b, a+b) = target`.
///
/// The search is cut by the identity `target.p - 2*target.q = |E| - 2a - b`
/// (each `tau_i` contributes 1 to `p - 2q`, each `xi_i` contributes 0).
/// Results are sorted by `(monomial, a, b)` so the order is deterministic
/// however the search is organised.
pub fn enumerate_monomials(target: Bidegree, max_index: u32) -> Vec<(DualMonomial, u32, u32)> {
    let mut out = Vec::new();
    if target.p < 0 || target.q < 0 {
        return out;
    }
    let max_index = max_index.min(MAX_GENERATOR_INDEX);
    for b in 0..=(target.p as u32) {
        let q_max = target.q - b as i32;
        if q_max < 0 {
            break;
        }
        for a in 0..=(q_max as u32) {
            let p = target.p - b as i32;
            let q = target.q - (a + b) as i32;
            let tau_count = p - 2 * q;
            if !(0..=64).contains(&tau_count) {
                continue;
            }
            let mut acc = Vec::new();
            let mut e_indices = Vec::new();
            enumerate_tau_sets(
                Bidegree::new(p, q),
                tau_count as u32,
                0,
                max_index,
                &mut e_indices,
                &mut acc,
            );
            for m in acc {
                out.push((m, a, b));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn enumerate_tau_sets(
    remaining: Bidegree,
    tau_left: u32,
    min_index: u32,
    max_index: u32,
    chosen: &mut Vec<u32>,
    out: &mut Vec<DualMonomial>,
) {
    if remaining.p < 0 || remaining.q < 0 {
        return;
    }
    if tau_left == 0 {
        // the xi part must fill (remaining.p, remaining.q) with p = 2q
        if remaining.p != 2 * remaining.q {
            return;
        }
        let mut xi = XiExponents::new();
        enumerate_xi_parts(remaining.q as u64, max_index, &mut xi, chosen, out);
        return;
    }
    for i in min_index..=max_index {
        let d = tau_degree(i);
        if d.p > remaining.p {
            break;
        }
        chosen.push(i);
        enumerate_tau_sets(remaining - d, tau_left - 1, i + 1, max_index, chosen, out);
        chosen.pop();
    }
}

/// Fill `sum r_i * (2^i - 1) = weight` over `xi_1..xi_max`, highest index
/// first so the final `xi_1` exponent is forced.
fn enumerate_xi_parts(
    weight: u64,
    max_index: u32,
    xi: &mut XiExponents,
    tau: &[u32],
    out: &mut Vec<DualMonomial>,
) {
    fn go(weight: u64, index: u32, xi: &mut XiExponents, tau: &[u32], out: &mut Vec<DualMonomial>) {
        if index == 1 {
            // xi_1 has weight 1 per power
            set_xi(xi, 1, weight as u32);
            push_monomial(xi, tau, out);
            set_xi(xi, 1, 0);
            return;
        }
        let unit = (1u64 << index) - 1;
        let max_e = weight / unit;
        for e in 0..=max_e {
            set_xi(xi, index, e as u32);
            go(weight - e * unit, index - 1, xi, tau, out);
        }
        set_xi(xi, index, 0);
    }
    if max_index == 0 {
        if weight == 0 {
            push_monomial(xi, tau, out);
        }
        return;
    }
    go(weight, max_index, xi, tau, out);
}

fn set_xi(xi: &mut XiExponents, index: u32, e: u32) {
    if xi.len() < index as usize {
        xi.resize(index as usize, 0);
    }
    xi[(index - 1) as usize] = e;
}

fn push_monomial(xi: &XiExponents, tau: &[u32], out: &mut Vec<DualMonomial>) {
    let mut bits = 0u64;
    for &i in tau {
        bits |= 1 << i;
    }
    out.push(
        DualMonomial {
            tau: bits,
            xi: xi.clone(),
        }
        .normalized(),
    );
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn tau(i: u32) -> DualMonomial {
        DualMonomial::tau_gen(i).unwrap()
    }
    pub(crate) fn xi(i: u32, e: u32) -> DualMonomial {
        DualMonomial::xi_gen(i, e).unwrap()
    }

    #[test]
    fn generator_degrees() {
        assert_eq!(tau(1).degree(), Bidegree::new(3, 1));
        assert_eq!(xi(1, 2).degree(), Bidegree::new(4, 2));
        assert_eq!(DualMonomial::one().degree(), Bidegree::ZERO);
        // p - 2q counts the tau factors
        let m = DualMonomial::new(&[0, 2], &[3, 0, 1]).unwrap();
        let d = m.degree();
        assert_eq!(d.p - 2 * d.q, m.tau_count() as i32);
    }

    #[test]
    fn tau_square_rewrites() {
        // tau_0^2 = tau*xi_1 + rho*tau_1 + rho*tau_0*xi_1
        let sq = multiply_monomials(&tau(0), &tau(0)).unwrap();
        let mut expected = DualElement::zero();
        expected.add_term(xi(1, 1), HScalar::tau());
        expected.add_term(tau(1), HScalar::rho());
        expected.add_term(DualMonomial::new(&[0], &[1]).unwrap(), HScalar::rho());
        assert_eq!(sq, expected);
    }

    #[test]
    fn xi_part_is_polynomial() {
        let prod = multiply_monomials(&xi(1, 1), &xi(2, 1)).unwrap();
        let mut expected = DualElement::zero();
        expected.add_term(DualMonomial::new(&[], &[1, 1]).unwrap(), HScalar::one());
        assert_eq!(prod, expected);
    }

    #[test]
    fn cascading_rewrite_matches_brute_force() {
        // tau_0 tau_1 * tau_1 resolves every square, including the tau_0
        // collision created by the rho*tau_0*xi_2 branch.
        let m1 = DualMonomial::new(&[0, 1], &[]).unwrap();
        let prod = multiply_monomials(&m1, &tau(1)).unwrap();
        assert!(!prod.is_zero());
        assert_eq!(prod, brute_force_product(&m1, &tau(1)));
    }

    #[test]
    fn element_multiplication_is_bilinear() {
        // (tau * 1) * tau_0 = tau * tau_0
        let x = DualElement::scalar(HScalar::tau());
        let y = DualElement::from_monomial(tau(0));
        let prod = multiply_elements(&x, &y).unwrap();
        let mut expected = DualElement::zero();
        expected.add_term(tau(0), HScalar::tau());
        assert_eq!(prod, expected);
        // 0 * x = 0
        assert!(multiply_elements(&DualElement::zero(), &y)
            .unwrap()
            .is_zero());
        // (tau_0 + xi_1) * tau_0
        let mut s = DualElement::from_monomial(tau(0));
        s.add_term(xi(1, 1), HScalar::one());
        let prod = multiply_elements(&s, &y).unwrap();
        let mut expected = multiply_monomials(&tau(0), &tau(0)).unwrap();
        expected.add_term(DualMonomial::new(&[0], &[1]).unwrap(), HScalar::one());
        assert_eq!(prod, expected);
    }

    /// Reference rewriter: repeatedly replace the *highest*-index square to
    /// exercise a different strategy than the implementation.
    pub(crate) fn brute_force_product(m1: &DualMonomial, m2: &DualMonomial) -> DualElement {
        #[derive(Clone)]
        struct Raw {
            counts: Vec<u8>,
            xi: XiExponents,
            a: u32,
            b: u32,
        }
        let (counts, xi) = m1.counts(m2);
        let mut work = vec![Raw {
            counts: counts.to_vec(),
            xi,
            a: 0,
            b: 0,
        }];
        let mut out = DualElement::zero();
        while let Some(t) = work.pop() {
            match (0..64usize).rev().find(|&i| t.counts[i] >= 2) {
                None => {
                    let mut tau = 0u64;
                    for (i, &c) in t.counts.iter().enumerate() {
                        if c == 1 {
                            tau |= 1 << i;
                        }
                    }
                    out.add_term(
                        DualMonomial { tau, xi: t.xi }.normalized(),
                        HScalar::monomial(t.a, t.b),
                    );
                }
                Some(i) => {
                    let mut b1 = t.clone();
                    b1.counts[i] -= 2;
                    bump_xi(&mut b1.xi, i as u32 + 1);
                    b1.a += 1;
                    let mut b2 = t.clone();
                    b2.counts[i] -= 2;
                    b2.counts[i + 1] += 1;
                    b2.b += 1;
                    let mut b3 = t;
                    b3.counts[i] -= 2;
                    b3.counts[0] += 1;
                    bump_xi(&mut b3.xi, i as u32 + 1);
                    b3.b += 1;
                    work.extend([b1, b2, b3]);
                }
            }
        }
        out
    }

    #[test]
    fn enumerate_degree_one() {
        let list = enumerate_monomials(Bidegree::new(1, 0), 8);
        assert_eq!(list, vec![(tau(0), 0, 0)]);
        let unit = enumerate_monomials(Bidegree::ZERO, 8);
        assert_eq!(unit, vec![(DualMonomial::one(), 0, 0)]);
    }

    #[test]
    fn enumerate_degree_three_one() {
        // the brute-force oracle fixes the complete list
        let list = enumerate_monomials(Bidegree::new(3, 1), 8);
        let expected = vec![
            (DualMonomial::new(&[0], &[1]).unwrap(), 0, 0),
            (tau(1), 0, 0),
        ];
        assert_eq!(list, expected);
    }

    #[test]
    fn enumerate_matches_exhaustive_oracle() {
        // Oracle: scan all monomials built from low generators and all
        // coefficient exponents, keep those matching the degree equation.
        let target = Bidegree::new(8, 4);
        let max_index = 4;
        let fast: std::collections::BTreeSet<_> =
            enumerate_monomials(target, max_index).into_iter().collect();
        let mut slow = std::collections::BTreeSet::new();
        for tau_bits in 0u64..(1 << 5) {
            let idx: Vec<u32> = (0..5).filter(|&i| tau_bits & (1 << i) != 0).collect();
            for x1 in 0..=5u32 {
                for x2 in 0..=2u32 {
                    for x3 in 0..=1u32 {
                        let m = DualMonomial::new(&idx, &[x1, x2, x3]).unwrap();
                        let d = m.degree();
                        let (db, dq) = ((target.p - d.p) as i64, (target.q - d.q) as i64);
                        if db >= 0 && dq - db >= 0 {
                            let (b, a) = (db as u32, (dq - db) as u32);
                            if d + Bidegree::of_coefficient(a, b) == target {
                                slow.insert((m, a, b));
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(fast, slow);
        for (m, a, b) in &fast {
            assert_eq!(m.degree() + Bidegree::of_coefficient(*a, *b), target);
        }
    }

    #[test]
    fn index_overflow_is_an_error() {
        assert!(DualMonomial::tau_gen(64).is_err());
        let hi = DualMonomial::tau_gen(63).unwrap();
        assert!(matches!(
            multiply_monomials(&hi, &hi),
            Err(AlgebraError::IndexOverflow { .. })
        ));
    }
}
