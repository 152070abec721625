//! An independent model of Milnor's classical mod 2 Steenrod algebra.
//!
//! Used as a specialization oracle: setting `tau = 1, rho = 0` carries the
//! motivic algebra onto the classical one, with `dual(tau(E) xi(R))` going to
//! `Sq(r')` where `r'_i = 2 r_i + eps_{i-1}` (the dual classes map by
//! `tau_i -> xi_{i+1}`, `xi_i -> xi_i^2`). The product here is Milnor's
//! matrix-sum formula with multinomial coefficients mod 2, entirely
//! independent of the pairing engine it cross-checks.

use std::collections::BTreeSet;
use std::fmt;

use smallvec::SmallVec;

use crate::scalar::Subst;
use crate::steenrod::SteenrodElement;

/// Classical Milnor basis element `Sq(r_1, r_2, ...)`, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ClassicalMonomial(SmallVec<[u32; 8]>);

impl ClassicalMonomial {
    pub fn unit() -> Self {
        ClassicalMonomial::default()
    }

    pub fn new(r: &[u32]) -> Self {
        let mut v: SmallVec<[u32; 8]> = r.iter().copied().collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        ClassicalMonomial(v)
    }

    /// `Sq^k = Sq(k)`.
    pub fn sq(k: u32) -> Self {
        if k == 0 {
            ClassicalMonomial::unit()
        } else {
            ClassicalMonomial::new(&[k])
        }
    }

    /// The classical primitive `Q_n = Sq(0, ..., 0, 1)`, 1 in position `n+1`.
    pub fn q(n: u32) -> Self {
        let mut r = vec![0u32; (n + 1) as usize];
        r[n as usize] = 1;
        ClassicalMonomial::new(&r)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// `sum r_i (2^i - 1)`.
    pub fn degree(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &r)| r as u64 * ((1u64 << (i + 1)) - 1))
            .sum()
    }
}

impl fmt::Display for ClassicalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let rs: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        write!(f, "Sq({})", rs.join(","))
    }
}

/// A set of classical monomials (coefficients in F2).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClassicalElement {
    terms: BTreeSet<ClassicalMonomial>,
}

impl ClassicalElement {
    pub fn zero() -> Self {
        ClassicalElement::default()
    }

    pub fn unit() -> Self {
        ClassicalElement::from_monomial(ClassicalMonomial::unit())
    }

    pub fn from_monomial(m: ClassicalMonomial) -> Self {
        let mut x = ClassicalElement::zero();
        x.toggle(m);
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = &ClassicalMonomial> {
        self.terms.iter()
    }

    pub fn contains(&self, m: &ClassicalMonomial) -> bool {
        self.terms.contains(m)
    }

    pub fn toggle(&mut self, m: ClassicalMonomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add(&self, other: &ClassicalElement) -> ClassicalElement {
        let mut out = self.clone();
        for m in other.terms() {
            out.toggle(m.clone());
        }
        out
    }
}

impl fmt::Display for ClassicalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Milnor's product formula: sum over matrices `X = (x_ij)` with
/// `r_i = sum_j 2^j x_ij` and `s_j = sum_i x_ij`, contributing
/// `Sq(t)` with `t_k = sum_{i+j=k} x_ij` whenever every anti-diagonal
/// multinomial coefficient is odd (binary digits pairwise disjoint, by the
/// digit-dominance rule).
pub fn classical_product(x: &ClassicalElement, y: &ClassicalElement) -> ClassicalElement {
    let mut out = ClassicalElement::zero();
    for mx in x.terms() {
        for my in y.terms() {
            monomial_product(mx, my, &mut out);
        }
    }
    out
}

#[allow(clippy::needless_range_loop, clippy::too_many_arguments)]
fn monomial_product(x: &ClassicalMonomial, y: &ClassicalMonomial, out: &mut ClassicalElement) {
    let r = x.entries();
    let s = y.entries();
    let m = r.len();
    let n = s.len();
    // x_ij for i in 1..=m, j in 1..=n, chosen cell by cell; row and column
    // remainders give x_i0 and x_0j
    let mut cells = vec![vec![0u64; n + 1]; m + 1];
    fn recurse(
        i: usize,
        j: usize,
        r: &[u32],
        s: &[u32],
        row_rest: &mut Vec<u64>,
        col_used: &mut Vec<u64>,
        cells: &mut Vec<Vec<u64>>,
        out: &mut ClassicalElement,
    ) {
        let m = r.len();
        let n = s.len();
        if i > m {
            // fill remainders and test the multinomial parity
            for (idx, rest) in row_rest.iter().enumerate().skip(1) {
                cells[idx][0] = *rest;
            }
            let mut ok = true;
            for (j, &sj) in s.iter().enumerate() {
                let j = j + 1;
                if col_used[j] > sj as u64 {
                    ok = false;
                    break;
                }
                cells[0][j] = sj as u64 - col_used[j];
            }
            if !ok {
                return;
            }
            let kmax = m + n;
            let mut t = vec![0u64; kmax + 1];
            for k in 1..=kmax {
                // the anti-diagonal multinomial is odd exactly when the
                // entries' binary digits are pairwise disjoint
                let mut seen = 0u64;
                for i in 0..=k.min(m) {
                    let j = k - i;
                    if j > n {
                        continue;
                    }
                    let v = cells[i][j];
                    if seen & v != 0 {
                        return;
                    }
                    seen |= v;
                    t[k] += v;
                }
            }
            let t32: Vec<u32> = t[1..].iter().map(|&v| v as u32).collect();
            out.toggle(ClassicalMonomial::new(&t32));
            return;
        }
        if j > n {
            recurse(i + 1, 1, r, s, row_rest, col_used, cells, out);
            return;
        }
        let max_v = row_rest[i] >> j;
        for v in 0..=max_v {
            cells[i][j] = v;
            row_rest[i] -= v << j;
            col_used[j] += v;
            recurse(i, j + 1, r, s, row_rest, col_used, cells, out);
            row_rest[i] += v << j;
            col_used[j] -= v;
        }
        cells[i][j] = 0;
    }
    let mut row_rest: Vec<u64> = std::iter::once(0)
        .chain(r.iter().map(|&v| v as u64))
        .collect();
    let mut col_used = vec![0u64; n + 1];
    recurse(
        1,
        1,
        r,
        s,
        &mut row_rest,
        &mut col_used,
        &mut cells,
        out,
    );
}

/// Apply `tau -> 1, rho -> 0` and the basis map
/// `dual(tau(E) xi(R)) -> Sq(r')`, `r'_i = 2 r_i + eps_{i-1}`.
pub fn specialize_motivic(x: &SteenrodElement) -> ClassicalElement {
    let mut out = ClassicalElement::zero();
    for (m, h) in x.terms() {
        let survives = h.specialize(Subst::One, Subst::Zero);
        if survives.is_zero() {
            continue;
        }
        debug_assert!(survives.is_one());
        let dual = m.dual();
        let top_tau = dual.tau_indices().max();
        let len = dual
            .xi_exponents()
            .len()
            .max(top_tau.map_or(0, |t| t as usize + 1));
        let mut r = vec![0u32; len];
        for (i, slot) in r.iter_mut().enumerate() {
            let xi = dual.xi_exponents().get(i).copied().unwrap_or(0);
            let eps = dual.has_tau(i as u32) as u32;
            *slot = 2 * xi + eps;
        }
        out.toggle(ClassicalMonomial::new(&r));
    }
    out
}

/// Classical commutator `[x, y] = xy + yx`.
pub fn classical_commutator(x: &ClassicalElement, y: &ClassicalElement) -> ClassicalElement {
    classical_product(x, y).add(&classical_product(y, x))
}

/// All classical monomials of a given degree (coin fill over `2^i - 1`).
pub fn enumerate_classical_monomials(degree: u64, max_index: u32) -> Vec<ClassicalMonomial> {
    let mut out = Vec::new();
    let mut r = vec![0u32; max_index as usize];
    fn go(degree: u64, index: u32, r: &mut Vec<u32>, out: &mut Vec<ClassicalMonomial>) {
        if index == 1 {
            r[0] = degree as u32;
            out.push(ClassicalMonomial::new(r));
            r[0] = 0;
            return;
        }
        let unit = (1u64 << index) - 1;
        for e in 0..=(degree / unit) {
            r[(index - 1) as usize] = e as u32;
            go(degree - e * unit, index - 1, r, out);
        }
        r[(index - 1) as usize] = 0;
    }
    if max_index == 0 {
        if degree == 0 {
            out.push(ClassicalMonomial::unit());
        }
        return out;
    }
    go(degree, max_index, &mut r, &mut out);
    out.sort();
    out.dedup();
    out
}

/// All admissible words of total degree `degree` (no weight constraint).
pub fn enumerate_classical_admissible(degree: u64) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    fn go(p: u64, cap: u64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if p == 0 {
            out.push(cur.clone());
            return;
        }
        let lo = p.div_ceil(2);
        for v in lo..=cap.min(p) {
            cur.push(v as u32);
            go(p - v, v / 2, cur, out);
            cur.pop();
        }
    }
    go(degree, degree, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Expand an admissible word classically by iterated products.
pub fn classical_admissible_to_milnor(word: &[u32]) -> ClassicalElement {
    let mut acc = ClassicalElement::unit();
    for &k in word.iter().rev() {
        acc = classical_product(&ClassicalElement::from_monomial(ClassicalMonomial::sq(k)), &acc);
    }
    acc
}

/// Convert a classical element to the admissible basis by a dense F2 solve;
/// returns the admissible words with nonzero coefficient.
pub fn classical_to_admissible(x: &ClassicalElement) -> Result<Vec<Vec<u32>>, String> {
    let mut result = Vec::new();
    // split by degree
    let mut degrees: Vec<u64> = x.terms().map(|m| m.degree()).collect();
    degrees.sort();
    degrees.dedup();
    for d in degrees {
        let max_index = (0..).find(|&i| (1u64 << (i + 1)) - 1 > d).unwrap_or(60);
        let monomials = enumerate_classical_monomials(d, max_index);
        let words = enumerate_classical_admissible(d);
        if monomials.len() != words.len() {
            return Err(format!(
                "degree {d}: {} monomials vs {} admissible words",
                monomials.len(),
                words.len()
            ));
        }
        let n = words.len();
        let row_of = |m: &ClassicalMonomial| monomials.binary_search(m).ok();
        // dense augmented matrix
        let mut mat = vec![vec![false; n + 1]; n];
        for (c, w) in words.iter().enumerate() {
            for m in classical_admissible_to_milnor(w).terms() {
                let r = row_of(m).ok_or_else(|| format!("monomial {m} outside degree {d}"))?;
                mat[r][c] ^= true;
            }
        }
        for m in x.terms().filter(|m| m.degree() == d) {
            let r = row_of(m).ok_or_else(|| format!("monomial {m} outside degree {d}"))?;
            mat[r][n] ^= true;
        }
        // square and full rank, so column c pivots in row c
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| mat[r][c]) else {
                return Err(format!("degree {d}: singular admissible matrix"));
            };
            mat.swap(c, p);
            let pivot = mat[c].clone();
            for (r, row) in mat.iter_mut().enumerate() {
                if r != c && row[c] {
                    for (a, b) in row.iter_mut().zip(pivot.iter()) {
                        *a ^= b;
                    }
                }
            }
        }
        for (c, w) in words.iter().enumerate() {
            if mat[c][n] {
                result.push(w.clone());
            }
        }
    }
    result.sort();
    Ok(result)
}
