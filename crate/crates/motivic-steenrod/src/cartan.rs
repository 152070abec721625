//! The admissible basis and conversion from the Milnor basis.
//!
//! Admissible words `Sq^{i_0} Sq^{i_1} ...` with `i_j >= 2 i_{j+1}` form a
//! second free basis. Conversion is exact linear algebra over F2 in one
//! bidegree slice at a time: every candidate `tau^a rho^b Sq^I` in the slice
//! is expanded into the Milnor basis by iterated products (there are no Adem
//! relations as axioms here; the product engine plays that role), and the
//! resulting square system is solved by Gaussian elimination. Freeness
//! guarantees a unique solution; anything else is reported as a solve
//! failure, i.e. an implementation bug.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::dual::fmt_element_impl;
use crate::engine::Algebra;
use crate::error::AlgebraError;
use crate::scalar::{Bidegree, HScalar};
use crate::steenrod::{sq, SteenrodElement};

/// An admissible word `(i_0, i_1, ...)`, `i_j >= 2 i_{j+1}`, entries positive.
/// The empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AdmissibleSequence(SmallVec<[u32; 8]>);

impl AdmissibleSequence {
    pub fn unit() -> Self {
        AdmissibleSequence::default()
    }

    pub fn new(entries: &[u32]) -> Option<Self> {
        let seq = AdmissibleSequence(entries.iter().copied().collect());
        seq.is_admissible().then_some(seq)
    }

    pub fn is_admissible(&self) -> bool {
        self.0.iter().all(|&i| i >= 1)
            && self.0.windows(2).all(|w| w[0] >= 2 * w[1])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `sum (i_j, floor(i_j / 2))`: `Sq^k` sits in bidegree `(k, k/2)`.
    pub fn degree(&self) -> Bidegree {
        self.0
            .iter()
            .fold(Bidegree::ZERO, |d, &i| d + sq_degree(i))
    }

    fn split_head(&self) -> Option<(u32, AdmissibleSequence)> {
        let (&head, tail) = self.0.split_first()?;
        Some((head, AdmissibleSequence(tail.iter().copied().collect())))
    }
}

/// Bidegree of `Sq^k`.
pub fn sq_degree(k: u32) -> Bidegree {
    Bidegree::new(k as i32, (k / 2) as i32)
}

impl fmt::Display for AdmissibleSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let words: Vec<String> = self.0.iter().map(|i| format!("Sq{i}")).collect();
        write!(f, "{}", words.join("*"))
    }
}

/// A finite `HScalar`-combination of admissible words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CartanElement {
    terms: BTreeMap<AdmissibleSequence, HScalar>,
}

impl CartanElement {
    pub fn zero() -> Self {
        CartanElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AdmissibleSequence, &HScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, seq: &AdmissibleSequence) -> HScalar {
        self.terms.get(seq).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, seq: AdmissibleSequence, h: HScalar) {
        if h.is_zero() {
            return;
        }
        match self.terms.entry(seq) {
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

    pub fn add(&self, other: &CartanElement) -> CartanElement {
        let mut out = self.clone();
        for (s, h) in other.terms() {
            out.add_term(s.clone(), h.clone());
        }
        out
    }
}

impl fmt::Display for CartanElement {
    fmt_element_impl!();
}

/// All `(I, a, b)` with `deg(Sq^I) + (b, a+b) = target`.
///
/// The head of an admissible word carries at least half the remaining
/// topological degree (the tail is dominated by `i/2 + i/4 + ...`), which
/// prunes the search to the point that degree-127 slices enumerate fast.
pub fn enumerate_admissible(target: Bidegree) -> Vec<(AdmissibleSequence, u32, u32)> {
    let mut out = Vec::new();
    if target.p < 0 || target.q < 0 {
        return out;
    }
    for b in 0..=(target.p as u32) {
        let q_max = target.q - b as i32;
        if q_max < 0 {
            break;
        }
        for a in 0..=(q_max as u32) {
            let p = target.p - b as i32;
            let q = target.q - (a + b) as i32;
            let mut current = SmallVec::new();
            gen_admissible(p, q, p, &mut current, &mut |seq| {
                out.push((AdmissibleSequence(seq.iter().copied().collect()), a, b));
            });
        }
    }
    out.sort();
    out.dedup();
    out
}

fn gen_admissible(
    p_rem: i32,
    q_rem: i32,
    cap: i32,
    current: &mut SmallVec<[u32; 8]>,
    emit: &mut impl FnMut(&[u32]),
) {
    if p_rem == 0 {
        if q_rem == 0 {
            emit(current);
        }
        return;
    }
    if p_rem < 0 || q_rem < 0 || 2 * q_rem > p_rem {
        return;
    }
    // the head covers at least half of what is left
    let lo = (p_rem + 1) / 2;
    for v in lo..=cap.min(p_rem) {
        let vq = v / 2;
        if vq > q_rem {
            break;
        }
        current.push(v as u32);
        gen_admissible(p_rem - v, q_rem - vq, v / 2, current, emit);
        current.pop();
    }
}

impl Algebra {
    /// Expand `Sq^{i_0} Sq^{i_1} ...` into the Milnor basis by iterated
    /// products, memoized on the (shared) tails.
    pub fn admissible_to_milnor(
        &self,
        seq: &AdmissibleSequence,
    ) -> Result<Arc<SteenrodElement>, AlgebraError> {
        if let Some(hit) = self.admissible_cache.read().unwrap().get(seq) {
            return Ok(Arc::clone(hit));
        }
        let value = match seq.split_head() {
            None => SteenrodElement::unit(),
            Some((head, tail)) => {
                let tail_elem = self.admissible_to_milnor(&tail)?;
                self.product(&sq(head)?, &tail_elem)?
            }
        };
        let fresh = Arc::new(value);
        Ok(self
            .admissible_cache
            .write()
            .unwrap()
            .entry(seq.clone())
            .or_insert(fresh)
            .clone())
    }

    /// Convert to the admissible basis, one bidegree slice at a time.
    pub fn milnor_to_cartan(&self, x: &SteenrodElement) -> Result<CartanElement, AlgebraError> {
        let mut out = CartanElement::zero();
        for (degree, component) in x.homogeneous_components() {
            out = out.add(&self.cartan_slice(degree, &component)?);
        }
        Ok(out)
    }

    fn cartan_slice(
        &self,
        degree: Bidegree,
        component: &SteenrodElement,
    ) -> Result<CartanElement, AlgebraError> {
        self.check_guard(degree)?;
        let solve_failure = |reason: String| AlgebraError::SolveFailure {
            p: degree.p,
            q: degree.q,
            reason,
        };

        // rows: the Milnor-side F2 basis of the slice
        let monomials = self.enumerate_monomials(degree);
        let row_of: HashMap<&crate::dual::DualMonomial, usize> = monomials
            .iter()
            .enumerate()
            .map(|(r, (m, _, _))| (m, r))
            .collect();
        let nrows = monomials.len();

        // columns: admissible candidates, lexicographically largest first
        let mut admissible = enumerate_admissible(degree);
        admissible.sort_by(|x, y| y.0.cmp(&x.0).then(y.1.cmp(&x.1)).then(y.2.cmp(&x.2)));
        let ncols = admissible.len();
        if nrows != ncols {
            return Err(solve_failure(format!(
                "basis size mismatch: {nrows} monomials vs {ncols} admissible words"
            )));
        }
        if nrows == 0 {
            if component.is_zero() {
                return Ok(CartanElement::zero());
            }
            return Err(solve_failure("nonzero element in an empty slice".into()));
        }

        // row-major augmented bit matrix over the columns
        let words = (ncols + 1).div_ceil(64);
        let mut rows = vec![vec![0u64; words]; nrows];
        for (c, (seq, _, _)) in admissible.iter().enumerate() {
            let expansion = self.admissible_to_milnor(seq)?;
            for (m, h) in expansion.terms() {
                debug_assert_eq!(h.term_count(), 1);
                let r = *row_of
                    .get(m.dual())
                    .ok_or_else(|| solve_failure(format!("monomial {m} outside the slice")))?;
                rows[r][c / 64] ^= 1 << (c % 64);
            }
        }
        for (m, h) in component.terms() {
            for (a, b) in h.terms() {
                debug_assert_eq!(m.degree() + Bidegree::of_coefficient(a, b), degree);
                let r = *row_of
                    .get(m.dual())
                    .ok_or_else(|| solve_failure(format!("input term {m} outside the slice")))?;
                rows[r][ncols / 64] ^= 1 << (ncols % 64);
            }
        }

        // Gaussian elimination, pivoting column by column in the fixed order;
        // the system is square of full rank, so column c pivots in row c
        for c in 0..ncols {
            let bit = |row: &Vec<u64>| row[c / 64] >> (c % 64) & 1 == 1;
            let Some(p) = (c..nrows).find(|&r| bit(&rows[r])) else {
                return Err(solve_failure(format!(
                    "no pivot for admissible word {}",
                    admissible[c].0
                )));
            };
            rows.swap(c, p);
            let pivot = rows[c].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != c && bit(row) {
                    for (w, pw) in row.iter_mut().zip(pivot.iter()) {
                        *w ^= pw;
                    }
                }
            }
        }
        // any leftover right-hand side is impossible at full rank; read the
        // solution off the pivot rows
        let mut out = CartanElement::zero();
        for (c, (seq, a, b)) in admissible.iter().enumerate() {
            if rows[c][ncols / 64] >> (ncols % 64) & 1 == 1 {
                out.add_term(seq.clone(), HScalar::monomial(*a, *b));
            }
        }
        Ok(out)
    }

    /// Number of admissible words with nonzero coefficient in the conversion.
    pub fn cartan_term_count(&self, x: &SteenrodElement) -> Result<usize, AlgebraError> {
        Ok(self.milnor_to_cartan(x)?.term_count())
    }

    /// Expand a Cartan element back into the Milnor basis.
    pub fn cartan_to_milnor(&self, x: &CartanElement) -> Result<SteenrodElement, AlgebraError> {
        let mut out = SteenrodElement::zero();
        for (seq, h) in x.terms() {
            out = out.add(&self.admissible_to_milnor(seq)?.scale(h));
        }
        Ok(out)
    }
}

/// Convenience wrapper used by tests and the CLI.
pub fn admissible_to_milnor_element(
    alg: &Algebra,
    seq: &AdmissibleSequence,
) -> Result<SteenrodElement, AlgebraError> {
    Ok((*alg.admissible_to_milnor(seq)?).clone())
}

#[allow(unused_imports)]
use crate::steenrod::q; // referenced by doc tests below
