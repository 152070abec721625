//! The Hopf algebroid structure on the dual algebra.
//!
//! The coproduct lands in the twisted tensor product: the left factor carries
//! the right `H`-module structure, so a scalar produced by rewriting inside
//! the right factor crosses to the left through `eta_R(tau) = tau + rho*tau_0`.
//! Normal form keeps every scalar on the left factor (acting there through
//! `eta_L`, i.e. plain multiplication) and pure monomials on the right; the
//! evaluation pairing of a normalized term `h*(A (x) B)` against a pair of
//! Milnor monomials is then just `h` times two basis-equality checks.
//!
//! Generator coproducts:
//!
//! ```text
//! Delta xi_k  = sum_{i=0}^{k} xi_{k-i}^{2^i} (x) xi_i            (xi_0 = 1)
//! Delta tau_k = tau_k (x) 1 + sum_{i=0}^{k} xi_{k-i}^{2^i} (x) tau_i
//! ```

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::dual::{
    multiply_elements, multiply_monomials, DualElement, DualMonomial, XiExponents,
};
use crate::error::AlgebraError;
use crate::scalar::{Bidegree, HScalar};
use crate::steenrod::MilnorMonomial;

/// Degree caps for pruned expansion, componentwise on monomial degrees.
///
/// Monomial degrees only grow during expansion (multiplying in further
/// factors adds nonnegative degrees, and every rewrite replaces a square by
/// monomials of equal or larger degree, the difference moving into the
/// coefficient), so discarding a partial product that exceeds a cap is sound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub left: Bidegree,
    pub right: Bidegree,
}

impl Caps {
    pub const UNBOUNDED: Caps = Caps {
        left: Bidegree {
            p: i32::MAX,
            q: i32::MAX,
        },
        right: Bidegree {
            p: i32::MAX,
            q: i32::MAX,
        },
    };

    pub fn new(left: Bidegree, right: Bidegree) -> Self {
        Caps { left, right }
    }

    fn is_unbounded(&self) -> bool {
        *self == Caps::UNBOUNDED
    }
}

/// A generator of the dual algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualGenerator {
    Tau(u32),
    /// `Xi(k)`, `k >= 1`.
    Xi(u32),
}

/// Normalized element of the twisted tensor product.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorElement {
    terms: BTreeMap<(DualMonomial, DualMonomial), HScalar>,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement::default()
    }

    /// `1 (x) 1`.
    pub fn one() -> Self {
        let mut t = TensorElement::zero();
        t.add_term(DualMonomial::one(), DualMonomial::one(), HScalar::one());
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(DualMonomial, DualMonomial), &HScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, left: &DualMonomial, right: &DualMonomial) -> HScalar {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn add_term(&mut self, left: DualMonomial, right: DualMonomial, h: HScalar) {
        if h.is_zero() {
            return;
        }
        match self.terms.entry((left, right)) {
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

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for ((l, r), h) in other.terms() {
            out.add_term(l.clone(), r.clone(), h.clone());
        }
        out
    }

    pub fn scale(&self, h: &HScalar) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((l, r), c) in self.terms() {
            out.add_term(l.clone(), r.clone(), c.mul(h));
        }
        out
    }

    /// Drop terms whose factors exceed the caps.
    pub fn pruned(&self, caps: Caps) -> TensorElement {
        if caps.is_unbounded() {
            return self.clone();
        }
        let mut out = TensorElement::zero();
        for ((l, r), h) in self.terms() {
            if l.degree().fits_within(caps.left) && r.degree().fits_within(caps.right) {
                out.add_term(l.clone(), r.clone(), h.clone());
            }
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, ((l, r), h)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if h.is_one() {
                write!(f, "({l}|{r})")?;
            } else if h.term_count() > 1 {
                write!(f, "({h})*({l}|{r})")?;
            } else {
                write!(f, "{h}*({l}|{r})")?;
            }
        }
        Ok(())
    }
}

/// `eta_R` on coefficients: `tau -> tau + rho*tau_0`, `rho -> rho`.
pub fn eta_r(h: &HScalar) -> Result<DualElement, AlgebraError> {
    let mut image = DualElement::zero();
    let tau_image = {
        let mut x = DualElement::scalar(HScalar::tau());
        x.add_term(DualMonomial::tau_gen(0)?, HScalar::rho());
        x
    };
    for (a, b) in h.terms() {
        let mut term = DualElement::scalar(HScalar::monomial(0, b));
        for _ in 0..a {
            term = multiply_elements(&term, &tau_image)?;
        }
        image = image.add(&term);
    }
    Ok(image)
}

/// Coefficient of the empty monomial; kills every `tau_i` and `xi_i`.
pub fn counit(x: &DualElement) -> HScalar {
    x.coefficient(&DualMonomial::one())
}

/// Coproduct of a single generator.
pub fn generator_coproduct(g: DualGenerator) -> Result<TensorElement, AlgebraError> {
    match g {
        DualGenerator::Tau(k) => {
            let mut t = TensorElement::zero();
            t.add_term(DualMonomial::tau_gen(k)?, DualMonomial::one(), HScalar::one());
            for i in 0..=k {
                t.add_term(
                    xi_power(k - i, 1u64 << i)?,
                    DualMonomial::tau_gen(i)?,
                    HScalar::one(),
                );
            }
            Ok(t)
        }
        DualGenerator::Xi(k) => {
            assert!(k >= 1, "xi indices start at 1");
            let mut t = TensorElement::zero();
            for i in 0..=k {
                t.add_term(
                    xi_power(k - i, 1u64 << i)?,
                    xi_power(i, 1)?,
                    HScalar::one(),
                );
            }
            Ok(t)
        }
    }
}

/// `xi_k^e` with `xi_0 = 1`; checked exponent arithmetic.
fn xi_power(k: u32, e: u64) -> Result<DualMonomial, AlgebraError> {
    if k == 0 {
        return Ok(DualMonomial::one());
    }
    let e32 = u32::try_from(e).map_err(|_| AlgebraError::IndexOverflow {
        index: u32::MAX,
        max: u32::MAX,
    })?;
    DualMonomial::xi_gen(k, e32)
}

/// Componentwise product in the twisted tensor product. Scalars created by
/// rewriting inside the right factor cross to the left through `eta_R`, after
/// which the left factor is re-canonicalized (new `tau_0` squares included).
pub fn tensor_multiply(
    s: &TensorElement,
    t: &TensorElement,
) -> Result<TensorElement, AlgebraError> {
    tensor_multiply_capped(s, t, Caps::UNBOUNDED)
}

/// [`tensor_multiply`] discarding any term whose factors exceed the caps.
pub fn tensor_multiply_capped(
    s: &TensorElement,
    t: &TensorElement,
    caps: Caps,
) -> Result<TensorElement, AlgebraError> {
    let bounded = !caps.is_unbounded();
    let mut out = TensorElement::zero();
    for ((l1, r1), h1) in s.terms() {
        let (dl1, dr1) = (l1.degree(), r1.degree());
        for ((l2, r2), h2) in t.terms() {
            if bounded
                && (!(dl1 + l2.degree()).fits_within(caps.left)
                    || !(dr1 + r2.degree()).fits_within(caps.right))
            {
                continue;
            }
            let h = h1.mul(h2);
            let left = multiply_monomials(l1, l2)?;
            let right = multiply_monomials(r1, r2)?;
            for (d, g) in right.terms() {
                if bounded && !d.degree().fits_within(caps.right) {
                    continue;
                }
                // move the coefficient of the right factor across the tensor;
                // tau-free scalars cross unchanged
                if g.terms().all(|(a, _)| a == 0) {
                    let hg = h.mul(g);
                    for (c, f) in left.terms() {
                        if bounded && !c.degree().fits_within(caps.left) {
                            continue;
                        }
                        out.add_term(c.clone(), d.clone(), f.mul(&hg));
                    }
                } else {
                    let full_left = multiply_elements(&left, &eta_r(g)?)?;
                    for (c, f) in full_left.terms() {
                        if bounded && !c.degree().fits_within(caps.left) {
                            continue;
                        }
                        out.add_term(c.clone(), d.clone(), f.mul(&h));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Keep only terms whose left factor satisfies the predicate.
pub(crate) fn filter_left(t: &TensorElement, keep: impl Fn(&DualMonomial) -> bool) -> TensorElement {
    let mut out = TensorElement::zero();
    for ((l, r), h) in t.terms() {
        if keep(l) {
            out.add_term(l.clone(), r.clone(), h.clone());
        }
    }
    out
}

/// [`tensor_multiply`] keeping only product terms whose left factor satisfies
/// the predicate. Sound as a pruning device whenever the predicate is
/// hereditary: once a left factor fails it, every descendant fails it.
pub(crate) fn tensor_multiply_filtered(
    s: &TensorElement,
    t: &TensorElement,
    keep: impl Fn(&DualMonomial) -> bool,
) -> Result<TensorElement, AlgebraError> {
    let mut out = TensorElement::zero();
    for ((l1, r1), h1) in s.terms() {
        for ((l2, r2), h2) in t.terms() {
            let h = h1.mul(h2);
            let left = multiply_monomials(l1, l2)?;
            let right = multiply_monomials(r1, r2)?;
            for (d, g) in right.terms() {
                if g.terms().all(|(a, _)| a == 0) {
                    let hg = h.mul(g);
                    for (c, f) in left.terms() {
                        if keep(c) {
                            out.add_term(c.clone(), d.clone(), f.mul(&hg));
                        }
                    }
                } else {
                    let full_left = multiply_elements(&left, &eta_r(g)?)?;
                    for (c, f) in full_left.terms() {
                        if keep(c) {
                            out.add_term(c.clone(), d.clone(), f.mul(&h));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Per-generator coproduct factors of a monomial, increasing index within
/// each family, paired with the factor's total degree.
pub(crate) fn coproduct_factors(
    m: &DualMonomial,
    caps: Caps,
) -> Result<Vec<(TensorElement, Bidegree)>, AlgebraError> {
    let mut factors = Vec::new();
    for i in m.tau_indices() {
        factors.push((
            generator_coproduct(DualGenerator::Tau(i))?.pruned(caps),
            crate::dual::tau_degree(i),
        ));
    }
    for (idx, &e) in m.xi_exponents().iter().enumerate() {
        if e > 0 {
            let g = crate::dual::xi_degree(idx as u32 + 1);
            factors.push((
                xi_power_coproduct(idx as u32 + 1, e, caps)?,
                Bidegree::new(g.p * e as i32, g.q * e as i32),
            ));
        }
    }
    Ok(factors)
}

/// Coproduct of `xi_k^e` in one shot.
///
/// Expanding `(sum_i xi_{k-i}^{2^i} (x) xi_i)^e` multinomially, a term
/// survives mod 2 precisely when the multiplicities partition the binary
/// digits of `e`; these are enumerated directly by assigning each set bit of
/// `e` to one of the `k + 1` summands, which keeps `Delta(xi_1^63)` at 64
/// terms instead of a 2^63-term expansion.
pub(crate) fn xi_power_coproduct(
    k: u32,
    e: u32,
    caps: Caps,
) -> Result<TensorElement, AlgebraError> {
    assert!(k >= 1);
    let mut out = TensorElement::zero();
    let bits: Vec<u32> = (0..32).filter(|&b| e & (1 << b) != 0).collect();
    let slots = (k + 1) as usize;
    // multiplicity per summand, accumulated as the bits are assigned
    let mut mult = vec![0u64; slots];
    fn assign(
        bits: &[u32],
        pos: usize,
        k: u32,
        mult: &mut Vec<u64>,
        caps: Caps,
        out: &mut TensorElement,
    ) -> Result<(), AlgebraError> {
        if pos == bits.len() {
            // left: prod_{i<k} xi_{k-i}^{2^i * mult[i]}, right: prod_{i>=1} xi_i^{mult[i]}
            let mut left = XiExponents::new();
            let mut right = XiExponents::new();
            for (i, &m) in mult.iter().enumerate() {
                if m == 0 {
                    continue;
                }
                let i = i as u32;
                if i < k {
                    let exp = m
                        .checked_shl(i)
                        .and_then(|v| u32::try_from(v).ok())
                        .ok_or(AlgebraError::IndexOverflow {
                            index: u32::MAX,
                            max: u32::MAX,
                        })?;
                    bump(&mut left, k - i, exp);
                }
                if i >= 1 {
                    bump(&mut right, i, u32::try_from(m).unwrap());
                }
            }
            let l = DualMonomial::from_parts(0, left);
            let r = DualMonomial::from_parts(0, right);
            if l.degree().fits_within(caps.left) && r.degree().fits_within(caps.right) {
                out.add_term(l, r, HScalar::one());
            }
            return Ok(());
        }
        for slot in 0..mult.len() {
            mult[slot] += 1u64 << bits[pos];
            assign(bits, pos + 1, k, mult, caps, out)?;
            mult[slot] -= 1u64 << bits[pos];
        }
        Ok(())
    }
    fn bump(xi: &mut XiExponents, index: u32, e: u32) {
        if xi.len() < index as usize {
            xi.resize(index as usize, 0);
        }
        xi[(index - 1) as usize] += e;
    }
    if e == 0 {
        return Ok(TensorElement::one());
    }
    assign(&bits, 0, k, &mut mult, caps, &mut out)?;
    Ok(out)
}

/// Coproduct of a monomial, restricted to terms within the caps. Generators
/// are processed in increasing index; the intermediate is additionally cut by
/// the degree the remaining factors must still contribute.
pub fn expand_coproduct(m: &DualMonomial, caps: Caps) -> Result<TensorElement, AlgebraError> {
    let factors = coproduct_factors(m, caps)?;
    let mut acc = TensorElement::one();
    if caps.is_unbounded() {
        for (f, _) in &factors {
            acc = tensor_multiply(&acc, f)?;
        }
        return Ok(acc);
    }
    // degree the remaining factors are still going to add, at minimum
    let mut suffix = vec![Bidegree::ZERO; factors.len() + 1];
    for i in (0..factors.len()).rev() {
        suffix[i] = suffix[i + 1] + factors[i].1;
    }
    let budget = Bidegree::new(
        caps.left.p.saturating_add(caps.right.p),
        caps.left.q.saturating_add(caps.right.q),
    );
    for (i, (f, _)) in factors.iter().enumerate() {
        acc = tensor_multiply_capped(&acc, f, caps)?;
        let rem = suffix[i + 1];
        if budget.p < i32::MAX {
            let mut cut = TensorElement::zero();
            for ((l, r), h) in acc.terms() {
                let d = l.degree() + r.degree() + rem;
                if d.p <= budget.p && d.q <= budget.q {
                    cut.add_term(l.clone(), r.clone(), h.clone());
                }
            }
            acc = cut;
        }
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// Pointwise divisibility of the `xi` parts. Exponents of the `xi`'s never
/// decrease under multiplication or rewriting, so a partial factor violating
/// this can never close on the target monomial.
fn xi_part_divides(x: &DualMonomial, target: &DualMonomial) -> bool {
    let (xs, ts) = (x.xi_exponents(), target.xi_exponents());
    xs.len() <= ts.len() && xs.iter().zip(ts).all(|(a, b)| a <= b)
}

/// Expansion specialised to pairing against one basis pair: the left factor
/// must end at exactly `left_target`, the right at exactly `right_target`,
/// and the accumulated coefficient at exactly `coeff_budget`.
///
/// Three prunes on top of the degree caps:
/// - `xi` exponents only grow, so each side's `xi` part must divide its
///   target's throughout;
/// - each term satisfies `deg L + deg R - deg h = processed factor degrees`,
///   and coefficients only accumulate, so a coefficient past the budget is
///   fatal;
/// - either side can gain at most the remaining factor degrees plus the
///   remaining coefficient budget, so a side that cannot close its gap is
///   dropped.
///
/// Factors multiply largest degree first to keep intermediates small.
pub(crate) fn expand_exact(
    m: &DualMonomial,
    left_target: &DualMonomial,
    right_target: &DualMonomial,
    coeff_budget: Bidegree,
) -> Result<TensorElement, AlgebraError> {
    let (lt, rt) = (left_target.degree(), right_target.degree());
    let caps = Caps::new(lt, rt);
    let mut factors = coproduct_factors(m, caps)?;
    factors.sort_by_key(|f| (-(f.1.p as i64), -(f.1.q as i64)));
    let mut suffix = vec![Bidegree::ZERO; factors.len() + 1];
    for i in (0..factors.len()).rev() {
        suffix[i] = suffix[i + 1] + factors[i].1;
    }
    let fits = |d: Bidegree, cap: Bidegree| d.p <= cap.p && d.q <= cap.q;
    let mut acc = TensorElement::one();
    let mut prefix = Bidegree::ZERO;
    for (i, (f, fd)) in factors.iter().enumerate() {
        acc = tensor_multiply_capped(&acc, f, caps)?;
        prefix = prefix + *fd;
        let rem = suffix[i + 1];
        let mut cut = TensorElement::zero();
        for ((l, r), h) in acc.terms() {
            if !xi_part_divides(l, left_target) || !xi_part_divides(r, right_target) {
                continue;
            }
            let (dl, dr) = (l.degree(), r.degree());
            // coefficient degree is forced by stored-degree conservation
            let hd = dl + dr - prefix;
            if !fits(hd, coeff_budget) {
                continue;
            }
            let slack = coeff_budget - hd;
            let reach = rem + slack;
            if dl.p + reach.p < lt.p
                || dl.q + reach.q < lt.q
                || dr.p + reach.p < rt.p
                || dr.q + reach.q < rt.q
            {
                continue;
            }
            cut.add_term(l.clone(), r.clone(), h.clone());
        }
        acc = cut;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// Extend the coproduct linearly: the coefficient rides on the left factor.
pub fn coproduct_element(x: &DualElement) -> Result<TensorElement, AlgebraError> {
    let mut out = TensorElement::zero();
    for (m, h) in x.terms() {
        out = out.add(&expand_coproduct(m, Caps::UNBOUNDED)?.scale(h));
    }
    Ok(out)
}

/// The Milnor-duality pairing: `< sum h_M * M, dual(N) > = h_N`.
pub fn pair(x: &DualElement, theta: &MilnorMonomial) -> HScalar {
    x.coefficient(theta.dual())
}

/// Pairing of a normalized tensor against `theta_1 (x) theta_2`: the
/// coefficient of `(dual theta_1 | dual theta_2)`.
pub fn pair_tensor(
    t: &TensorElement,
    theta1: &MilnorMonomial,
    theta2: &MilnorMonomial,
) -> HScalar {
    t.coefficient(theta1.dual(), theta2.dual())
}

/// Collapse the left factor with the counit: terms `h*(1 (x) B) -> h*B`.
pub fn counit_collapse_left(t: &TensorElement) -> DualElement {
    let mut out = DualElement::zero();
    for ((l, r), h) in t.terms() {
        if l.is_one() {
            out.add_term(r.clone(), h.clone());
        }
    }
    out
}

/// Collapse the right factor with the counit: terms `h*(A (x) 1) -> h*A`.
pub fn counit_collapse_right(t: &TensorElement) -> DualElement {
    let mut out = DualElement::zero();
    for ((l, r), h) in t.terms() {
        if r.is_one() {
            out.add_term(l.clone(), h.clone());
        }
    }
    out
}
