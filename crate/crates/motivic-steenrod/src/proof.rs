//! Quotients by monomial-style ideals and the collapsing-lemma machinery.
//!
//! The bracket formulas are proved by pushing coproducts through quotient
//! maps `A (x) A -> A/I_n (x) A/J_n` for ideal pairs whose generators are
//! basis monomials (and two indexed families). Reduction here is what the
//! proofs use: multiply, rewrite to canonical form, then drop every term
//! whose monomial is divisible by a generator, applied after *each*
//! multiplication step, which is what keeps the computation small.
//!
//! `lemma_decreasing_check` replays the collapsing lemmas: a product
//! `tau_{j_1} ... tau_{j_l}` (weakly decreasing indices, no triple repeats)
//! collapses modulo `J_n` to a single `tau` or `xi_n` multiple exactly when
//! the index sequence descends by ones with its last two entries equal. The
//! checker computes the product, classifies its shape, and compares with the
//! prediction.

use std::fmt;

use crate::coalgebra::{coproduct_factors, tensor_multiply, Caps, TensorElement};
use crate::dual::{multiply_elements, DualElement, DualMonomial};
use crate::error::AlgebraError;
use crate::scalar::HScalar;

/// A divisibility rule: one monomial, or an index-family of generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealRule {
    Monomial(DualMonomial),
    /// `xi_k` for all `k >= from`.
    XiFrom(u32),
    /// `tau_k` for all `k >= from`.
    TauFrom(u32),
    /// `tau_0 * xi_k` for all `k >= from`.
    Tau0XiFrom(u32),
}

/// An ideal presented by monomial generators; membership of a basis monomial
/// is pure divisibility against the expanded generator list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    rules: Vec<IdealRule>,
    max_index: u32,
    generators: Vec<DualMonomial>,
}

impl MonomialIdeal {
    /// Expand the rules up to `max_index`; every computation is degree
    /// bounded, so the finite expansion is exact in practice.
    pub fn new(rules: Vec<IdealRule>, max_index: u32) -> Result<Self, AlgebraError> {
        let mut generators = Vec::new();
        for rule in &rules {
            match rule {
                IdealRule::Monomial(m) => generators.push(m.clone()),
                IdealRule::XiFrom(from) => {
                    for k in *from..=max_index {
                        generators.push(DualMonomial::xi_gen(k, 1)?);
                    }
                }
                IdealRule::TauFrom(from) => {
                    for k in *from..=max_index {
                        generators.push(DualMonomial::tau_gen(k)?);
                    }
                }
                IdealRule::Tau0XiFrom(from) => {
                    for k in *from..=max_index {
                        let mut xi = vec![0u32; k as usize];
                        xi[(k - 1) as usize] = 1;
                        generators.push(DualMonomial::new(&[0], &xi)?);
                    }
                }
            }
        }
        Ok(MonomialIdeal {
            rules,
            max_index,
            generators,
        })
    }

    pub fn rules(&self) -> &[IdealRule] {
        &self.rules
    }

    pub fn generators(&self) -> &[DualMonomial] {
        &self.generators
    }

    pub fn max_index(&self) -> u32 {
        self.max_index
    }

    pub fn contains_monomial(&self, m: &DualMonomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }
}

/// `I_n` of the `Sq^{2^{n+1}} Q_n` computation:
/// `(xi_1^{2^n + 1}, xi_2, ..., tau_0 xi_1^{2^n}, tau_0 xi_2, ..., tau_1, ...)`.
pub fn section2_ideal_i(n: u32, max_index: u32) -> Result<MonomialIdeal, AlgebraError> {
    MonomialIdeal::new(
        vec![
            IdealRule::Monomial(DualMonomial::xi_gen(1, (1 << n) + 1)?),
            IdealRule::XiFrom(2),
            IdealRule::Monomial(DualMonomial::new(&[0], &[1 << n])?),
            IdealRule::Tau0XiFrom(2),
            IdealRule::TauFrom(1),
        ],
        max_index,
    )
}

/// `J_n` of the `Sq^{2^{n+1}} Q_n` computation:
/// `(xi_1, xi_2, ..., tau_0 tau_n, tau_{n+1}, ...)`.
///
/// For `n = 0` the middle generator is `tau_0^2`, which is not a basis
/// monomial; its canonical form only has monomials the other generators
/// already divide, so the rule is dropped exactly there.
pub fn section2_ideal_j(n: u32, max_index: u32) -> Result<MonomialIdeal, AlgebraError> {
    let mut rules = vec![IdealRule::XiFrom(1)];
    if n > 0 {
        rules.push(IdealRule::Monomial(DualMonomial::new(&[0, n], &[])?));
    }
    rules.push(IdealRule::TauFrom(n + 1));
    MonomialIdeal::new(rules, max_index)
}

/// `I_n` of the `Sq^{2^{n+1}} P^n` computation:
/// `(xi_1^{2^n + 1}, xi_2, ..., tau_1, tau_2, ...)`.
pub fn section3_ideal_i(n: u32, max_index: u32) -> Result<MonomialIdeal, AlgebraError> {
    MonomialIdeal::new(
        vec![
            IdealRule::Monomial(DualMonomial::xi_gen(1, (1 << n) + 1)?),
            IdealRule::XiFrom(2),
            IdealRule::TauFrom(1),
        ],
        max_index,
    )
}

/// `J_n` of the `Sq^{2^{n+1}} P^n` computation:
/// `(xi_1, ..., xi_{n-1}, xi_n^2, xi_{n+1}, ..., tau_0 xi_n, ..., tau_{n-1} xi_n, tau_n, ...)`.
pub fn section3_ideal_j(n: u32, max_index: u32) -> Result<MonomialIdeal, AlgebraError> {
    let mut rules = Vec::new();
    for k in 1..n {
        rules.push(IdealRule::Monomial(DualMonomial::xi_gen(k, 1)?));
    }
    rules.push(IdealRule::Monomial(DualMonomial::xi_gen(n, 2)?));
    rules.push(IdealRule::XiFrom(n + 1));
    for i in 0..n {
        let mut xi = vec![0u32; n as usize];
        xi[(n - 1) as usize] = 1;
        rules.push(IdealRule::Monomial(DualMonomial::new(&[i], &xi)?));
    }
    rules.push(IdealRule::TauFrom(n));
    MonomialIdeal::new(rules, max_index)
}

/// `I_n` of the `P^n Sq^{2^{n+1}}` computation (the mirrored pair).
pub fn lemma_qsq_ideal_i(n: u32, max_index: u32) -> Result<MonomialIdeal, AlgebraError> {
    let mut rules = Vec::new();
    for k in 1..n {
        rules.push(IdealRule::Monomial(DualMonomial::xi_gen(k, 1)?));
    }
    rules.push(IdealRule::Monomial(DualMonomial::xi_gen(n, 2)?));
    rules.push(IdealRule::XiFrom(n + 1));
    rules.push(IdealRule::TauFrom(n));
    MonomialIdeal::new(rules, max_index)
}

/// `J_n` of the `P^n Sq^{2^{n+1}}` computation.
pub fn lemma_qsq_ideal_j(n: u32, max_index: u32) -> Result<MonomialIdeal, AlgebraError> {
    MonomialIdeal::new(
        vec![
            IdealRule::Monomial(DualMonomial::xi_gen(1, (1 << n) + 1)?),
            IdealRule::XiFrom(2),
            IdealRule::TauFrom(1),
        ],
        max_index,
    )
}

/// Drop every term whose monomial is divisible by a generator. Inputs are
/// canonical, so rewriting has already happened by the time terms are seen.
pub fn reduce_mod_ideal(x: &DualElement, ideal: &MonomialIdeal) -> DualElement {
    let mut out = DualElement::zero();
    for (m, h) in x.terms() {
        if !ideal.contains_monomial(m) {
            out.add_term(m.clone(), h.clone());
        }
    }
    out
}

/// Factorwise reduction of a tensor: left modulo `I`, right modulo `J`.
pub fn reduce_tensor(t: &TensorElement, i: &MonomialIdeal, j: &MonomialIdeal) -> TensorElement {
    let mut out = TensorElement::zero();
    for ((l, r), h) in t.terms() {
        if !i.contains_monomial(l) && !j.contains_monomial(r) {
            out.add_term(l.clone(), r.clone(), h.clone());
        }
    }
    out
}

/// Coproduct with factorwise reduction after every multiplication step.
pub fn reduced_coproduct(
    m: &DualMonomial,
    ideal_i: &MonomialIdeal,
    ideal_j: &MonomialIdeal,
) -> Result<TensorElement, AlgebraError> {
    let factors = coproduct_factors(m, Caps::UNBOUNDED)?;
    let mut acc = TensorElement::one();
    for (f, _) in &factors {
        let f = reduce_tensor(f, ideal_i, ideal_j);
        acc = reduce_tensor(&tensor_multiply(&acc, &f)?, ideal_i, ideal_j);
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// Which collapsing lemma to replay.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaVariant {
    /// The `Q_n` computation: products collapse to `rho^{l-1} tau_{j_1+1}`.
    Section2,
    /// The `P^n` computation: additionally `tau rho^{l-2} xi_n` when
    /// `j_1 = n - 1`.
    Section3,
}

impl fmt::Display for LemmaVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LemmaVariant::Section2 => write!(f, "2"),
            LemmaVariant::Section3 => write!(f, "3"),
        }
    }
}

/// Shape of a reduced `tau`-product, the lemma's trichotomy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LemmaShape {
    /// A single term `coeff * tau_index`.
    SingleTau { index: u32, coeff: HScalar },
    /// A single term `coeff * xi_n`.
    XiMultiple { coeff: HScalar },
    /// Anything else: zero, or terms with several `tau` factors.
    Other,
}

impl fmt::Display for LemmaShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LemmaShape::SingleTau { index, coeff } => write!(f, "{coeff}*tau({index})"),
            LemmaShape::XiMultiple { coeff } => write!(f, "{coeff}*xi_n"),
            LemmaShape::Other => write!(f, "other"),
        }
    }
}

/// One replayed case of the collapsing lemma.
#[derive(Debug, Clone)]
pub struct LemmaCheck {
    pub js: Vec<u32>,
    pub n: u32,
    pub variant: LemmaVariant,
    pub computed: LemmaShape,
    pub predicted: LemmaShape,
    pub reduced: DualElement,
}

impl LemmaCheck {
    pub fn matches(&self) -> bool {
        self.computed == self.predicted
    }
}

/// Is the sequence decreasing in the lemma's sense: strict descent by ones
/// with the last two entries equal (for length 2, simply a repeated index)?
pub fn is_decreasing_sequence(js: &[u32]) -> bool {
    let l = js.len();
    if l < 2 {
        return false;
    }
    for (i, &j) in js.iter().enumerate().take(l - 1) {
        if j != js[0] - i as u32 {
            return false;
        }
    }
    js[l - 1] == js[l - 2]
}

/// Replay one lemma case: compute `tau_{j_1} ... tau_{j_l}` modulo the
/// variant's `J_n` (reducing after every multiplication), classify the shape,
/// and predict it from the decreasing-sequence criterion.
pub fn lemma_decreasing_check(
    js: &[u32],
    n: u32,
    variant: LemmaVariant,
    max_index: u32,
) -> Result<LemmaCheck, AlgebraError> {
    let l = js.len();
    if l < 2 {
        return Err(AlgebraError::HypothesisViolated {
            reason: format!("sequence length {l} < 2"),
        });
    }
    if js[0] >= n {
        return Err(AlgebraError::HypothesisViolated {
            reason: format!("need n > j_1, got n={n}, j_1={}", js[0]),
        });
    }
    if js.windows(2).any(|w| w[0] < w[1]) {
        return Err(AlgebraError::HypothesisViolated {
            reason: "sequence is not weakly decreasing".into(),
        });
    }
    if js.windows(3).any(|w| w[0] <= w[2]) {
        return Err(AlgebraError::HypothesisViolated {
            reason: "sequence repeats an index three times".into(),
        });
    }
    let ideal_j = match variant {
        LemmaVariant::Section2 => section2_ideal_j(n, max_index)?,
        LemmaVariant::Section3 => section3_ideal_j(n, max_index)?,
    };
    let mut acc = DualElement::from_monomial(DualMonomial::tau_gen(js[0])?);
    acc = reduce_mod_ideal(&acc, &ideal_j);
    for &j in &js[1..] {
        let factor = DualElement::from_monomial(DualMonomial::tau_gen(j)?);
        acc = reduce_mod_ideal(&multiply_elements(&acc, &factor)?, &ideal_j);
    }
    let computed = classify(&acc, n);
    let predicted = if is_decreasing_sequence(js) {
        let l = l as u32;
        if variant == LemmaVariant::Section3 && js[0] == n - 1 {
            LemmaShape::XiMultiple {
                coeff: HScalar::monomial(1, l - 2),
            }
        } else {
            LemmaShape::SingleTau {
                index: js[0] + 1,
                coeff: HScalar::monomial(0, l - 1),
            }
        }
    } else {
        LemmaShape::Other
    };
    Ok(LemmaCheck {
        js: js.to_vec(),
        n,
        variant,
        computed,
        predicted,
        reduced: acc,
    })
}

fn classify(x: &DualElement, n: u32) -> LemmaShape {
    if x.term_count() != 1 {
        return LemmaShape::Other;
    }
    let (m, h) = x.terms().next().expect("one term");
    if m.xi_exponents().is_empty() && m.tau_count() == 1 {
        let index = m.tau_indices().next().expect("one tau");
        return LemmaShape::SingleTau {
            index,
            coeff: h.clone(),
        };
    }
    let is_bare_xi_n = m.tau_count() == 0
        && m.xi_exponents().iter().enumerate().all(|(i, &e)| {
            if i as u32 + 1 == n {
                e == 1
            } else {
                e == 0
            }
        })
        && m.xi_exponent(n) == 1;
    if is_bare_xi_n {
        return LemmaShape::XiMultiple { coeff: h.clone() };
    }
    LemmaShape::Other
}

/// Every hypothesis-satisfying sequence with entries `< n` and the given
/// maximal length, in lexicographic order.
pub fn hypothesis_sequences(n: u32, max_len: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    fn go(n: u32, max_len: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() >= 2 {
            out.push(cur.clone());
        }
        if cur.len() == max_len {
            return;
        }
        let hi = match cur.len() {
            0 => n.checked_sub(1),
            1 => Some(cur[0]),
            _ => {
                // weakly decreasing, and two back must be strictly larger
                let bound = cur[cur.len() - 1];
                let strict = cur[cur.len() - 2];
                Some(bound.min(strict.saturating_sub(1)).min(bound))
            }
        };
        let Some(hi) = hi else { return };
        // descend so output is lexicographically sorted per length extension
        for j in (0..=hi).rev() {
            if cur.len() >= 2 && cur[cur.len() - 2] <= j {
                continue;
            }
            cur.push(j);
            go(n, max_len, cur, out);
            cur.pop();
        }
    }
    go(n, max_len, &mut cur, &mut out);
    out.sort();
    out
}

/// The expected evaluation table of `Sq^{2^{n+1}} Q_n` against the monomial
/// basis: `1` on `tau(a_{n+1})`, `rho^i` on `tau(b_{n,i}) xi_1^{2^{n-i}}`,
/// zero elsewhere.
pub fn expected_pairing_table(n: u32) -> Result<Vec<(DualMonomial, HScalar)>, AlgebraError> {
    let mut out = vec![(DualMonomial::tau_gen(n + 1)?, HScalar::one())];
    for i in 0..=n {
        let e: Vec<u32> = (n - i..=n).collect();
        let m = DualMonomial::new(&e, &[1 << (n - i)])?;
        out.push((m, HScalar::monomial(0, i)));
    }
    Ok(out)
}
