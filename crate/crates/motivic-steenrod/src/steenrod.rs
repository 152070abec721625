//! Milnor-basis arithmetic in the motivic Steenrod algebra.
//!
//! The Milnor basis element dual to `tau(E) xi(R)` is written `Q(E) P^R`;
//! in particular `Q_i` is dual to `tau_i`, `P^R` dual to `xi(R)`, and
//! `P^(n) = Sq^{2n}`. The odd squares are fixed by `Sq^{2i+1} = Q(0) P^(i)`,
//! the unique Milnor monomial in bidegree `(2i+1, i)`; the relation
//! `Sq^1 Sq^{2i} = Sq^{2i+1}` is then a computed fact, not an axiom.
//!
//! Products are computed by the pairing engine in [`crate::engine`]; this
//! module owns the element type, the named constructors and the builders for
//! both sides of every identity the crate can verify.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::dual::{fmt_element_impl, DualMonomial};
use crate::engine::Algebra;
use crate::error::AlgebraError;
use crate::scalar::{Bidegree, HScalar, Subst};

/// A Milnor basis element `dual(tau(E) xi(R))`; same shape as the dual
/// monomial it is dual to, and the same bidegree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MilnorMonomial(DualMonomial);

impl MilnorMonomial {
    pub fn one() -> Self {
        MilnorMonomial(DualMonomial::one())
    }

    pub fn new(tau_indices: &[u32], xi_exponents: &[u32]) -> Result<Self, AlgebraError> {
        Ok(MilnorMonomial(DualMonomial::new(tau_indices, xi_exponents)?))
    }

    pub fn from_dual(m: DualMonomial) -> Self {
        MilnorMonomial(m)
    }

    /// The dual-algebra monomial this element is dual to.
    pub fn dual(&self) -> &DualMonomial {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn degree(&self) -> Bidegree {
        self.0.degree()
    }

    pub fn term_count(&self) -> usize {
        1
    }
}

impl fmt::Display for MilnorMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_one() {
            return write!(f, "1");
        }
        let taus: Vec<String> = self.0.tau_indices().map(|i| i.to_string()).collect();
        let mut parts = Vec::new();
        if !taus.is_empty() {
            parts.push(format!("Q({})", taus.join(",")));
        }
        if !self.0.xi_exponents().is_empty() {
            let xs: Vec<String> = self
                .0
                .xi_exponents()
                .iter()
                .map(|e| e.to_string())
                .collect();
            parts.push(format!("P({})", xs.join(",")));
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// A finite `HScalar`-combination of Milnor basis elements. A coefficient
/// `tau^a rho^b` contributes `+(b, a+b)` to the bidegree of its term.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SteenrodElement {
    terms: BTreeMap<MilnorMonomial, HScalar>,
}

impl SteenrodElement {
    pub fn zero() -> Self {
        SteenrodElement::default()
    }

    pub fn unit() -> Self {
        SteenrodElement::from_monomial(MilnorMonomial::one())
    }

    pub fn from_monomial(m: MilnorMonomial) -> Self {
        let mut x = SteenrodElement::zero();
        x.add_term(m, HScalar::one());
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MilnorMonomial, &HScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &MilnorMonomial) -> HScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: MilnorMonomial, h: HScalar) {
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

    pub fn add(&self, other: &SteenrodElement) -> SteenrodElement {
        let mut out = self.clone();
        for (m, h) in other.terms() {
            out.add_term(m.clone(), h.clone());
        }
        out
    }

    pub fn scale(&self, h: &HScalar) -> SteenrodElement {
        let mut out = SteenrodElement::zero();
        for (m, c) in self.terms() {
            out.add_term(m.clone(), c.mul(h));
        }
        out
    }

    /// Bidegree of a homogeneous nonzero element, `None` otherwise.
    pub fn homogeneous_degree(&self) -> Option<Bidegree> {
        let mut degree = None;
        for (m, h) in self.terms() {
            let hd = h.homogeneous_degree()?;
            let d = m.degree() + hd;
            match degree {
                None => degree = Some(d),
                Some(prev) if prev == d => {}
                Some(_) => return None,
            }
        }
        degree
    }

    /// Split into homogeneous components, keyed by term bidegree.
    pub fn homogeneous_components(&self) -> BTreeMap<Bidegree, SteenrodElement> {
        let mut comps: BTreeMap<Bidegree, SteenrodElement> = BTreeMap::new();
        for (m, h) in self.terms() {
            let md = m.degree();
            for (a, b) in h.terms() {
                let d = md + Bidegree::of_coefficient(a, b);
                comps
                    .entry(d)
                    .or_default()
                    .add_term(m.clone(), HScalar::monomial(a, b));
            }
        }
        comps
    }

    /// Substitute `tau` and `rho` in every coefficient, dropping what dies.
    pub fn specialize(&self, tau_to: Subst, rho_to: Subst) -> SteenrodElement {
        let mut out = SteenrodElement::zero();
        for (m, h) in self.terms() {
            out.add_term(m.clone(), h.specialize(tau_to, rho_to));
        }
        out
    }
}

impl fmt::Display for SteenrodElement {
    fmt_element_impl!();
}

/// `Q_i`, the dual of `tau_i`.
pub fn q(i: u32) -> Result<SteenrodElement, AlgebraError> {
    q_e(&[i])
}

/// `Q(E)`, the dual of `tau(E)`.
pub fn q_e(indices: &[u32]) -> Result<SteenrodElement, AlgebraError> {
    Ok(SteenrodElement::from_monomial(MilnorMonomial::new(
        indices,
        &[],
    )?))
}

/// `P^R`, the dual of `xi(R)`.
pub fn p_r(exponents: &[u32]) -> Result<SteenrodElement, AlgebraError> {
    Ok(SteenrodElement::from_monomial(MilnorMonomial::new(
        &[],
        exponents,
    )?))
}

/// `P^n = P^(a_n)`, the dual of `xi_n` (`n >= 1`).
pub fn p_n(n: u32) -> Result<SteenrodElement, AlgebraError> {
    assert!(n >= 1, "P^n is defined for n >= 1");
    let mut r = vec![0u32; n as usize];
    r[(n - 1) as usize] = 1;
    p_r(&r)
}

/// The single basis element `Q(E) P^R = dual(tau(E) xi(R))`.
pub fn milnor_basis(tau_indices: &[u32], xi_exponents: &[u32]) -> Result<SteenrodElement, AlgebraError> {
    Ok(SteenrodElement::from_monomial(MilnorMonomial::new(
        tau_indices,
        xi_exponents,
    )?))
}

/// The motivic Steenrod square `Sq^k`.
///
/// `Sq^{2n} = P^(n)`; `Sq^{2i+1}` is defined as `Q(0) P^(i)`, the unique
/// Milnor monomial in bidegree `(2i+1, i)`.
pub fn sq(k: u32) -> Result<SteenrodElement, AlgebraError> {
    if k == 0 {
        return Ok(SteenrodElement::unit());
    }
    if k.is_multiple_of(2) {
        p_r(&[k / 2])
    } else {
        milnor_basis(&[0], &[(k - 1) / 2])
    }
}

/// `b_{n,k}`: indices `n-k ..= n` (the sequence with 1's in those positions).
pub fn b_indices(n: u32, k: u32) -> Vec<u32> {
    assert!(k <= n);
    (n - k..=n).collect()
}

/// `a_k`: the single index `k`.
pub fn a_indices(k: u32) -> Vec<u32> {
    vec![k]
}

/// `rho^k * Q(E) * P^(e)` as a single closed-form basis term; the `Q(E) Sq`
/// shape every summand of the identities reduces to.
fn closed_term(rho_power: u32, tau_power: u32, e_set: &[u32], xi1: u32) -> Result<SteenrodElement, AlgebraError> {
    let xi = if xi1 == 0 { vec![] } else { vec![xi1] };
    Ok(milnor_basis(e_set, &xi)?.scale(&HScalar::monomial(tau_power, rho_power)))
}

/// Like [`closed_term`] with an extra `Q_0` factor: zero when `0` is already
/// in the index set (`Q_0^2 = 0`), otherwise the index set gains `0`.
fn closed_term_q0(
    rho_power: u32,
    tau_power: u32,
    e_set: &[u32],
    xi1: u32,
) -> Result<SteenrodElement, AlgebraError> {
    if e_set.contains(&0) {
        return Ok(SteenrodElement::zero());
    }
    let mut with0 = vec![0];
    with0.extend_from_slice(e_set);
    closed_term(rho_power, tau_power, &with0, xi1)
}

/// The identities this crate can verify mechanically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `Sq^{2^{n+1}} Q_n = Q_{n+1} + sum_k rho^k Q_{n-k}...Q_n Sq^{2^{n+1-k}}`
    TheoremMain,
    /// `Q_{n+1} = [Q_n, Sq^{2^{n+1}}] + rho Q_n Sq^{2^n} Q_{n-1}`
    Corollary,
    /// `[Q_n, Sq^{2^i}] = 0` for `i < n`
    RemarkLow,
    /// `[Q_n, Sq^{2^n}] = rho Q_n Q_{n-1}`
    RemarkEq,
    /// `[Q_n, Sq^{2^i}]` for `i > n`, expanded in closed form
    RemarkHigh,
    /// `Q_{n+1} = [Q_n, Sq^{2^{n+1}}] + rho Sq^{2^n} Q_n Q_{n-1}`
    RemarkAlt,
    /// `[P^n, Sq^{2^{n+1}}]` expanded in closed form, `n >= 1`
    EqQn,
    /// `Sq^{2^{n+1}} P^n` expanded in closed form, `n >= 1`
    TheoremMain2,
    /// `P^n Sq^{2^{n+1}} = dual(xi_1^{2^n} xi_n) + tau Q_n Q_0 Sq^{2^{n+1}-2}`
    LemQsq,
    /// `Q_n = [Q_0, P^n]`, `n >= 1`
    Voevodsky136,
    /// `Q_i^2 = 0`
    QSquare,
    /// `[Q_i, Q_j] = 0`
    QCommute,
}

impl Identity {
    pub const ALL: [Identity; 12] = [
        Identity::TheoremMain,
        Identity::Corollary,
        Identity::RemarkLow,
        Identity::RemarkEq,
        Identity::RemarkHigh,
        Identity::RemarkAlt,
        Identity::EqQn,
        Identity::TheoremMain2,
        Identity::LemQsq,
        Identity::Voevodsky136,
        Identity::QSquare,
        Identity::QCommute,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Identity::TheoremMain => "theorem-main",
            Identity::Corollary => "corollary",
            Identity::RemarkLow => "remark-low",
            Identity::RemarkEq => "remark-eq",
            Identity::RemarkHigh => "remark-high",
            Identity::RemarkAlt => "remark-alt",
            Identity::EqQn => "eq-qn",
            Identity::TheoremMain2 => "theorem-main2",
            Identity::LemQsq => "lem-qsq",
            Identity::Voevodsky136 => "voevodsky-136",
            Identity::QSquare => "q-square",
            Identity::QCommute => "q-commute",
        }
    }

    /// Does the `i` parameter take part?
    pub fn takes_i(&self) -> bool {
        matches!(
            self,
            Identity::RemarkLow | Identity::RemarkHigh | Identity::QCommute
        )
    }

    /// Smallest admissible `n`.
    pub fn min_n(&self) -> u32 {
        match self {
            Identity::EqQn | Identity::TheoremMain2 | Identity::LemQsq | Identity::Voevodsky136 => {
                1
            }
            _ => 0,
        }
    }
}

impl FromStr for Identity {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Identity::ALL
            .iter()
            .copied()
            .find(|id| id.name() == s)
            .ok_or_else(|| AlgebraError::UnknownIdentity {
                name: s.to_string(),
            })
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Algebra {
    /// `product(t1, t2) + product(t2, t1)`; subtraction is addition here.
    pub fn commutator(
        &self,
        t1: &SteenrodElement,
        t2: &SteenrodElement,
    ) -> Result<SteenrodElement, AlgebraError> {
        Ok(self.product(t1, t2)?.add(&self.product(t2, t1)?))
    }

    /// Build `Q_n` through the recursion
    /// `Q_{k+1} = [Q_k, Sq^{2^{k+1}}] + rho Q_k Sq^{2^k} Q_{k-1}`,
    /// starting from `Q_0 = Sq^1` and using the product engine only.
    pub fn milnor_q_recursive(&self, n: u32) -> Result<SteenrodElement, AlgebraError> {
        let mut prev = SteenrodElement::zero(); // Q_{-1} := 0
        let mut cur = sq(1)?;
        for k in 0..n {
            let bracket = self.commutator(&cur, &sq(1 << (k + 1))?)?;
            let tail = self.product(&cur, &self.product(&sq(1 << k)?, &prev)?)?;
            let next = bracket.add(&tail.scale(&HScalar::rho()));
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }

    /// Build `P^n` through the recursion of the bracket formula
    /// `[P^k, Sq^{2^{k+1}}] = P^{k+1} + corrections`, starting from
    /// `P^1 = Sq^2`; the corrections are the closed-form terms.
    pub fn milnor_p_recursive(&self, n: u32) -> Result<SteenrodElement, AlgebraError> {
        assert!(n >= 1, "P^n is defined for n >= 1");
        let mut cur = sq(2)?;
        for k in 1..n {
            let bracket = self.commutator(&cur, &sq(1 << (k + 1))?)?;
            cur = bracket.add(&eq_qn_corrections(k)?);
        }
        Ok(cur)
    }

    /// Both sides of a named identity. The left side is composed purely from
    /// engine products and commutators; the right side from closed-form
    /// Milnor constructors and scalar multiples, so equality genuinely
    /// cross-checks the product engine against the stated formulas.
    pub fn identity_sides(
        &self,
        id: Identity,
        n: u32,
        i: Option<u32>,
    ) -> Result<(SteenrodElement, SteenrodElement), AlgebraError> {
        let need_i = || {
            i.ok_or_else(|| AlgebraError::HypothesisViolated {
                reason: format!("identity `{}` needs the i parameter", id.name()),
            })
        };
        match id {
            Identity::TheoremMain => {
                let lhs = self.product(&sq(1 << (n + 1))?, &q(n)?)?;
                let mut rhs = q(n + 1)?;
                for k in 0..=n {
                    rhs = rhs.add(&closed_term(k, 0, &b_indices(n, k), 1 << (n - k))?);
                }
                Ok((lhs, rhs))
            }
            Identity::Corollary => {
                let bracket = self.commutator(&q(n)?, &sq(1 << (n + 1))?)?;
                let tail = if n == 0 {
                    SteenrodElement::zero()
                } else {
                    self.product(&q(n)?, &self.product(&sq(1 << n)?, &q(n - 1)?)?)?
                        .scale(&HScalar::rho())
                };
                Ok((bracket.add(&tail), q(n + 1)?))
            }
            Identity::RemarkAlt => {
                let bracket = self.commutator(&q(n)?, &sq(1 << (n + 1))?)?;
                let tail = if n == 0 {
                    SteenrodElement::zero()
                } else {
                    self.product(&sq(1 << n)?, &self.product(&q(n)?, &q(n - 1)?)?)?
                        .scale(&HScalar::rho())
                };
                Ok((bracket.add(&tail), q(n + 1)?))
            }
            Identity::RemarkLow => {
                let i = need_i()?;
                if i >= n {
                    return Err(AlgebraError::HypothesisViolated {
                        reason: format!("remark-low needs i < n, got n={n}, i={i}"),
                    });
                }
                let lhs = self.commutator(&q(n)?, &sq(1 << i)?)?;
                Ok((lhs, SteenrodElement::zero()))
            }
            Identity::RemarkEq => {
                let lhs = self.commutator(&q(n)?, &sq(1 << n)?)?;
                let rhs = if n == 0 {
                    SteenrodElement::zero() // Q_{-1} := 0
                } else {
                    q_e(&[n - 1, n])?.scale(&HScalar::rho())
                };
                Ok((lhs, rhs))
            }
            Identity::RemarkHigh => {
                let i = need_i()?;
                if i <= n {
                    return Err(AlgebraError::HypothesisViolated {
                        reason: format!("remark-high needs i > n, got n={n}, i={i}"),
                    });
                }
                let lhs = self.commutator(&q(n)?, &sq(1 << i)?)?;
                // Q_{n+1} Sq^{2^i - 2^{n+1}} + sum_{k=1}^{n} rho^k Q(b_{n,k}) Sq^{2^i + 2^{n+1-k} - 2^{n+1}}
                let mut rhs = closed_term(0, 0, &[n + 1], (1 << (i - 1)) - (1 << n))?;
                for k in 1..=n {
                    let half = (1u32 << (i - 1)) + (1 << (n - k)) - (1 << n);
                    rhs = rhs.add(&closed_term(k, 0, &b_indices(n, k), half)?);
                }
                Ok((lhs, rhs))
            }
            Identity::Voevodsky136 => {
                if n < 1 {
                    return Err(AlgebraError::HypothesisViolated {
                        reason: "voevodsky-136 needs n >= 1".into(),
                    });
                }
                let lhs = self.commutator(&q(0)?, &p_n(n)?)?;
                Ok((lhs, q(n)?))
            }
            Identity::TheoremMain2 => {
                if n < 1 {
                    return Err(AlgebraError::HypothesisViolated {
                        reason: "theorem-main2 needs n >= 1".into(),
                    });
                }
                let lhs = self.product(&sq(1 << (n + 1))?, &p_n(n)?)?;
                let rhs = p_n(n + 1)?
                    .add(&xi_hat(n)?)
                    .add(&main2_sums(n)?);
                Ok((lhs, rhs))
            }
            Identity::EqQn => {
                if n < 1 {
                    return Err(AlgebraError::HypothesisViolated {
                        reason: "eq-qn needs n >= 1".into(),
                    });
                }
                let lhs = self.commutator(&p_n(n)?, &sq(1 << (n + 1))?)?;
                let rhs = p_n(n + 1)?.add(&eq_qn_corrections(n)?);
                Ok((lhs, rhs))
            }
            Identity::LemQsq => {
                if n < 1 {
                    return Err(AlgebraError::HypothesisViolated {
                        reason: "lem-qsq needs n >= 1".into(),
                    });
                }
                let lhs = self.product(&p_n(n)?, &sq(1 << (n + 1))?)?;
                // dual(xi_1^{2^n} xi_n) + tau Q_n Q_0 Sq^{2^{n+1}-2}
                let rhs = xi_hat(n)?.add(&closed_term_q0(0, 1, &[n], (1 << n) - 1)?);
                Ok((lhs, rhs))
            }
            Identity::QSquare => {
                let lhs = self.product(&q(n)?, &q(n)?)?;
                Ok((lhs, SteenrodElement::zero()))
            }
            Identity::QCommute => {
                let j = need_i()?;
                let lhs = self.commutator(&q(n)?, &q(j)?)?;
                Ok((lhs, SteenrodElement::zero()))
            }
        }
    }
}

/// `dual(xi_1^{2^n} xi_n)`; for `n = 1` the two factors merge into `xi_1^{2+1}`.
fn xi_hat(n: u32) -> Result<SteenrodElement, AlgebraError> {
    let mut r = vec![0u32; n as usize];
    r[0] += 1 << n;
    r[(n - 1) as usize] += 1;
    p_r(&r)
}

/// The two closed-form sums shared by the `Sq^{2^{n+1}} P^n` expansion:
/// `tau sum_i rho^i Q(b_{n,i+1}) Sq^{2^{n-i}}`
/// `+ tau rho sum_i rho^i Q(b_{n,i+1}) Q_0 Sq^{2^{n-i}-2}`.
fn main2_sums(n: u32) -> Result<SteenrodElement, AlgebraError> {
    let mut acc = SteenrodElement::zero();
    for i in 0..n {
        let b = b_indices(n, i + 1);
        acc = acc.add(&closed_term(i, 1, &b, 1 << (n - i - 1))?);
        acc = acc.add(&closed_term_q0(i + 1, 1, &b, (1 << (n - i - 1)) - 1)?);
    }
    Ok(acc)
}

/// Corrections of the bracket formula for `P^n`:
/// `tau Q_n Q_0 Sq^{2^{n+1}-2} + (the two sums above)`.
fn eq_qn_corrections(n: u32) -> Result<SteenrodElement, AlgebraError> {
    Ok(closed_term_q0(0, 1, &[n], (1 << n) - 1)?.add(&main2_sums(n)?))
}
