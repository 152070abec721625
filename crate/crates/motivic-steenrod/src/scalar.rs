//! The bigraded coefficient ring `F2[tau, rho]`.
//!
//! This is the mod 2 motivic cohomology of `Spec R`: `tau` generates
//! `H^{0,1}` and `rho`, the class of `-1`, generates `H^{1,1}`. Every
//! identity in scope lives over this ring, so it is fixed once and for all.
//! A scalar is a finite set of exponent pairs `(a, b)`, the pair denoting
//! `tau^a rho^b`; addition is symmetric difference (characteristic 2).

use std::fmt;
use std::ops::{Add, Sub};

use smallvec::SmallVec;

/// A bidegree `(p, q)`: topological degree and motivic weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bidegree {
    pub p: i32,
    pub q: i32,
}

impl Bidegree {
    pub const ZERO: Bidegree = Bidegree { p: 0, q: 0 };

    pub fn new(p: i32, q: i32) -> Self {
        Bidegree { p, q }
    }

    /// Degree of the coefficient monomial `tau^a rho^b`, namely `(b, a + b)`.
    pub fn of_coefficient(a: u32, b: u32) -> Self {
        Bidegree {
            p: b as i32,
            q: (a + b) as i32,
        }
    }

    /// Componentwise comparison; the partial order relevant for pruning.
    pub fn fits_within(&self, cap: Bidegree) -> bool {
        self.p <= cap.p && self.q <= cap.q
    }
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.p + rhs.p, self.q + rhs.q)
    }
}

impl Sub for Bidegree {
    type Output = Bidegree;
    fn sub(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.p - rhs.p, self.q - rhs.q)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// The degree type of coefficients; identical shape to [`Bidegree`].
pub type HDegree = Bidegree;

/// An element of `F2[tau, rho]`.
///
/// Terms are exponent pairs `(a, b)` for `tau^a rho^b`, kept sorted and
/// duplicate-free. The zero element is the empty set, the unit is `{(0,0)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HScalar {
    terms: SmallVec<[(u32, u32); 2]>,
}

impl HScalar {
    pub fn zero() -> Self {
        HScalar::default()
    }

    pub fn one() -> Self {
        HScalar::monomial(0, 0)
    }

    pub fn tau() -> Self {
        HScalar::monomial(1, 0)
    }

    pub fn rho() -> Self {
        HScalar::monomial(0, 1)
    }

    /// The single monomial `tau^a rho^b`.
    pub fn monomial(a: u32, b: u32) -> Self {
        let mut terms = SmallVec::new();
        terms.push((a, b));
        HScalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0] == (0, 0)
    }

    /// Iterate over the exponent pairs in canonical (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.terms.iter().copied()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Toggle a single monomial in or out (addition of `tau^a rho^b`).
    pub fn toggle(&mut self, a: u32, b: u32) {
        match self.terms.binary_search(&(a, b)) {
            Ok(pos) => {
                self.terms.remove(pos);
            }
            Err(pos) => self.terms.insert(pos, (a, b)),
        }
    }

    pub fn add(&self, other: &HScalar) -> HScalar {
        // Merge of two sorted lists, cancelling equal pairs mod 2.
        let mut out: SmallVec<[(u32, u32); 2]> = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].cmp(&other.terms[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.terms[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.terms[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        HScalar { terms: out }
    }

    pub fn mul(&self, other: &HScalar) -> HScalar {
        let mut out = HScalar::zero();
        for &(a1, b1) in &self.terms {
            for &(a2, b2) in &other.terms {
                out.toggle(a1 + a2, b1 + b2);
            }
        }
        out
    }

    /// Multiply by the single monomial `tau^a rho^b`.
    pub fn mul_monomial(&self, a: u32, b: u32) -> HScalar {
        let terms = self.terms.iter().map(|&(x, y)| (x + a, y + b)).collect();
        HScalar { terms }
    }

    /// `self += x * y` without intermediate allocations.
    pub fn add_mul_assign(&mut self, x: &HScalar, y: &HScalar) {
        for &(a1, b1) in &x.terms {
            for &(a2, b2) in &y.terms {
                self.toggle(a1 + a2, b1 + b2);
            }
        }
    }

    /// Substitute `tau` and `rho` by `0`, `1` or leave them untouched.
    pub fn specialize(&self, tau_to: Subst, rho_to: Subst) -> HScalar {
        let mut out = HScalar::zero();
        for &(a, b) in &self.terms {
            let a = match tau_to {
                Subst::Keep => Some(a),
                Subst::One => Some(0),
                Subst::Zero => (a == 0).then_some(0),
            };
            let b = match rho_to {
                Subst::Keep => Some(b),
                Subst::One => Some(0),
                Subst::Zero => (b == 0).then_some(0),
            };
            if let (Some(a), Some(b)) = (a, b) {
                out.toggle(a, b);
            }
        }
        out
    }

    /// The common degree of all terms, if the scalar is homogeneous and
    /// nonzero. `tau^a rho^b` sits in degree `(b, a + b)`.
    pub fn homogeneous_degree(&self) -> Option<Bidegree> {
        let mut it = self.terms.iter();
        let &(a, b) = it.next()?;
        let d = Bidegree::of_coefficient(a, b);
        it.all(|&(a, b)| Bidegree::of_coefficient(a, b) == d)
            .then_some(d)
    }
}

/// Substitution target for [`HScalar::specialize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subst {
    Zero,
    One,
    Keep,
}

impl fmt::Display for HScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, &(a, b)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", format_coefficient_monomial(a, b))?;
        }
        Ok(())
    }
}

/// Render `tau^a rho^b` in the CLI grammar (`1`, `t`, `r`, `t^2*r`, ...).
pub fn format_coefficient_monomial(a: u32, b: u32) -> String {
    let mut parts = Vec::new();
    match a {
        0 => {}
        1 => parts.push("t".to_string()),
        _ => parts.push(format!("t^{a}")),
    }
    match b {
        0 => {}
        1 => parts.push("r".to_string()),
        _ => parts.push(format!("r^{b}")),
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}
