//! Exact arithmetic in the mod 2 motivic Steenrod algebra and its dual.
//!
//! The coefficient ring is `F2[tau, rho]`, the mod 2 motivic cohomology of a
//! point over the real numbers. The dual algebra is generated by classes
//! `tau_i`, `xi_i` subject to
//!
//! ```text
//! tau_i^2 = tau*xi_{i+1} + rho*tau_{i+1} + rho*tau_0*xi_{i+1},
//! ```
//!
//! and carries a Hopf algebroid structure twisted by `eta_R(tau) = tau + rho*tau_0`.
//! Products in the Milnor basis of the Steenrod algebra itself are computed by
//! pairing candidate basis monomials against coproducts in the dual; there is
//! no closed product formula to appeal to at `p = 2` motivically.
//!
//! Modules:
//! - [`scalar`]: the bigraded coefficient ring `F2[tau, rho]`.
//! - [`dual`]: dual-algebra monomials, the squaring relation, degree-indexed
//!   enumeration.
//! - [`coalgebra`]: coproducts, the twisted tensor product, evaluation pairings.
//! - [`steenrod`]: Milnor-basis elements, the pairing-based product engine,
//!   named elements (`Q_i`, `Q(E)`, `P^R`, `Sq^k`) and the identity builders.
//! - [`cartan`]: the admissible basis and Milnor <-> admissible conversion by
//!   exact linear algebra over F2.
//! - [`classical`]: an independent implementation of Milnor's classical mod 2
//!   product, used as a specialization oracle at `rho = 0, tau = 1`.
//! - [`proof`]: quotients by monomial-style ideals, reduced coproducts, and
//!   brute-force checks of the collapsing lemmas.
//!
//! ```
//! use motivic_steenrod::steenrod::{q, sq, Identity};
//! use motivic_steenrod::Algebra;
//!
//! let alg = Algebra::default();
//!
//! // Q_1 = Sq^2 Sq^1 + Sq^3, and the bracket recursion rebuilds it
//! let x = alg.product(&sq(2)?, &sq(1)?)?.add(&sq(3)?);
//! assert_eq!(x, q(1)?);
//! assert_eq!(alg.milnor_q_recursive(1)?, q(1)?);
//!
//! // every named identity compares an engine-computed side against a
//! // closed-form side, exactly
//! let (lhs, rhs) = alg.identity_sides(Identity::Corollary, 2, None)?;
//! assert_eq!(lhs, rhs);
//!
//! // the admissible expansion of Q_2 has the expected five terms
//! assert_eq!(alg.cartan_term_count(&q(2)?)?, 5);
//! # Ok::<(), motivic_steenrod::AlgebraError>(())
//! ```

pub mod cartan;
pub mod classical;
pub mod coalgebra;
pub mod dual;
pub mod engine;
pub mod error;
pub mod proof;
pub mod sampling;
pub mod scalar;
pub mod steenrod;

pub use engine::Algebra;
pub use error::AlgebraError;
pub use scalar::{Bidegree, HScalar};

/// Hard cap on generator indices: `E` must fit in a 64-entry bit set.
pub const MAX_GENERATOR_INDEX: u32 = 63;
