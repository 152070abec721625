use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    /// A rewrite or constructor produced a generator index beyond the 64-entry
    /// bit set (or the configured cap).
    #[error("generator index {index} exceeds the maximum of {max}")]
    IndexOverflow { index: u32, max: u32 },

    /// A product or enumeration would exceed the configured topological
    /// degree guard.
    #[error("topological degree {degree} exceeds the degree guard {guard}")]
    DegreeGuardExceeded { degree: i32, guard: i32 },

    /// The admissible-basis linear system was inconsistent or underdetermined.
    /// Freeness of the algebra guarantees unique solvability, so this signals
    /// an implementation bug rather than bad input.
    #[error("basis conversion solve failed in bidegree ({p}, {q}): {reason}")]
    SolveFailure { p: i32, q: i32, reason: String },

    /// `identity_sides` was asked for a name it does not know.
    #[error("unknown identity `{name}`")]
    UnknownIdentity { name: String },

    /// A lemma check was invoked on a sequence violating the lemma hypotheses.
    #[error("lemma hypothesis violated: {reason}")]
    HypothesisViolated { reason: String },
}
