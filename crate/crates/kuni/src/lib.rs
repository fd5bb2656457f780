//! Exact class-counting engine for the general linear group over a finite field.
//!
//! For `G = GL_n(q)` and `U` the unipotent radical of the standard parabolic
//! subgroup with Levi block sizes `μ` (a composition of `n`), this crate
//! computes the number of `U`-conjugacy classes on the set of unipotent
//! elements of `G` as an exact polynomial `m(q) ∈ ℤ[q]`, and verifies it
//! against an independent brute-force enumeration of small groups.
//!
//! The crate is organized around the ingredients of that computation:
//!
//! - [`combinatorics`] — partitions, compositions, and Weyl-group class data.
//! - [`poly`] — exact integer polynomials, rational fractions, and orders
//!   split into a power of `q` times a prime-to-`q` polynomial.
//! - [`green`] — symmetric-group characters, Kostka–Foulkes polynomials via
//!   the charge statistic, and the Green polynomials `Q^λ_ρ(q)` built from
//!   them.
//! - [`groups`] — closed-form orders of `GL_n(q)`, Levi subgroups, and
//!   unipotent centralizers.
//! - [`counting`] — the class-count assemblies and their cross-checks.
//! - [`oracle`] — brute-force enumeration of `GL_n(F_p)` at desk scale.
//! - [`table1`] — the embedded ground-truth corpus of Borel-case polynomials.
//! - [`cache`] — an optional disk cache for the character/Kostka tables.
//! - [`selftest`] — the orchestrated invariant suites behind `kuni selftest`.

pub mod cache;
pub mod combinatorics;
pub mod counting;
pub mod green;
pub mod groups;
pub mod oracle;
pub mod poly;
pub mod selftest;
pub mod table1;

pub use combinatorics::{partitions_of, Composition, Partition, SignedCycleTypeTerm};
pub use counting::{k_unipotent, k_via_lemma, CountResult};
pub use poly::{IntPoly, QAdicOrder, RatFraction};

/// Errors produced by the library.
///
/// Input errors ([`Error::SizeMismatch`], [`Error::InvalidInput`],
/// [`Error::BudgetExceeded`]) are recoverable misuse. The remaining variants
/// signal that an exactness guarantee failed mid-computation; they indicate a
/// bug in the formulas or their implementation, never a property of the
/// input, and callers must not mask them.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("enumeration budget exceeded: need {needed} elements, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("non-integral result: {0}")]
    NonIntegral(String),
    #[error("degree bound violated: {0}")]
    DegreeBound(String),
    #[error("verified mismatch: {0}")]
    Mismatch(String),
    #[error("cache i/o: {0}")]
    Cache(String),
}

impl Error {
    /// True for errors caused by the caller's input (bad arguments, budget
    /// refusals) as opposed to internal invariant failures.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::SizeMismatch(_) | Error::InvalidInput(_) | Error::BudgetExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
