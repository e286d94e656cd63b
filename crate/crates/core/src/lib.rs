//! Exact arithmetic engine for 2-adic zeta values and Apery-style linear forms.
//!
//! The crate is organised in layers:
//!
//! * [`rational`] and [`primes`] — exact integer/rational helpers, valuations,
//!   factorials of primes, and the denominator sequences `d_n`, `Phi_n`, `Psi_n`.
//! * [`bernoulli`] — a cached exact Bernoulli-number table with a disk format.
//! * [`jet`] — truncated power series ("jets") over the rationals, the workhorse
//!   for residue extraction and epsilon expansions.
//! * [`padic`] — p-adic numbers with explicit absolute-precision tracking.
//! * [`volkenborn`] — Volkenborn integrals of inverse powers and the resulting
//!   2-adic zeta evaluator, plus a regularised-sum oracle.
//! * [`poly`] / [`ratfun`] — dense polynomials and factored rational functions,
//!   partial fractions, and the telescoping-certificate checker.
//! * [`forms`] — the linear forms `S_n = rho_{n,0} + rho_{n,3} zeta_2(5)`,
//!   their recurrence, determinant and valuation audits, and the archimedean
//!   cross-check against the real zeta value.
//! * [`denom`] — integrality audits for the scaled forms and the summand-level
//!   denominator certificates.
//! * [`measure`] — the irrationality-measure bookkeeping built on top.

pub mod bernoulli;
pub mod denom;
pub mod forms;
pub mod jet;
pub mod measure;
pub mod padic;
pub mod poly;
pub mod primes;
pub mod ratfun;
pub mod rational;
pub mod volkenborn;

pub use padic::Padic;
pub use rational::{Int, Rat, Valuation};

/// Errors surfaced by the exact-arithmetic layers.
///
/// Domain violations (bad moduli, division by an unknown-at-precision zero,
/// poles outside the supported set) are reported as errors rather than panics
/// so that sweep drivers can attach the offending index as a witness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A p-adic constructor or valuation was asked for a composite modulus.
    #[error("{0} is not prime")]
    NonPrime(u64),
    /// An argument was outside a documented precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Division of jets by a series with zero constant term.
    #[error("jet division by a series with zero constant term")]
    JetDivision,
    /// Inversion of a p-adic value that is indistinguishable from zero.
    #[error("cannot invert a value that is zero to precision O(p^{prec})")]
    PadicZeroInverse { prec: i64 },
    /// Partial fractions requested at a pole configuration we do not support.
    #[error("unsupported pole: {0}")]
    PoleOutside(String),
    /// A computation cannot certify the requested output precision.
    #[error("precision shortfall: {0}")]
    PrecisionShortfall(String),
    /// A numeric tolerance is too small for the available tail bounds.
    #[error("tolerance too small: {0}")]
    ToleranceTooSmall(String),
    /// A verification sweep found a counterexample.
    #[error("verification failed: {witness}")]
    Verification { witness: String },
    /// Cache file I/O failed.
    #[error("cache i/o: {0}")]
    CacheIo(#[from] std::io::Error),
    /// Cache file contents could not be parsed.
    #[error("cache parse: {0}")]
    CacheParse(String),
}

/// Outcome of a single verification item.
///
/// `Fail` carries a human-readable witness (the index and the mismatching
/// values) so a driver can print it and exit nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail { witness: String },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    /// Combine two verdicts, keeping the first failure witness.
    pub fn and(self, other: Verdict) -> Verdict {
        match self {
            Verdict::Pass => other,
            fail => fail,
        }
    }

    pub fn from_bool(ok: bool, witness: impl FnOnce() -> String) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail { witness: witness() }
        }
    }
}
