//! Exact arithmetic for finite Weil representations.
//!
//! Everything is computed over the cyclotomic field Q(zeta_{4q}) with exact
//! rational coefficients, so every identity in the test suites is checked by
//! literal equality — there are no tolerances anywhere.
//!
//! Module map:
//! - [`fq`], [`fqmat`]: the prime field F_q and dense linear algebra over it.
//! - [`cyclo`], [`scalars`]: the coefficient field Q(zeta_{4q}); the additive
//!   character psi, Legendre symbol, Gauss sum, and the canonical sqrt(q).
//! - [`cmat`]: dense matrices over the cyclotomic field (operators).
//! - [`symplectic`]: the standard symplectic space, Sp membership, Lagrangian
//!   subspaces, and graph coordinates of one Lagrangian over another.
//! - [`heisenberg`]: the Heisenberg group, its induced models on functions
//!   over a Lagrangian complement, and the intertwining operators between them.
//! - [`maslov`]: theta constants of Lagrangian triples, the Maslov index
//!   gamma, and the gamma 2-cocycle.
//! - [`weilrep`]: metaplectic operators, Schrödinger-model formulas for the
//!   Siegel parabolic and the Weyl element, the operator 2-cocycle, and the
//!   splitting of the extension over the finite symplectic group.
//! - [`strata`]: Gauss sums of symmetric forms, the rank stratification, cone
//!   functions, the finite Fourier transform, and the parity support theorem.
//! - [`thetap1`]: Čech cohomology of line bundles on P^1, Serre pairing,
//!   extension classes, period forms, and the global theta sum.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod cmat;
pub mod cyclo;
pub mod fq;
pub mod fqmat;
pub mod heisenberg;
pub mod maslov;
pub mod scalars;
pub mod strata;
pub mod symplectic;
pub mod thetap1;
pub mod weilrep;

use core::fmt;

/// Unified error type for all fallible operations in this crate.
///
/// Precondition violations (wrong shapes, non-transverse subspaces, guards)
/// are reported through this type; internal convention bugs surface as
/// panics in debug assertions, never as silently wrong values.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Error {
    /// The modulus is not an odd prime.
    NotOddPrime(u32),
    /// Two cyclotomic numbers with different conductors were combined.
    MismatchedConductor(u32, u32),
    /// Inversion of zero (in F_q or in the cyclotomic field).
    DivisionByZero,
    /// Matrix shapes do not allow the requested operation.
    DimensionMismatch,
    /// The rows do not define a Lagrangian subspace.
    NotLagrangian,
    /// The matrix does not satisfy the symplectic condition g^T J g = J.
    NotSymplectic,
    /// The matrix is singular where an invertible one is required.
    SingularMatrix,
    /// An operator expected to be a scalar multiple of the identity is not.
    /// This always signals a convention bug upstream, never bad input.
    NotScalar,
    /// An operator expected to be proportional to another is not.
    NotProportional,
    /// The triple violates the required transversality (V∩L1 = V∩L2 = 0).
    TransversalityViolated,
    /// The requested enumeration exceeds the configured guard.
    LimitExceeded { needed: u64, limit: u64 },
    /// A model dimension q^d beyond the supported dense-operator scale.
    ModelTooLarge { dim: u64 },
    /// The group element does not have the block shape this formula needs.
    ShapeViolated,
    /// A bundle degree is out of the supported range (all degrees <= -2).
    DegreeOutOfRange(i64),
    /// A linear system that must be solvable is not.
    InconsistentSystem,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotOddPrime(q) => write!(f, "{q} is not an odd prime"),
            Error::MismatchedConductor(a, b) => {
                write!(f, "mismatched cyclotomic conductors {a} and {b}")
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::DimensionMismatch => write!(f, "dimension mismatch"),
            Error::NotLagrangian => write!(f, "rows do not span a Lagrangian subspace"),
            Error::NotSymplectic => write!(f, "matrix is not symplectic"),
            Error::SingularMatrix => write!(f, "matrix is singular"),
            Error::NotScalar => write!(f, "operator is not a scalar multiple of the identity"),
            Error::NotProportional => write!(f, "operators are not proportional"),
            Error::TransversalityViolated => {
                write!(f, "triple violates the required transversality")
            }
            Error::LimitExceeded { needed, limit } => {
                write!(f, "enumeration of size {needed} exceeds the guard {limit}")
            }
            Error::ModelTooLarge { dim } => {
                write!(f, "model dimension {dim} exceeds the dense-operator guard")
            }
            Error::ShapeViolated => write!(f, "group element has the wrong block shape"),
            Error::DegreeOutOfRange(a) => {
                write!(f, "bundle degree {a} out of range (all degrees must be <= -2)")
            }
            Error::InconsistentSystem => write!(f, "linear system is inconsistent"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
