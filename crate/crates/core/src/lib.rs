//! Exact-arithmetic toolkit for twelve-coefficient colored partition identities
//! of the shape `D_S(N) = 2^p · D_T(N − m)`.
//!
//! * [`identity`] builds the colored part-sets and carries the registry.
//! * [`qseries`] counts distinct-part partitions with a parity split and verifies identities.
//! * [`oracle`] counts the equivalent tuple sets through quadratic forms.
//! * [`bijection`] holds the explicit value-preserving maps and the matching harness.

pub mod bijection;
pub mod error;
pub mod identity;
pub mod oracle;
pub mod qseries;

pub use error::{Error, Result};
pub use identity::{
    build_colored_set, builtin_registry, derive_p, load_registry, ColoredSet, Coefficients,
    Failure, IdentitySpec, PowerOfTwo, Status, VerificationReport, RANK,
};
