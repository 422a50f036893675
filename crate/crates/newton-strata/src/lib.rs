//! Exact computation of the group-theoretic invariants governing Newton
//! stratifications of PEL Shimura varieties and Rapoport-Zink spaces.
//!
//! The crate realizes the unramified group families `Res GL_n`, `Res GSp_n`
//! and `Res GU_n` as explicit root data with Galois action and computes,
//! with exact rational arithmetic throughout:
//!
//! - sigma-conjugacy class invariants (Newton point, Kottwitz point), the
//!   poset `B(G, mu)` and the Mazur order ([`newton`]);
//! - the defect and chain lengths of Newton points, with independent
//!   oracles ([`newton`]);
//! - Newton stratum, Rapoport-Zink and central leaf dimension formulas and
//!   their cross-identities, including the Levi reduction ([`dimensions`]);
//! - extended affine Weyl group combinatorics: length, `tau_mu`, the
//!   Ekedahl-Oort truncation algorithm, sigma-straight and fundamental
//!   elements ([`affine`]);
//! - superbasic EL-chart enumeration and the `max #V_A` dimension identity
//!   ([`el_chart`]).
//!
//! Every closed formula is cross-validated against a brute-force oracle in
//! the test suite; see `tests/acceptance.rs`. The `examples/` directory has
//! one runnable example per capability, and the `newton-strata` binary is a
//! thin batch front-end.

pub mod affine;
pub mod dimensions;
pub mod el_chart;
pub mod linalg;
pub mod newton;
pub mod perm;
pub mod report;
pub mod root_datum;
pub mod weyl;

pub use linalg::{Rat, IntMatrix, AbelianPresentation};
pub use root_datum::{
    build_group, parse_group_spec, Cocharacter, GroupDatum, GroupKind, GroupKey, RatCocharacter,
    Weight, WeylElt,
};

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Invalid `(kind, n, d)` combination.
    InvalidGroup(String),
    /// Values from different groups were mixed.
    GroupMismatch,
    /// Malformed textual input.
    Parse(String),
    /// A vector violates the lattice constraints of its group.
    Constraint(String),
    /// An operation's precondition does not hold.
    Precondition(String),
    /// An asserted paper identity failed (this would falsify bookkeeping).
    IdentityFailed(String),
}

impl std::fmt::Display for Error {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Error::InvalidGroup(m) => write!(f, "invalid group: {m}"),
            Error::GroupMismatch => write!(f, "values belong to different groups"),
            Error::Parse(m) => write!(f, "parse error: {m}"),
            Error::Constraint(m) => write!(f, "constraint violation: {m}"),
            Error::Precondition(m) => write!(f, "precondition violated: {m}"),
            Error::IdentityFailed(m) => write!(f, "identity check failed: {m}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
