//! Invariant-information toolkit for small qudit systems.
//!
//! The crate builds complete sets of mutually unbiased bases (MUBs) in
//! prime-power dimensions, computes the Brukner-Zeilinger-style invariant
//! information of a state two independent ways (as a sum over MUB outcome
//! statistics and in closed form from the purity), and probes the
//! complementarity identities, inequalities and bounds that relate local
//! information to bipartite entanglement. A small decoherence-channel
//! module tracks how the local information of a two-qubit state decays
//! under depolarization, dephasing and dissipation.
//!
//! Modules, bottom up:
//!
//! - [`gf`] exact arithmetic in GF(p^k), the substrate for the MUB
//!   constructions;
//! - [`qlinalg`] dense complex linear algebra for small Hilbert spaces:
//!   pure states, density matrices, partial traces, purification, spectra;
//! - [`mub`] construction and verification of d+1 mutually unbiased bases
//!   for prime-power d;
//! - [`invinfo`] invariant information, MUB-sum and closed-form routes;
//! - [`entangle`] tangle, isotropic states, complementarity identities and
//!   the information-gap bounds;
//! - [`channels`] single-qubit decoherence maps and the closed-form local
//!   information under depolarization;
//! - [`cli`] sweep drivers and verification suites behind the `qinvar`
//!   binary.
//!
//! ```
//! use qinvar::{invinfo, mub, qlinalg::DensityMatrix};
//!
//! let mubs = mub::build_mubs(3).unwrap();
//! let rho = DensityMatrix::maximally_mixed(&[3]);
//! let info = invinfo::invariant_info_mub(&rho, &mubs).unwrap();
//! assert!(info.bits.abs() < 1e-12);
//! ```

use thiserror::Error;

pub mod channels;
pub mod cli;
pub mod entangle;
pub mod gf;
pub mod invinfo;
pub mod mub;
pub mod qlinalg;
pub mod tol;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(usize),

    #[error("dimension {0} exceeds the supported cap {1}")]
    DimensionCap(usize, usize),

    #[error("elements belong to different fields")]
    FieldMismatch,

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid subsystem selection: {0}")]
    InvalidSubsystems(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("invalid pure state: {0}")]
    InvalidPureState(String),

    #[error("matrix is not Hermitian (max asymmetry {0:.3e})")]
    NotHermitian(f64),

    #[error("parameter out of range: {0}")]
    InvalidParameter(String),

    #[error("unknown verification suite '{0}'")]
    UnknownSuite(String),

    #[error("numerical check failed: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI contract: 1 for a failed numerical
    /// check, 2 for usage and domain errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Numerical(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
