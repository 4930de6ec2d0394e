//! Premodular tensor categories built from finite crossed modules.
//!
//! A finite crossed module `X = (X1, X2, mu, boundary)` determines a
//! braided category `M(X)` of `X1`-equivariant vector bundles over `X2`.
//! This crate computes its simple objects, characters, fusion rules and
//! S/T data, identifies the transparent (Tannakian) part with the
//! representations of `G(X) = (ker d)^* x| coker d`, builds the vacuum
//! Frobenius algebra, and checks that the modularization agrees with the
//! representation category of the quotient crossed module `Xbar`, which is
//! a Drinfeld double.
//!
//! All arithmetic is in `f64` complex numbers with an absolute tolerance
//! (see [`Settings`]); integer quantities are recovered by guarded rounding.

pub mod corpus;
pub mod crossed;
pub mod error;
pub mod group;
pub mod io;
pub mod linalg;
pub mod modularization;
pub mod rep;
pub mod report;

pub use crossed::{CrossedModule, Subquotients, TannakianGroup, XBar};
pub use error::{Error, Result};
pub use group::{CharacterTable, FiniteGroup, GroupAction, GroupHom};
pub use rep::{ModularData, RepObject, SimpleTable};

/// Absolute tolerance for matrix and character comparisons.
pub const TOL: f64 = 1e-8;

/// Maximum distance from an integer accepted when rounding.
pub const INT_GUARD: f64 = 1e-6;

/// Seed used when neither `--seed` nor `XMODCAT_SEED` is given.
pub const DEFAULT_SEED: u64 = 0x5eed_cafe;

/// Resampling budget for randomized eigenvalue separation.
pub const RETRY_BUDGET: usize = 20;

/// Numerical knobs shared by every randomized or tolerance-driven routine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub tol: f64,
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            tol: TOL,
            seed: DEFAULT_SEED,
        }
    }
}

impl Settings {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}
