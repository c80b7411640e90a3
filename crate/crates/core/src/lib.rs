//! Numerical toolkit for finite-symbol Hankel operators on the Hardy space
//! `H^2` of the unit disk: exact operator norms, reproducing-kernel testing
//! bounds, executable Green/Littlewood–Paley identities, an extremal-ratio
//! search and model-space embedding checks.

pub mod disk;
pub mod embedding;
pub mod error;
pub mod hankel;
pub mod hardy;
pub mod linalg;
pub mod rkt;
pub mod search;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use error::{Error, Result};
pub use hankel::{GarsiaTable, HankelMatrix, HankelSymbol};
pub use hardy::{DiskPoint, Side, TrigPolynomial};
