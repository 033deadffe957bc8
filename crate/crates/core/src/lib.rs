//! Semidirect products `N ⋊ P` of elementary abelian groups by p-groups, built
//! so that the Sylow p-subgroup P is redundant, together with exact checks of
//! their Sylow covering structure.
//!
//! The layers, bottom up:
//!
//! * [`field`] and [`linalg`]: GF(ℓ^k) arithmetic and exact linear algebra.
//! * [`pgroup`]: p-groups as multiplication tables, with a catalog.
//! * [`construction`]: the linear actions of P on N.
//! * [`semidirect`]: arithmetic, centralizers and Sylow subgroups of `N ⋊ P`.
//! * [`analysis`]: redundancy, Sylow covers, counting identities and bounds,
//!   and the JSON [`analysis::report::AnalysisReport`].
//! * [`oracle`]: brute-force enumeration used to cross-check the above.

pub mod analysis;
pub mod arith;
pub mod construction;
pub mod error;
pub mod field;
pub mod instance;
pub mod linalg;
pub mod oracle;
pub mod pgroup;
pub mod semidirect;

pub use construction::{LinearAction, Provenance};
pub use error::{Error, Result};
pub use field::Field;
pub use pgroup::{catalog::catalog, PGroup, Subgroup};
pub use semidirect::{GElement, SemidirectGroup};
