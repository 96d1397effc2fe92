//! Exact q-series workbench for partitions whose even and odd parts carry
//! separate color counts.
//!
//! The crate is layered as:
//!
//! - [`series`]: truncated formal power series over big integers or residues
//!   mod m, plus eta quotients `prod f_m^{e_m}` and their expansion;
//! - [`etatheta`]: classical sparse expansions (pentagonal numbers, the cubed
//!   product, phi/psi) with cross-checks between sum and product routes;
//! - [`dissect`]: m-dissection of series and the catalog of 3-dissection
//!   identities used by the congruence machinery;
//! - [`oracle`]: independent brute-force partition counting, sharing no code
//!   with the series engine;
//! - [`engine`]: the registry of congruence families and the grid verifier
//!   that checks them in mod-p rings to a configurable depth.
//!
//! Everything is exact integer arithmetic; results are certified up to a
//! truncation order, never proven for all n.

pub mod dissect;
pub mod engine;
mod error;
pub mod etatheta;
pub mod oracle;
pub mod series;

pub use error::{Error, Result};
pub use series::{Coefficient, EtaQuotient, Ring, Series};
