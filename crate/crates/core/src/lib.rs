//! Chambers and strata of the wall arrangement behind polygon spaces,
//! exact realizability tests, and mod-2 cohomology invariants.

pub mod code;
pub mod enumerate;
pub mod error;
pub mod golden;
pub mod invariants;
pub mod lp;
pub mod pipeline;
pub mod ratio;
pub mod realize;
pub mod subset;
pub mod verify;

pub use code::{format_code, parse_code, reconstruct_s, Gene, GeneticCode, Mark};
pub use enumerate::{enumerate_codes, singleton_codes, CodeLine, CodeSet};
pub use error::{Error, Result};
pub use subset::{complement, dominates, ns_counts, NsVector, ShortFamily, Subset};
