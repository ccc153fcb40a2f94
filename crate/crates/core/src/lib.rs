//! Entanglement of thermal states of harmonic and spin-1/2 rings, and
//! certification of bound-entangled temperature windows.
//!
//! The guide in `book/` walks through each module; its code blocks run as
//! doc-tests of this crate.

pub mod eigen;
pub mod error;
pub mod limit;
pub mod negativity;
pub mod partition;
pub mod potential;
pub mod scan;
pub mod special;
pub mod spin;
pub mod thermal;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/potentials.md")]
    mod potentials {}
    #[doc = include_str!("../../../book/src/thermal-states.md")]
    mod thermal_states {}
    #[doc = include_str!("../../../book/src/negativity.md")]
    mod negativity {}
    #[doc = include_str!("../../../book/src/macroscopic-limit.md")]
    mod macroscopic_limit {}
    #[doc = include_str!("../../../book/src/spin-chains.md")]
    mod spin_chains {}
    #[doc = include_str!("../../../book/src/scans.md")]
    mod scans {}
}
