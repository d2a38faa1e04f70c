//! A workbench for finite p-groups given by power-commutator presentations.
//!
//! The crate covers collection and subgroup arithmetic ([`pc`]),
//! characteristic subgroups and structural predicates ([`structure`]),
//! automorphisms of order `p` and their explicit constructions ([`autos`]),
//! Tate cohomology of `G/N`-modules `Z(N)` ([`cohomology`]), a built-in group
//! corpus ([`corpus`]) and an executable check registry ([`harness`]).

pub mod autos;
pub mod cohomology;
pub mod corpus;
pub mod error;
pub mod harness;
pub mod pc;
pub mod structure;

pub use error::{ForgeError, Result};
pub use pc::{Code, Element, PcGroup, PcPresentation, QuotientGroup, Subgroup};
