//! Power-commutator presentations, collection, element arithmetic,
//! subgroups and factor groups.

pub mod element;
pub mod group;
pub mod presentation;
pub mod quotient;
pub mod subgroup;

pub use element::Element;
pub use group::{Code, PcGroup, TABLE_LIMIT};
pub use presentation::{Consistency, ConsistencyViolation, Exponents, PcPresentation};
pub use quotient::QuotientGroup;
pub use subgroup::{enumerate_subgroups, Subgroup};

/// Default desk-scale cap for subgroup enumeration.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 8;

/// All normal subgroups of `g`, refusing above `cap`.
pub fn enumerate_normal_subgroups(g: &PcGroup, cap: u64) -> crate::Result<Vec<Subgroup>> {
    enumerate_subgroups(g, cap, true)
}
