//! Computational engine for exponential, exp-trivial, exp-simple and weakly
//! exponential subgroups of finite permutation groups.
//!
//! Convention used throughout: products are read left to right, so
//! `a * b` is "apply `a`, then `b`", and `x^g = g⁻¹ x g`.

pub mod bitset;
pub mod caps;
pub mod commands;
pub mod density;
pub mod error;
pub mod families;
pub mod field;
pub mod group;
pub mod lattice;
pub mod perm;
pub mod predicates;
pub mod psl;
pub mod report;
pub mod structure;
pub mod table;
pub mod witness;

pub use caps::Caps;
pub use error::{Error, Result};
pub use group::PermGroup;
pub use perm::Permutation;
