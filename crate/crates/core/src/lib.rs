//! Finite groups as Cayley tables, involution statistics, and exhaustive
//! checks of the involution-proportion theorems over small-group catalogs.

pub mod catalog;
pub mod constructors;
pub mod group;
pub mod groupspec;
pub mod involutions;
pub mod structure;
pub mod verifier;

pub use group::{Group, GroupError, Line, OrderFactorization, SubsetMask};
pub use involutions::{InvolutionStats, Rational};
