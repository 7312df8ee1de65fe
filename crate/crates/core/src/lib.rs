//! Crystals for symmetrizable Kac-Moody algebras: Cartan data, a uniform
//! crystal interface with tensor products and duals, monomial and lattice
//! realizations, and checkers for the axioms and structural properties.

pub mod cartan;
pub mod crystal;
pub mod lattice;
pub mod monomial;
pub mod scan;
pub mod verify;

pub use cartan::{CartanError, CartanKind, CartanSpec, RootVector, Weight};
pub use crystal::{Crystal, CrystalGraph, ExtInt};
