//! Finite spectral triples and the tools around them: finite C*-algebras and
//! their representations, Clifford algebras, universal differential forms,
//! axiom checking, Connes distances, inner fluctuations, spectral action
//! asymptotics and the finite Connes-Lott model.
//!
//! The crate is `no_std` with `alloc`; file formats and the command line live
//! in the companion `ncg` crate.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod clifford;
pub mod connes_lott;
pub mod error;
pub mod fluctuations;
pub mod forms;
pub mod matrix;
pub mod random;
pub mod representation;
pub mod spectral_action;
pub mod triple;
pub mod two_point;

pub use algebra::{AlgebraElement, Block, Field, FiniteStarAlgebra, State};
pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, C64};
pub use random::SampleRng;
pub use representation::Representation;
