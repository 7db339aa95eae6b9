#![cfg_attr(not(test), no_std)]
//! Exact computations with λ-rings, Ψ-rings, their modules and extensions,
//! the cohomology theories classifying them, and the K-theory of spheres.

extern crate alloc;

mod error;
pub mod linalg;
pub mod poly;
pub mod symm;
pub mod algebra;
pub mod psi;
pub mod lambda;
pub mod free;
pub mod extension;
pub mod deformation;
pub mod ktheory;
pub mod cohomology;

pub use error::*;
