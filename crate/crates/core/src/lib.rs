//! Induced degree-1 subsets of the ternary Hamming graph H(n,3).
//!
//! Points of Z_3^n, vertex sets and their induced degrees live in [`lattice`];
//! the automorphism group and orbit canonical forms in [`symmetry`]; the
//! collapsed label-grid view in [`grid`]; explicit sets and transcribed
//! fixtures in [`constructions`]; CNF encodings and solvers in [`sat`]; the
//! named checks in [`verify`]; and the command-line front end in [`cli`].

pub mod cli;
pub mod constructions;
pub mod error;
pub mod grid;
pub mod lattice;
pub mod sat;
pub mod symmetry;
pub mod verify;

pub use error::{Error, Result};
