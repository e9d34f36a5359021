//! The 9-branch weight calculus for the invariant train track, golden-ratio
//! asymptotics of its block products, and the non-unique-ergodicity
//! certificates built from them.

pub mod asymptotics;
pub mod eigen;
pub mod ergodicity;
pub mod fitting;
pub mod harness;
pub mod matrix;
pub mod traintrack;

pub use matrix::{Matrix9, Ring, Vector9};
pub use traintrack::{
    block_p, gamma_vector, generator_matrix, phi_matrix, GapSequence, Generator, SeqError,
};
