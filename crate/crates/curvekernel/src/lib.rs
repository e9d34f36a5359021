//! Combinatorial kernel for curves on the seven-punctured sphere.

pub mod calibrate;
pub mod coords;
pub mod generators;
pub mod moves;
pub mod trace;
pub mod triangulation;

pub use coords::Coords;
pub use moves::MoveWord;
pub use triangulation::Triangulation;
