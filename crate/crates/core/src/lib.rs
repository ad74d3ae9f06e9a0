pub mod map;
pub mod geometry;
pub mod cells;
pub mod properties;
pub mod verifiers;
pub mod constructions;
pub mod io;
pub mod cli;
