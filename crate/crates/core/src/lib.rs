pub mod automorphism;
pub mod cli;
pub mod config;
pub mod constructions;
pub mod error;
pub mod group;
pub mod hom;
pub mod intmat;
pub mod io;
pub mod lattice;
pub mod sft;
pub mod solver;
