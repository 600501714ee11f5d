//! Algorithms on q-cuttable binary phylogenetic networks.

pub mod cli;
pub mod containment;
pub mod cuttable;
pub mod fixtures;
pub mod gen;
pub mod io;
pub mod net;
pub mod orient;
pub mod sat;
