//! IO companion to `conewalk-core`: the JSON lattice-descriptor format, the
//! hyperbolic-disk SVG renderer, and the command-line surface.

pub mod commands;
pub mod descriptor;
pub mod hyperviz;

pub use commands::{execute, Cli, Command, Outcome};
pub use descriptor::LatticeDescriptor;
