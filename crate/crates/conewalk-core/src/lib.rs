//! Exact-arithmetic lattice geometry for algebraic surfaces.
//!
//! Everything here is computed over arbitrary-precision integers (rationals
//! appear only as transient values inside eliminations), so signatures,
//! determinants, class counts and cone rays are certificates rather than
//! approximations. The crate is `no_std` + `alloc`; IO, file formats and
//! figure rendering live in the companion `conewalk` crate.
//!
//! Module map:
//! - [`lattice`]: integral symmetric bilinear forms, reflections, complements
//! - [`enumeration`]: exhaustive bounded searches for classes of a given norm
//! - [`cones`]: positive-cone tests, chamber walks, exact dual cones
//! - [`isometry`]: integral isometries and the elliptic/parabolic/hyperbolic split
//! - [`surfaces`]: blow-up models, Mordell-Weil ranks, the example registry
//! - [`poly`], [`matrix`]: the exact linear and polynomial algebra underneath

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cones;
pub mod enumeration;
pub mod isometry;
pub mod lattice;
pub mod matrix;
pub mod poly;
pub mod surfaces;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use cones::{ChamberWalkResult, ExtremalRays, NefCheck, RationalCone, WalkPolicy};
pub use enumeration::{ClassQuery, ClassSearch, MarkedLattice, RootSet};
pub use isometry::{IsometryKind, LatticeIsometry, Order};
pub use lattice::{LatticeSpace, LatticeVector, Signature};
pub use surfaces::SurfaceModel;
