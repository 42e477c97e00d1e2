//! Orbit decompositions of intersections of symmetric hypersurfaces in P2 and P3.

pub mod exactnum;
pub mod fixedpoints;
pub mod group;
pub mod linalg;
pub mod poly;
pub mod solver;
pub mod verify;
