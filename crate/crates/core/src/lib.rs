//! Enumeration and verification tools for one-cusped hyperbolic reflection
//! orbifolds and rigid-cusped orientable quotients.

pub mod orb2d;
pub mod siggraph;
pub mod homology;
pub mod barrier;
pub mod citations;
pub mod cli;
pub mod enumerator;
pub mod geomvol;
