//! Geometry of the digital plane: segments, closed curves, disks and the
//! freezing-set constructions that depend on them.

pub mod construct;
pub mod curve;
pub mod disk;
pub mod segment;

pub use construct::*;
pub use curve::*;
pub use disk::*;
pub use segment::*;
