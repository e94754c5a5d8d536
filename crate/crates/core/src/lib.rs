//! Freezing, cold and unifying sets of digital images, decided by
//! exhaustive search over continuous self-maps, plus the planar geometry
//! and graph families used to construct them.

mod bitset;
pub mod error;
pub mod families;
pub mod io;
pub mod lattice;
pub mod maps;
pub mod plane;
pub mod search;
pub mod shy;
pub mod verify;

pub use error::{Error, Result};
pub use families::{CycleImage, WedgeImage};
pub use lattice::{adjacent, adjacent_or_equal, point_set, Adjacency, DigitalImage, Factor, Point, PointSet};
pub use maps::{DigitalMap, PartialMap};
pub use plane::{ClosedCurve, DiskAnalysis, FreezingConstruction, JordanDecomposition, Segment};
pub use search::{SearchConfig, StopMode, VariableOrder, DEFAULT_BUDGET};
pub use shy::ShyAnalysis;
pub use verify::{Property, VerificationReport, Verifier};
