//! Edge-isoperimetric problems on integer lattices.
//!
//! The king graph on the quadrant `N^2` (two cells adjacent when their
//! `l_inf` distance is one) gets the most attention: a normalization
//! pipeline that reduces every finite set to a staircase, a closed-form
//! optimizer over staircases, certified bounds, and an exhaustive search
//! over polykings for small volumes.

pub mod bounds;
pub mod exact;
pub mod interval;
pub mod io;
pub mod lattice;
pub mod reduction;
pub mod staircase;

pub use lattice::{edge_boundary, CellSet, GridSpec, NormExponent, Point, Rational};
pub use reduction::{normalize, Normalized, TransformTrace};
pub use staircase::{optimize, StaircaseOptimum, StaircaseParams};
