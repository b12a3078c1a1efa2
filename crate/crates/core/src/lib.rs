//! Mathematical morphology for grayscale images on arbitrary finite subsets
//! of the integer lattice.
//!
//! The four flat operators (erosion, dilation, opening, closing) restrict the
//! structuring element to the part of the domain that is actually present, so
//! no padding convention leaks into the results. On such restricted domains
//! the classical rule "`B1 ⊆ B2` implies nested openings" fails; this crate
//! implements the two finite relations that repair it:
//!
//! * **shift inclusion** relative to a pixel set ([`inclusion::check_shift_inclusion`]),
//!   which guarantees nesting of openings and closings over the zero sets, and
//! * **weak shift inclusion** ([`inclusion::check_weak_shift_inclusion`]),
//!   which is exactly equivalent to the nesting property.
//!
//! [`constructors`] builds sequences of structuring elements that satisfy the
//! relations by construction, [`oracle`] exhaustively verifies properties on
//! all binary images over small domains, and the `morphkit` binary exposes
//! everything on the command line.

pub mod catalog;
pub mod constructors;
pub mod diagram;
pub mod error;
pub mod geometry;
pub mod image;
pub mod inclusion;
pub mod io;
pub mod oracle;

pub use error::{MorphError, Result};
pub use geometry::{PixelSet, Point, PointSet, StructuringElement};
pub use image::Image;
