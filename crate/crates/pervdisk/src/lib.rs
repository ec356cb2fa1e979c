//! Workbench for the linear algebra of perverse sheaves on a disk with
//! marked points.
//!
//! Objects live in three interchangeable presentations, all with exact
//! rational entries:
//!
//! * [`PervQuiver`]: a nearby-cycles space with one vanishing-cycles space
//!   per marked point and maps both ways, subject to invertibility of the
//!   local monodromies `I - v u`;
//! * [`SymDiagram`]: a three-space diagram with section/retraction and
//!   cross-invertibility conditions (one marked point);
//! * [`DoubleCube`]: two commuting families of edge maps on the face poset
//!   of an `r`-cube.
//!
//! On top of the presentations sit the braid-group action on quivers
//! ([`braid`]), the wall-crossing transition matrices and their triangle
//! identity ([`plcalc`]), and conversions and duality ([`sympair`],
//! [`cube`]). Everything is generic over an exact field scalar
//! ([`Scalar`]); the concrete aliases below fix the rational
//! instantiation.

pub mod braid;
pub mod cube;
pub mod error;
pub mod exactlin;
pub mod json;
pub mod plcalc;
pub mod quiver;
pub mod random;
pub mod suite;
pub mod sympair;

pub use braid::BraidWord;
pub use cube::DoubleCube;
pub use error::{Error, Result};
pub use exactlin::{solve_in_basis, Matrix, Rat, Scalar};
pub use plcalc::ArcSpec;
pub use quiver::{PervQuiver, QuiverMorphism};
pub use sympair::SymDiagram;

/// Matrices with exact rational entries, the workbench's standard scalar.
pub type RatMatrix = Matrix<Rat>;
