//! Discrete Steklov (Dirichlet-to-Neumann) and Laplacian spectra of trees.
//!
//! * [`graph`]: trees, named families, matching number, canonical codes.
//! * [`spectra`]: Laplacian and Dirichlet-to-Neumann matrices and their
//!   verified eigendecompositions.
//! * [`closed`]: closed-form spectra and eigenfunctions of spiders, crabs and
//!   extra special graphs; exact characteristic polynomials; theorem bounds.
//! * [`enumerate`]: free trees up to isomorphism and the matching classes.
//! * [`extremal`]: exhaustive checks of the extremal bounds over those classes.

pub mod closed;
pub mod enumerate;
pub mod error;
pub mod extremal;
pub mod graph;
pub mod spectra;

pub use error::{Error, Result};
pub use graph::{BoundarySet, FamilySpec, TreeGraph};
pub use spectra::Spectrum;
