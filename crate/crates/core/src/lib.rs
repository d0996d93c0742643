//! Combinatorics of small covers over simple polytopes.
//!
//! The crate works with 2- and 3-dimensional simple polytopes given as
//! planar maps and provides, with exact arithmetic throughout:
//!
//! - h-vectors by polynomial expansion, cross-checked against the
//!   3-polytope closed form ([`hvector`]);
//! - enumeration and classification of characteristic facet colorings,
//!   i.e. small covers, with an orientability test ([`cover`]);
//! - an independent cellular-homology oracle computing the mod-2 Betti
//!   numbers of a cover, which must reproduce the h-vector
//!   ([`homology`]);
//! - doubling towers that reflect a polytope along a facet while
//!   propagating the coloring ([`tower`]);
//! - rank-gradient lower-bound reports over such towers ([`gradient`]).

pub mod cover;
pub mod error;
pub mod gf2;
pub mod gradient;
pub mod homology;
pub mod hvector;
pub mod polytope;
pub mod tower;

pub use cover::{Coloring, CoverClassification};
pub use error::{Error, Result};
pub use gradient::{GradientReport, TowerSummary};
pub use homology::{BettiVector, QuotientComplex};
pub use hvector::HVector;
pub use polytope::{builtin, polygon, prism, FacePermutation, Polytope, ValidationReport};
pub use tower::{Strategy, TowerState};
