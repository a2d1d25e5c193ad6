//! Construction of the 14-dimensional symmetry algebra of the
//! seven-dimensional cross product inside so(7), together with the
//! analytic machinery it certifies numerically: the conformality form in
//! defining-sum and closed forms, Laplace/conformality eigenfamilies of
//! matrix coefficients on the associated subgroup of SO(7), symmetric
//! powers, and rational harmonic-morphism candidates.
//!
//! Everything is double precision and property-tested: the `verify`
//! module packages every identity as a seeded residual check with a
//! pinned tolerance, and the CLI (`g2kit` binary) exposes those checks
//! plus JSON emission of the basis, eigenfamily reports and
//! harmonic-morphism reports.
//!
//! All complex pairings in this crate are complex-bilinear; no Hermitian
//! product appears anywhere.

pub mod euclid7;
pub mod g2alg;
pub mod group;
pub mod harmonic;
pub mod mat;
pub mod report;
pub mod sample;
pub mod text;
pub mod verify;
pub mod wedge;

pub use euclid7::{Vec7C, Vec7R};
pub use g2alg::{build_g2_basis, G2Basis};
pub use group::G2Element;
pub use harmonic::{EigenFamily, EigenFunction, PolyFn, RationalMap};
pub use mat::Mat7;
pub use report::{CheckOutcome, QReport};
pub use wedge::{SkewMat7, Wedge2};
