//! Exact realization of Hales-Jewett combinatorial lines as facets of
//! simplicial polytopes.
//!
//! * [`hj`] enumerates words, line patterns and the hypergraph `HJ(d,n)`.
//! * [`cover`] computes transversal numbers and weak chromatic numbers.
//! * [`realize`] builds a point set in `R^d` (planar drawing, square-root
//!   perturbation, rational snapping, Veronese map, lift).
//! * [`certify`] produces and re-checks supporting-hyperplane certificates
//!   and enumerates facets by brute force.
//! * [`io`] holds the JSON and OFF file formats.
//!
//! All geometry is exact over the rationals.

pub mod certify;
pub mod cover;
pub mod hj;
pub mod io;
pub mod ratlin;
pub mod realize;

pub use ratlin::{Hyperplane, Int, LinAlgError, Rat, Surd};

/// Rational vector.
pub type RVec = ratlin::Vector<Rat>;
/// Rational matrix.
pub type RMat = ratlin::Matrix<Rat>;
/// Integer matrix.
pub type IMat = ratlin::Matrix<Int>;
/// Double-precision matrix, for lossy consumers only.
pub type FMat = ratlin::Matrix<f64>;
