//! Exact scalar and linear-algebra kernel.
//!
//! The matrix routines are generic over [`Scalar`]; the rational entry points
//! ([`det`], [`rank`], [`hyperplane_through`], [`affinely_independent`]) clear
//! denominators and run fraction-free elimination over the integers.

mod hyperplane;
mod matrix;
mod scalar;
mod surd;

use thiserror::Error;

pub use hyperplane::{hyperplane_through, Hyperplane};
pub use matrix::{det, integer_rows, inverse, rank, Matrix, Vector};
pub use scalar::{
    dyadic, format_decimal, format_rat, int, lcm_denominators, parse_rat, rat, rational_sqrt,
    sign_of, Int, Rat, Scalar,
};
pub use surd::{surd_sign, Surd};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("points are affinely dependent")]
    AffinelyDependent,
    #[error("hyperplane normal is the zero vector")]
    ZeroNormal,
    #[error("matrix is singular")]
    Singular,
    #[error("need at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("negative radicand {0}")]
    NegativeRadicand(String),
    #[error("surds with different radicands cannot be combined")]
    RadicandMismatch,
}

/// True iff the rows `(1, p_i)` are linearly independent.
pub fn affinely_independent(points: &[Vector<Rat>]) -> bool {
    let Some(first) = points.first() else {
        return true;
    };
    let d = first.len();
    if points.len() > d + 1 || points.iter().any(|p| p.len() != d) {
        return false;
    }
    let rows = points
        .iter()
        .map(|p| {
            let mut row = Vec::with_capacity(d + 1);
            row.push(int(1));
            row.extend_from_slice(p.as_slice());
            row
        })
        .collect();
    match Matrix::from_rows(rows) {
        Ok(m) => rank(&m) == points.len(),
        Err(_) => false,
    }
}
