//! Transversal number, transversal ratio and weak chromatic number.
//!
//! Each exact solver has a brute-force twin used as its oracle.

mod coloring;
pub mod family;
mod transversal;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use thiserror::Error;

use crate::hj::Hypergraph;
use crate::ratlin::Rat;

pub use coloring::{chi_bruteforce, chi_weak, is_weak_coloring, DEFAULT_CHI_ORACLE_CAP};
pub use transversal::{tau_bruteforce, tau_bruteforce_capped, tau_exact, tau_exact_with_deadline};

/// Default vertex cap for [`tau_bruteforce`].
pub const DEFAULT_BRUTEFORCE_CAP: usize = 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("vertex {vertex} out of range for {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("{vertex_count} vertices exceeds the brute-force cap {cap}")]
    CapExceeded { vertex_count: usize, cap: usize },
    #[error("hypergraph has no vertices")]
    EmptyVertexSet,
    #[error("edge {0:?} has a single vertex; no weak coloring exists")]
    SizeOneEdge(Vec<usize>),
}

/// A vertex set, sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Transversal(Vec<usize>);

impl Transversal {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Transversal(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Colors `1..=k` indexed by vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring(Vec<usize>);

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Self {
        Coloring(colors)
    }

    pub fn colors(&self) -> &[usize] {
        &self.0
    }

    pub fn color_count(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

/// Outcome of a transversal search. When `exact` is false the search ran out
/// of time: `tau` and `witness` are the best transversal found and `bounds`
/// brackets the true value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauSolution {
    pub tau: usize,
    pub witness: Transversal,
    pub exact: bool,
    pub bounds: (usize, usize),
}

impl TauSolution {
    fn exact(witness: Transversal) -> Self {
        let tau = witness.len();
        TauSolution {
            tau,
            witness,
            exact: true,
            bounds: (tau, tau),
        }
    }
}

pub fn check_transversal(h: &Hypergraph, s: &Transversal) -> Result<bool, CoverError> {
    let n = h.vertex_count();
    let mut mark = vec![false; n];
    for &v in s.vertices() {
        if v >= n {
            return Err(CoverError::VertexOutOfRange {
                vertex: v,
                vertex_count: n,
            });
        }
        mark[v] = true;
    }
    Ok(h.edges().iter().all(|e| e.iter().any(|&v| mark[v])))
}

/// `τ(H) / |V|`.
pub fn rho(h: &Hypergraph) -> Result<Rat, CoverError> {
    if h.vertex_count() == 0 {
        return Err(CoverError::EmptyVertexSet);
    }
    let tau = tau_exact(h).tau;
    Ok(Rat::new(BigInt::from(tau), BigInt::from(h.vertex_count())))
}

/// `(χ − 1) / χ`, the upper bound on `ρ` implied by a weak `χ`-coloring.
pub fn weak_coloring_bound(chi: usize) -> Rat {
    if chi == 0 {
        return Rat::from_integer(BigInt::from(0));
    }
    Rat::new(BigInt::from(chi - 1), BigInt::from(chi))
}

/// Injected time limit for the exact solvers.
pub trait Deadline {
    fn expired(&self) -> bool;
}

/// Never expires.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoDeadline;

impl Deadline for NoDeadline {
    fn expired(&self) -> bool {
        false
    }
}

/// Expires at a fixed wall-clock instant.
#[derive(Clone, Copy, Debug)]
pub struct WallClock(Instant);

impl WallClock {
    pub fn after(budget: Duration) -> Self {
        WallClock(Instant::now() + budget)
    }
}

impl Deadline for WallClock {
    fn expired(&self) -> bool {
        Instant::now() >= self.0
    }
}
