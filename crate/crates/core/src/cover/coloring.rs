use super::{Coloring, CoverError};
use crate::hj::Hypergraph;

/// Largest vertex count the exhaustive `k^|V|` oracle accepts.
pub const DEFAULT_CHI_ORACLE_CAP: usize = 12;

fn reject_small_edges(h: &Hypergraph) -> Result<(), CoverError> {
    match h.edges().iter().find(|e| e.len() < 2) {
        Some(e) => Err(CoverError::SizeOneEdge(e.clone())),
        None => Ok(()),
    }
}

/// True iff `coloring` is total and no edge is monochromatic.
pub fn is_weak_coloring(h: &Hypergraph, coloring: &Coloring) -> bool {
    let c = coloring.colors();
    c.len() == h.vertex_count()
        && h
            .edges()
            .iter()
            .all(|e| e.iter().any(|&v| c[v] != c[e[0]]))
}

/// Weak chromatic number with a witness.
///
/// Tries `k = 1, 2, …` with backtracking over vertices in index order; a
/// vertex may only open the next unused color, so vertex 0 is always color 1.
/// An edge is checked once its largest vertex is colored.
pub fn chi_weak(h: &Hypergraph) -> Result<(usize, Coloring), CoverError> {
    reject_small_edges(h)?;
    let n = h.vertex_count();
    if n == 0 {
        return Ok((0, Coloring::new(Vec::new())));
    }
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in h.edges().iter().enumerate() {
        closing[*e.last().expect("edges are nonempty")].push(i);
    }
    for k in 1..=n {
        let mut colors = vec![0usize; n];
        if backtrack(h, &closing, k, 0, 0, &mut colors) {
            return Ok((k, Coloring::new(colors)));
        }
    }
    unreachable!("n distinct colors always work when every edge has two vertices")
}

fn backtrack(
    h: &Hypergraph,
    closing: &[Vec<usize>],
    k: usize,
    v: usize,
    used: usize,
    colors: &mut [usize],
) -> bool {
    if v == colors.len() {
        return true;
    }
    for c in 1..=k.min(used + 1) {
        colors[v] = c;
        let ok = closing[v].iter().all(|&e| {
            let edge = &h.edges()[e];
            edge.iter().any(|&u| colors[u] != c)
        });
        if ok && backtrack(h, closing, k, v + 1, used.max(c), colors) {
            return true;
        }
    }
    colors[v] = 0;
    false
}

/// Exhaustive oracle: for `k = 1, 2, …` scans all `k^|V|` colorings in
/// lexicographic order.
pub fn chi_bruteforce(h: &Hypergraph) -> Result<(usize, Coloring), CoverError> {
    reject_small_edges(h)?;
    let n = h.vertex_count();
    if n > DEFAULT_CHI_ORACLE_CAP {
        return Err(CoverError::CapExceeded {
            vertex_count: n,
            cap: DEFAULT_CHI_ORACLE_CAP,
        });
    }
    if n == 0 {
        return Ok((0, Coloring::new(Vec::new())));
    }
    for k in 1..=n {
        let mut colors = vec![1usize; n];
        loop {
            let c = Coloring::new(colors.clone());
            if is_weak_coloring(h, &c) {
                return Ok((k, c));
            }
            let Some(i) = (0..n).rev().find(|&i| colors[i] < k) else {
                break;
            };
            colors[i] += 1;
            for slot in &mut colors[i + 1..] {
                *slot = 1;
            }
        }
    }
    unreachable!("n distinct colors always work when every edge has two vertices")
}
