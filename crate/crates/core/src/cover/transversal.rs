use super::{CoverError, Deadline, NoDeadline, TauSolution, Transversal, DEFAULT_BRUTEFORCE_CAP};
use crate::hj::Hypergraph;

/// Minimum transversal by trying every subset of size 0, 1, 2, …; the
/// first hitting subset in lexicographic order is the witness.
pub fn tau_bruteforce(h: &Hypergraph) -> Result<TauSolution, CoverError> {
    tau_bruteforce_capped(h, DEFAULT_BRUTEFORCE_CAP)
}

pub fn tau_bruteforce_capped(h: &Hypergraph, cap: usize) -> Result<TauSolution, CoverError> {
    let n = h.vertex_count();
    if n > cap.min(64) {
        return Err(CoverError::CapExceeded {
            vertex_count: n,
            cap,
        });
    }
    let masks: Vec<u64> = h
        .edges()
        .iter()
        .map(|e| e.iter().fold(0u64, |m, &v| m | (1 << v)))
        .collect();
    for k in 0..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let set = idx.iter().fold(0u64, |m, &v| m | (1 << v));
            if masks.iter().all(|&e| e & set != 0) {
                return Ok(TauSolution::exact(Transversal::new(idx)));
            }
            // next k-combination of 0..n in lex order
            let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    unreachable!("the full vertex set hits every nonempty edge")
}

/// Exact transversal number by branch and bound.
pub fn tau_exact(h: &Hypergraph) -> TauSolution {
    tau_exact_with_deadline(h, &NoDeadline)
}

/// Branch and bound: branch on the uncovered edge with the fewest available
/// vertices (lowest index on ties), picking its vertices in increasing order
/// and excluding each one from the later sibling branches. Pruning uses a
/// greedy packing of vertex-disjoint uncovered edges; the incumbent starts as
/// the greedy max-degree hitting set.
pub fn tau_exact_with_deadline(h: &Hypergraph, deadline: &dyn Deadline) -> TauSolution {
    let mut search = Search::new(h, deadline);
    let root_lb = search.packing_bound();
    let greedy = search.greedy();
    search.best = greedy;
    if root_lb < search.best.len() {
        search.recurse();
    }
    let witness = Transversal::new(search.best.clone());
    let tau = witness.len();
    if search.aborted {
        TauSolution {
            tau,
            witness,
            exact: false,
            bounds: (root_lb, tau),
        }
    } else {
        TauSolution::exact(witness)
    }
}

const DEADLINE_POLL: u64 = 256;

struct Search<'a> {
    edges: &'a [Vec<usize>],
    incidence: Vec<Vec<usize>>,
    hits: Vec<usize>,
    chosen: Vec<usize>,
    in_set: Vec<bool>,
    excluded: Vec<bool>,
    best: Vec<usize>,
    deadline: &'a dyn Deadline,
    nodes: u64,
    aborted: bool,
}

impl<'a> Search<'a> {
    fn new(h: &'a Hypergraph, deadline: &'a dyn Deadline) -> Self {
        let n = h.vertex_count();
        let mut incidence = vec![Vec::new(); n];
        for (i, e) in h.edges().iter().enumerate() {
            for &v in e {
                incidence[v].push(i);
            }
        }
        Search {
            edges: h.edges(),
            incidence,
            hits: vec![0; h.edge_count()],
            chosen: Vec::new(),
            in_set: vec![false; n],
            excluded: vec![false; n],
            best: (0..n).collect(),
            deadline,
            nodes: 0,
            aborted: false,
        }
    }

    fn available(&self, e: usize) -> usize {
        self.edges[e]
            .iter()
            .filter(|&&v| !self.excluded[v])
            .count()
    }

    fn choose(&mut self, v: usize) {
        self.in_set[v] = true;
        self.chosen.push(v);
        for &e in &self.incidence[v] {
            self.hits[e] += 1;
        }
    }

    fn unchoose(&mut self, v: usize) {
        self.in_set[v] = false;
        self.chosen.pop();
        for &e in &self.incidence[v] {
            self.hits[e] -= 1;
        }
    }

    /// Uncovered edges sorted by (available size, index).
    fn uncovered(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.edges.len())
            .filter(|&e| self.hits[e] == 0)
            .map(|e| (self.available(e), e))
            .collect();
        out.sort_unstable();
        out
    }

    fn packing_bound_of(&self, uncovered: &[(usize, usize)]) -> usize {
        let mut used = vec![false; self.in_set.len()];
        let mut count = 0;
        for &(_, e) in uncovered {
            let avail = self.edges[e].iter().filter(|&&v| !self.excluded[v]);
            if avail.clone().any(|&v| used[v]) {
                continue;
            }
            for &v in avail {
                used[v] = true;
            }
            count += 1;
        }
        count
    }

    fn packing_bound(&self) -> usize {
        self.packing_bound_of(&self.uncovered())
    }

    fn greedy(&mut self) -> Vec<usize> {
        let n = self.in_set.len();
        let mut covered = vec![false; self.edges.len()];
        let mut picked = Vec::new();
        loop {
            let mut best: Option<(usize, usize)> = None;
            for v in 0..n {
                let deg = self.incidence[v].iter().filter(|&&e| !covered[e]).count();
                if deg > 0 && best.is_none_or(|(bd, _)| deg > bd) {
                    best = Some((deg, v));
                }
            }
            let Some((_, v)) = best else { break };
            picked.push(v);
            for &e in &self.incidence[v] {
                covered[e] = true;
            }
        }
        picked
    }

    fn recurse(&mut self) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(DEADLINE_POLL) && self.deadline.expired() {
            self.aborted = true;
            return;
        }
        let uncovered = self.uncovered();
        let Some(&(size, edge)) = uncovered.first() else {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        };
        if size == 0 {
            return;
        }
        if self.chosen.len() + self.packing_bound_of(&uncovered) >= self.best.len() {
            return;
        }
        let branch: Vec<usize> = self.edges[edge]
            .iter()
            .copied()
            .filter(|&v| !self.excluded[v])
            .collect();
        for &v in &branch {
            self.choose(v);
            self.recurse();
            self.unchoose(v);
            self.excluded[v] = true;
            if self.aborted {
                break;
            }
        }
        for &v in &branch {
            self.excluded[v] = false;
        }
    }
}
