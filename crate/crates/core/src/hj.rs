//! Words over `[d]`, line patterns, combinatorial lines, and `HJ(d,n)`.
//!
//! Vertex numbering: a word `(σ_1, …, σ_n)` has index
//! `Σ (σ_i − 1)·d^(n−i)`, i.e. its base-`d` rank with position 1 most
//! significant and letter `k` read as digit `k − 1`. Every module and file
//! format uses this numbering.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Default bound on `(d+1)^n` for line enumeration.
pub const DEFAULT_PATTERN_CAP: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HjError {
    #[error("alphabet size must be at least 2, got {0}")]
    AlphabetTooSmall(usize),
    #[error("word length must be at least 1")]
    EmptyWord,
    #[error("letter {letter} outside 1..={d}")]
    LetterOutOfRange { letter: usize, d: usize },
    #[error("line pattern has no wildcard")]
    NoWildcard,
    #[error("(d+1)^n exceeds the enumeration cap {cap}")]
    TooManyPatterns { cap: u64 },
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),
}

fn check_alphabet(d: usize, n: usize) -> Result<(), HjError> {
    if d < 2 {
        return Err(HjError::AlphabetTooSmall(d));
    }
    if n < 1 {
        return Err(HjError::EmptyWord);
    }
    Ok(())
}

/// A word in `[d]^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>, d: usize) -> Result<Self, HjError> {
        if letters.is_empty() {
            return Err(HjError::EmptyWord);
        }
        if let Some(&letter) = letters.iter().find(|&&l| l < 1 || l > d) {
            return Err(HjError::LetterOutOfRange { letter, d });
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index(&self, d: usize) -> usize {
        self.0.iter().fold(0, |acc, &l| acc * d + (l - 1))
    }

    pub fn from_index(mut index: usize, d: usize, n: usize) -> Self {
        let mut letters = vec![0; n];
        for slot in letters.iter_mut().rev() {
            *slot = index % d + 1;
            index /= d;
        }
        Word(letters)
    }

    /// All of `[d]^n` in index order.
    pub fn all(d: usize, n: usize) -> impl Iterator<Item = Word> {
        let count = d.pow(n as u32);
        (0..count).map(move |i| Word::from_index(i, d, n))
    }

    /// Digits for `d ≤ 9`, comma-separated numbers otherwise.
    pub fn key(&self, d: usize) -> String {
        join_symbols(self.0.iter().map(|l| l.to_string()), d)
    }

    pub fn parse(s: &str, d: usize) -> Result<Self, HjError> {
        let letters = split_symbols(s, d)?
            .into_iter()
            .map(|t| t.parse::<usize>().map_err(|_| HjError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Word::new(letters, d)
    }
}

fn join_symbols(it: impl Iterator<Item = String>, d: usize) -> String {
    let parts: Vec<String> = it.collect();
    if d > 9 {
        parts.join(",")
    } else {
        parts.concat()
    }
}

fn split_symbols(s: &str, d: usize) -> Result<Vec<String>, HjError> {
    if s.is_empty() {
        return Err(HjError::Parse(s.to_string()));
    }
    Ok(if d > 9 {
        s.split(',').map(|t| t.trim().to_string()).collect()
    } else {
        s.chars().map(String::from).collect()
    })
}

/// A symbol of a line pattern: a fixed letter or the wildcard `*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Letter(usize),
    Star,
}

/// An element of `([d] ∪ {*})^n` with at least one `*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinePattern(Vec<Symbol>);

impl LinePattern {
    pub fn new(symbols: Vec<Symbol>, d: usize) -> Result<Self, HjError> {
        if symbols.is_empty() {
            return Err(HjError::EmptyWord);
        }
        if !symbols.contains(&Symbol::Star) {
            return Err(HjError::NoWildcard);
        }
        for s in &symbols {
            if let Symbol::Letter(l) = *s {
                if l < 1 || l > d {
                    return Err(HjError::LetterOutOfRange { letter: l, d });
                }
            }
        }
        Ok(LinePattern(symbols))
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn star_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(i, s)| (*s == Symbol::Star).then_some(i))
    }

    pub fn key(&self, d: usize) -> String {
        join_symbols(
            self.0.iter().map(|s| match s {
                Symbol::Letter(l) => l.to_string(),
                Symbol::Star => "*".to_string(),
            }),
            d,
        )
    }

    pub fn parse(s: &str, d: usize) -> Result<Self, HjError> {
        let symbols = split_symbols(s, d)?
            .into_iter()
            .map(|t| t.parse::<Symbol>().map_err(|_| HjError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        LinePattern::new(symbols, d)
    }
}

/// `σ(τ, k)`: the pattern with every `*` replaced by `k`.
pub fn substitute(pattern: &LinePattern, k: usize, d: usize) -> Result<Word, HjError> {
    if k < 1 || k > d {
        return Err(HjError::LetterOutOfRange { letter: k, d });
    }
    let letters = pattern
        .0
        .iter()
        .map(|s| match *s {
            Symbol::Letter(l) => l,
            Symbol::Star => k,
        })
        .collect();
    Word::new(letters, d)
}

/// A combinatorial line: `σ(τ,1), …, σ(τ,d)` in that order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Line {
    pattern: LinePattern,
    words: Vec<Word>,
}

impl Line {
    pub fn pattern(&self) -> &LinePattern {
        &self.pattern
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn vertex_set(&self, d: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.words.iter().map(|w| w.index(d)).collect();
        v.sort_unstable();
        v
    }
}

pub fn line_of(pattern: &LinePattern, d: usize) -> Result<Line, HjError> {
    let words = (1..=d)
        .map(|k| substitute(pattern, k, d))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Line {
        pattern: pattern.clone(),
        words,
    })
}

fn pattern_count(d: usize, n: usize, cap: u64) -> Result<u64, HjError> {
    (d as u64 + 1)
        .checked_pow(n as u32)
        .filter(|&c| c <= cap)
        .ok_or(HjError::TooManyPatterns { cap })
}

/// Every combinatorial line of `HJ(d,n)` once, ordered lexicographically by
/// pattern with `1 < 2 < … < d < *`.
pub fn enumerate_lines(d: usize, n: usize) -> Result<Vec<Line>, HjError> {
    enumerate_lines_capped(d, n, DEFAULT_PATTERN_CAP)
}

pub fn enumerate_lines_capped(d: usize, n: usize, cap: u64) -> Result<Vec<Line>, HjError> {
    check_alphabet(d, n)?;
    let total = pattern_count(d, n, cap)?;
    let mut lines = Vec::with_capacity((total - (d as u64).pow(n as u32)) as usize);
    // Odometer over base-(d+1) digits; digit d encodes `*`.
    let mut digits = vec![0usize; n];
    for _ in 0..total {
        if digits.contains(&d) {
            let symbols = digits
                .iter()
                .map(|&g| if g == d { Symbol::Star } else { Symbol::Letter(g + 1) })
                .collect();
            let pattern = LinePattern(symbols);
            lines.push(line_of(&pattern, d)?);
        }
        for slot in digits.iter_mut().rev() {
            *slot += 1;
            if *slot <= d {
                break;
            }
            *slot = 0;
        }
    }
    Ok(lines)
}

/// Finite hypergraph on vertices `0..vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    vertex_count: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Sorts and dedups each edge; rejects empty edges, repeated edges and
    /// out-of-range indices.
    pub fn new(vertex_count: usize, edges: Vec<Vec<usize>>) -> Result<Self, HjError> {
        let mut seen = HashSet::with_capacity(edges.len());
        let mut out = Vec::with_capacity(edges.len());
        for mut e in edges {
            e.sort_unstable();
            e.dedup();
            if e.is_empty() {
                return Err(HjError::InvalidHypergraph("empty edge".into()));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= vertex_count) {
                return Err(HjError::InvalidHypergraph(format!(
                    "vertex {v} out of range 0..{vertex_count}"
                )));
            }
            if !seen.insert(e.clone()) {
                return Err(HjError::InvalidHypergraph(format!("repeated edge {e:?}")));
            }
            out.push(e);
        }
        Ok(Hypergraph {
            vertex_count,
            edges: out,
        })
    }

    pub fn edgeless(vertex_count: usize) -> Self {
        Hypergraph {
            vertex_count,
            edges: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Copy with one more edge; `None` if it is invalid or already present.
    pub fn with_edge(&self, edge: Vec<usize>) -> Option<Self> {
        let mut edges = self.edges.clone();
        edges.push(edge);
        Hypergraph::new(self.vertex_count, edges).ok()
    }
}

/// `HJ(d,n)` together with the pattern of each edge (same order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HjHypergraph {
    pub d: usize,
    pub n: usize,
    pub hypergraph: Hypergraph,
    pub patterns: Vec<LinePattern>,
}

pub fn hj_hypergraph(d: usize, n: usize) -> Result<HjHypergraph, HjError> {
    let lines = enumerate_lines(d, n)?;
    let vertex_count = d.pow(n as u32);
    let patterns = lines.iter().map(|l| l.pattern.clone()).collect();
    let edges = lines.iter().map(|l| l.vertex_set(d)).collect();
    Ok(HjHypergraph {
        d,
        n,
        hypergraph: Hypergraph::new(vertex_count, edges)?,
        patterns,
    })
}

impl fmt::Display for LinePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|s| match s {
                Symbol::Letter(l) => l.to_string(),
                Symbol::Star => "*".into(),
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Symbol {
    type Err = HjError;
    fn from_str(s: &str) -> Result<Self, HjError> {
        if s == "*" {
            Ok(Symbol::Star)
        } else {
            s.parse().map(Symbol::Letter).map_err(|_| HjError::Parse(s.into()))
        }
    }
}
