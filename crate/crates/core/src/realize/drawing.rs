use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::rng::{stream, Stage};
use super::{DrawingConfig, RealizeError, MAX_RETRIES};
use crate::hj::{enumerate_lines, LinePattern, Word};
use crate::ratlin::{dyadic, Rat};

/// A planar point `(x, y)`.
pub type Point2 = (Rat, Rat);

/// One combinatorial line drawn in the plane: its points lie on
/// `y = slope·x + intercept`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarLine {
    pub pattern: LinePattern,
    /// Word indices of `σ(τ,1), …, σ(τ,d)`.
    pub members: Vec<usize>,
    pub slope: Rat,
    pub intercept: Rat,
}

impl PlanarLine {
    /// `y_q − a_L·x_q − b_L`.
    pub fn residual(&self, q: &Point2) -> Rat {
        &q.1 - &self.slope * &q.0 - &self.intercept
    }

    pub fn sorted_members(&self) -> Vec<usize> {
        let mut m = self.members.clone();
        m.sort_unstable();
        m
    }
}

/// `p_σ = Σ σ_i v_i` for every word, plus the line equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarDrawing {
    pub d: usize,
    pub n: usize,
    pub vectors: Vec<Point2>,
    /// Indexed by word index.
    pub points: Vec<Point2>,
    pub lines: Vec<PlanarLine>,
}

impl PlanarDrawing {
    pub fn from_vectors(d: usize, n: usize, vectors: Vec<Point2>) -> Result<Self, RealizeError> {
        if vectors.len() != n {
            return Err(RealizeError::InvalidConfig(format!(
                "need {n} vectors, got {}",
                vectors.len()
            )));
        }
        let points: Vec<Point2> = Word::all(d, n)
            .map(|w| {
                let mut x = Rat::zero();
                let mut y = Rat::zero();
                for (&s, v) in w.letters().iter().zip(&vectors) {
                    let s = Rat::from_integer(BigInt::from(s));
                    x += &s * &v.0;
                    y += &s * &v.1;
                }
                (x, y)
            })
            .collect();
        let mut lines = Vec::new();
        for line in enumerate_lines(d, n)? {
            let (mut dx, mut dy) = (Rat::zero(), Rat::zero());
            for i in line.pattern().star_positions() {
                dx += &vectors[i].0;
                dy += &vectors[i].1;
            }
            if dx.is_zero() {
                return Err(RealizeError::InvalidConfig(format!(
                    "line {} is vertical",
                    line.pattern().key(d)
                )));
            }
            let slope = dy / dx;
            let members: Vec<usize> = line.words().iter().map(|w| w.index(d)).collect();
            let p = &points[members[0]];
            let intercept = &p.1 - &slope * &p.0;
            lines.push(PlanarLine {
                pattern: line.pattern().clone(),
                members,
                slope,
                intercept,
            });
        }
        Ok(PlanarDrawing {
            d,
            n,
            vectors,
            points,
            lines,
        })
    }

    /// `(line, point)` pairs breaking general position: an off-line point on
    /// the line, or (encoded with `line = usize::MAX`) a repeated point or a
    /// non-positive x-coordinate.
    pub fn violations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        if self.vectors.iter().any(|v| !v.0.is_positive()) {
            out.push((usize::MAX, usize::MAX));
        }
        let mut sorted: Vec<(&Point2, usize)> = self.points.iter().zip(0..).collect();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0].0 == w[1].0 {
                out.push((usize::MAX, w[1].1));
            }
        }
        for (i, p) in self.points.iter().enumerate() {
            if !p.0.is_positive() {
                out.push((usize::MAX, i));
            }
        }
        for (li, line) in self.lines.iter().enumerate() {
            let mut on = vec![false; self.points.len()];
            for &m in &line.members {
                on[m] = true;
            }
            for (q, p) in self.points.iter().enumerate() {
                if !on[q] && line.residual(p).is_zero() {
                    out.push((li, q));
                }
            }
        }
        out
    }
}

/// Default vectors `v_i = (1, (d+1)^i)`, falling back to seeded dyadic jitter
/// on the y-components when the drawing is not in general position.
pub fn base_drawing(cfg: &DrawingConfig) -> Result<PlanarDrawing, RealizeError> {
    let (d, n) = (cfg.d, cfg.n);
    let base: Vec<Point2> = (1..=n)
        .map(|i| {
            let y = BigInt::from(d + 1).pow(i as u32);
            (Rat::one(), Rat::from_integer(y))
        })
        .collect();
    let mut last = Vec::new();
    for attempt in 0..=MAX_RETRIES {
        let vectors = if attempt == 0 {
            base.clone()
        } else if cfg.jitter_enabled {
            let mut rng = stream(cfg.seed, Stage::DrawingJitter, attempt);
            let bound = 1i64 << 30;
            base.iter()
                .map(|(x, y)| {
                    let m = BigInt::from(rng.gen_range(-bound..=bound));
                    (x.clone(), y + dyadic(m, cfg.initial_precision))
                })
                .collect()
        } else {
            break;
        };
        let drawing = PlanarDrawing::from_vectors(d, n, vectors)?;
        let v = drawing.violations();
        if v.is_empty() {
            return Ok(drawing);
        }
        last = v
            .into_iter()
            .map(|(l, q)| {
                let line = drawing.lines.get(l).map(|l| l.pattern.key(d));
                (line.unwrap_or_else(|| "-".into()), q)
            })
            .collect();
    }
    Err(RealizeError::RetriesExhausted {
        stage: "base_drawing",
        detail: format!("violating (line, point) pairs: {last:?}"),
    })
}
