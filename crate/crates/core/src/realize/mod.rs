//! Construction of a point set in `R^d` whose combinatorial lines are facets.
//!
//! Stages: planar drawing of `[d]^n` with every line on its own straight
//! line; the perturbation `(x, y) ↦ (x, y + √(εx))`, which moves each line
//! onto a parabola; rounding to rationals; the Veronese map into `R^5`; and
//! for `d > 5` a generic lift. Every stage after rounding is re-certified
//! exactly, and the rounding precision doubles until the certificates pass.

mod drawing;
mod lift;
mod perturb;
mod rng;

use thiserror::Error;

use crate::certify::{self, CertificateBundle, CertifyError};
use crate::hj::{HjError, LinePattern};
use crate::ratlin::{LinAlgError, Rat};
use crate::RVec;

pub use drawing::{base_drawing, PlanarDrawing, PlanarLine, Point2};
pub use lift::{append_coordinates, first_dependent_line, lift, veronese};
pub use perturb::{
    choose_epsilon, dyadic_unit, parabola_value, snap, surd_perturb, surd_stage_check,
    SurdConfiguration, MAX_SNAP_POINTS,
};

/// Retry budget for the jittered drawing and for the lift.
pub const MAX_RETRIES: u32 = 32;
pub const DEFAULT_PRECISION: u32 = 64;
pub const DEFAULT_MAX_PRECISION: u32 = 2048;

#[derive(Debug, Error)]
pub enum RealizeError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("{d}^{n} points cannot affinely span R^{d} (need at least {needed})")]
    DegenerateSize { d: usize, n: usize, needed: usize },
    #[error("{stage}: retries exhausted; {detail}")]
    RetriesExhausted { stage: &'static str, detail: String },
    #[error("line {pattern}: parabola has sign {sign} at vertex {vertex} before rounding")]
    SurdStage { pattern: String, vertex: usize, sign: i8 },
    #[error("precision cap {cap} bits reached; last failure: {last}")]
    PrecisionExhausted { cap: u32, last: String },
    #[error(transparent)]
    Hj(#[from] HjError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrawingConfig {
    pub d: usize,
    pub n: usize,
    pub seed: u64,
    pub epsilon_override: Option<Rat>,
    pub initial_precision: u32,
    pub max_precision: u32,
    pub jitter_enabled: bool,
}

impl DrawingConfig {
    pub fn new(d: usize, n: usize, seed: u64) -> Self {
        DrawingConfig {
            d,
            n,
            seed,
            epsilon_override: None,
            initial_precision: DEFAULT_PRECISION,
            max_precision: DEFAULT_MAX_PRECISION,
            jitter_enabled: true,
        }
    }

    /// Requirements of the full pipeline: `d ≥ 5` and `d^n ≥ d + 1`.
    pub fn validate(&self) -> Result<(), RealizeError> {
        if self.d < 5 {
            return Err(RealizeError::InvalidConfig(format!(
                "dimension must be at least 5, got {}",
                self.d
            )));
        }
        if self.n < 1 {
            return Err(RealizeError::InvalidConfig("n must be at least 1".into()));
        }
        let count = (self.d as u128).checked_pow(self.n as u32);
        if count.is_some_and(|c| c < self.d as u128 + 1) {
            return Err(RealizeError::DegenerateSize {
                d: self.d,
                n: self.n,
                needed: self.d + 1,
            });
        }
        if count.is_none_or(|c| c > MAX_SNAP_POINTS as u128) {
            return Err(RealizeError::InvalidConfig(format!(
                "{}^{} points exceeds the supported {MAX_SNAP_POINTS}",
                self.d, self.n
            )));
        }
        if self.initial_precision < 16 || self.initial_precision > self.max_precision {
            return Err(RealizeError::InvalidConfig(format!(
                "precision must satisfy 16 <= {} <= {}",
                self.initial_precision, self.max_precision
            )));
        }
        Ok(())
    }
}

/// Exact point set in `R^d`, one point per word (by word index).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub d: usize,
    pub n: usize,
    pub epsilon: Rat,
    pub precision_bits: u32,
    pub seed: u64,
    pub points: Vec<RVec>,
    /// Each line's pattern and sorted vertex indices, in pattern order.
    pub lines: Vec<(LinePattern, Vec<usize>)>,
}

impl Realization {
    /// The rounded planar point, read back from coordinates 4 and 5.
    pub fn planar_point(&self, i: usize) -> Point2 {
        let p = &self.points[i];
        (p[3].clone(), p[4].clone())
    }

    pub fn line_sets(&self) -> Vec<Vec<usize>> {
        self.lines.iter().map(|(_, v)| v.clone()).collect()
    }
}

/// A realization with certificates that all passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedRealization {
    pub realization: Realization,
    pub certificates: CertificateBundle,
}

/// Runs every stage and re-snaps at doubled precision until the
/// certificates pass or `max_precision` is exceeded.
pub fn realize_pipeline(cfg: &DrawingConfig) -> Result<CertifiedRealization, RealizeError> {
    cfg.validate()?;
    let drawing = base_drawing(cfg)?;
    let epsilon = match &cfg.epsilon_override {
        Some(e) => e.clone(),
        None => choose_epsilon(&drawing),
    };
    let surds = surd_perturb(&drawing, &epsilon)?;
    surd_stage_check(&drawing, &surds)?;

    let lines: Vec<(LinePattern, Vec<usize>)> = drawing
        .lines
        .iter()
        .map(|l| (l.pattern.clone(), l.sorted_members()))
        .collect();
    let line_sets: Vec<Vec<usize>> = lines.iter().map(|(_, v)| v.clone()).collect();

    let mut precision = cfg.initial_precision;
    loop {
        let failure = match attempt(cfg, &surds, &lines, &line_sets, &epsilon, precision) {
            Ok(done) => return Ok(done),
            Err(e) => e,
        };
        match precision.checked_mul(2) {
            Some(next) if next <= cfg.max_precision => precision = next,
            _ => {
                return Err(RealizeError::PrecisionExhausted {
                    cap: cfg.max_precision,
                    last: failure,
                })
            }
        }
    }
}

fn attempt(
    cfg: &DrawingConfig,
    surds: &SurdConfiguration,
    lines: &[(LinePattern, Vec<usize>)],
    line_sets: &[Vec<usize>],
    epsilon: &Rat,
    precision: u32,
) -> Result<CertifiedRealization, String> {
    let planar = snap(surds, precision, cfg.seed, cfg.jitter_enabled).map_err(|e| e.to_string())?;
    let points5: Vec<RVec> = planar.iter().map(veronese).collect();
    let points = lift(&points5, line_sets, cfg.d, cfg.seed, precision).map_err(|e| e.to_string())?;
    let realization = Realization {
        d: cfg.d,
        n: cfg.n,
        epsilon: epsilon.clone(),
        precision_bits: precision,
        seed: cfg.seed,
        points,
        lines: lines.to_vec(),
    };
    let certificates =
        certify::certify_realization(&realization).map_err(|e: CertifyError| e.to_string())?;
    Ok(CertifiedRealization {
        realization,
        certificates,
    })
}
