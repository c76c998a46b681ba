use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::Rng;

use super::drawing::{PlanarDrawing, PlanarLine, Point2};
use super::rng::{stream, Stage};
use super::RealizeError;
use crate::ratlin::{dyadic, format_rat, Rat, Surd};

/// Largest ε for which every parabola `(y − a_L x − b_L)² = εx` keeps the
/// lifted off-line points strictly on its positive side, halved.
///
/// At a perturbed off-line point the parabola's defining polynomial equals
/// `δ² + 2δ√(εx)` with `δ = y − a_L x − b_L`; that is positive iff `δ > 0` or
/// `δ² > 4εx`. Hence `ε = min(1, ½·min δ²/(4x))` over all negative residuals.
pub fn choose_epsilon(drawing: &PlanarDrawing) -> Rat {
    let mut bound: Option<Rat> = None;
    for line in &drawing.lines {
        for (_, p) in off_line_points(drawing, line) {
            let delta = line.residual(p);
            if delta.is_negative() {
                let cand = &delta * &delta / (Rat::from_integer(BigInt::from(4)) * &p.0);
                if bound.as_ref().is_none_or(|b| cand < *b) {
                    bound = Some(cand);
                }
            }
        }
    }
    let one = Rat::one();
    match bound {
        Some(b) => {
            let half = b / Rat::from_integer(BigInt::from(2));
            if half < one {
                half
            } else {
                one
            }
        }
        None => one,
    }
}

fn off_line_points<'a>(
    drawing: &'a PlanarDrawing,
    line: &'a PlanarLine,
) -> impl Iterator<Item = (usize, &'a Point2)> + 'a {
    drawing
        .points
        .iter()
        .enumerate()
        .filter(move |(q, _)| !line.members.contains(q))
}

/// Points after `(x, y) ↦ (x, y + √(εx))`, kept exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurdConfiguration {
    pub epsilon: Rat,
    /// Indexed by word index; the y-coordinate is `Surd(y, 1, εx)`.
    pub points: Vec<(Rat, Surd)>,
}

pub fn surd_perturb(drawing: &PlanarDrawing, epsilon: &Rat) -> Result<SurdConfiguration, RealizeError> {
    if !epsilon.is_positive() {
        return Err(RealizeError::InvalidConfig(format!(
            "epsilon must be positive, got {}",
            format_rat(epsilon)
        )));
    }
    let points = drawing
        .points
        .iter()
        .map(|(x, y)| {
            let s = Surd::new(y.clone(), Rat::one(), epsilon * x)?;
            Ok((x.clone(), s))
        })
        .collect::<Result<Vec<_>, RealizeError>>()?;
    Ok(SurdConfiguration {
        epsilon: epsilon.clone(),
        points,
    })
}

/// `(y − a_L x − b_L)² − εx` at a perturbed point, exactly.
pub fn parabola_value(line: &PlanarLine, epsilon: &Rat, point: &(Rat, Surd)) -> Result<Surd, RealizeError> {
    let (x, y) = point;
    let shift = -(&line.slope * x) - &line.intercept;
    let delta = y.add_rational(&shift);
    let sq = delta.mul(&delta)?;
    Ok(sq.add_rational(&-(epsilon * x)))
}

/// Exact check, before any rounding, that each line's parabola vanishes on
/// the line's perturbed points and is positive on all others.
pub fn surd_stage_check(drawing: &PlanarDrawing, surds: &SurdConfiguration) -> Result<(), RealizeError> {
    for line in &drawing.lines {
        for (q, point) in surds.points.iter().enumerate() {
            let expected = if line.members.contains(&q) { 0 } else { 1 };
            let sign = parabola_value(line, &surds.epsilon, point)?.sign();
            if sign != expected {
                return Err(RealizeError::SurdStage {
                    pattern: line.pattern.key(drawing.d),
                    vertex: q,
                    sign,
                });
            }
        }
    }
    Ok(())
}

/// Bits of randomness in each jitter numerator, above the index bits.
const JITTER_RANDOM_BITS: u32 = 19;
const JITTER_INDEX_BITS: u32 = 20;
/// Jitter denominators are `2^(precision + JITTER_SHIFT)`.
const JITTER_SHIFT: u32 = 48;

/// Largest number of points the snap jitter can keep distinct.
pub const MAX_SNAP_POINTS: usize = 1 << JITTER_INDEX_BITS;

/// Pairwise distinct dyadic offsets with `|offset| ≤ 2^-(precision+10)`:
/// the low numerator bits carry the point index.
fn jitter(rng: &mut impl Rng, index: usize, precision_bits: u32) -> Rat {
    let r: u64 = rng.gen_range(0..1u64 << JITTER_RANDOM_BITS);
    let m = ((r << JITTER_INDEX_BITS) | index as u64) as i64 - (1i64 << (JITTER_RANDOM_BITS + JITTER_INDEX_BITS - 1));
    dyadic(BigInt::from(m), precision_bits + JITTER_SHIFT)
}

/// Rounds every perturbed point to rationals.
///
/// `ŷ` is a dyadic approximation of `y + √(εx)` to within `2^-precision`
/// (exact when the value is rational), and when `jitter` is on both
/// coordinates get a further distinct seeded offset of size at most
/// `2^-(precision+10)`. Fresh offsets are drawn for every precision.
pub fn snap(
    surds: &SurdConfiguration,
    precision_bits: u32,
    seed: u64,
    jitter_enabled: bool,
) -> Result<Vec<Point2>, RealizeError> {
    if precision_bits < 16 {
        return Err(RealizeError::InvalidConfig(format!(
            "precision must be at least 16 bits, got {precision_bits}"
        )));
    }
    if surds.points.len() > MAX_SNAP_POINTS {
        return Err(RealizeError::InvalidConfig(format!(
            "at most {MAX_SNAP_POINTS} points supported"
        )));
    }
    let mut ry = stream(seed, Stage::SnapY, precision_bits);
    let mut rx = stream(seed, Stage::SnapX, precision_bits);
    Ok(surds
        .points
        .iter()
        .enumerate()
        .map(|(i, (x, y))| {
            let mut yh = y.to_dyadic(precision_bits);
            let mut xh = x.clone();
            if jitter_enabled {
                yh += jitter(&mut ry, i, precision_bits);
                xh += jitter(&mut rx, i, precision_bits);
            }
            (xh, yh)
        })
        .collect())
}

/// `2^-bits`.
pub fn dyadic_unit(bits: u32) -> Rat {
    Rat::new(BigInt::one(), BigInt::one() << bits)
}
