use num_bigint::BigInt;
use rand::Rng;

use super::rng::{stream, Stage};
use super::{RealizeError, MAX_RETRIES};
use crate::ratlin::{affinely_independent, dyadic, Rat};
use crate::RVec;

/// `ν(x, y) = (x², xy, y², x, y)`.
pub fn veronese(p: &(Rat, Rat)) -> RVec {
    let (x, y) = p;
    RVec::new(vec![x * x, x * y, y * y, x.clone(), y.clone()])
}

/// Index of the first line whose points are affinely dependent.
pub fn first_dependent_line(points: &[RVec], lines: &[Vec<usize>]) -> Option<usize> {
    lines.iter().position(|line| {
        let pts: Vec<RVec> = line.iter().map(|&i| points[i].clone()).collect();
        !affinely_independent(&pts)
    })
}

/// Appends `z` to every point.
pub fn append_coordinates(points5: &[RVec], z: &[Vec<Rat>]) -> Vec<RVec> {
    points5.iter().zip(z).map(|(p, z)| p.extended(z)).collect()
}

/// Lifts points of `R^5` to `R^d` by appending `d − 5` seeded dyadic
/// coordinates of magnitude at most `2^-8`, redrawing until every line's
/// `d` points are affinely independent. Identity for `d = 5`.
pub fn lift(
    points5: &[RVec],
    lines: &[Vec<usize>],
    d: usize,
    seed: u64,
    precision_bits: u32,
) -> Result<Vec<RVec>, RealizeError> {
    if d < 5 {
        return Err(RealizeError::InvalidConfig(format!("lift needs d >= 5, got {d}")));
    }
    if d == 5 {
        return Ok(points5.to_vec());
    }
    let extra = d - 5;
    let mut failing = None;
    for attempt in 0..MAX_RETRIES {
        // Keyed by precision too, so a re-snap also redraws the lift.
        let mut rng = stream(seed, Stage::Lift, (precision_bits << 8) | attempt);
        let bound = 1i64 << 32;
        let z: Vec<Vec<Rat>> = points5
            .iter()
            .map(|_| {
                (0..extra)
                    .map(|_| dyadic(BigInt::from(rng.gen_range(-bound..=bound)), 40))
                    .collect()
            })
            .collect();
        let lifted = append_coordinates(points5, &z);
        match first_dependent_line(&lifted, lines) {
            None => return Ok(lifted),
            Some(l) => failing = Some(l),
        }
    }
    Err(RealizeError::RetriesExhausted {
        stage: "lift",
        detail: format!("line #{} stays affinely dependent", failing.unwrap_or(0)),
    })
}
