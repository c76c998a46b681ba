use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::CertifyError;
use crate::hj::Hypergraph;
use crate::ratlin::{Hyperplane, LinAlgError, Matrix};
use crate::realize::Realization;
use crate::RVec;

/// Default cap on `C(points, d)`.
pub const DEFAULT_SUBSET_CAP: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    /// All points on the supporting hyperplane, sorted.
    pub vertices: Vec<usize>,
    /// Zero on `vertices`, positive on every other point.
    pub hyperplane: Hyperplane,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetEnumeration {
    /// Sorted by vertex set.
    pub facets: Vec<Facet>,
    pub hypergraph: Hypergraph,
    /// Every facet has exactly `d` vertices.
    pub simplicial: bool,
}

impl FacetEnumeration {
    /// Points lying on at least one facet.
    pub fn covered_points(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.facets.iter().flat_map(|f| f.vertices.iter().copied()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

pub fn enumerate_facets(real: &Realization, cap: u128) -> Result<FacetEnumeration, CertifyError> {
    enumerate_facets_of(&real.points, cap)
}

/// Facets of `conv(points)` by brute force over all `d`-subsets.
///
/// Affinely dependent subsets are skipped. A subset's hyperplane supports a
/// facet when no two points lie strictly on opposite sides; its full zero
/// set is recorded, so facets with more than `d` points show up (and make
/// the result non-simplicial). Work is split by subset prefix and merged in
/// prefix order, so the output does not depend on scheduling.
pub fn enumerate_facets_of(points: &[RVec], cap: u128) -> Result<FacetEnumeration, CertifyError> {
    let n = points.len();
    let Some(d) = points.first().map(RVec::len) else {
        return Ok(FacetEnumeration {
            facets: Vec::new(),
            hypergraph: Hypergraph::edgeless(0),
            simplicial: true,
        });
    };
    if d < 2 {
        return Err(LinAlgError::TooFewPoints(d).into());
    }
    if points.iter().any(|p| p.len() != d) {
        return Err(LinAlgError::DimensionMismatch {
            expected: d,
            found: points.iter().map(RVec::len).find(|&l| l != d).unwrap_or(d),
        }
        .into());
    }
    let count = binomial(n, d);
    if count > cap {
        return Err(CertifyError::CapExceeded { count, cap });
    }

    // Scaling each coordinate by a positive integer is an affine bijection,
    // so facets and zero sets are unchanged; afterwards everything is integral.
    let scales: Vec<BigInt> = (0..d)
        .map(|j| {
            points
                .iter()
                .fold(BigInt::one(), |acc, p| acc.lcm(p[j].denom()))
        })
        .collect();
    let ipoints: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| {
            p.iter()
                .zip(&scales)
                .map(|(v, s)| v.numer() * (s / v.denom()))
                .collect()
        })
        .collect();

    let prefixes: Vec<Vec<usize>> = if d >= 2 {
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| vec![i, j]))
            .collect()
    } else {
        (0..n).map(|i| vec![i]).collect()
    };
    let found: Vec<Vec<(Vec<usize>, Hyperplane)>> = prefixes
        .par_iter()
        .map(|prefix| facets_with_prefix(&ipoints, d, prefix))
        .collect();

    let mut unique: BTreeMap<Vec<usize>, Hyperplane> = BTreeMap::new();
    for (zero_set, plane) in found.into_iter().flatten() {
        unique.entry(zero_set).or_insert(plane);
    }
    let mut facets = Vec::with_capacity(unique.len());
    for (vertices, plane) in unique {
        let c: Vec<BigInt> = plane.normal().iter().zip(&scales).map(|(c, s)| c * s).collect();
        let hyperplane = Hyperplane::from_integers(plane.constant().clone(), c)?;
        facets.push(Facet { vertices, hyperplane });
    }
    let simplicial = facets.iter().all(|f| f.vertices.len() == d);
    let hypergraph = Hypergraph::new(n, facets.iter().map(|f| f.vertices.clone()).collect())
        .expect("facet zero sets are distinct and in range");
    Ok(FacetEnumeration {
        facets,
        hypergraph,
        simplicial,
    })
}

fn facets_with_prefix(points: &[Vec<BigInt>], d: usize, prefix: &[usize]) -> Vec<(Vec<usize>, Hyperplane)> {
    let n = points.len();
    let k = d - prefix.len();
    let start = prefix.last().map_or(0, |&l| l + 1);
    if n < start + k {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut rest: Vec<usize> = (start..start + k).collect();
    loop {
        let subset: Vec<usize> = prefix.iter().chain(&rest).copied().collect();
        if let Some(f) = supporting(points, &subset) {
            out.push(f);
        }
        let Some(i) = (0..k).rev().find(|&i| rest[i] < n - k + i) else {
            break;
        };
        rest[i] += 1;
        for j in i + 1..k {
            rest[j] = rest[j - 1] + 1;
        }
    }
    out
}

fn supporting(points: &[Vec<BigInt>], subset: &[usize]) -> Option<(Vec<usize>, Hyperplane)> {
    let rows: Vec<Vec<BigInt>> = subset
        .iter()
        .map(|&i| {
            let mut r = points[i].clone();
            r.push(BigInt::one());
            r
        })
        .collect();
    let m = Matrix::from_rows(rows).ok()?;
    let plane = Hyperplane::through_integer_system(&m).ok()?;
    let (mut pos, mut neg) = (false, false);
    let mut zero_set = Vec::with_capacity(subset.len());
    for (i, p) in points.iter().enumerate() {
        let v = plane.eval_int(p);
        if v.is_zero() {
            zero_set.push(i);
        } else if v.is_positive() {
            pos = true;
        } else {
            neg = true;
        }
        if pos && neg {
            return None;
        }
    }
    if !pos && !neg {
        return None;
    }
    Some((zero_set, if neg { plane.negated() } else { plane }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::{int, rat};

    fn pts(v: &[&[i64]]) -> Vec<RVec> {
        v.iter()
            .map(|p| RVec::new(p.iter().map(|&x| int(x)).collect()))
            .collect()
    }

    #[test]
    fn unit_square() {
        let e = enumerate_facets_of(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]), 100).unwrap();
        assert_eq!(e.hypergraph.edge_count(), 4);
        assert!(e.simplicial);
        assert_eq!(
            e.hypergraph.edges(),
            &[vec![0, 1], vec![0, 2], vec![1, 3], vec![2, 3]]
        );
    }

    #[test]
    fn tetrahedron() {
        let e = enumerate_facets_of(&pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), 100)
            .unwrap();
        assert_eq!(e.hypergraph.edge_count(), 4);
        assert!(e.simplicial);
    }

    #[test]
    fn cube_is_not_simplicial() {
        let mut v = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    v.push(RVec::new(vec![int(x), int(y), int(z)]));
                }
            }
        }
        let e = enumerate_facets_of(&v, 1000).unwrap();
        assert_eq!(e.facets.len(), 6);
        assert!(!e.simplicial);
        assert!(e.facets.iter().all(|f| f.vertices.len() == 4));
    }

    #[test]
    fn interior_point_is_not_covered_and_hyperplanes_are_in_input_coordinates() {
        let mut v = pts(&[&[0, 0], &[4, 0], &[0, 4]]);
        v.push(RVec::new(vec![rat(1, 2), rat(1, 3)]));
        let e = enumerate_facets_of(&v, 100).unwrap();
        assert_eq!(e.facets.len(), 3);
        assert_eq!(e.covered_points(), vec![0, 1, 2]);
        for f in &e.facets {
            for (i, p) in v.iter().enumerate() {
                let val = f.hyperplane.eval(p).unwrap();
                assert_eq!(val.is_zero(), f.vertices.contains(&i));
                assert!(!val.is_negative());
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let v = pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert!(matches!(
            enumerate_facets_of(&v, 5),
            Err(CertifyError::CapExceeded { count: 6, cap: 5 })
        ));
    }
}
