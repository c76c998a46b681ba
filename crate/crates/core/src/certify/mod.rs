//! Certificates for the geometric claims about a realization.
//!
//! * A [`FacetCertificate`] is a hyperplane vanishing on a line's `d` points
//!   and strictly positive on every other point, with its exact minimum slack.
//! * A [`VertexCertificate`] is the squared-distance functional of a planar
//!   point, read through the Veronese coordinates: zero at its own point and
//!   `‖q̂ − p̂‖² > 0` at every other.
//! * [`enumerate_facets`] lists all facets of the hull by brute force.

mod facets;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::cover::{tau_exact, CoverError};
use crate::hj::{HjHypergraph, Hypergraph, LinePattern};
use crate::ratlin::{format_rat, Hyperplane, LinAlgError, Rat};
use crate::realize::Realization;
use crate::RVec;

pub use facets::{enumerate_facets, enumerate_facets_of, Facet, FacetEnumeration, DEFAULT_SUBSET_CAP};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertifyError {
    #[error("points {on_set:?} are affinely dependent")]
    AffinelyDependent { on_set: Vec<usize> },
    #[error("hyperplane through {on_set:?} has value {value} at vertex {vertex}")]
    NotSupporting {
        on_set: Vec<usize>,
        vertex: usize,
        value: String,
    },
    #[error("vertices {0} and {1} share a planar point")]
    DuplicatePlanarPoints(usize, usize),
    #[error("coordinates of vertex {0} are not the Veronese image of its planar point")]
    NotVeronese(usize),
    #[error("{count} subsets exceeds the enumeration cap {cap}")]
    CapExceeded { count: u128, cap: u128 },
    #[error("realization is ({0}) but the hypergraph is ({1})")]
    Mismatch(String, String),
    #[error("stored certificate rejected: {0}")]
    Rejected(String),
    #[error("transversal of the facet hypergraph ({facets}) is below that of the lines ({lines})")]
    MonotonicityViolated { facets: usize, lines: usize },
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

/// Supporting hyperplane of one line's facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetCertificate {
    pub pattern: Option<LinePattern>,
    pub hyperplane: Hyperplane,
    pub on_set: Vec<usize>,
    pub min_slack: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCertificate {
    pub vertex: usize,
    pub functional: Hyperplane,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CertificateBundle {
    pub lines: Vec<FacetCertificate>,
    pub vertices: Vec<VertexCertificate>,
}

/// Summary of what was certified about one realization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertReport {
    pub lines_certified: usize,
    pub line_count: usize,
    pub all_lines_are_facets: bool,
    pub convex_position: bool,
    pub simplicial: Option<bool>,
    pub facet_hypergraph: Option<Hypergraph>,
    pub lines_among_facets: Option<bool>,
    /// `τ(HJ(d,n))`.
    pub tau_lines: Option<usize>,
    /// `τ(H(Q))` over the facet hypergraph.
    pub tau_facets: Option<usize>,
}

/// Certificate that `on_set` spans a facet of `conv(points)`.
///
/// The hyperplane through the `d` points is oriented so that the first
/// off-set point (in index order) is positive; every other off-set point
/// must then be strictly positive too.
pub fn facet_certificate_of(
    points: &[RVec],
    on_set: &[usize],
) -> Result<FacetCertificate, CertifyError> {
    let mut on_set = on_set.to_vec();
    on_set.sort_unstable();
    let pts: Vec<RVec> = on_set.iter().map(|&i| points[i].clone()).collect();
    let plane = match Hyperplane::through(&pts) {
        Ok(h) => h,
        Err(LinAlgError::AffinelyDependent) => {
            return Err(CertifyError::AffinelyDependent { on_set })
        }
        Err(e) => return Err(e.into()),
    };
    let mut plane = Some(plane);
    let mut min_slack: Option<Rat> = None;
    for (i, p) in points.iter().enumerate() {
        if on_set.binary_search(&i).is_ok() {
            continue;
        }
        let mut value = plane.as_ref().expect("set").eval(p)?;
        if min_slack.is_none() && value.is_negative() {
            plane = plane.map(|h| h.negated());
            value = -value;
        }
        if !value.is_positive() {
            return Err(CertifyError::NotSupporting {
                on_set,
                vertex: i,
                value: format_rat(&value),
            });
        }
        if min_slack.as_ref().is_none_or(|m| value < *m) {
            min_slack = Some(value);
        }
    }
    let hyperplane = plane.expect("set");
    Ok(FacetCertificate {
        pattern: None,
        hyperplane,
        on_set,
        // no off-set points: the slack condition is vacuous
        min_slack: min_slack.unwrap_or_else(|| Rat::from_integer(BigInt::from(1))),
    })
}

pub fn facet_certificate(
    real: &Realization,
    pattern: &LinePattern,
    line: &[usize],
) -> Result<FacetCertificate, CertifyError> {
    let mut cert = facet_certificate_of(&real.points, line)?;
    cert.pattern = Some(pattern.clone());
    Ok(cert)
}

/// Re-evaluates a stored facet certificate.
pub fn check_facet_certificate(points: &[RVec], cert: &FacetCertificate) -> Result<(), CertifyError> {
    let reject = |msg: String| Err(CertifyError::Rejected(msg));
    if !cert.min_slack.is_positive() {
        return reject(format!("min_slack {} is not positive", format_rat(&cert.min_slack)));
    }
    let mut seen_min = false;
    for (i, p) in points.iter().enumerate() {
        let v = cert.hyperplane.eval(p)?;
        if cert.on_set.binary_search(&i).is_ok() {
            if !v.is_zero() {
                return reject(format!("on-set vertex {i} has value {}", format_rat(&v)));
            }
        } else if v < cert.min_slack {
            return reject(format!("vertex {i} has value {} below min_slack", format_rat(&v)));
        } else if v == cert.min_slack {
            seen_min = true;
        }
    }
    if !seen_min && cert.on_set.len() < points.len() {
        return reject("min_slack is not attained".into());
    }
    Ok(())
}

/// `‖(x, y) − p̂‖²` as an affine functional of `(x², xy, y², x, y, z…)`.
pub fn distance_functional(p: &(Rat, Rat), d: usize) -> Result<Hyperplane, LinAlgError> {
    let two = Rat::from_integer(BigInt::from(2));
    let one = Rat::from_integer(BigInt::from(1));
    let mut c = vec![Rat::zero(); d];
    c[0] = one.clone();
    c[2] = one;
    c[3] = -(&two * &p.0);
    c[4] = -(&two * &p.1);
    let c0 = &p.0 * &p.0 + &p.1 * &p.1;
    Hyperplane::from_coefficients(&c0, &c)
}

fn squared_distance(p: &(Rat, Rat), q: &(Rat, Rat)) -> Rat {
    let dx = &q.0 - &p.0;
    let dy = &q.1 - &p.1;
    &dx * &dx + &dy * &dy
}

/// One certificate per point proving convex position.
pub fn vertex_certificates(real: &Realization) -> Result<Vec<VertexCertificate>, CertifyError> {
    let planar: Vec<(Rat, Rat)> = (0..real.points.len()).map(|i| real.planar_point(i)).collect();
    for (i, (p, q)) in real.points.iter().zip(&planar).enumerate() {
        let nu = crate::realize::veronese(q);
        if p.as_slice()[..5] != *nu.as_slice() {
            return Err(CertifyError::NotVeronese(i));
        }
    }
    let mut out = Vec::with_capacity(planar.len());
    for (i, p) in planar.iter().enumerate() {
        let functional = distance_functional(p, real.d)?;
        // Normalization divides by a positive content; recover it from x².
        let content = Rat::from_integer(functional.normal()[0].clone());
        for (j, q) in planar.iter().enumerate() {
            let value = functional.eval(&real.points[j])?;
            if value != squared_distance(p, q) * &content {
                return Err(CertifyError::NotVeronese(j));
            }
            if j != i && !value.is_positive() {
                return Err(CertifyError::DuplicatePlanarPoints(i.min(j), i.max(j)));
            }
        }
        out.push(VertexCertificate { vertex: i, functional });
    }
    Ok(out)
}

pub fn check_vertex_certificate(points: &[RVec], cert: &VertexCertificate) -> Result<(), CertifyError> {
    for (j, p) in points.iter().enumerate() {
        let v = cert.functional.eval(p)?;
        let ok = if j == cert.vertex { v.is_zero() } else { v.is_positive() };
        if !ok {
            return Err(CertifyError::Rejected(format!(
                "vertex functional {} has value {} at {j}",
                cert.vertex,
                format_rat(&v)
            )));
        }
    }
    Ok(())
}

/// Line-facet certificates for every line plus vertex certificates.
pub fn certify_realization(real: &Realization) -> Result<CertificateBundle, CertifyError> {
    let lines = real
        .lines
        .iter()
        .map(|(pattern, set)| facet_certificate(real, pattern, set))
        .collect::<Result<Vec<_>, _>>()?;
    let vertices = vertex_certificates(real)?;
    Ok(CertificateBundle { lines, vertices })
}

/// Re-checks a stored bundle against the realization without rebuilding
/// anything: every line has a certificate on exactly its vertex set, and
/// every point has a vertex certificate.
pub fn verify_bundle(real: &Realization, bundle: &CertificateBundle) -> Result<(), CertifyError> {
    if bundle.lines.len() != real.lines.len() {
        return Err(CertifyError::Rejected(format!(
            "{} line certificates for {} lines",
            bundle.lines.len(),
            real.lines.len()
        )));
    }
    for ((pattern, set), cert) in real.lines.iter().zip(&bundle.lines) {
        if cert.on_set != *set || cert.pattern.as_ref() != Some(pattern) {
            return Err(CertifyError::Rejected(format!(
                "certificate for {} does not match its line",
                pattern.key(real.d)
            )));
        }
        if !crate::ratlin::affinely_independent(
            &set.iter().map(|&i| real.points[i].clone()).collect::<Vec<_>>(),
        ) {
            return Err(CertifyError::AffinelyDependent { on_set: set.clone() });
        }
        check_facet_certificate(&real.points, cert)?;
    }
    if bundle.vertices.len() != real.points.len()
        || bundle.vertices.iter().enumerate().any(|(i, c)| c.vertex != i)
    {
        return Err(CertifyError::Rejected("vertex certificates incomplete".into()));
    }
    for cert in &bundle.vertices {
        check_vertex_certificate(&real.points, cert)?;
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, Default)]
pub struct TheoremOptions {
    pub full_hull: bool,
    /// Cap on the number of `d`-subsets the hull enumeration may visit.
    pub subset_cap: Option<u128>,
}

/// Certifies every line as a facet and convex position; with `full_hull`
/// also lists all facets, checks that the lines are among them, and that
/// `τ(H(Q)) ≥ τ(HJ(d,n))`.
pub fn certify_theorem(
    real: &Realization,
    hj: &HjHypergraph,
    opts: TheoremOptions,
) -> Result<CertReport, CertifyError> {
    if (real.d, real.n) != (hj.d, hj.n) {
        return Err(CertifyError::Mismatch(
            format!("{},{}", real.d, real.n),
            format!("{},{}", hj.d, hj.n),
        ));
    }
    let bundle = certify_realization(real)?;
    let mut report = CertReport {
        lines_certified: bundle.lines.len(),
        line_count: hj.hypergraph.edge_count(),
        all_lines_are_facets: bundle.lines.len() == hj.hypergraph.edge_count(),
        convex_position: bundle.vertices.len() == real.points.len(),
        simplicial: None,
        facet_hypergraph: None,
        lines_among_facets: None,
        tau_lines: None,
        tau_facets: None,
    };
    if opts.full_hull {
        let cap = opts.subset_cap.unwrap_or(DEFAULT_SUBSET_CAP);
        let facets = enumerate_facets(real, cap)?;
        let contained = hj
            .hypergraph
            .edges()
            .iter()
            .all(|e| facets.hypergraph.edges().contains(e));
        let tau_lines = tau_exact(&hj.hypergraph).tau;
        let tau_facets = tau_exact(&facets.hypergraph).tau;
        if tau_facets < tau_lines {
            return Err(CertifyError::MonotonicityViolated {
                facets: tau_facets,
                lines: tau_lines,
            });
        }
        report.simplicial = Some(facets.simplicial);
        report.lines_among_facets = Some(contained);
        report.tau_lines = Some(tau_lines);
        report.tau_facets = Some(tau_facets);
        report.facet_hypergraph = Some(facets.hypergraph);
    }
    Ok(report)
}
