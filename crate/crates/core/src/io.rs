//! File formats.
//!
//! Rationals are always strings `"p/q"` (or `"p"` when `q = 1`). Word keys
//! and patterns are digit strings for `d ≤ 9` and comma-separated otherwise.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certify::{CertificateBundle, FacetCertificate, VertexCertificate};
use crate::cover::{Coloring, TauSolution};
use crate::hj::{HjError, HjHypergraph, Hypergraph, LinePattern, Word};
use crate::ratlin::{format_decimal, format_rat, parse_rat, Hyperplane, LinAlgError, Rat};
use crate::realize::{CertifiedRealization, Realization};
use crate::RVec;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad rational {0:?}")]
    Rational(String),
    #[error("bad integer {0:?}")]
    Integer(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Hj(#[from] HjError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

fn rat_in(s: &str) -> Result<Rat, FormatError> {
    parse_rat(s).ok_or_else(|| FormatError::Rational(s.to_string()))
}

fn int_in(s: &str) -> Result<BigInt, FormatError> {
    s.trim().parse().map_err(|_| FormatError::Integer(s.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphFile {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    pub vertex_count: usize,
    pub edges: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub patterns: Option<Vec<String>>,
}

impl HypergraphFile {
    pub fn from_hj(hj: &HjHypergraph) -> Self {
        HypergraphFile {
            d: Some(hj.d),
            n: Some(hj.n),
            vertex_count: hj.hypergraph.vertex_count(),
            edges: hj.hypergraph.edges().to_vec(),
            patterns: Some(hj.patterns.iter().map(|p| p.key(hj.d)).collect()),
        }
    }

    pub fn from_hypergraph(h: &Hypergraph) -> Self {
        HypergraphFile {
            d: None,
            n: None,
            vertex_count: h.vertex_count(),
            edges: h.edges().to_vec(),
            patterns: None,
        }
    }

    pub fn hypergraph(&self) -> Result<Hypergraph, FormatError> {
        Ok(Hypergraph::new(self.vertex_count, self.edges.clone())?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(s)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauSolutionFile {
    pub tau: usize,
    pub witness: Vec<usize>,
    pub exact: bool,
    pub bounds: [usize; 2],
}

impl From<&TauSolution> for TauSolutionFile {
    fn from(s: &TauSolution) -> Self {
        TauSolutionFile {
            tau: s.tau,
            witness: s.witness.vertices().to_vec(),
            exact: s.exact,
            bounds: [s.bounds.0, s.bounds.1],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiSolutionFile {
    pub chi: usize,
    /// Color of each vertex, `1..=chi`.
    pub coloring: Vec<usize>,
    pub exact: bool,
}

impl ChiSolutionFile {
    pub fn new(chi: usize, coloring: &Coloring) -> Self {
        ChiSolutionFile {
            chi,
            coloring: coloring.colors().to_vec(),
            exact: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplaneFile {
    pub c0: String,
    pub c: Vec<String>,
}

impl From<&Hyperplane> for HyperplaneFile {
    fn from(h: &Hyperplane) -> Self {
        HyperplaneFile {
            c0: h.constant().to_string(),
            c: h.normal().iter().map(ToString::to_string).collect(),
        }
    }
}

impl HyperplaneFile {
    pub fn parse(&self) -> Result<Hyperplane, FormatError> {
        let c = self.c.iter().map(|s| int_in(s)).collect::<Result<Vec<_>, _>>()?;
        let h = Hyperplane::from_integers(int_in(&self.c0)?, c)?;
        if HyperplaneFile::from(&h) != *self {
            return Err(FormatError::Invalid("hyperplane coefficients are not normalized".into()));
        }
        Ok(h)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineFile {
    pub pattern: String,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetCertificateFile {
    pub pattern: String,
    pub hyperplane: HyperplaneFile,
    pub on_set: Vec<usize>,
    pub min_slack: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCertificateFile {
    pub vertex: usize,
    pub functional: HyperplaneFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificatesFile {
    pub lines: Vec<FacetCertificateFile>,
    pub vertices: Vec<VertexCertificateFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationFile {
    pub d: usize,
    pub n: usize,
    pub epsilon: String,
    pub precision_bits: u32,
    pub seed: u64,
    /// Word key → exact coordinates.
    pub points: BTreeMap<String, Vec<String>>,
    pub lines: Vec<LineFile>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificates: Option<CertificatesFile>,
}

impl RealizationFile {
    pub fn from_realization(real: &Realization, certs: Option<&CertificateBundle>) -> Self {
        let points = real
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let key = Word::from_index(i, real.d, real.n).key(real.d);
                (key, p.iter().map(format_rat).collect())
            })
            .collect();
        let lines = real
            .lines
            .iter()
            .map(|(p, v)| LineFile {
                pattern: p.key(real.d),
                vertices: v.clone(),
            })
            .collect();
        let certificates = certs.map(|b| CertificatesFile {
            lines: b
                .lines
                .iter()
                .map(|c| FacetCertificateFile {
                    pattern: c.pattern.as_ref().map(|p| p.key(real.d)).unwrap_or_default(),
                    hyperplane: (&c.hyperplane).into(),
                    on_set: c.on_set.clone(),
                    min_slack: format_rat(&c.min_slack),
                })
                .collect(),
            vertices: b
                .vertices
                .iter()
                .map(|c| VertexCertificateFile {
                    vertex: c.vertex,
                    functional: (&c.functional).into(),
                })
                .collect(),
        });
        RealizationFile {
            d: real.d,
            n: real.n,
            epsilon: format_rat(&real.epsilon),
            precision_bits: real.precision_bits,
            seed: real.seed,
            points,
            lines,
            certificates,
        }
    }

    pub fn from_certified(c: &CertifiedRealization) -> Self {
        Self::from_realization(&c.realization, Some(&c.certificates))
    }

    pub fn realization(&self) -> Result<Realization, FormatError> {
        let (d, n) = (self.d, self.n);
        let count = d
            .checked_pow(n as u32)
            .ok_or_else(|| FormatError::Invalid("d^n overflows".into()))?;
        if self.points.len() != count {
            return Err(FormatError::Invalid(format!(
                "expected {count} points, found {}",
                self.points.len()
            )));
        }
        let mut points: Vec<Option<RVec>> = vec![None; count];
        for (key, coords) in &self.points {
            let idx = Word::parse(key, d)?;
            if idx.len() != n {
                return Err(FormatError::Invalid(format!("word {key:?} has wrong length")));
            }
            if coords.len() != d {
                return Err(FormatError::Invalid(format!("point {key:?} has {} coordinates", coords.len())));
            }
            let v = coords.iter().map(|s| rat_in(s)).collect::<Result<Vec<_>, _>>()?;
            points[idx.index(d)] = Some(RVec::new(v));
        }
        let points = points
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| FormatError::Invalid("missing point".into()))?;
        let lines = self
            .lines
            .iter()
            .map(|l| {
                let mut v = l.vertices.clone();
                v.sort_unstable();
                if v != l.vertices || v.iter().any(|&i| i >= count) {
                    return Err(FormatError::Invalid(format!("bad vertex list for {}", l.pattern)));
                }
                Ok((LinePattern::parse(&l.pattern, d)?, v))
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(Realization {
            d,
            n,
            epsilon: rat_in(&self.epsilon)?,
            precision_bits: self.precision_bits,
            seed: self.seed,
            points,
            lines,
        })
    }

    pub fn certificates(&self) -> Result<Option<CertificateBundle>, FormatError> {
        let Some(c) = &self.certificates else {
            return Ok(None);
        };
        let lines = c
            .lines
            .iter()
            .map(|l| {
                Ok(FacetCertificate {
                    pattern: Some(LinePattern::parse(&l.pattern, self.d)?),
                    hyperplane: l.hyperplane.parse()?,
                    on_set: l.on_set.clone(),
                    min_slack: rat_in(&l.min_slack)?,
                })
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        let vertices = c
            .vertices
            .iter()
            .map(|v| {
                Ok(VertexCertificate {
                    vertex: v.vertex,
                    functional: v.functional.parse()?,
                })
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(Some(CertificateBundle { lines, vertices }))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Lossy decimal export in the `nOFF` flavour of the OFF format, with the
/// certified line facets as faces.
pub fn to_off(real: &Realization, digits: u32, source: &str) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "# LOSSY: decimal approximation ({digits} digits after the point) of exact rational coordinates\n"
    ));
    s.push_str(&format!("# exact source: {source}\n"));
    s.push_str(&format!("# d={} n={} seed={} precision_bits={}\n", real.d, real.n, real.seed, real.precision_bits));
    if real.d == 3 {
        s.push_str("OFF\n");
    } else {
        s.push_str(&format!("nOFF\n{}\n", real.d));
    }
    s.push_str(&format!("{} {} 0\n", real.points.len(), real.lines.len()));
    for p in &real.points {
        let row: Vec<String> = p.iter().map(|v| format_decimal(v, digits)).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    for (_, v) in &real.lines {
        let row: Vec<String> = v.iter().map(ToString::to_string).collect();
        s.push_str(&format!("{} {}\n", v.len(), row.join(" ")));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hj::hj_hypergraph;

    #[test]
    fn hypergraph_json_shape() {
        let f = HypergraphFile::from_hj(&hj_hypergraph(2, 1).unwrap());
        assert_eq!(
            f.to_json(),
            r#"{"d":2,"n":1,"vertex_count":2,"edges":[[0,1]],"patterns":["*"]}"#
        );
        let back = HypergraphFile::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
        let plain = HypergraphFile::from_json(r#"{"vertex_count":3,"edges":[[0,2]]}"#).unwrap();
        assert_eq!(plain.hypergraph().unwrap().edge_count(), 1);
        assert!(HypergraphFile::from_json(r#"{"vertex_count":1,"edges":[[0,2]]}"#)
            .unwrap()
            .hypergraph()
            .is_err());
    }

    #[test]
    fn hyperplane_file_requires_normalized_form() {
        let ok = HyperplaneFile {
            c0: "-1".into(),
            c: vec!["1".into(), "1".into()],
        };
        assert!(ok.parse().is_ok());
        let scaled = HyperplaneFile {
            c0: "-2".into(),
            c: vec!["2".into(), "2".into()],
        };
        assert!(scaled.parse().is_err());
    }
}
