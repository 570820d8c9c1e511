//! Webs as abstract trivalent multigraphs.
//!
//! A [`Web`] is a list of vertex ids and a list of edges. An edge either joins
//! two vertex attachments (both may be the same vertex, giving a loop) or is a
//! vertexless free circle (`ends: null` in JSON). Every vertex must carry
//! exactly three edge-ends.

pub(crate) mod factors;
mod flow;
mod tait;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use factors::{find_bridges, is_bipartite, o2_coloring_exists, two_factors, TwoFactor};
pub use flow::{cycle_space_basis, eta_type2_count, random_eta_flow, EtaFlow};
pub use tait::{tait_count, tait_count_restricted, tait_orbit_count, TaitColoring};

#[derive(Debug, Error)]
pub enum WebError {
    #[error("invalid web: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("eta flow does not sum to zero at vertex {vertex}")]
    InvalidFlow { vertex: String },
    #[error("eta flow names unknown edge {0}")]
    UnknownFlowEdge(String),
    #[error("eta flow value {value} on edge {edge} is not 0 or 1")]
    FlowValue { edge: String, value: u8 },
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// One failed web invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateVertex(String),
    DuplicateEdge(String),
    UnknownVertex { edge: String, vertex: String },
    Degree { vertex: String, degree: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateVertex(v) => write!(f, "vertex {v} listed twice"),
            Violation::DuplicateEdge(e) => write!(f, "edge id {e} used twice"),
            Violation::UnknownVertex { edge, vertex } => {
                write!(f, "edge {edge} references missing vertex {vertex}")
            }
            Violation::Degree { vertex, degree } => {
                write!(f, "vertex {vertex} has {degree} incident edge-ends, expected 3")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WebEdge {
    pub id: String,
    /// `None` marks a free circle.
    pub ends: Option<[String; 2]>,
}

impl WebEdge {
    pub fn new(id: impl Into<String>, a: impl Into<String>, b: impl Into<String>) -> Self {
        WebEdge {
            id: id.into(),
            ends: Some([a.into(), b.into()]),
        }
    }

    pub fn circle(id: impl Into<String>) -> Self {
        WebEdge {
            id: id.into(),
            ends: None,
        }
    }

    pub fn is_free_circle(&self) -> bool {
        self.ends.is_none()
    }

    pub fn is_loop(&self) -> bool {
        matches!(&self.ends, Some([a, b]) if a == b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Web {
    pub vertices: Vec<String>,
    pub edges: Vec<WebEdge>,
}

impl Web {
    pub fn new(vertices: Vec<String>, edges: Vec<WebEdge>) -> Self {
        Web { vertices, edges }
    }

    /// Builds a web from `(id, a, b)` triples; vertices are collected in first-seen order.
    pub fn from_edges(edges: &[(&str, &str, &str)]) -> Self {
        let mut vertices: Vec<String> = Vec::new();
        for (_, a, b) in edges {
            for v in [a, b] {
                if !vertices.iter().any(|x| x == v) {
                    vertices.push(v.to_string());
                }
            }
        }
        let edges = edges.iter().map(|(id, a, b)| WebEdge::new(*id, *a, *b)).collect();
        Web { vertices, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge(&self, id: &str) -> Option<&WebEdge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn free_circle_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_free_circle()).count()
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate_web(self)
    }

    /// Incident edge-ends of `v` as `(edge id, end index)`, in edge-list order.
    pub fn incident_ends(&self, v: &str) -> Vec<(String, usize)> {
        let mut out = Vec::new();
        for e in &self.edges {
            if let Some(ends) = &e.ends {
                for (k, x) in ends.iter().enumerate() {
                    if x == v {
                        out.push((e.id.clone(), k));
                    }
                }
            }
        }
        out
    }

    /// Dense index view; fails with the violation list when the web is invalid.
    pub fn index(&self) -> Result<WebIndex, WebError> {
        let violations = validate_web(self);
        if !violations.is_empty() {
            return Err(WebError::Invalid(violations));
        }
        Ok(WebIndex::build(self))
    }

    /// Disjoint union with ids prefixed to stay unique.
    pub fn disjoint_union(&self, other: &Web, left: &str, right: &str) -> Web {
        let pre = |p: &str, s: &str| format!("{p}{s}");
        let mut out = Web::default();
        for (w, p) in [(self, left), (other, right)] {
            out.vertices.extend(w.vertices.iter().map(|v| pre(p, v)));
            out.edges.extend(w.edges.iter().map(|e| WebEdge {
                id: pre(p, &e.id),
                ends: e.ends.as_ref().map(|[a, b]| [pre(p, a), pre(p, b)]),
            }));
        }
        out
    }
}

pub fn validate_web(w: &Web) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for v in &w.vertices {
        if !seen.insert(v.as_str()) {
            out.push(Violation::DuplicateVertex(v.clone()));
        }
    }
    let mut ids = BTreeSet::new();
    let mut degree: BTreeMap<&str, usize> = w.vertices.iter().map(|v| (v.as_str(), 0)).collect();
    for e in &w.edges {
        if !ids.insert(e.id.as_str()) {
            out.push(Violation::DuplicateEdge(e.id.clone()));
        }
        if let Some(ends) = &e.ends {
            for v in ends {
                match degree.get_mut(v.as_str()) {
                    Some(d) => *d += 1,
                    None => out.push(Violation::UnknownVertex {
                        edge: e.id.clone(),
                        vertex: v.clone(),
                    }),
                }
            }
        }
    }
    for v in &w.vertices {
        let d = degree[v.as_str()];
        if d != 3 && seen.contains(v.as_str()) {
            out.push(Violation::Degree {
                vertex: v.clone(),
                degree: d,
            });
        }
    }
    out.dedup();
    out
}

/// Integer-indexed copy of a valid web.
#[derive(Debug, Clone)]
pub struct WebIndex {
    pub vertex_ids: Vec<String>,
    pub edge_ids: Vec<String>,
    /// `None` for free circles.
    pub ends: Vec<Option<[usize; 2]>>,
    /// Per vertex: the three incident `(edge, end)` pairs.
    pub incidence: Vec<Vec<(usize, usize)>>,
}

impl WebIndex {
    fn build(w: &Web) -> Self {
        let vpos: HashMap<&str, usize> = w.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut incidence = vec![Vec::with_capacity(3); w.vertices.len()];
        let mut ends = Vec::with_capacity(w.edges.len());
        for (i, e) in w.edges.iter().enumerate() {
            match &e.ends {
                Some([a, b]) => {
                    let (a, b) = (vpos[a.as_str()], vpos[b.as_str()]);
                    incidence[a].push((i, 0));
                    incidence[b].push((i, 1));
                    ends.push(Some([a, b]));
                }
                None => ends.push(None),
            }
        }
        WebIndex {
            vertex_ids: w.vertices.clone(),
            edge_ids: w.edges.iter().map(|e| e.id.clone()).collect(),
            ends,
            incidence,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_ids.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_is_valid() {
        let w = Web::from_edges(&[("e1", "a", "b"), ("e2", "a", "b"), ("e3", "a", "b")]);
        assert!(validate_web(&w).is_empty());
    }

    #[test]
    fn degree_two_vertex_is_named() {
        let w = Web::from_edges(&[("e1", "a", "b"), ("e2", "a", "b"), ("e3", "a", "c"), ("e4", "c", "b")]);
        let v = validate_web(&w);
        // a and b have degree 3, c has degree 2
        assert_eq!(
            v,
            vec![Violation::Degree {
                vertex: "c".into(),
                degree: 2
            }]
        );
    }

    #[test]
    fn missing_vertex_is_reported() {
        let mut w = Web::from_edges(&[("e1", "a", "b"), ("e2", "a", "b"), ("e3", "a", "b")]);
        w.edges.push(WebEdge::new("e4", "zz", "zz"));
        w.vertices.retain(|v| v != "zz");
        let v = validate_web(&w);
        assert_eq!(v.len(), 1);
        assert!(matches!(&v[0], Violation::UnknownVertex { edge, .. } if edge == "e4"));
    }

    #[test]
    fn json_shape_matches_format() {
        let w = Web {
            vertices: vec!["a".into(), "b".into()],
            edges: vec![WebEdge::new("e1", "a", "b"), WebEdge::circle("c1")],
        };
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(
            s,
            r#"{"vertices":["a","b"],"edges":[{"id":"e1","ends":["a","b"]},{"id":"c1","ends":null}]}"#
        );
        let back: Web = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
    }
}
