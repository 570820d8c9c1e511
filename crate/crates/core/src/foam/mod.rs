//! Combinatorial pre-foams: seams with branch slots, tetrahedral points with
//! their corner structure, and facets described by surface type, dots and
//! boundary walks.

mod build;
mod glue;
mod random;
pub(crate) mod rebuild;
mod validate;

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::web::{Web, WebError};

pub use build::{
    attach_bubble, closed_surface, cone, disk_cap, disk_foam, dotted_sphere, suspension, suspension_k4, theta_foam,
    theta_half, BubbleCap,
};
pub use glue::{glue, WebMatching};
pub use random::random_closed_foam;
pub use validate::{validate_foam_with_boundary, validate_prefoam};

#[derive(Debug, Error)]
pub enum FoamError {
    #[error("invalid foam: {}", join(.0))]
    Invalid(Vec<FoamViolation>),
    #[error(transparent)]
    Web(#[from] WebError),
    #[error("unknown facet {0}")]
    UnknownFacet(String),
    #[error("unknown seam edge {0}")]
    UnknownEdge(String),
    #[error("unknown seam circle {0}")]
    UnknownCircle(String),
    #[error("seam edge {0} is a loop and cannot be cancelled")]
    LoopCancel(String),
    #[error("seam circle {0} has non-trivial monodromy")]
    Monodromy(String),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("the cone on this web is not a valid foam: {0}")]
    Cone(String),
    #[error("surgery produced an inconsistent foam: {0}")]
    Inconsistent(String),
}

fn join(v: &[FoamViolation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// One failed invariant, naming the offending cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoamViolation {
    pub cell: String,
    pub problem: String,
}

impl fmt::Display for FoamViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.cell, self.problem)
    }
}

/// Permutation of the three branch slots `{0, 1, 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Perm {
    #[serde(rename = "id")]
    Id,
    #[serde(rename = "t01")]
    T01,
    #[serde(rename = "t02")]
    T02,
    #[serde(rename = "t12")]
    T12,
    #[serde(rename = "c012")]
    C012,
    #[serde(rename = "c021")]
    C021,
}

impl Perm {
    pub const ALL: [Perm; 6] = [Perm::Id, Perm::T01, Perm::T02, Perm::T12, Perm::C012, Perm::C021];

    pub fn images(self) -> [u8; 3] {
        match self {
            Perm::Id => [0, 1, 2],
            Perm::T01 => [1, 0, 2],
            Perm::T02 => [2, 1, 0],
            Perm::T12 => [0, 2, 1],
            Perm::C012 => [1, 2, 0],
            Perm::C021 => [2, 0, 1],
        }
    }

    pub fn from_images(img: [u8; 3]) -> Option<Perm> {
        Perm::ALL.into_iter().find(|p| p.images() == img)
    }

    pub fn apply(self, s: u8) -> u8 {
        self.images()[s as usize]
    }

    pub fn is_identity(self) -> bool {
        self == Perm::Id
    }

    /// Orbits, each listed from its smallest slot.
    pub fn orbits(self) -> Vec<Vec<u8>> {
        let mut seen = [false; 3];
        let mut out = Vec::new();
        for s in 0..3u8 {
            if seen[s as usize] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut x = s;
            while !seen[x as usize] {
                seen[x as usize] = true;
                orbit.push(x);
                x = self.apply(x);
            }
            out.push(orbit);
        }
        out
    }

    pub fn orbit_len(self, s: u8) -> usize {
        self.orbits()
            .into_iter()
            .find(|o| o.contains(&s))
            .map_or(0, |o| o.len())
    }
}

/// Traversal direction along a seam edge or web edge: `+` runs from end 0 to end 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dir {
    #[serde(rename = "+")]
    Fwd,
    #[serde(rename = "-")]
    Rev,
}

impl Dir {
    pub fn from_forward(fwd: bool) -> Dir {
        if fwd {
            Dir::Fwd
        } else {
            Dir::Rev
        }
    }

    pub fn is_forward(self) -> bool {
        self == Dir::Fwd
    }

    /// End index the traversal starts from.
    pub fn start_end(self) -> u8 {
        if self.is_forward() {
            0
        } else {
            1
        }
    }

    pub fn end_end(self) -> u8 {
        1 - self.start_end()
    }
}

/// One step of a facet boundary walk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Step {
    /// `[edge, direction, slot]`
    Seam(String, Dir, u8),
    /// `[circle, starting slot, winding]`
    Circle(String, u8, u8),
    /// `[web edge, direction]`, only in foams with boundary.
    Boundary(String, Dir),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeamEdge {
    pub id: String,
    pub ends: [String; 2],
}

impl SeamEdge {
    pub fn new(id: impl Into<String>, a: impl Into<String>, b: impl Into<String>) -> Self {
        SeamEdge {
            id: id.into(),
            ends: [a.into(), b.into()],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeamCircle {
    pub id: String,
    pub monodromy: Perm,
}

/// `(edge, end, slot)`: one branch of a seam edge at a tetrahedral point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CornerEnd(pub String, pub u8, pub u8);

pub type Corner = [CornerEnd; 2];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facet {
    pub id: String,
    pub orientable: bool,
    /// Genus when orientable, number of crosscaps otherwise.
    pub genus: u32,
    pub dots: u32,
    pub boundary: Vec<Vec<Step>>,
}

impl Facet {
    pub fn closed(id: impl Into<String>, orientable: bool, genus: u32, dots: u32) -> Self {
        Facet {
            id: id.into(),
            orientable,
            genus,
            dots,
            boundary: Vec::new(),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        surface_chi(self.orientable, self.genus, self.boundary.len())
    }
}

pub fn surface_chi(orientable: bool, genus: u32, boundary: usize) -> i64 {
    let g = genus as i64;
    let b = boundary as i64;
    if orientable {
        2 - 2 * g - b
    } else {
        2 - g - b
    }
}

/// A closed combinatorial pre-foam.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PreFoam {
    pub tetra_points: Vec<String>,
    pub seam_edges: Vec<SeamEdge>,
    pub seam_circles: Vec<SeamCircle>,
    /// Six corners per tetrahedral point.
    pub corners: BTreeMap<String, Vec<Corner>>,
    pub facets: Vec<Facet>,
}

/// A pre-foam fragment bounded by a web.
///
/// Seam edges may end at boundary web vertices. `attachments[v][s]` names the
/// web edge-end (`"edge.end"`) met by branch slot `s` of the seam edge ending at `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoamWithBoundary {
    #[serde(flatten)]
    pub foam: PreFoam,
    pub boundary_web: Web,
    pub attachments: BTreeMap<String, [String; 3]>,
}

/// Tetrahedral points joined by seam edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeamGraph {
    pub vertices: Vec<String>,
    /// `(edge id, end0, end1)`
    pub edges: Vec<(String, String, String)>,
    pub bipartite: bool,
}

impl PreFoam {
    pub fn validate(&self) -> Vec<FoamViolation> {
        validate_prefoam(self)
    }

    pub fn ensure_valid(&self) -> Result<(), FoamError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(FoamError::Invalid(v))
        }
    }

    pub fn facet(&self, id: &str) -> Option<&Facet> {
        self.facets.iter().find(|f| f.id == id)
    }

    pub fn facet_index(&self, id: &str) -> Result<usize, FoamError> {
        self.facets
            .iter()
            .position(|f| f.id == id)
            .ok_or_else(|| FoamError::UnknownFacet(id.to_string()))
    }

    /// χ = |τ| − |seam edges| + Σ χ(facet).
    pub fn euler_characteristic(&self) -> i64 {
        self.tetra_points.len() as i64 - self.seam_edges.len() as i64
            + self.facets.iter().map(Facet::euler_characteristic).sum::<i64>()
    }

    pub fn total_dots(&self) -> u32 {
        self.facets.iter().map(|f| f.dots).sum()
    }

    pub fn seam_graph(&self) -> SeamGraph {
        let pos: BTreeMap<&str, usize> = self
            .tetra_points
            .iter()
            .enumerate()
            .map(|(i, t)| (t.as_str(), i))
            .collect();
        let n = self.tetra_points.len();
        let mut adj = vec![Vec::new(); n];
        let mut bipartite = true;
        for e in &self.seam_edges {
            let (Some(&a), Some(&b)) = (pos.get(e.ends[0].as_str()), pos.get(e.ends[1].as_str())) else {
                continue;
            };
            if a == b {
                bipartite = false;
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut side = vec![u8::MAX; n];
        for s in 0..n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for &u in &adj[v] {
                    if side[u] == u8::MAX {
                        side[u] = 1 - side[v];
                        q.push_back(u);
                    } else if side[u] == side[v] {
                        bipartite = false;
                    }
                }
            }
        }
        SeamGraph {
            vertices: self.tetra_points.clone(),
            edges: self
                .seam_edges
                .iter()
                .map(|e| (e.id.clone(), e.ends[0].clone(), e.ends[1].clone()))
                .collect(),
            bipartite,
        }
    }

    pub fn add_dot(&self, facet: &str) -> Result<PreFoam, FoamError> {
        self.add_dots(facet, 1)
    }

    pub fn add_dots(&self, facet: &str, k: u32) -> Result<PreFoam, FoamError> {
        let i = self.facet_index(facet)?;
        let mut out = self.clone();
        out.facets[i].dots += k;
        Ok(out)
    }

    /// Facet owning each slot of a seam circle.
    pub fn circle_facets(&self, circle: &str) -> Result<[usize; 3], FoamError> {
        let mon = self
            .seam_circles
            .iter()
            .find(|c| c.id == circle)
            .ok_or_else(|| FoamError::UnknownCircle(circle.to_string()))?
            .monodromy;
        let mut out = [usize::MAX; 3];
        for (fi, f) in self.facets.iter().enumerate() {
            for w in &f.boundary {
                for st in w {
                    if let Step::Circle(c, s, _) = st {
                        if c == circle {
                            for o in mon.orbits().into_iter().filter(|o| o.contains(s)) {
                                for x in o {
                                    out[x as usize] = fi;
                                }
                            }
                        }
                    }
                }
            }
        }
        if out.contains(&usize::MAX) {
            return Err(FoamError::Inconsistent(format!(
                "circle {circle} has an uncovered slot"
            )));
        }
        Ok(out)
    }

    /// Facet owning each slot of a seam edge.
    pub fn edge_facets(&self, edge: &str) -> Result<[usize; 3], FoamError> {
        let mut out = [usize::MAX; 3];
        for (fi, f) in self.facets.iter().enumerate() {
            for w in &f.boundary {
                for st in w {
                    if let Step::Seam(e, _, s) = st {
                        if e == edge && *s < 3 {
                            out[*s as usize] = fi;
                        }
                    }
                }
            }
        }
        if out.contains(&usize::MAX) {
            return Err(FoamError::UnknownEdge(edge.to_string()));
        }
        Ok(out)
    }
}

impl FoamWithBoundary {
    /// χ of the 2-complex including the boundary web.
    pub fn euler_characteristic(&self) -> i64 {
        let arcs = self.boundary_web.edges.iter().filter(|e| !e.is_free_circle()).count() as i64;
        self.foam.euler_characteristic() + self.boundary_web.vertices.len() as i64 - arcs
    }

    pub fn validate(&self) -> Vec<FoamViolation> {
        validate_foam_with_boundary(self)
    }

    /// Same fragment with the facet's dot count raised.
    pub fn with_dots(mut self, facet: &str, k: u32) -> Result<Self, FoamError> {
        let i = self.foam.facet_index(facet)?;
        self.foam.facets[i].dots += k;
        Ok(self)
    }
}

/// χ of a web as a graph; free circles contribute 0.
pub fn web_euler_characteristic(w: &Web) -> i64 {
    w.vertices.len() as i64 - w.edges.iter().filter(|e| !e.is_free_circle()).count() as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm_basics() {
        assert_eq!(Perm::C012.apply(2), 0);
        assert_eq!(Perm::T12.orbits(), vec![vec![0], vec![1, 2]]);
        assert_eq!(Perm::C021.orbits(), vec![vec![0, 2, 1]]);
        for p in Perm::ALL {
            assert_eq!(Perm::from_images(p.images()), Some(p));
        }
        assert_eq!(serde_json::to_string(&Perm::C021).unwrap(), "\"c021\"");
    }

    #[test]
    fn step_json_shapes() {
        let steps = vec![
            Step::Seam("a".into(), Dir::Fwd, 2),
            Step::Circle("c".into(), 0, 1),
            Step::Boundary("e1".into(), Dir::Rev),
        ];
        let s = serde_json::to_string(&steps).unwrap();
        assert_eq!(s, r#"[["a","+",2],["c",0,1],["e1","-"]]"#);
        let back: Vec<Step> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, steps);
    }

    #[test]
    fn euler_examples() {
        assert_eq!(theta_foam(0, 0, 0).euler_characteristic(), 3);
        assert_eq!(suspension_k4(0, 0, 0).euler_characteristic(), 4);
        assert_eq!(closed_surface(true, 1, 0).euler_characteristic(), 0);
        assert_eq!(dotted_sphere(2).euler_characteristic(), 2);
    }

    #[test]
    fn seam_graphs() {
        let g = suspension_k4(0, 0, 0).seam_graph();
        assert_eq!((g.vertices.len(), g.edges.len(), g.bipartite), (2, 4, true));
        let g = theta_foam(0, 0, 0).seam_graph();
        assert!(g.vertices.is_empty() && g.edges.is_empty() && g.bipartite);
        let mut f = suspension_k4(0, 0, 0);
        f.seam_edges[0].ends = ["n".into(), "n".into()];
        assert!(!f.seam_graph().bipartite);
    }

    #[test]
    fn add_dot_examples() {
        let f = theta_foam(0, 1, 1).add_dot("f3").unwrap();
        assert_eq!(f, theta_foam(0, 1, 2));
        assert_eq!(dotted_sphere(1).add_dot("s").unwrap(), dotted_sphere(2));
        assert_eq!(closed_surface(true, 1, 0).add_dot("s").unwrap().facets[0].dots, 1);
        assert!(matches!(
            dotted_sphere(1).add_dot("zz"),
            Err(FoamError::UnknownFacet(_))
        ));
    }
}
