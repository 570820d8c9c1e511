//! Webs with rotation systems: faces, genus and the planar reduction calculus.

mod map;
mod random;
mod reduce;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::web::{Web, WebError};

pub(crate) use map::PMap;
pub use random::random_reducible_web;
pub use reduce::{check_conjecture, reduce_dimension, reduce_with, ConjectureCheck, ReductionResult, Strategy};

#[derive(Debug, Error)]
pub enum PlanarError {
    #[error(transparent)]
    Web(#[from] WebError),
    #[error("malformed rotation at vertex {vertex}: {reason}")]
    Rotation { vertex: String, reason: String },
    #[error("rotation system is not planar (component genera {genera:?})")]
    NonPlanar { genera: Vec<u32> },
}

/// A web together with a cyclic order of edge-ends at every vertex.
///
/// Tokens have the form `"edgeid.end"`, `end` being 0 or 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationWeb {
    #[serde(flatten)]
    pub web: Web,
    pub rotation: BTreeMap<String, Vec<String>>,
}

/// One side of an edge: the edge id and the end it leaves from.
pub type EdgeSide = (String, u8);

impl RotationWeb {
    pub(crate) fn to_map(&self) -> Result<PMap, PlanarError> {
        PMap::from_rotation_web(self)
    }

    /// Face walks as cyclic sequences of edge-sides; free circles are not listed.
    pub fn faces(&self) -> Result<Vec<Vec<EdgeSide>>, PlanarError> {
        let m = self.to_map()?;
        Ok(m.faces()
            .into_iter()
            .map(|f| f.into_iter().map(|d| self.side_of(d)).collect())
            .collect())
    }

    fn side_of(&self, dart: usize) -> EdgeSide {
        let graph_edges: Vec<&str> = self.web.edges.iter().map(|e| e.id.as_str()).collect();
        (graph_edges[dart / 2].to_string(), (dart % 2) as u8)
    }

    /// Genus of every connected component of the graph part.
    pub fn genera(&self) -> Result<Vec<u32>, PlanarError> {
        Ok(self.to_map()?.genera())
    }

    pub fn is_planar(&self) -> Result<bool, PlanarError> {
        Ok(self.genera()?.iter().all(|&g| g == 0))
    }

    /// Disjoint union with prefixed ids.
    pub fn disjoint_union(&self, other: &RotationWeb, left: &str, right: &str) -> RotationWeb {
        let web = self.web.disjoint_union(&other.web, left, right);
        let mut rotation = BTreeMap::new();
        for (rw, p) in [(self, left), (other, right)] {
            for (v, toks) in &rw.rotation {
                rotation.insert(format!("{p}{v}"), toks.iter().map(|t| format!("{p}{t}")).collect());
            }
        }
        RotationWeb { web, rotation }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn theta_has_three_bigon_faces() {
        let f = corpus::theta_planar().faces().unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.iter().all(|w| w.len() == 2));
    }

    #[test]
    fn k4_has_four_triangles() {
        let f = corpus::k4_planar().faces().unwrap();
        assert_eq!(f.len(), 4);
        assert!(f.iter().all(|w| w.len() == 3));
    }

    #[test]
    fn reversed_vertex_gives_torus() {
        let mut rw = corpus::k4_planar();
        rw.rotation.get_mut("a").unwrap().reverse();
        assert_eq!(rw.genera().unwrap(), vec![1]);
    }

    #[test]
    fn corpus_rotations_are_planar() {
        for cw in corpus::webs() {
            if let Some(rw) = cw.planar {
                assert!(rw.is_planar().unwrap(), "{}", cw.name);
                let faces = rw.faces().unwrap();
                let graph_edges = rw.web.edges.iter().filter(|e| !e.is_free_circle()).count();
                let total: usize = faces.iter().map(Vec::len).sum();
                assert_eq!(total, 2 * graph_edges, "{}", cw.name);
            }
        }
    }

    #[test]
    fn dodecahedron_faces_are_pentagons() {
        let f = corpus::dodecahedron_planar().faces().unwrap();
        assert_eq!(f.len(), 12);
        assert!(f.iter().all(|w| w.len() == 5));
    }

    #[test]
    fn bad_rotation_names_vertex() {
        let mut rw = corpus::theta_planar();
        rw.rotation
            .insert("u".into(), vec!["e1.0".into(), "e2.0".into(), "e2.0".into()]);
        match rw.faces() {
            Err(PlanarError::Rotation { vertex, .. }) => assert_eq!(vertex, "u"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rotation_json_shape() {
        let s = serde_json::to_string(&corpus::theta_planar()).unwrap();
        assert!(s.starts_with(r#"{"vertices":["u","w"],"edges":["#));
        assert!(s.contains(r#""rotation":{"u":["e1.0","e2.0","e3.0"]"#));
        let back: RotationWeb = serde_json::from_str(&s).unwrap();
        assert_eq!(back, corpus::theta_planar());
    }
}
