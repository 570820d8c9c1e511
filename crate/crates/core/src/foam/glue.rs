use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::rebuild::{Link, Surgery};
use super::{FoamError, FoamWithBoundary, PreFoam, Step};
use crate::web::Web;

/// Identification of the boundary web of one fragment with that of another.
/// Missing entries map an id to itself.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WebMatching {
    #[serde(default)]
    pub vertices: BTreeMap<String, String>,
    #[serde(default)]
    pub edges: BTreeMap<String, String>,
}

impl WebMatching {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn vertex<'a>(&'a self, v: &'a str) -> &'a str {
        self.vertices.get(v).map_or(v, String::as_str)
    }

    pub fn edge<'a>(&'a self, e: &'a str) -> &'a str {
        self.edges.get(e).map_or(e, String::as_str)
    }
}

fn mismatch(msg: impl Into<String>) -> FoamError {
    FoamError::BoundaryMismatch(msg.into())
}

/// For each edge of `a`, the end of its image matched with each of its ends.
fn end_maps(a: &Web, b: &Web, m: &WebMatching) -> Result<HashMap<String, [u8; 2]>, FoamError> {
    let av: BTreeSet<&str> = a.vertices.iter().map(String::as_str).collect();
    let bv: BTreeSet<&str> = b.vertices.iter().map(String::as_str).collect();
    let mut hit = BTreeSet::new();
    for v in &av {
        let w = m.vertex(v);
        if !bv.contains(w) {
            return Err(mismatch(format!("vertex {v} maps to {w}, which is not a vertex")));
        }
        if !hit.insert(w) {
            return Err(mismatch(format!("vertex {w} is hit twice")));
        }
    }
    if hit.len() != bv.len() {
        return Err(mismatch("vertex counts differ"));
    }
    let mut out = HashMap::new();
    let mut hit = BTreeSet::new();
    for e in &a.edges {
        let id = m.edge(&e.id);
        let Some(f) = b.edge(id) else {
            return Err(mismatch(format!("edge {} maps to {id}, which is not an edge", e.id)));
        };
        if !hit.insert(id) {
            return Err(mismatch(format!("edge {id} is hit twice")));
        }
        let map = match (&e.ends, &f.ends) {
            (None, None) => [0, 1],
            (Some([u, v]), Some([x, y])) => {
                let (mu, mv) = (m.vertex(u), m.vertex(v));
                if mu == x && mv == y {
                    [0, 1]
                } else if mu == y && mv == x {
                    [1, 0]
                } else {
                    return Err(mismatch(format!("edge {} does not join the images of its ends", e.id)));
                }
            }
            _ => return Err(mismatch(format!("edge {} and {id} differ in kind", e.id))),
        };
        out.insert(e.id.clone(), map);
    }
    if hit.len() != b.edges.len() {
        return Err(mismatch("edge counts differ"));
    }
    Ok(out)
}

/// Facet and direction of the walk running along each boundary web edge.
fn boundary_owners(f: &PreFoam) -> HashMap<String, (usize, bool)> {
    let mut out = HashMap::new();
    for (i, fc) in f.facets.iter().enumerate() {
        for w in &fc.boundary {
            for st in w {
                if let Step::Boundary(e, d) = st {
                    out.insert(e.clone(), (i, d.is_forward()));
                }
            }
        }
    }
    out
}

fn slot_of(att: &[String; 3], tok: &str) -> Option<u8> {
    att.iter().position(|t| t == tok).map(|p| p as u8)
}

/// Glues two fragments along their boundary webs. Cells of `b` get a `'` suffix.
pub fn glue(a: &FoamWithBoundary, b: &FoamWithBoundary, m: &WebMatching) -> Result<PreFoam, FoamError> {
    for (name, f) in [("first", a), ("second", b)] {
        let v = f.validate();
        if !v.is_empty() {
            return Err(FoamError::Invalid(
                v.into_iter()
                    .map(|mut x| {
                        x.cell = format!("{name} fragment: {}", x.cell);
                        x
                    })
                    .collect(),
            ));
        }
    }
    let ends = end_maps(&a.boundary_web, &b.boundary_web, m)?;

    let mut s = Surgery::default();
    let wa = &a.boundary_web;
    let wb = &b.boundary_web;
    let ja = s.add_foam(&a.foam, "", &|p| wa.vertices.iter().any(|v| v == p), None)?;
    let jb = s.add_foam(&b.foam, "'", &|p| wb.vertices.iter().any(|v| v == p), None)?;
    let at_b: HashMap<&str, (usize, u8)> = jb
        .junction_ends
        .iter()
        .map(|(v, p, k)| (v.as_str(), (*p, *k)))
        .collect();

    for (v, pa, ka) in &ja.junction_ends {
        let w = m.vertex(v);
        let &(pb, kb) = at_b.get(w).ok_or_else(|| mismatch(format!("no seam reaches {w}")))?;
        let (att_a, att_b) = (&a.attachments[v], &b.attachments[w]);
        let mut map = [0u8; 3];
        for (sa, tok) in att_a.iter().enumerate() {
            let (e, k) = tok
                .rsplit_once('.')
                .ok_or_else(|| mismatch(format!("bad token {tok}")))?;
            let k: usize = k.parse().map_err(|_| mismatch(format!("bad token {tok}")))?;
            let tb = format!("{}.{}", m.edge(e), ends[e][k]);
            map[sa] = slot_of(att_b, &tb).ok_or_else(|| mismatch(format!("{tb} is not attached at {w}")))?;
        }
        s.links.push(Link {
            a: (*pa, *ka),
            b: (pb, kb),
            map,
        });
    }

    let own_a = boundary_owners(&a.foam);
    let own_b = boundary_owners(&b.foam);
    for e in &wa.edges {
        let (fa, da) = own_a[&e.id];
        if e.is_free_circle() {
            let (fb, db) = own_b[m.edge(&e.id)];
            s.merges.push((ja.facet_offset + fa, jb.facet_offset + fb, da == db));
        } else {
            s.chi_delta.push((ja.facet_offset + fa, -1));
        }
    }
    s.run()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::foam::{cone, disk_cap, theta_half};

    #[test]
    fn two_disks_make_a_sphere() {
        let f = glue(&disk_cap(1), &disk_cap(2), &WebMatching::identity()).unwrap();
        assert_eq!(f.facets.len(), 1);
        let s = &f.facets[0];
        assert_eq!((s.orientable, s.genus, s.dots, s.boundary.len()), (true, 0, 3, 0));
        assert_eq!(f.euler_characteristic(), 2);
    }

    #[test]
    fn half_thetas_make_a_theta() {
        let f = glue(&theta_half(0, 1, 0), &theta_half(0, 0, 1), &WebMatching::identity()).unwrap();
        assert!(f.validate().is_empty());
        assert!(f.tetra_points.is_empty() && f.seam_edges.is_empty());
        assert_eq!(f.seam_circles.len(), 1);
        assert!(f.seam_circles[0].monodromy.is_identity());
        let dots: Vec<u32> = f.facets.iter().map(|x| x.dots).collect();
        assert_eq!(dots, vec![0, 1, 1]);
        assert!(f
            .facets
            .iter()
            .all(|x| x.orientable && x.genus == 0 && x.boundary.len() == 1));
    }

    #[test]
    fn euler_characteristic_is_additive() {
        let a = theta_half(0, 0, 0);
        let b = theta_half(1, 1, 0);
        let g = glue(&a, &b, &WebMatching::identity()).unwrap();
        let k = crate::foam::web_euler_characteristic(&a.boundary_web);
        assert_eq!(
            g.euler_characteristic(),
            a.euler_characteristic() + b.euler_characteristic() - k
        );
    }

    #[test]
    fn cones_on_k4_give_the_suspension() {
        let w = corpus::k4_web();
        let a = cone(&w, &BTreeMap::new(), "n").unwrap();
        let b = cone(&w, &BTreeMap::new(), "s").unwrap();
        let g = glue(&a, &b, &WebMatching::identity()).unwrap();
        assert!(g.validate().is_empty(), "{:?}", g.validate());
        assert_eq!(g.euler_characteristic(), 4);
        assert_eq!(g.facets.len(), 6);
        assert!(g
            .facets
            .iter()
            .all(|f| f.orientable && f.genus == 0 && f.boundary.len() == 1));
    }

    #[test]
    fn mismatched_boundary_is_named() {
        let m = WebMatching {
            vertices: [("u".to_string(), "x".to_string())].into(),
            edges: BTreeMap::new(),
        };
        let e = glue(&theta_half(0, 0, 0), &theta_half(0, 0, 0), &m).unwrap_err();
        assert!(matches!(&e, FoamError::BoundaryMismatch(s) if s.contains("u")), "{e}");
        let e = glue(&theta_half(0, 0, 0), &disk_cap(0), &WebMatching::identity()).unwrap_err();
        assert!(matches!(e, FoamError::BoundaryMismatch(_)));
    }

    #[test]
    fn swapped_edges_pair_other_facets() {
        let m = WebMatching {
            vertices: BTreeMap::new(),
            edges: [("e1", "e2"), ("e2", "e1")]
                .into_iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        };
        let f = glue(&theta_half(0, 0, 0), &theta_half(0, 0, 0), &m).unwrap();
        assert!(f.validate().is_empty());
        assert_eq!(f.seam_circles.len(), 1);
        assert!(f.seam_circles[0].monodromy.is_identity());
        let ids: Vec<&str> = f.facets.iter().map(|x| x.id.as_str()).collect();
        assert_eq!(ids, vec!["f1+f2'", "f2+f1'", "f3+f3'"]);
    }
}
