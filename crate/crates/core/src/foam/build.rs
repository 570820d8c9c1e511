use std::collections::BTreeMap;

use super::glue::{glue, WebMatching};
use super::{CornerEnd, Dir, Facet, FoamError, FoamWithBoundary, Perm, PreFoam, SeamCircle, SeamEdge, Step};
use crate::web::{Web, WebEdge};

/// Three disks on one seam circle with identity monodromy.
pub fn theta_foam(k1: u32, k2: u32, k3: u32) -> PreFoam {
    let facets = [k1, k2, k3]
        .into_iter()
        .enumerate()
        .map(|(i, k)| Facet {
            id: format!("f{}", i + 1),
            orientable: true,
            genus: 0,
            dots: k,
            boundary: vec![vec![Step::Circle("c".into(), i as u8, 1)]],
        })
        .collect();
    PreFoam {
        seam_circles: vec![SeamCircle {
            id: "c".into(),
            monodromy: Perm::Id,
        }],
        facets,
        ..PreFoam::default()
    }
}

pub fn dotted_sphere(k: u32) -> PreFoam {
    closed_surface(true, 0, k)
}

/// A single closed facet `s`.
pub fn closed_surface(orientable: bool, genus: u32, dots: u32) -> PreFoam {
    PreFoam {
        facets: vec![Facet::closed("s", orientable, genus, dots)],
        ..PreFoam::default()
    }
}

/// A disk `d` bounding the circle web `c`.
pub fn disk_cap(k: u32) -> FoamWithBoundary {
    FoamWithBoundary {
        foam: PreFoam {
            facets: vec![Facet {
                id: "d".into(),
                orientable: true,
                genus: 0,
                dots: k,
                boundary: vec![vec![Step::Boundary("c".into(), Dir::Fwd)]],
            }],
            ..PreFoam::default()
        },
        boundary_web: Web {
            vertices: vec![],
            edges: vec![WebEdge::circle("c")],
        },
        attachments: BTreeMap::new(),
    }
}

/// Half of the theta foam: three disks `f1, f2, f3` on a seam arc `s` from `u`
/// to `w`, bounding the theta web.
pub fn theta_half(k1: u32, k2: u32, k3: u32) -> FoamWithBoundary {
    let web = Web::from_edges(&[("e1", "u", "w"), ("e2", "u", "w"), ("e3", "u", "w")]);
    let facets = [k1, k2, k3]
        .into_iter()
        .enumerate()
        .map(|(i, k)| Facet {
            id: format!("f{}", i + 1),
            orientable: true,
            genus: 0,
            dots: k,
            boundary: vec![vec![
                Step::Seam("s".into(), Dir::Fwd, i as u8),
                Step::Boundary(format!("e{}", i + 1), Dir::Rev),
            ]],
        })
        .collect();
    let att = |k: usize| [1, 2, 3].map(|i| format!("e{i}.{k}"));
    FoamWithBoundary {
        foam: PreFoam {
            seam_edges: vec![SeamEdge::new("s", "u", "w")],
            facets,
            ..PreFoam::default()
        },
        boundary_web: web,
        attachments: [("u".to_string(), att(0)), ("w".to_string(), att(1))].into(),
    }
}

/// Cone on a web with the cone point `apex`, one facet per web edge carrying
/// `dots[edge]` dots. Seam edge `v` runs from the apex to web vertex `v`.
///
/// Only the tetrahedron and a single circle give valid fragments.
pub fn cone(w: &Web, dots: &BTreeMap<String, u32>, apex: &str) -> Result<FoamWithBoundary, FoamError> {
    let bad: Vec<String> = w.validate().iter().map(|v| v.to_string()).collect();
    if !bad.is_empty() {
        return Err(FoamError::Cone(bad.join("; ")));
    }
    let circles = w.free_circle_count();
    if !(w.vertices.is_empty() && circles == 1 || circles == 0 && w.vertices.len() == 4) {
        return Err(FoamError::Cone(format!(
            "{} vertices and {circles} free circles; a cone point needs exactly one circle or four trivalent vertices",
            w.vertices.len()
        )));
    }
    if w.vertices.iter().any(|v| v == apex) {
        return Err(FoamError::Cone(format!("apex {apex} clashes with a web vertex")));
    }
    let mut facets = Vec::new();
    let mut corners = Vec::new();
    let mut attachments = BTreeMap::new();
    let slot = |v: &str, e: &str, k: usize| -> u8 {
        w.incident_ends(v)
            .iter()
            .position(|(x, j)| x == e && *j == k)
            .expect("incident end") as u8
    };
    for v in &w.vertices {
        let toks: Vec<String> = w
            .incident_ends(v)
            .into_iter()
            .map(|(e, k)| format!("{e}.{k}"))
            .collect();
        let toks: [String; 3] = toks
            .try_into()
            .map_err(|_| FoamError::Cone(format!("vertex {v} is not trivalent")))?;
        attachments.insert(v.clone(), toks);
    }
    for e in &w.edges {
        let k = dots.get(&e.id).copied().unwrap_or(0);
        let boundary = match &e.ends {
            None => vec![vec![Step::Boundary(e.id.clone(), Dir::Fwd)]],
            Some([u, v]) => {
                let (su, sv) = (slot(u, &e.id, 0), slot(v, &e.id, 1));
                corners.push([CornerEnd(u.clone(), 0, su), CornerEnd(v.clone(), 0, sv)]);
                vec![vec![
                    Step::Seam(u.clone(), Dir::Fwd, su),
                    Step::Boundary(e.id.clone(), Dir::Fwd),
                    Step::Seam(v.clone(), Dir::Rev, sv),
                ]]
            }
        };
        facets.push(Facet {
            id: e.id.clone(),
            orientable: true,
            genus: 0,
            dots: k,
            boundary,
        });
    }
    let foam = if w.vertices.is_empty() {
        PreFoam {
            facets,
            ..PreFoam::default()
        }
    } else {
        PreFoam {
            tetra_points: vec![apex.to_string()],
            seam_edges: w
                .vertices
                .iter()
                .map(|v| SeamEdge::new(v.clone(), apex, v.clone()))
                .collect(),
            seam_circles: vec![],
            corners: [(apex.to_string(), corners)].into(),
            facets,
        }
    };
    let out = FoamWithBoundary {
        foam,
        boundary_web: w.clone(),
        attachments,
    };
    let v = out.validate();
    if !v.is_empty() {
        return Err(FoamError::Cone(
            v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; "),
        ));
    }
    Ok(out)
}

/// Two cones on `w` glued along it, with cone points `n` and `s`.
pub fn suspension(w: &Web, dots: &BTreeMap<String, u32>) -> Result<PreFoam, FoamError> {
    let a = cone(w, dots, "n")?;
    let b = cone(w, &BTreeMap::new(), "s")?;
    glue(&a, &b, &WebMatching::identity())
}

/// Suspension of the tetrahedron web built directly: points `n`, `s`, seam
/// edges `a..d`, one disk per web edge; dots go on `e1, e2, e3`.
pub fn suspension_k4(k1: u32, k2: u32, k3: u32) -> PreFoam {
    let w = crate::corpus::k4_web();
    let slot = |v: &str, e: &str, k: usize| -> u8 {
        w.incident_ends(v)
            .iter()
            .position(|(x, j)| x == e && *j == k)
            .expect("incident end") as u8
    };
    let dots: BTreeMap<&str, u32> = [("e1", k1), ("e2", k2), ("e3", k3)].into();
    let mut north = Vec::new();
    let mut south = Vec::new();
    let mut facets = Vec::new();
    for e in &w.edges {
        let [u, v] = e.ends.clone().expect("no circles in the tetrahedron");
        let (su, sv) = (slot(&u, &e.id, 0), slot(&v, &e.id, 1));
        north.push([CornerEnd(u.clone(), 0, su), CornerEnd(v.clone(), 0, sv)]);
        south.push([CornerEnd(u.clone(), 1, su), CornerEnd(v.clone(), 1, sv)]);
        facets.push(Facet {
            id: e.id.clone(),
            orientable: true,
            genus: 0,
            dots: dots.get(e.id.as_str()).copied().unwrap_or(0),
            boundary: vec![vec![Step::Seam(u, Dir::Fwd, su), Step::Seam(v, Dir::Rev, sv)]],
        });
    }
    PreFoam {
        tetra_points: vec!["n".into(), "s".into()],
        seam_edges: w.vertices.iter().map(|v| SeamEdge::new(v.clone(), "n", "s")).collect(),
        seam_circles: vec![],
        corners: [("n".to_string(), north), ("s".to_string(), south)].into(),
        facets,
    }
}

/// Foam on a 4-valent seam graph with the full corner pattern at every point
/// and one undotted disk per boundary walk. At each point, the sheets of an
/// edge-end are numbered by the order in which its partners appear.
pub fn disk_foam(tetra_points: &[&str], edges: &[(&str, &str, &str)]) -> Result<PreFoam, FoamError> {
    let mut f = PreFoam {
        tetra_points: tetra_points.iter().map(|t| t.to_string()).collect(),
        seam_edges: edges.iter().map(|&(id, a, b)| SeamEdge::new(id, a, b)).collect(),
        ..PreFoam::default()
    };
    let mut partner: BTreeMap<(usize, u8, u8), (usize, u8, u8)> = BTreeMap::new();
    for t in tetra_points {
        let ends: Vec<(usize, u8)> = edges
            .iter()
            .enumerate()
            .flat_map(|(i, e)| [(i, 0u8, e.1), (i, 1u8, e.2)])
            .filter(|x| x.2 == *t)
            .map(|x| (x.0, x.1))
            .collect();
        if ends.len() != 4 {
            return Err(FoamError::Invalid(vec![super::FoamViolation {
                cell: t.to_string(),
                problem: format!("{} incident seam edge-ends, expected 4", ends.len()),
            }]));
        }
        let slot = |i: usize, j: usize| -> u8 { (0..4).filter(|&x| x != i).position(|x| x == j).unwrap() as u8 };
        let mut corners = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                let a = (ends[i].0, ends[i].1, slot(i, j));
                let b = (ends[j].0, ends[j].1, slot(j, i));
                partner.insert(a, b);
                partner.insert(b, a);
                corners.push([
                    CornerEnd(edges[a.0].0.into(), a.1, a.2),
                    CornerEnd(edges[b.0].0.into(), b.1, b.2),
                ]);
            }
        }
        f.corners.insert(t.to_string(), corners);
    }
    let mut seen = vec![[false; 3]; edges.len()];
    for e0 in 0..edges.len() {
        for s0 in 0..3u8 {
            if seen[e0][s0 as usize] {
                continue;
            }
            let (mut e, mut fwd, mut s) = (e0, true, s0);
            let mut walk = Vec::new();
            while !seen[e][s as usize] {
                seen[e][s as usize] = true;
                walk.push(Step::Seam(edges[e].0.into(), Dir::from_forward(fwd), s));
                let (e2, k2, s2) = partner[&(e, u8::from(fwd), s)];
                (e, fwd, s) = (e2, k2 == 0, s2);
            }
            let id = format!("d{}", f.facets.len() + 1);
            f.facets.push(Facet {
                id,
                orientable: true,
                genus: 0,
                dots: 0,
                boundary: vec![walk],
            });
        }
    }
    f.ensure_valid()?;
    Ok(f)
}

/// What closes off the third sheet of an attached bubble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BubbleCap {
    /// A disk with this many dots.
    Disk(u32),
    /// A torus with one boundary circle.
    Torus,
}

fn fresh(taken: impl Fn(&str) -> bool, base: &str) -> String {
    if !taken(base) {
        return base.to_string();
    }
    (1..).map(|i| format!("{base}{i}")).find(|c| !taken(c)).unwrap()
}

/// Grows a seam circle on `facet`: the facet gets a new boundary circle,
/// one sheet is an undotted disk and the third sheet is `cap`.
pub fn attach_bubble(f: &PreFoam, facet: &str, cap: BubbleCap) -> Result<PreFoam, FoamError> {
    let i = f.facet_index(facet)?;
    let mut out = f.clone();
    let gamma = fresh(
        |c| out.seam_circles.iter().any(|x| x.id == c) || out.seam_edges.iter().any(|x| x.id == c),
        "bubble",
    );
    let fid = |base: &str, out: &PreFoam| fresh(|c| out.facets.iter().any(|x| x.id == c), base);
    out.seam_circles.push(SeamCircle {
        id: gamma.clone(),
        monodromy: Perm::Id,
    });
    out.facets[i].boundary.push(vec![Step::Circle(gamma.clone(), 0, 1)]);
    let d = fid("bubble_disk", &out);
    out.facets.push(Facet {
        id: d,
        orientable: true,
        genus: 0,
        dots: 0,
        boundary: vec![vec![Step::Circle(gamma.clone(), 1, 1)]],
    });
    let (genus, dots) = match cap {
        BubbleCap::Disk(k) => (0, k),
        BubbleCap::Torus => (1, 0),
    };
    let c = fid("bubble_cap", &out);
    out.facets.push(Facet {
        id: c,
        orientable: true,
        genus,
        dots,
        boundary: vec![vec![Step::Circle(gamma, 2, 1)]],
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn cone_needs_a_tetrahedron_or_circle() {
        assert!(matches!(
            cone(&corpus::theta_web(), &BTreeMap::new(), "p"),
            Err(FoamError::Cone(_))
        ));
        assert!(matches!(
            cone(&corpus::cube_web(), &BTreeMap::new(), "p"),
            Err(FoamError::Cone(_))
        ));
        let d = cone(&corpus::circle_web(), &BTreeMap::new(), "p").unwrap();
        assert_eq!(d.euler_characteristic(), 1);
        let c = cone(&corpus::k4_web(), &BTreeMap::new(), "p").unwrap();
        assert_eq!(c.euler_characteristic(), 1);
    }

    #[test]
    fn suspension_of_circle_is_sphere() {
        let s = suspension(&corpus::circle_web(), &[("c".to_string(), 2)].into()).unwrap();
        assert_eq!(s.facets.len(), 1);
        let f = &s.facets[0];
        assert_eq!((f.orientable, f.genus, f.dots, f.boundary.len()), (true, 0, 2, 0));
    }

    #[test]
    fn bubbles_are_valid() {
        for cap in [BubbleCap::Disk(0), BubbleCap::Disk(2), BubbleCap::Torus] {
            let f = attach_bubble(&theta_foam(0, 1, 2), "f2", cap).unwrap();
            assert!(f.validate().is_empty(), "{:?}", f.validate());
            assert_eq!(f.facets.len(), 5);
        }
        let f = attach_bubble(&dotted_sphere(0), "s", BubbleCap::Disk(1)).unwrap();
        assert_eq!(f.euler_characteristic(), 1 + 1 + 1);
    }
}
