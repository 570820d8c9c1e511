use std::collections::HashMap;

use crate::foam::rebuild::{Link, Surgery};
use crate::foam::{FoamError, PreFoam};

type Branch = (String, u8, u8);

fn partners(f: &PreFoam, t: &str) -> HashMap<Branch, Branch> {
    let mut out = HashMap::new();
    for c in f.corners.get(t).into_iter().flatten() {
        let a = (c[0].0.clone(), c[0].1, c[0].2);
        let b = (c[1].0.clone(), c[1].1, c[1].2);
        out.insert(a.clone(), b.clone());
        out.insert(b, a);
    }
    out
}

/// Cancels the two tetrahedral points joined by seam edge `edge`.
///
/// The edge and its end points disappear. Each remaining edge-end `x` at the
/// first point is joined to the edge-end `y` at the second point that shares
/// a sheet with it along `edge`; the other two sheets of `x` continue into the
/// sheets of `y` lying between the matching pairs. Each of the three new
/// squares lowers the Euler characteristic of its facet by one.
pub fn cancel_tetra_pair(f: &PreFoam, edge: &str) -> Result<PreFoam, FoamError> {
    let e = f
        .seam_edges
        .iter()
        .find(|x| x.id == edge)
        .ok_or_else(|| FoamError::UnknownEdge(edge.to_string()))?;
    let (t1, t2) = (e.ends[0].clone(), e.ends[1].clone());
    if t1 == t2 {
        return Err(FoamError::LoopCancel(edge.to_string()));
    }
    let p1 = partners(f, &t1);
    let p2 = partners(f, &t2);
    let missing = |t: &str| FoamError::Inconsistent(format!("corner structure at {t} is incomplete"));

    let mut s = Surgery::default();
    let added = s.add_foam(f, "", &|p| p == t1 || p == t2, Some(edge))?;

    // sigma: edge-end at t1 -> edge-end at t2 sharing a sheet of `edge`
    let mut sigma: HashMap<(String, u8), (String, u8)> = HashMap::new();
    for sl in 0..3u8 {
        let x = p1.get(&(edge.to_string(), 0, sl)).ok_or_else(|| missing(&t1))?;
        let y = p2.get(&(edge.to_string(), 1, sl)).ok_or_else(|| missing(&t2))?;
        sigma.insert((x.0.clone(), x.1), (y.0.clone(), y.1));
    }
    let xs: Vec<(String, u8)> = {
        let mut v: Vec<_> = sigma.keys().cloned().collect();
        v.sort();
        v
    };
    for x in &xs {
        let y = &sigma[x];
        let mut map = [0u8; 3];
        for a in 0..3u8 {
            let (pe, pk, ps) = p1.get(&(x.0.clone(), x.1, a)).ok_or_else(|| missing(&t1))?;
            let want = |b: &Branch| -> bool {
                if pe == edge {
                    b.0 == edge && b.2 == *ps
                } else {
                    let yj = &sigma[&(pe.clone(), *pk)];
                    b.0 == yj.0 && b.1 == yj.1
                }
            };
            map[a as usize] = (0..3u8)
                .find(|&c| p2.get(&(y.0.clone(), y.1, c)).is_some_and(want))
                .ok_or_else(|| missing(&t2))?;
        }
        let pa = added.piece_of[&x.0];
        let pb = added.piece_of[&y.0];
        s.links.push(Link {
            a: (pa, x.1),
            b: (pb, y.1),
            map,
        });
    }
    for (i, x) in xs.iter().enumerate() {
        for xj in &xs[i + 1..] {
            let a = (0..3u8)
                .find(|&a| {
                    p1.get(&(x.0.clone(), x.1, a))
                        .is_some_and(|b| b.0 == xj.0 && b.1 == xj.1)
                })
                .ok_or_else(|| missing(&t1))?;
            let owner = s.owners[added.piece_of[&x.0]][a as usize].facet;
            s.chi_delta.push((owner, -1));
        }
    }
    s.run()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foam::{suspension_k4, Perm};

    #[test]
    fn suspension_cancels_to_three_circles() {
        let f = suspension_k4(0, 1, 2);
        let g = cancel_tetra_pair(&f, "a").unwrap();
        assert!(g.validate().is_empty(), "{:?}", g.validate());
        assert!(g.tetra_points.is_empty() && g.seam_edges.is_empty());
        assert_eq!(g.seam_circles.len(), 3);
        assert!(g.seam_circles.iter().all(|c| c.monodromy == Perm::Id));
        let mut kinds: Vec<(u32, usize)> = g.facets.iter().map(|x| (x.genus, x.boundary.len())).collect();
        kinds.sort();
        assert_eq!(kinds, vec![(0, 1), (0, 1), (0, 1), (0, 2), (0, 2), (0, 2)]);
        assert_eq!(g.euler_characteristic(), 3);
        assert_eq!(g.total_dots(), 3);
    }

    #[test]
    fn every_edge_lowers_chi_by_one() {
        let f = suspension_k4(1, 0, 2);
        for e in ["a", "b", "c", "d"] {
            let g = cancel_tetra_pair(&f, e).unwrap();
            assert_eq!(g.euler_characteristic(), f.euler_characteristic() - 1);
        }
    }

    #[test]
    fn loop_is_rejected() {
        let mut f = suspension_k4(0, 0, 0);
        f.seam_edges[0].ends = ["n".into(), "n".into()];
        assert!(matches!(cancel_tetra_pair(&f, "a"), Err(FoamError::LoopCancel(_))));
        assert!(matches!(cancel_tetra_pair(&f, "zz"), Err(FoamError::UnknownEdge(_))));
    }
}
