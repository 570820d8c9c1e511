use std::collections::{BTreeMap, HashMap};

use super::{PlanarError, RotationWeb};
use crate::web::factors::bridge_flags;
use crate::web::{Web, WebEdge};

/// Combinatorial map on darts: `mate` pairs the two ends of an edge,
/// `next` is the cyclic successor around a vertex. Dead darts are skipped.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct PMap {
    pub mate: Vec<usize>,
    pub next: Vec<usize>,
    pub alive: Vec<bool>,
    pub circles: u32,
}

impl PMap {
    pub fn from_rotation_web(rw: &RotationWeb) -> Result<Self, PlanarError> {
        let ix = rw.web.index()?;
        let n = 2 * ix.edge_count();
        let mut m = PMap {
            mate: (0..n).map(|d| d ^ 1).collect(),
            next: vec![usize::MAX; n],
            alive: vec![false; n],
            circles: 0,
        };
        let epos: HashMap<&str, usize> = ix.edge_ids.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
        for (e, ends) in ix.ends.iter().enumerate() {
            match ends {
                None => m.circles += 1,
                Some(_) => {
                    m.alive[2 * e] = true;
                    m.alive[2 * e + 1] = true;
                }
            }
        }
        for (v, vid) in ix.vertex_ids.iter().enumerate() {
            let bad = |reason: String| PlanarError::Rotation {
                vertex: vid.clone(),
                reason,
            };
            let toks = rw.rotation.get(vid).ok_or_else(|| bad("no rotation given".into()))?;
            let mut darts = Vec::with_capacity(3);
            for t in toks {
                let (e, k) = t
                    .rsplit_once('.')
                    .ok_or_else(|| bad(format!("token {t} is not edge.end")))?;
                let k: usize = k
                    .parse()
                    .ok()
                    .filter(|k| *k < 2)
                    .ok_or_else(|| bad(format!("token {t} has a bad end index")))?;
                let ei = *epos
                    .get(e)
                    .ok_or_else(|| bad(format!("token {t} names an unknown edge")))?;
                darts.push(2 * ei + k);
            }
            let mut want: Vec<usize> = ix.incidence[v].iter().map(|&(e, k)| 2 * e + k).collect();
            let mut got = darts.clone();
            want.sort_unstable();
            got.sort_unstable();
            if got != want {
                return Err(bad("rotation must list each incident edge-end exactly once".into()));
            }
            for i in 0..darts.len() {
                m.next[darts[i]] = darts[(i + 1) % darts.len()];
            }
        }
        Ok(m)
    }

    pub fn darts(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.mate.len()).filter(|&d| self.alive[d])
    }

    pub fn is_empty(&self) -> bool {
        !self.alive.iter().any(|&a| a)
    }

    pub fn phi(&self, d: usize) -> usize {
        self.next[self.mate[d]]
    }

    /// Vertex label of each live dart: the smallest dart in its rotation orbit.
    pub fn vertex_of(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.mate.len()];
        for d in self.darts() {
            if out[d] != usize::MAX {
                continue;
            }
            let mut x = d;
            loop {
                out[x] = d;
                x = self.next[x];
                if x == d {
                    break;
                }
            }
        }
        out
    }

    /// Face orbits, each starting at its smallest dart, sorted by that dart.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.mate.len()];
        let mut out = Vec::new();
        for d in self.darts() {
            if seen[d] {
                continue;
            }
            let mut face = Vec::new();
            let mut x = d;
            loop {
                seen[x] = true;
                face.push(x);
                x = self.phi(x);
                if x == d {
                    break;
                }
            }
            out.push(face);
        }
        out
    }

    fn dense_vertices(&self) -> (Vec<usize>, usize) {
        let vof = self.vertex_of();
        let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
        for d in self.darts() {
            let n = ids.len();
            ids.entry(vof[d]).or_insert(n);
        }
        let dense = (0..self.mate.len())
            .map(|d| if self.alive[d] { ids[&vof[d]] } else { usize::MAX })
            .collect();
        (dense, ids.len())
    }

    /// Connected components as dart sets.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let (vid, nv) = self.dense_vertices();
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for d in self.darts() {
            let (a, b) = (find(&mut parent, vid[d]), find(&mut parent, vid[self.mate[d]]));
            parent[a] = b;
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for d in self.darts() {
            let r = find(&mut parent, vid[d]);
            groups.entry(r).or_default().push(d);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort_by_key(|c| c[0]);
        out
    }

    pub fn restrict(&self, darts: &[usize]) -> PMap {
        let mut alive = vec![false; self.mate.len()];
        for &d in darts {
            alive[d] = true;
        }
        PMap {
            mate: self.mate.clone(),
            next: self.next.clone(),
            alive,
            circles: 0,
        }
    }

    pub fn has_bridge(&self) -> bool {
        let (vid, nv) = self.dense_vertices();
        let edges: Vec<Option<(usize, usize)>> = self
            .darts()
            .filter(|&d| d < self.mate[d])
            .map(|d| Some((vid[d], vid[self.mate[d]])))
            .collect();
        bridge_flags(nv, &edges).into_iter().any(|b| b)
    }

    /// Genus per component from V - E + F = 2 - 2g.
    pub fn genera(&self) -> Vec<u32> {
        let faces = self.faces();
        let vof = self.vertex_of();
        let mut out = Vec::new();
        for comp in self.components() {
            let inside: std::collections::HashSet<usize> = comp.iter().copied().collect();
            let v = comp.iter().filter(|&&d| vof[d] == d).count() as i64;
            let e = comp.len() as i64 / 2;
            let f = faces.iter().filter(|f| inside.contains(&f[0])).count() as i64;
            out.push(((2 - (v - e + f)) / 2) as u32);
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        let vof = self.vertex_of();
        self.darts().filter(|&d| vof[d] == d).count()
    }

    /// Reconnects the far ends of two darts whose vertices are being removed.
    /// If the darts are the two ends of one edge, a free circle results.
    pub fn join(&mut self, a: usize, b: usize) {
        let (x, y) = (self.mate[a], self.mate[b]);
        if x == b {
            self.circles += 1;
        } else {
            self.mate[x] = y;
            self.mate[y] = x;
        }
    }

    /// Kills every dart at the vertices of the given darts.
    pub fn remove_vertices(&mut self, at: &[usize]) {
        for &d in at {
            let mut x = d;
            loop {
                self.alive[x] = false;
                x = self.next[x];
                if x == d {
                    break;
                }
            }
        }
    }

    pub fn push_dart(&mut self) -> usize {
        self.mate.push(usize::MAX);
        self.next.push(usize::MAX);
        self.alive.push(true);
        self.mate.len() - 1
    }

    /// Export with generated ids `v<dart>` / `e<dart>`.
    pub fn to_rotation_web(&self) -> RotationWeb {
        let vof = self.vertex_of();
        let mut web = Web::default();
        let mut rotation = BTreeMap::new();
        let token = |d: usize| {
            let lo = d.min(self.mate[d]);
            format!("e{lo}.{}", usize::from(d != lo))
        };
        for d in self.darts() {
            if vof[d] == d {
                let mut toks = Vec::new();
                let mut x = d;
                loop {
                    toks.push(token(x));
                    x = self.next[x];
                    if x == d {
                        break;
                    }
                }
                web.vertices.push(format!("v{d}"));
                rotation.insert(format!("v{d}"), toks);
            }
        }
        for d in self.darts() {
            if d < self.mate[d] {
                web.edges.push(WebEdge::new(
                    format!("e{d}"),
                    format!("v{}", vof[d]),
                    format!("v{}", vof[self.mate[d]]),
                ));
            }
        }
        for i in 0..self.circles {
            web.edges.push(WebEdge::circle(format!("c{i}")));
        }
        RotationWeb { web, rotation }
    }
}
